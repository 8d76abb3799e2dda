# Quipu
from werkzeug.local import LocalProxy, LocalStack

_workbench_ctx_err_msg = """\
Working outside of workbench context.
This typically means that you attempted to use functionality that needed
the current workbench object. To solve this, set up a workbench context
with workbench.workbench_context().\
"""


def _find_workbench():
    top = _workbench_context_stack.top
    if top is None:
        raise RuntimeError(_workbench_ctx_err_msg)
    return top.workbench


def has_workbench_context():
    """True when a workbench context is pushed on the current thread"""
    return _workbench_context_stack.top is not None


def get_setting(name):
    """Read a setting from the active workbench, or from the defaults when no
    context is pushed.
    """
    if has_workbench_context():
        return current_workbench.config[name]

    # Quipu
    from quipu.workbench import Workbench

    return Workbench.default_settings()[name]


def get_namespace(namespace):
    """Settings whose keys start with ``namespace``, lowercased and trimmed,
    from the active workbench or the defaults.
    """
    if has_workbench_context():
        return current_workbench.config.get_namespace(namespace)

    # Quipu
    from quipu.config import Config
    from quipu.workbench import Workbench

    return Config(None, Workbench.default_settings()).get_namespace(namespace)


# context locals
_workbench_context_stack = LocalStack()
current_workbench = LocalProxy(_find_workbench)
