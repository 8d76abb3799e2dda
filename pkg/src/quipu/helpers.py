# Standard Library Imports
import logging
import os
import sys

logger = logging.getLogger("quipu.workbench")


def get_env_precision(default):
    """Working precision in decimal digits, overridable through the
    :envvar:`QUIPU_PRECISION` environment variable.
    """
    val = os.environ.get("QUIPU_PRECISION")
    if not val:
        return default

    try:
        return int(val)
    except ValueError:
        logger.warning(f"Ignoring non-integer QUIPU_PRECISION={val!r}")
        return default


def get_root_path(import_name):
    """Returns the directory of a loaded module, or the cwd for ``__main__``
    and modules without a file.
    """
    mod = sys.modules.get(import_name)
    if mod is not None and getattr(mod, "__file__", None):
        return os.path.dirname(os.path.abspath(mod.__file__))

    return os.getcwd()
