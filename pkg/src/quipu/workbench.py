"""This module implements the central workbench object that holds the run
configuration and the numeric working precision.
"""
# Standard Library Imports
import logging

# Quipu
from mpmath import mp, mpf
from quipu.globals import _workbench_context_stack
from werkzeug.datastructures import ImmutableDict

# Local/Relative Imports
from .config import Config, ConfigAttribute
from .helpers import get_env_precision, get_root_path

logger = logging.getLogger("quipu.workbench")


class WorkbenchContext:
    """Binds a workbench to the current thread and sets the mpmath working
    precision for as long as it is pushed.
    """

    def __init__(self, workbench):
        self.workbench = workbench
        self._saved_dps = []

    def push(self):
        self._saved_dps.append(mp.dps)
        mp.dps = int(self.workbench.precision)
        _workbench_context_stack.push(self)
        logger.debug(f"Pushed workbench {self.workbench.name!r} at {mp.dps} digits")

    def pop(self):
        try:
            rv = _workbench_context_stack.pop()
        finally:
            mp.dps = self._saved_dps.pop()
        assert rv is self, "Popped wrong workbench context.  (%r instead of %r)" % (
            rv,
            self,
        )

    def __enter__(self):
        self.push()
        return self

    def __exit__(self, exc_type, exc_value, tb):
        self.pop()


class Workbench:
    """The workbench is the one-stop holder of a Quipu run's settings.

    Usually you create one per process and enter its context around any
    computation::

        from quipu import Workbench
        workbench = Workbench(__name__)
        workbench.config.from_envvar("QUIPU_SETTINGS", silent=True)

        with workbench.workbench_context():
            ...

    Library functions look settings up through
    :func:`quipu.globals.get_setting`, so they also work without a context,
    falling back to :meth:`default_settings`.
    """

    config_class = Config

    #: Decimal digits of the mpmath working precision
    precision = ConfigAttribute("PRECISION")

    default_config = ImmutableDict(
        {
            "PRECISION": 100,
            "TOL": "1e-40",
            "TIE_TOL": "1e-30",
            "TREE_CAP": 18,
            "ALL_GRAPHS_CAP": 10,
            "ORACLE_CAP": 64,
            "FORMAT": "json",
            "FULL": False,
            "PRINT_DIGITS": 50,
            "STABILIZATION_K": 8,
            "SEARCH_WORKERS": 1,
            "SEARCH_SCREEN_MARGIN": "1e-6",
        },
    )

    def __init__(self, name=__name__, root_path=None):
        self.name = name
        self.root_path = root_path or get_root_path(name)

        #: The configuration dictionary as :class:`Config`.
        self.config = self.make_config()

    @classmethod
    def default_settings(cls):
        """Defaults with environment overrides applied"""
        defaults = dict(cls.default_config)
        defaults["PRECISION"] = get_env_precision(defaults["PRECISION"])
        return defaults

    def make_config(self):
        return self.config_class(self.root_path, self.default_settings())

    def scalar(self, key):
        """A config value as an mpmath scalar at the current precision"""
        return mpf(self.config[key])

    def workbench_context(self):
        """Create a :class:`WorkbenchContext`. Use it as a ``with`` block
        to push the context, which sets the working precision::

            with workbench.workbench_context():
                rho_tree(tree)
        """
        return WorkbenchContext(self)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"


def default_workbench():
    """A workbench configured from defaults and ``QUIPU_SETTINGS``, if set"""
    workbench = Workbench("quipu")
    workbench.config.from_envvar("QUIPU_SETTINGS", silent=True)
    return workbench


__all__ = ("Workbench", "WorkbenchContext", "default_workbench")
