"""Configuration containers for a :class:`~quipu.workbench.Workbench`"""
# Standard Library Imports
import errno
import json
import logging
import os
import runpy

# Quipu
from quipu.exceptions import ConfigurationError
from werkzeug.utils import import_string

logger = logging.getLogger("quipu.config")

_MISSING = (errno.ENOENT, errno.EISDIR, errno.ENOTDIR)


class ConfigAttribute:
    """Forwards an attribute of the owner to a config key"""

    def __init__(self, key):
        self.key = key

    def __get__(self, obj, owner=None):
        if obj is None:
            return self
        return obj.config[self.key]

    def __set__(self, obj, value):
        obj.config[self.key] = value


class Config(dict):
    """A dict of run settings that can be filled from python files, JSON
    files, objects or mappings. Only uppercase keys are ever loaded, so a
    settings file may keep lowercase scratch names::

        PRECISION = 120
        TOL = "1e-50"
        digits_for_tables = 30   # ignored

    Relative filenames are resolved against ``root_path``.
    """

    def __init__(self, root_path, defaults=None):
        super().__init__(defaults or {})
        self.root_path = root_path

    def _path(self, filename):
        return os.path.join(self.root_path, filename) if self.root_path else filename

    def _read(self, filename, loader, silent):
        """``loader(path)`` or ``None`` when the file is missing and ``silent``"""
        path = self._path(filename)
        try:
            return loader(path)
        except IOError as exc:
            if silent and exc.errno in _MISSING:
                return None
            exc.strerror = f"Unable to load configuration file ({exc.strerror})"
            raise

    def _merge(self, items):
        loaded = []
        for key, value in items:
            if key.isupper():
                self[key] = value
                loaded.append(key)
        logger.debug(f"Loaded settings {', '.join(sorted(loaded)) or '(none)'}")
        return True

    def from_envvar(self, variable_name, silent=False):
        """Load the python settings file named by an environment variable"""
        filename = os.environ.get(variable_name)
        if filename:
            return self.from_pyfile(filename, silent=silent)
        if silent:
            return False
        raise ConfigurationError(
            f"The environment variable {variable_name!r} is not set and "
            f"configuration could not be loaded from it"
        )

    def from_pyfile(self, filename, silent=False):
        """Execute a python file and load its uppercase globals"""
        namespace = self._read(filename, _run_settings, silent)
        if namespace is None:
            return False
        return self._merge(namespace.items())

    def from_json(self, filename, silent=False):
        """Load the uppercase keys of a JSON object file"""
        data = self._read(filename, _load_json, silent)
        if data is None:
            return False
        return self.from_mapping(data)

    def from_object(self, obj):
        """Load the uppercase attributes of a module or class, given directly or
        as an import path string.
        """
        if isinstance(obj, str):
            obj = import_string(obj)
        return self._merge((key, getattr(obj, key)) for key in dir(obj))

    def from_mapping(self, *mapping, **kwargs):
        """Like :meth:`dict.update`, ignoring keys that are not uppercase"""
        return self._merge(dict(*mapping, **kwargs).items())

    def get_namespace(self, namespace, lowercase=True, trim_namespace=True):
        """The settings whose keys start with ``namespace``::

            config.get_namespace("SEARCH_")
            # {'workers': 1, 'screen_margin': '1e-6'}
        """
        subset = {}
        for key, value in self.items():
            if key.startswith(namespace):
                name = key[len(namespace):] if trim_namespace else key
                subset[name.lower() if lowercase else name] = value
        return subset

    def __repr__(self):
        return f"<{type(self).__name__} {dict.__repr__(self)}>"


def _run_settings(path):
    # open first so a missing file surfaces as IOError with its errno
    with open(path, "rb"):
        pass
    return runpy.run_path(path, run_name="config")


def _load_json(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)
