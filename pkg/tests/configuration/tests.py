# Standard Library Imports
import os

# Quipu
import pytest

from mpmath import mp
from quipu.config import Config
from quipu.exceptions import ConfigurationError
from quipu.globals import get_namespace, get_setting, has_workbench_context
from quipu.workbench import Workbench, default_workbench

# config keys used for the TestConfig
TEST_KEY = "foo"
PRECISION = 60
non_key = "not-a-key"


def common_object_test(workbench):
    assert workbench.precision == 60
    assert workbench.config["TEST_KEY"] == "foo"
    assert "TestConfig" not in workbench.config
    assert "non_key" not in workbench.config


class TestConfig:
    def test_config_attribute_set(self):
        workbench = Workbench(__name__)
        workbench.config.from_pyfile(__file__.rsplit(".", 1)[0] + ".py")
        workbench.precision = 75

        assert workbench.precision == 75
        assert workbench.config["PRECISION"] == 75

    def test_defaults(self):
        workbench = Workbench(__name__)

        assert workbench.config["TOL"] == "1e-40"
        assert workbench.config["TIE_TOL"] == "1e-30"
        assert workbench.config["TREE_CAP"] == 18
        assert workbench.config["ALL_GRAPHS_CAP"] == 10
        assert workbench.config["FORMAT"] == "json"
        assert workbench.config["FULL"] is False

    def test_default_config_is_immutable(self):
        with pytest.raises(TypeError):
            Workbench.default_config["PRECISION"] = 10

    def test_config_from_file(self):
        workbench = Workbench(__name__)
        workbench.config.from_pyfile(__file__.rsplit(".", 1)[0] + ".py")
        common_object_test(workbench)

    def test_config_from_object(self):
        workbench = Workbench(__name__)
        workbench.config.from_object(__name__)
        common_object_test(workbench)

    def test_config_from_json(self):
        workbench = Workbench(__name__)
        current_dir = os.path.dirname(os.path.abspath(__file__))
        workbench.config.from_json(os.path.join(current_dir, "config.json"))
        common_object_test(workbench)

    def test_config_from_mapping(self):
        workbench = Workbench(__name__)
        workbench.config.from_mapping({"PRECISION": 60, "TEST_KEY": "foo", "non_key": "not-a-key"})
        common_object_test(workbench)

        workbench = Workbench(__name__)
        workbench.config.from_mapping([("PRECISION", 60), ("TEST_KEY", "foo"), ("non_key", "not-a-key")])
        common_object_test(workbench)

        workbench = Workbench(__name__)
        workbench.config.from_mapping(PRECISION=60, TEST_KEY="foo", non_key="not-a-key")
        common_object_test(workbench)

        workbench = Workbench(__name__)
        with pytest.raises(TypeError):
            workbench.config.from_mapping({}, {})

    def test_config_from_class(self):
        class Base(object):
            TEST_KEY = "foo"

        class Test(Base):
            PRECISION = 60

        workbench = Workbench(__name__)
        workbench.config.from_object(Test)
        common_object_test(workbench)

    def test_config_from_envvar(self, monkeypatch):
        monkeypatch.delenv("QUIPU_TEST_SETTINGS", raising=False)
        workbench = Workbench(__name__)
        with pytest.raises(ConfigurationError) as e:
            workbench.config.from_envvar("QUIPU_TEST_SETTINGS")
        assert "'QUIPU_TEST_SETTINGS' is not set" in str(e.value)
        assert not workbench.config.from_envvar("QUIPU_TEST_SETTINGS", silent=True)

        monkeypatch.setenv("QUIPU_TEST_SETTINGS", __file__.rsplit(".", 1)[0] + ".py")
        assert workbench.config.from_envvar("QUIPU_TEST_SETTINGS")
        common_object_test(workbench)

    def test_config_missing(self):
        workbench = Workbench(__name__)
        with pytest.raises(IOError) as e:
            workbench.config.from_pyfile("missing.cfg")
        msg = str(e.value)
        assert msg.startswith(
            "[Errno 2] Unable to load configuration file (No such file or directory):"
        )
        assert msg.endswith("missing.cfg'")
        assert not workbench.config.from_pyfile("missing.cfg", silent=True)

    def test_config_missing_json(self):
        workbench = Workbench(__name__)
        with pytest.raises(IOError):
            workbench.config.from_json("missing.json")
        assert not workbench.config.from_json("missing.json", silent=True)

    def test_custom_config_class(self):
        class SubConfig(Config):
            pass

        class SubWorkbench(Workbench):
            config_class = SubConfig

        workbench = SubWorkbench(__name__)
        assert isinstance(workbench.config, SubConfig)
        workbench.config.from_object(__name__)
        common_object_test(workbench)

    def test_get_namespace(self):
        workbench = Workbench(__name__)
        workbench.config["SEARCH_WORKERS"] = 4
        workbench.config["SEARCH_SCREEN_MARGIN"] = "1e-5"

        search = workbench.config.get_namespace("SEARCH_")
        assert search == {"workers": 4, "screen_margin": "1e-5"}

        raw = workbench.config.get_namespace("SEARCH_", lowercase=False, trim_namespace=False)
        assert raw["SEARCH_WORKERS"] == 4


class TestEnvironment:
    def test_precision_from_environment(self, monkeypatch):
        monkeypatch.setenv("QUIPU_PRECISION", "70")
        assert Workbench(__name__).precision == 70

    def test_non_integer_precision_is_ignored(self, monkeypatch):
        monkeypatch.setenv("QUIPU_PRECISION", "lots")
        assert Workbench(__name__).precision == 100

    def test_settings_file_from_environment(self, monkeypatch):
        monkeypatch.setenv("QUIPU_SETTINGS", __file__.rsplit(".", 1)[0] + ".py")
        workbench = default_workbench()
        common_object_test(workbench)


class TestWorkbenchContext:
    def test_context_sets_and_restores_precision(self, test_workbench):
        outer = mp.dps
        workbench = Workbench(__name__)
        workbench.precision = 45

        with workbench.workbench_context():
            assert mp.dps == 45
            assert get_setting("PRECISION") == 45
        assert mp.dps == outer

    def test_settings_follow_the_innermost_context(self, test_workbench):
        assert get_setting("TOL") == "1e-50"

        workbench = Workbench(__name__)
        with workbench.workbench_context():
            assert get_setting("TOL") == "1e-40"
        assert get_setting("TOL") == "1e-50"

    def test_namespace_lookup(self, test_workbench):
        assert get_namespace("SEARCH_")["workers"] == 1
        assert has_workbench_context()

    def test_scalar(self, test_workbench):
        assert test_workbench.scalar("TIE_TOL") == mp.mpf("1e-30")

    def test_repr(self):
        assert repr(Workbench("Test")) == "<Workbench 'Test'>"
