"""Workbench fixture and marker switches for the test suite

    isort:skip_file
"""
import os

import pytest

# marker -> reason shown when the tests are skipped
OPT_IN_MARKERS = {
    "slow": "exhaustive search, run with --slow",
    "pending": "pending implementation, show with --pending",
}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="Run slow tests")
    parser.addoption("--pending", action="store_true", default=False, help="Show pending tests")


def pytest_collection_modifyitems(config, items):
    """Skip opt-in markers unless their option is given"""
    skipped = {
        marker: pytest.mark.skip(reason=reason)
        for marker, reason in OPT_IN_MARKERS.items()
        if not config.getoption(f"--{marker}")
    }
    for item in items:
        for marker, skip in skipped.items():
            if marker in item.keywords:
                item.add_marker(skip)


@pytest.fixture(autouse=True)
def test_workbench():
    from quipu.workbench import Workbench

    workbench = Workbench("Test")

    config_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.py")
    if os.path.exists(config_path):
        workbench.config.from_pyfile(config_path)

    with workbench.workbench_context():
        yield workbench
