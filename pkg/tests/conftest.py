import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much, HealthCheck.data_too_large],
)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False, help="run slow reproduction targets")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long") or os.environ.get("FEWDIST_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long profile: use --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import summary_lines

    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
