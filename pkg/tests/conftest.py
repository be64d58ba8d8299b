import os
import sys
import tempfile

import pytest

# keep the group cache out of the user's home directory during tests
os.environ.setdefault("E6HODGE_CACHE_DIR", os.path.join(tempfile.gettempdir(), "e6hodge-test-cache"))

from e6hodge import cosets, glued, hodge  # noqa: E402
from e6hodge.group import get_table  # noqa: E402


@pytest.fixture(scope="session")
def T():
    return get_table()


@pytest.fixture(scope="session")
def subgroups(T):
    return {"g27": cosets.g27(T), "g36": cosets.g36(T), "g45": cosets.g45(T)}


@pytest.fixture(scope="session")
def calc(T):
    return hodge.HodgeCalculator(T)


@pytest.fixture(scope="session")
def table1(calc):
    return calc.solve_table1()


@pytest.fixture(scope="session")
def cover():
    return glued.build(glued.default_spec())


@pytest.fixture(scope="session")
def omega(cover):
    return glued.section_space(cover, 1, 0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        title, ok = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}")
