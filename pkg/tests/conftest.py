import time
from fractions import Fraction

import pytest
from hypothesis import settings

from redvar.polytope import convex_hull
from redvar.rootsys import build_root_system

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def A1():
    return build_root_system("A", 1)


@pytest.fixture(scope="session")
def A2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def B2():
    return build_root_system("B", 2)


@pytest.fixture(scope="session")
def G2():
    return build_root_system("G", 2)


def seg(a, b):
    return convex_hull([(a,), (b,)])


def pts(*xs):
    return [(Fraction(x),) for x in xs]


SUITE_BUDGET = 300
ACCEPTANCE = {}


def record(number, name, ok, detail=""):
    """Store one acceptance line; printed in the terminal summary."""
    ACCEPTANCE[number] = (name, ok, detail)
    print(f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def pytest_sessionstart(session):
    session.config._redvar_start = time.monotonic()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    elapsed = time.monotonic() - config._redvar_start
    if ACCEPTANCE:
        ACCEPTANCE["8b"] = ("suite under 5 minutes", elapsed < SUITE_BUDGET, f"{elapsed:.1f}s")
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE, key=str):
        name, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} {detail}")


def pytest_sessionfinish(session, exitstatus):
    if ACCEPTANCE and time.monotonic() - session.config._redvar_start >= SUITE_BUDGET:
        session.exitstatus = 1
