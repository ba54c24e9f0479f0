from __future__ import annotations

import pytest

from planeposets.poset import POINT, antichain, chain, psi

_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda s: int(s.split("_")[1])):
        verdict = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture
def named():
    """Small posets by their permutation words."""
    return {
        "1": POINT,
        "12": chain(2),
        "21": antichain(2),
        **{w: psi(tuple(int(c) for c in w)) for w in ("123", "132", "213", "231", "312", "321")},
    }


@pytest.fixture
def c3():
    return chain(3)


@pytest.fixture
def a3():
    return antichain(3)
