import random

import pytest

from luroth.ring import QQ, GF

P = 65521


def pytest_configure(config):
    config._acceptance = []


@pytest.fixture
def record_criterion(request):
    """Register one acceptance line: ``record_criterion(n, passed, detail)``."""

    def record(number: int, passed: bool, detail: str):
        request.config._acceptance.append((number, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = sorted(getattr(config, "_acceptance", []))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in rows:
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=["p", "q"], ids=["GF65521", "QQ"])
def field(request):
    return GF(P) if request.param == "p" else QQ
