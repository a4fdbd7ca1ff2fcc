from __future__ import annotations

from importlib import resources

import pytest

from specrec.cli.parser import parse_curve

BUNDLED = ("airy", "gaussian", "ising")

# filled by the acceptance module, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def bundled(name: str):
    text = resources.files("specrec.cli").joinpath("curves", f"{name}.curve").read_text(encoding="utf-8")
    return parse_curve(text).build()


@pytest.fixture(scope="session")
def curves():
    return {n: bundled(n) for n in BUNDLED}


@pytest.fixture(scope="session")
def airy(curves):
    return curves["airy"]


@pytest.fixture(scope="session")
def gaussian(curves):
    return curves["gaussian"]


@pytest.fixture(scope="session")
def ising(curves):
    return curves["ising"]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
