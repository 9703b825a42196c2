import sys
from pathlib import Path

import pytest

from wangforge.machines import TuringMachine

GOLDEN = Path(__file__).parent / "golden"


def busy_beaver_2() -> TuringMachine:
    return TuringMachine(
        ("0", "1"), "0", ("A", "B"), "A",
        (("0", "A", "1", "B", "R"), ("1", "A", "1", "B", "L"),
         ("0", "B", "1", "A", "L"), ("1", "B", "1", "HALT", "R")),
    )


def halter() -> TuringMachine:
    return TuringMachine(("B", "1"), "B", ("q0",), "q0", (("1", "q0", "1", "HALT", "R"),))


def mover() -> TuringMachine:
    return TuringMachine(("B",), "B", ("q0",), "q0", (("B", "q0", "B", "q0", "R"),))


@pytest.fixture
def bb2():
    return busy_beaver_2()


@pytest.fixture
def immediate_halter():
    return halter()


@pytest.fixture
def right_mover():
    return mover()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
