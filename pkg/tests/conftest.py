from pathlib import Path

import pytest

from zariski_kit.lattice import CurveSystem
from zariski_kit.surface_file import parse_surface_file

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def load(name: str):
    return parse_surface_file(FIXTURES / f"{name}.toml")


@pytest.fixture
def fail_system():
    return CurveSystem.from_gram([[-2, 3], [3, -2]])


@pytest.fixture
def pass_system():
    return CurveSystem.from_gram([[-2, 4], [4, -2]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
