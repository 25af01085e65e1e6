from pathlib import Path

import pytest

from bww.syntax import load_file, load_source

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"
FIXTURES = Path(__file__).resolve().parent / "fixtures"
RULE_FIXTURES = FIXTURES / "rules"


def model_of(body: str, name: str = "T"):
    return load_source(f"model {name} {{\n{body}\n}}\n", "<test>")


@pytest.fixture(scope="session")
def library():
    return load_file(MODELS / "library.bww")


@pytest.fixture(scope="session")
def four_things():
    return load_file(MODELS / "four_things.bww")


@pytest.fixture(scope="session")
def precedence():
    return load_file(MODELS / "precedence.bww")


@pytest.fixture(scope="session")
def collections_model():
    return load_file(MODELS / "collections.bww")


# one "PASS|FAIL name: detail" line per acceptance criterion, shown after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
