import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sorted_montague.lexicon import load_fixture_inventory, load_fixture_lexicon, load_lexicon, load_sort_inventory

FIXTURES = Path(__file__).parent / "fixtures"


def local_inventory(name):
    return load_sort_inventory((FIXTURES / name).read_text(encoding="utf-8"))


def local_lexicon(name, inventory):
    return load_lexicon((FIXTURES / name).read_text(encoding="utf-8"), inventory)


@pytest.fixture(scope="session")
def birmingham():
    return load_fixture_lexicon("birmingham.lex")


@pytest.fixture(scope="session")
def bark():
    return load_fixture_lexicon("bark.lex")


@pytest.fixture(scope="session")
def bank():
    return load_fixture_lexicon("bank.lex")


@pytest.fixture(scope="session")
def itipy():
    return load_fixture_lexicon("itipy.lex")


@pytest.fixture(scope="session")
def japanese():
    return load_fixture_inventory("japanese.sorts")


@pytest.fixture(scope="session")
def lsf():
    return load_fixture_inventory("lsf.sorts")


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
