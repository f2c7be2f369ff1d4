"""Access to the shipped inventories and lexica."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .entries import Lexicon, load_lexicon
from .inventory import SortInventory, load_sort_inventory

# lexicon fixture -> the inventory it is typed over
LEXICON_INVENTORIES = {
    "birmingham.lex": "birmingham.sorts",
    "bark.lex": "bark.sorts",
    "bank.lex": "bank.sorts",
    "itipy.lex": "itipy.sorts",
}


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("sorted_montague") / "data" / name))


def load_fixture_inventory(name: str) -> SortInventory:
    return load_sort_inventory(fixture_path(name).read_text(encoding="utf-8"))


def load_fixture_lexicon(name: str) -> Lexicon:
    inventory = load_fixture_inventory(LEXICON_INVENTORIES[name])
    return load_lexicon(fixture_path(name).read_text(encoding="utf-8"), inventory)
