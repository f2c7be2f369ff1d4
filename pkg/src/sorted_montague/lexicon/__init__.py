"""Sort inventories and lexica."""

from .entries import (
    COORDINATION_WORD,
    LexEntry,
    Lexicon,
    build_lexicon,
    check_lexicon,
    dump_lexicon,
    load_lexicon,
    lookup,
)
from .inventory import (
    Finding,
    SortInventory,
    SubsumptionEdge,
    classifiers_of,
    coercion_constants,
    default_coercion_name,
    dump_sort_inventory,
    load_sort_inventory,
    parse_sort_inventory,
    topological_sorts,
    validate_inventory,
)
from .modifiers import Modifier, identity_modifier, identity_name
from .resources import fixture_path, load_fixture_inventory, load_fixture_lexicon

__all__ = [name for name in dir() if not name.startswith("_")]
