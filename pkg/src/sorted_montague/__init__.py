"""Many-sorted Montague semantics with lexical coercions.

A derivation tree is composed over a lexicon whose entries carry modifiers;
type clashes are repaired by inserting modifier chains, copredication goes
through a polymorphic conjunction, and readings come out as normalized
many-sorted formulas with the trace of coercions used.
"""

from .composer import (
    Apply,
    CoercionStep,
    ComposerOptions,
    Coord,
    Leaf,
    Reading,
    brute_force_oracle,
    compose,
    coordinate,
    enumerate_coercions,
    parse_derivation,
    replay_trace,
)
from .errors import *  # noqa: F401,F403
from .kernel import alpha_equal, beta_normalize, parse_term, parse_type, type_of
from .lexicon import (
    Lexicon,
    SortInventory,
    classifiers_of,
    load_fixture_inventory,
    load_fixture_lexicon,
    load_lexicon,
    load_sort_inventory,
    lookup,
)
from .logic import canonicalize, reading_report, render

__version__ = "0.1.0"
