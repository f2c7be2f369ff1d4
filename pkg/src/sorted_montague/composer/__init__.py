"""Composition of derivation trees into typed logical forms."""

from .compose import (
    CoercionStep,
    ComposerOptions,
    Reading,
    compose,
    coordinate,
    enumerate_coercions,
    format_path,
    reading_key,
    render_trace,
    replay_trace,
    trace_chains,
)
from .derivation import (
    Apply,
    Coord,
    Leaf,
    Node,
    anchor,
    format_derivation,
    leaves,
    node_at,
    parse_derivation,
)
from .oracle import brute_force_oracle
from .raw import available_modifiers, build_raw_term, tried_names

__all__ = [name for name in dir() if not name.startswith("_")]
