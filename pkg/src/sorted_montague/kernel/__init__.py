"""Second-order lambda terms over a declared set of sorts."""

from .checker import EMPTY_CONTEXT, TypingContext, type_of
from .constants import (
    DEFINITIONS,
    LOGICAL_SIGNATURES,
    RESERVED,
    conj,
    exists,
    forall,
    logical,
    polymorphic_and,
)
from .infer import elaborate
from .reduce import DEFAULT_BUDGET, beta_normalize, is_normal, normalize_counting
from .syntax import format_term, format_type, parse_term, parse_type
from .terms import (
    Abs,
    App,
    Const,
    Term,
    TyAbs,
    TyApp,
    Var,
    alpha_equal,
    app,
    constants,
    free_type_vars_term,
    free_vars,
    subst_type_in_term,
    substitute,
    term_depth,
    term_size,
    unwind,
)
from .types import (
    PROP,
    TIERS,
    Arrow,
    ForallType,
    Prop,
    Sort,
    SortRef,
    Type,
    TypeVar,
    arrows,
    free_type_vars,
    subst_type,
    types_equal,
    well_formed_type,
)

__all__ = [name for name in dir() if not name.startswith("_")]
