"""Normal-order beta normalization (term and type redexes, no eta)."""

from __future__ import annotations

from ..errors import NormalizationBudgetExceeded
from .constants import DEFINITIONS
from .terms import Abs, App, Const, Term, TyAbs, TyApp, substitute, subst_type_in_term, unwind
from .types import Type

DEFAULT_BUDGET = 100_000


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise NormalizationBudgetExceeded(self.limit)


def beta_normalize(term: Term, budget: int = DEFAULT_BUDGET) -> Term:
    """Normalize leftmost-outermost, unfolding the polymorphic conjunction.

    Raises ``NormalizationBudgetExceeded`` after ``budget`` contractions.
    """
    return normalize_counting(term, budget)[0]


def normalize_counting(term: Term, budget: int = DEFAULT_BUDGET) -> tuple[Term, int]:
    """Like ``beta_normalize`` but also return the number of contractions performed."""
    b = _Budget(budget)
    return _nf(term, b), b.used


def _rewind(head: Term, args) -> Term:
    for a in args:
        head = TyApp(head, a) if isinstance(a, Type) else App(head, a)
    return head


def _nf(t: Term, b: _Budget) -> Term:
    while True:
        match t:
            case Abs(x, ann, body):
                return Abs(x, ann, _nf(body, b))
            case TyAbs(binder, body):
                return TyAbs(binder, _nf(body, b))
        head, args = unwind(t)
        if args:
            first = args[0]
            if isinstance(head, Abs) and not isinstance(first, Type):
                b.tick()
                t = _rewind(substitute(head.body, head.var, first), args[1:])
                continue
            if isinstance(head, TyAbs) and isinstance(first, Type):
                b.tick()
                t = _rewind(subst_type_in_term(head.body, head.binder, first), args[1:])
                continue
        if isinstance(head, Const) and head.name in DEFINITIONS:
            b.tick()
            t = _rewind(DEFINITIONS[head.name], args)
            if not args:
                return _nf(t, b)
            continue
        if isinstance(head, (Abs, TyAbs)):
            # ill-typed stuck redex; normalize in place
            head = _nf(head, b)
        return _rewind(head, [a if isinstance(a, Type) else _nf(a, b) for a in args])


def is_normal(term: Term) -> bool:
    match term:
        case Abs(_, _, body) | TyAbs(_, body):
            return is_normal(body)
    head, args = unwind(term)
    if isinstance(head, (Abs, TyAbs)) and args:
        return False
    if isinstance(head, Const) and head.name in DEFINITIONS:
        return False
    return all(isinstance(a, Type) or is_normal(a) for a in args)
