"""The fixed logical signature shared by every lexicon.

``AND`` is the polymorphic conjunction used for copredication.  It is the only
constant with a definition; normalization unfolds it.
"""

from __future__ import annotations

from .terms import Abs, App, Const, Term, TyAbs, TyApp, Var, app
from .types import PROP, Arrow, ForallType, Type, TypeVar, arrows

_a, _b, _x = TypeVar("a"), TypeVar("b"), TypeVar("x")
_QUANT = ForallType("a", Arrow(Arrow(_a, PROP), PROP))

LOGICAL_SIGNATURES: dict[str, Type] = {
    "and": arrows(PROP, PROP, PROP),
    "or": arrows(PROP, PROP, PROP),
    "implies": arrows(PROP, PROP, PROP),
    "not": Arrow(PROP, PROP),
    "Exists": _QUANT,
    "Forall": _QUANT,
    # x is taken before the two facet selectors f and g
    "AND": ForallType(
        "a",
        ForallType(
            "b",
            arrows(
                Arrow(_a, PROP),
                Arrow(_b, PROP),
                ForallType("x", arrows(_x, Arrow(_x, _a), Arrow(_x, _b), PROP)),
            ),
        ),
    ),
}

RESERVED = frozenset(LOGICAL_SIGNATURES)
BINARY_CONNECTIVES = ("and", "or", "implies")
QUANTIFIERS = ("Exists", "Forall")


def logical(name: str) -> Const:
    return Const(name, LOGICAL_SIGNATURES[name])


def conj(p: Term, q: Term) -> Term:
    return app(logical("and"), p, q)


def exists(var: str, sort: Type, body: Term) -> Term:
    return App(TyApp(logical("Exists"), sort), Abs(var, sort, body))


def forall(var: str, sort: Type, body: Term) -> Term:
    return App(TyApp(logical("Forall"), sort), Abs(var, sort, body))


def _and_definition() -> Term:
    a, b, xi = TypeVar("a"), TypeVar("b"), TypeVar("x")
    body = conj(App(Var("P"), App(Var("f"), Var("y"))), App(Var("Q"), App(Var("g"), Var("y"))))
    return TyAbs(
        "a",
        TyAbs(
            "b",
            Abs(
                "P",
                Arrow(a, PROP),
                Abs(
                    "Q",
                    Arrow(b, PROP),
                    TyAbs(
                        "x",
                        Abs("y", xi, Abs("f", Arrow(xi, a), Abs("g", Arrow(xi, b), body))),
                    ),
                ),
            ),
        ),
    )


DEFINITIONS: dict[str, Term] = {"AND": _and_definition()}


def polymorphic_and(alpha: Type, beta: Type, left: Term, right: Term, xi: Type,
                    arg: Term, f: Term, g: Term) -> Term:
    """``AND [alpha] [beta] left right [xi] arg f g``, the unreduced copredication."""
    return app(logical("AND"), alpha, beta, left, right, xi, arg, f, g)
