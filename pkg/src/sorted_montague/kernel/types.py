"""Sorts and the types of the many-sorted second-order type logic."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Collection, Iterable, Optional

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
SORT_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
TIERS = ("generic", "common", "specialised", "domain")
# names that cannot be sorts or type variables because the type syntax uses them
RESERVED_TYPE_NAMES = frozenset({"t", "forall"})


@dataclass(frozen=True)
class Sort:
    """A base sort. ``tier`` and ``gloss`` are descriptive metadata only."""

    name: str
    gloss: Optional[str] = None
    tier: str = "domain"
    line: int = field(default=0, compare=False, repr=False)


class Type:
    """Base class of type syntax trees."""

    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import format_type

        return format_type(self)


@dataclass(frozen=True, repr=False)
class Prop(Type):
    def __repr__(self):
        return "Prop()"


PROP = Prop()


@dataclass(frozen=True)
class SortRef(Type):
    sort: str


@dataclass(frozen=True)
class Arrow(Type):
    domain: Type
    codomain: Type


@dataclass(frozen=True)
class TypeVar(Type):
    name: str


@dataclass(frozen=True)
class ForallType(Type):
    binder: str
    body: Type


def arrows(*types: Type) -> Type:
    """Right-nested arrow: ``arrows(A, B, C)`` is ``A -> B -> C``."""
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = Arrow(ty, result)
    return result


def fresh_name(base: str, avoid: Collection[str]) -> str:
    stem = re.sub(r"_\d+\Z", "", base) or "v"
    if stem not in avoid:
        return stem
    i = 1
    while f"{stem}_{i}" in avoid:
        i += 1
    return f"{stem}_{i}"


def free_type_vars(ty: Type) -> frozenset[str]:
    match ty:
        case TypeVar(name):
            return frozenset((name,))
        case Arrow(d, c):
            return free_type_vars(d) | free_type_vars(c)
        case ForallType(binder, body):
            return free_type_vars(body) - {binder}
        case _:
            return frozenset()


def sorts_of(ty: Type) -> frozenset[str]:
    match ty:
        case SortRef(name):
            return frozenset((name,))
        case Arrow(d, c):
            return sorts_of(d) | sorts_of(c)
        case ForallType(_, body):
            return sorts_of(body)
        case _:
            return frozenset()


def subst_type(ty: Type, name: str, replacement: Type) -> Type:
    """Capture-avoiding substitution of ``replacement`` for the type variable ``name``."""
    if name not in free_type_vars(ty):
        return ty
    return _subst_type(ty, name, replacement, free_type_vars(replacement))


def _subst_type(ty, name, rep, rep_fv):
    match ty:
        case TypeVar(n):
            return rep if n == name else ty
        case Arrow(d, c):
            return Arrow(_subst_type(d, name, rep, rep_fv), _subst_type(c, name, rep, rep_fv))
        case ForallType(binder, body):
            if binder == name:
                return ty
            if binder in rep_fv:
                new = fresh_name(binder, rep_fv | free_type_vars(body) | {name})
                body = _subst_type(body, binder, TypeVar(new), frozenset((new,)))
                binder = new
            return ForallType(binder, _subst_type(body, name, rep, rep_fv))
        case _:
            return ty


def types_equal(a: Type, b: Type) -> bool:
    """Equality up to renaming of ``forall`` binders."""
    return _teq(a, b, {}, {}, 0)


def _teq(a, b, env_a, env_b, depth) -> bool:
    if a is b and not env_a and not env_b:
        return True
    match a, b:
        case Prop(), Prop():
            return True
        case SortRef(x), SortRef(y):
            return x == y
        case TypeVar(x), TypeVar(y):
            lx, ly = env_a.get(x), env_b.get(y)
            if lx is None and ly is None:
                return x == y
            return lx == ly
        case Arrow(d1, c1), Arrow(d2, c2):
            return _teq(d1, d2, env_a, env_b, depth) and _teq(c1, c2, env_a, env_b, depth)
        case ForallType(v1, b1), ForallType(v2, b2):
            return _teq(b1, b2, {**env_a, v1: depth}, {**env_b, v2: depth}, depth + 1)
        case _:
            return False


def well_formed_type(ty: Type, inventory=None, bound: Iterable[str] = ()) -> bool:
    """True iff every sort is declared in ``inventory`` and every type variable is bound.

    ``inventory`` is anything supporting ``in`` on sort names; ``None`` skips the sort check.
    """
    return _wf(ty, inventory, frozenset(bound))


def _wf(ty, inventory, bound) -> bool:
    match ty:
        case Prop():
            return True
        case SortRef(name):
            return inventory is None or name in inventory
        case TypeVar(name):
            return name in bound
        case Arrow(d, c):
            return _wf(d, inventory, bound) and _wf(c, inventory, bound)
        case ForallType(binder, body):
            return _wf(body, inventory, bound | {binder})
        case _:
            return False


def type_problem(ty: Type, inventory=None, bound: Iterable[str] = ()) -> Optional[str]:
    """Explain why ``well_formed_type`` would fail, or return None."""
    bound = frozenset(bound)
    match ty:
        case Prop():
            return None
        case SortRef(name):
            if inventory is not None and name not in inventory:
                return f"undeclared sort {name!r}"
            return None
        case TypeVar(name):
            return None if name in bound else f"unbound type variable {name!r}"
        case Arrow(d, c):
            return type_problem(d, inventory, bound) or type_problem(c, inventory, bound)
        case ForallType(binder, body):
            return type_problem(body, inventory, bound | {binder})
        case _:
            return f"not a type: {ty!r}"
