"""Reconstruction of constant types in concrete terms.

Lexicon files write ``huge_place`` rather than a fully annotated constant.
Each undeclared constant gets a placeholder type which is solved by
first-order unification against the declared type of the entry.  The result
is an ordinary Church-style term that the checker then verifies independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from ..errors import InferenceError
from .constants import LOGICAL_SIGNATURES
from .syntax import parse_term_with
from .terms import Abs, App, Const, Term, TyAbs, TyApp, Var
from .types import Arrow, ForallType, Type, TypeVar, free_type_vars, subst_type


@dataclass(frozen=True)
class Meta(Type):
    """An unknown constant type; never survives elaboration."""

    ident: int

    def __str__(self):
        return f"?{self.ident}"


class TypeClash(InferenceError):
    def __init__(self, expected: Type, actual: Type, message: str = ""):
        self.expected = expected
        self.actual = actual
        super().__init__(message or f"expected {expected}, found {actual}")


class _Unifier:
    def __init__(self):
        self.solution: dict[int, Type] = {}
        self._ids = itertools.count()
        self._rigid = itertools.count()

    def fresh(self) -> Meta:
        return Meta(next(self._ids))

    def resolve(self, ty: Type) -> Type:
        while isinstance(ty, Meta) and ty.ident in self.solution:
            ty = self.solution[ty.ident]
        return ty

    def zonk(self, ty: Type) -> Type:
        ty = self.resolve(ty)
        match ty:
            case Arrow(d, c):
                return Arrow(self.zonk(d), self.zonk(c))
            case ForallType(binder, body):
                return ForallType(binder, self.zonk(body))
        return ty

    def occurs(self, ident: int, ty: Type) -> bool:
        ty = self.resolve(ty)
        match ty:
            case Meta(i):
                return i == ident
            case Arrow(d, c):
                return self.occurs(ident, d) or self.occurs(ident, c)
            case ForallType(_, body):
                return self.occurs(ident, body)
        return False

    def unify(self, a: Type, b: Type) -> bool:
        a, b = self.resolve(a), self.resolve(b)
        if isinstance(a, Meta) or isinstance(b, Meta):
            if isinstance(a, Meta) and isinstance(b, Meta) and a.ident == b.ident:
                return True
            meta, other = (a, b) if isinstance(a, Meta) else (b, a)
            if self.occurs(meta.ident, other):
                return False
            self.solution[meta.ident] = other
            return True
        match a, b:
            case Arrow(d1, c1), Arrow(d2, c2):
                return self.unify(d1, d2) and self.unify(c1, c2)
            case ForallType(v1, b1), ForallType(v2, b2):
                # rename both binders apart to a name no identifier can spell
                rigid = TypeVar(f"#{next(self._rigid)}")
                return self.unify(subst_type(b1, v1, rigid), subst_type(b2, v2, rigid))
        return a == b


def _synth(t: Term, env: dict, u: _Unifier) -> Type:
    match t:
        case Const(_, ty):
            return ty
        case Var(name):
            return env[name]
        case Abs(x, ann, body):
            return Arrow(ann, _synth(body, {**env, x: ann}, u))
        case App(f, a):
            tf = u.resolve(_synth(f, env, u))
            ta = _synth(a, env, u)
            if isinstance(tf, Meta):
                result = u.fresh()
                u.unify(tf, Arrow(ta, result))
                return result
            if not isinstance(tf, Arrow):
                raise InferenceError(f"{f} has type {u.zonk(tf)} and cannot be applied")
            if not u.unify(tf.domain, ta):
                raise TypeClash(u.zonk(tf.domain), u.zonk(ta), f"argument {a} has type "
                                f"{u.zonk(ta)}, expected {u.zonk(tf.domain)}")
            return tf.codomain
        case TyAbs(binder, body):
            return ForallType(binder, _synth(body, env, u))
        case TyApp(f, ty):
            tf = u.resolve(_synth(f, env, u))
            if isinstance(tf, Meta):
                raise InferenceError(f"cannot infer the polymorphic type of {f}; declare it")
            if not isinstance(tf, ForallType):
                raise InferenceError(f"{f} has type {u.zonk(tf)} and cannot take a type argument")
            return subst_type(tf.body, tf.binder, ty)
    raise TypeError(f"not a term: {t!r}")


def _zonk_term(t: Term, u: _Unifier) -> Term:
    match t:
        case Const(name, ty):
            return Const(name, u.zonk(ty))
        case Abs(x, ann, body):
            return Abs(x, ann, _zonk_term(body, u))
        case App(f, a):
            return App(_zonk_term(f, u), _zonk_term(a, u))
        case TyAbs(binder, body):
            return TyAbs(binder, _zonk_term(body, u))
        case TyApp(f, ty):
            return TyApp(_zonk_term(f, u), ty)
    return t


def _has_meta(ty: Type) -> bool:
    match ty:
        case Meta():
            return True
        case Arrow(d, c):
            return _has_meta(d) or _has_meta(c)
        case ForallType(_, body):
            return _has_meta(body)
    return False


class Elaboration:
    """Result of ``elaborate``: the annotated term and newly typed constants."""

    def __init__(self, term: Term, type_: Type, new_constants: dict[str, Type]):
        self.term = term
        self.type = type_
        self.new_constants = new_constants


def elaborate(text: str, signature: Mapping[str, Type], expected: Optional[Type] = None,
              *, on_mismatch=None) -> Elaboration:
    """Parse ``text`` and solve the types of constants missing from ``signature``.

    ``on_mismatch(computed)`` is called when the term's own type disagrees with
    ``expected``; it must raise.  By default a ``TypeClash`` is raised.
    """
    u = _Unifier()
    metas: dict[str, Meta] = {}

    def resolve(name, tok):
        ty = LOGICAL_SIGNATURES.get(name) or signature.get(name)
        if ty is None:
            if name not in metas:
                metas[name] = u.fresh()
            ty = metas[name]
        return Const(name, ty)

    raw = parse_term_with(text, resolve)
    synthesized = _synth(raw, {}, u)
    if expected is not None and not u.unify(synthesized, expected):
        computed = u.zonk(synthesized)
        if on_mismatch is not None:
            on_mismatch(computed)
        raise TypeClash(expected, computed)
    new = {}
    for name, meta in metas.items():
        ty = u.zonk(meta)
        if _has_meta(ty):
            raise InferenceError(f"the type of constant {name!r} cannot be determined; declare it")
        if free_type_vars(ty):
            raise InferenceError(f"constant {name!r} would depend on a bound type variable")
        new[name] = ty
    return Elaboration(_zonk_term(raw, u), u.zonk(synthesized), new)
