"""Syntax-directed type checking for Church-style second-order terms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..errors import (
    ArgumentTypeMismatch,
    IllFormedType,
    NotAFunction,
    ReservedName,
    UnboundVariable,
)
from .constants import LOGICAL_SIGNATURES, RESERVED
from .terms import Abs, App, Const, Term, TyAbs, TyApp, Var, subst_type_in_term, free_type_vars_term
from .types import Arrow, ForallType, Type, TypeVar, fresh_name, subst_type, type_problem, types_equal


@dataclass(frozen=True, eq=False)
class TypingContext:
    term_vars: Mapping[str, Type] = field(default_factory=dict)
    type_vars: frozenset = frozenset()

    def __post_init__(self):
        clash = (set(self.term_vars) | set(self.type_vars)) & RESERVED
        if clash:
            raise ReservedName(sorted(clash)[0], "cannot be bound in a typing context")
        object.__setattr__(self, "type_vars", frozenset(self.type_vars))

    def bind(self, name: str, ty: Type) -> "TypingContext":
        if name in RESERVED:
            raise ReservedName(name, "cannot be used as a variable")
        return TypingContext({**self.term_vars, name: ty}, self.type_vars)

    def bind_type(self, name: str) -> "TypingContext":
        return TypingContext(self.term_vars, self.type_vars | {name})


EMPTY_CONTEXT = TypingContext()


def type_of(term: Term, ctx: Optional[TypingContext] = None, inventory=None) -> Type:
    """Return the type of ``term`` or raise a ``TypeCheckError``.

    ``inventory`` is consulted for sort declarations; pass None to accept any sort name.
    """
    return _infer(term, ctx or EMPTY_CONTEXT, inventory, ())


def _check_type(ty, ctx, inventory, path):
    problem = type_problem(ty, inventory, ctx.type_vars)
    if problem:
        raise IllFormedType(ty, problem, path)


def _infer(t: Term, ctx: TypingContext, inv, path) -> Type:
    match t:
        case Const(name, ty):
            _check_type(ty, ctx, inv, path)
            sig = LOGICAL_SIGNATURES.get(name)
            if sig is not None and not types_equal(sig, ty):
                raise ReservedName(name, f"logical constant used at type {ty}, signature is {sig}")
            return ty
        case Var(name):
            try:
                return ctx.term_vars[name]
            except KeyError:
                raise UnboundVariable(name, path) from None
        case Abs(x, ann, body):
            _check_type(ann, ctx, inv, path)
            return Arrow(ann, _infer(body, ctx.bind(x, ann), inv, path + (0,)))
        case App(f, a):
            tf = _infer(f, ctx, inv, path + (0,))
            if not isinstance(tf, Arrow):
                raise NotAFunction(tf, path + (0,))
            ta = _infer(a, ctx, inv, path + (1,))
            if not types_equal(tf.domain, ta):
                raise ArgumentTypeMismatch(tf.domain, ta, path + (1,))
            return tf.codomain
        case TyAbs(binder, body):
            if binder in ctx.type_vars:
                # the binder would capture a variable already mentioned in the context
                new = fresh_name(binder, ctx.type_vars | free_type_vars_term(body))
                body = subst_type_in_term(body, binder, TypeVar(new))
                binder = new
            return ForallType(binder, _infer(body, ctx.bind_type(binder), inv, path + (0,)))
        case TyApp(f, ty):
            _check_type(ty, ctx, inv, path)
            tf = _infer(f, ctx, inv, path + (0,))
            if not isinstance(tf, ForallType):
                raise NotAFunction(tf, path + (0,), "a polymorphic type")
            return subst_type(tf.body, tf.binder, ty)
    raise TypeError(f"not a term: {t!r}")
