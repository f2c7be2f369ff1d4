"""Church-style second-order lambda terms and the syntactic operations on them."""

from __future__ import annotations

from dataclasses import dataclass

from .types import (
    Type,
    TypeVar,
    _teq,
    free_type_vars,
    fresh_name,
    subst_type,
)


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        from .syntax import format_term

        return format_term(self)


@dataclass(frozen=True)
class Const(Term):
    name: str
    type: Type


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Abs(Term):
    var: str
    annotation: Type
    body: Term


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class TyAbs(Term):
    binder: str
    body: Term


@dataclass(frozen=True)
class TyApp(Term):
    fun: Term
    type_arg: Type


def app(fun: Term, *args) -> Term:
    """Curried application; ``Type`` arguments become type applications."""
    for a in args:
        fun = TyApp(fun, a) if isinstance(a, Type) else App(fun, a)
    return fun


def unwind(term: Term) -> tuple[Term, list]:
    """Split an application spine into its head and its arguments (terms or types)."""
    args = []
    while True:
        match term:
            case App(f, a):
                args.append(a)
                term = f
            case TyApp(f, ty):
                args.append(ty)
                term = f
            case _:
                args.reverse()
                return term, args


def _memoized(attr: str):
    """Cache a structural function on each (immutable) node it is computed for."""

    def decorate(fn):
        def wrapper(term):
            try:
                return term.__dict__[attr]
            except KeyError:
                value = fn(term)
                object.__setattr__(term, attr, value)
                return value

        wrapper.__name__, wrapper.__doc__ = fn.__name__, fn.__doc__
        return wrapper

    return decorate


@_memoized("_free_vars")
def free_vars(term: Term) -> frozenset[str]:
    match term:
        case Var(name):
            return frozenset((name,))
        case Abs(x, _, body):
            return free_vars(body) - {x}
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case TyAbs(_, body) | TyApp(body, _):
            return free_vars(body)
        case _:
            return frozenset()


def bound_vars(term: Term) -> frozenset[str]:
    match term:
        case Abs(x, _, body):
            return bound_vars(body) | {x}
        case App(f, a):
            return bound_vars(f) | bound_vars(a)
        case TyAbs(_, body) | TyApp(body, _):
            return bound_vars(body)
        case _:
            return frozenset()


@_memoized("_free_type_vars")
def free_type_vars_term(term: Term) -> frozenset[str]:
    match term:
        case Const(_, ty):
            return free_type_vars(ty)
        case Abs(_, ann, body):
            return free_type_vars(ann) | free_type_vars_term(body)
        case App(f, a):
            return free_type_vars_term(f) | free_type_vars_term(a)
        case TyAbs(binder, body):
            return free_type_vars_term(body) - {binder}
        case TyApp(f, ty):
            return free_type_vars_term(f) | free_type_vars(ty)
        case _:
            return frozenset()


def constants(term: Term) -> dict[str, Type]:
    """Constant names occurring in ``term`` with their (first seen) types."""
    found: dict[str, Type] = {}

    def walk(t):
        match t:
            case Const(name, ty):
                found.setdefault(name, ty)
            case Abs(_, _, body) | TyAbs(_, body) | TyApp(body, _):
                walk(body)
            case App(f, a):
                walk(f)
                walk(a)

    walk(term)
    return found


def substitute(term: Term, var: str, replacement: Term) -> Term:
    """Capture-avoiding substitution of ``replacement`` for the free variable ``var``."""
    if var not in free_vars(term):
        return term
    return _subst(term, var, replacement, free_vars(replacement), free_type_vars_term(replacement))


def _subst(t, var, rep, rep_fv, rep_ftv):
    match t:
        case Var(name):
            return rep if name == var else t
        case Const():
            return t
        case App(f, a):
            return App(_subst(f, var, rep, rep_fv, rep_ftv), _subst(a, var, rep, rep_fv, rep_ftv))
        case TyApp(f, ty):
            return TyApp(_subst(f, var, rep, rep_fv, rep_ftv), ty)
        case Abs(x, ann, body):
            if x == var:
                return t
            if x in rep_fv:
                body_fv = free_vars(body)
                if var not in body_fv:
                    return t
                new = fresh_name(x, rep_fv | body_fv | {var})
                body = _subst(body, x, Var(new), frozenset((new,)), frozenset())
                x = new
            return Abs(x, ann, _subst(body, var, rep, rep_fv, rep_ftv))
        case TyAbs(binder, body):
            if binder in rep_ftv:
                new = fresh_name(binder, rep_ftv | free_type_vars_term(body))
                body = subst_type_in_term(body, binder, TypeVar(new))
                binder = new
            return TyAbs(binder, _subst(body, var, rep, rep_fv, rep_ftv))
    raise TypeError(f"not a term: {t!r}")


def subst_type_in_term(term: Term, name: str, replacement: Type) -> Term:
    """Substitute a type for a free type variable everywhere in a term."""
    if name not in free_type_vars_term(term):
        return term
    return _tsubst(term, name, replacement, free_type_vars(replacement))


def _tsubst(t, name, rep, rep_ftv):
    match t:
        case Const(n, ty):
            return Const(n, subst_type(ty, name, rep))
        case Var():
            return t
        case Abs(x, ann, body):
            return Abs(x, subst_type(ann, name, rep), _tsubst(body, name, rep, rep_ftv))
        case App(f, a):
            return App(_tsubst(f, name, rep, rep_ftv), _tsubst(a, name, rep, rep_ftv))
        case TyApp(f, ty):
            return TyApp(_tsubst(f, name, rep, rep_ftv), subst_type(ty, name, rep))
        case TyAbs(binder, body):
            if binder == name:
                return t
            if binder in rep_ftv:
                new = fresh_name(binder, rep_ftv | free_type_vars_term(body) | {name})
                body = _tsubst(body, binder, TypeVar(new), frozenset((new,)))
                binder = new
            return TyAbs(binder, _tsubst(body, name, rep, rep_ftv))
    raise TypeError(f"not a term: {t!r}")


def alpha_equal(a: Term, b: Term) -> bool:
    """Equality up to consistent renaming of bound term and type variables."""
    return _aeq(a, b, {}, {}, {}, {}, 0)


def _aeq(a, b, va, vb, ta, tb, depth) -> bool:
    match a, b:
        case Const(n1, t1), Const(n2, t2):
            return n1 == n2 and _teq(t1, t2, ta, tb, depth)
        case Var(x), Var(y):
            lx, ly = va.get(x), vb.get(y)
            if lx is None and ly is None:
                return x == y
            return lx == ly
        case Abs(x, A1, b1), Abs(y, A2, b2):
            return _teq(A1, A2, ta, tb, depth) and _aeq(
                b1, b2, {**va, x: depth}, {**vb, y: depth}, ta, tb, depth + 1
            )
        case App(f1, a1), App(f2, a2):
            return _aeq(f1, f2, va, vb, ta, tb, depth) and _aeq(a1, a2, va, vb, ta, tb, depth)
        case TyAbs(x, b1), TyAbs(y, b2):
            return _aeq(b1, b2, va, vb, {**ta, x: depth}, {**tb, y: depth}, depth + 1)
        case TyApp(f1, t1), TyApp(f2, t2):
            return _teq(t1, t2, ta, tb, depth) and _aeq(f1, f2, va, vb, ta, tb, depth)
        case _:
            return False


def term_depth(term: Term) -> int:
    match term:
        case Abs(_, _, body) | TyAbs(_, body) | TyApp(body, _):
            return 1 + term_depth(body)
        case App(f, a):
            return 1 + max(term_depth(f), term_depth(a))
        case _:
            return 1


def term_size(term: Term) -> int:
    match term:
        case Abs(_, _, body) | TyAbs(_, body) | TyApp(body, _):
            return 1 + term_size(body)
        case App(f, a):
            return 1 + term_size(f) + term_size(a)
        case _:
            return 1
