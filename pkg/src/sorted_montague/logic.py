"""Rendering normal-form terms as many-sorted predicate-logic formulas.

Curried constant applications flatten to ``pred(a1, ..., an)``; the logical
constants print as connectives and sorted quantifiers::

    huge_place(t3(Birmingham)) ∧ voted(t2(Birmingham))
    ∃x0:P. follow(x0, fm(route)) ∧ godown(x0)

Operands of a connective are parenthesized whenever they are themselves
connectives or quantifiers, so a formula parses back without precedence rules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .errors import FormulaSyntaxError, TermSyntaxError, UnrenderableTerm
from .kernel import (
    LOGICAL_SIGNATURES,
    Abs,
    App,
    Arrow,
    Const,
    ForallType,
    Prop,
    SortRef,
    Term,
    TyAbs,
    TyApp,
    Type,
    TypeVar,
    Var,
    format_type,
    types_equal,
    unwind,
)
from .kernel.constants import BINARY_CONNECTIVES, QUANTIFIERS
from .kernel.syntax import TokenStream, format_annotation, parse_type_tokens, tokenize

_UNICODE = {"and": "∧", "or": "∨", "implies": "→", "not": "¬", "Exists": "∃", "Forall": "∀",
            "lam": "λ", "Lam": "Λ"}
_ASCII = {"and": "and", "or": "or", "implies": "implies", "not": "not ", "Exists": "exists ",
          "Forall": "forall ", "lam": "lam ", "Lam": "Lam "}


# -- canonical names ----------------------------------------------------------


def _census(term: Term) -> tuple[set[str], set[str]]:
    """Names a canonical binder must avoid: (term-level names, type-level names)."""
    names: set[str] = set()
    tnames: set[str] = set()

    def ty(t: Type, bound: frozenset):
        match t:
            case SortRef(name):
                names.add(name)
                tnames.add(name)
            case TypeVar(name):
                if name not in bound:
                    tnames.add(name)
            case Arrow(d, c):
                ty(d, bound)
                ty(c, bound)
            case ForallType(binder, body):
                ty(body, bound | {binder})

    def go(t: Term, bound: frozenset, tbound: frozenset):
        match t:
            case Const(name, cty):
                names.add(name)
                ty(cty, tbound)
            case Var(name):
                if name not in bound:
                    names.add(name)
            case Abs(x, ann, body):
                ty(ann, tbound)
                go(body, bound | {x}, tbound)
            case App(f, a):
                go(f, bound, tbound)
                go(a, bound, tbound)
            case TyAbs(binder, body):
                go(body, bound, tbound | {binder})
            case TyApp(f, targ):
                go(f, bound, tbound)
                ty(targ, tbound)

    go(term, frozenset(), frozenset())
    return names, tnames


def _ground(t: Type) -> bool:
    """No type variables or binders anywhere in ``t``."""
    while isinstance(t, Arrow):
        if not _ground(t.domain):
            return False
        t = t.codomain
    return isinstance(t, (SortRef, Prop))


class _Names:
    def __init__(self, stem: str, avoid: set[str]):
        self.stem = stem
        self.avoid = avoid
        self.n = 0

    def fresh(self) -> str:
        while True:
            name = f"{self.stem}{self.n}"
            self.n += 1
            if name not in self.avoid:
                return name


def canonicalize(term: Term) -> Term:
    """Rename bound variables to x0, x1, ... and type binders to a0, a1, ...

    Names are handed out in leftmost-outermost order, skipping any that would
    clash with a free variable, a constant or a sort of the term.
    """
    names, tnames = _census(term)
    xs = _Names("x", names)
    as_ = _Names("a", names | tnames)

    def ty(t: Type, tenv) -> Type:
        if isinstance(t, (SortRef, Prop)) or (not tenv and _ground(t)):
            return t
        match t:
            case TypeVar(name):
                return TypeVar(tenv.get(name, name))
            case Arrow(d, c):
                return Arrow(ty(d, tenv), ty(c, tenv))
            case ForallType(binder, body):
                new = as_.fresh()
                return ForallType(new, ty(body, {**tenv, binder: new}))
        return t

    def go(t: Term, env, tenv) -> Term:
        match t:
            case Const(name, cty):
                return Const(name, ty(cty, tenv))
            case Abs(x, ann, body):
                new = xs.fresh()
                return Abs(new, ty(ann, tenv), go(body, {**env, x: new}, tenv))
            case App(f, a):
                f2 = go(f, env, tenv)
                return App(f2, go(a, env, tenv))
            case TyAbs(binder, body):
                new = as_.fresh()
                return TyAbs(new, go(body, env, {**tenv, binder: new}))
            case TyApp(f, targ):
                f2 = go(f, env, tenv)
                return TyApp(f2, ty(targ, tenv))
            case Var(name):
                return Var(env.get(name, name))
        raise TypeError(f"not a term: {t!r}")

    return go(term, {}, {})


# -- rendering ----------------------------------------------------------------


def _connective(term: Term) -> Optional[str]:
    """The logical constant a term is rendered with, if any."""
    head, args = unwind(term)
    if not isinstance(head, Const):
        return None
    if head.name in BINARY_CONNECTIVES and len(args) == 2 and not any(isinstance(a, Type) for a in args):
        return head.name
    if head.name == "not" and len(args) == 1 and not isinstance(args[0], Type):
        return "not"
    if _quantified(term) is not None:
        return head.name
    return None


def _quantified(term: Term):
    head, args = unwind(term)
    if (isinstance(head, Const) and head.name in QUANTIFIERS and len(args) == 2
            and isinstance(args[0], Type) and isinstance(args[1], Abs)
            and types_equal(args[0], args[1].annotation)):
        return head.name, args[1]
    return None


class _Renderer:
    def __init__(self, ascii: bool):
        self.sym = _ASCII if ascii else _UNICODE

    def formula(self, t: Term) -> str:
        match t:
            case Abs(x, ann, body):
                return f"{self.sym['lam']}{x}:{format_annotation(ann)}. {self.formula(body)}"
            case TyAbs(binder, body):
                return f"{self.sym['Lam']}{binder}. {self.formula(body)}"
        kind = _connective(t)
        head, args = unwind(t)
        if kind in BINARY_CONNECTIVES:
            return f"{self.operand(args[0])} {self.sym[kind]} {self.operand(args[1])}"
        if kind == "not":
            return f"{self.sym['not']}{self.operand(args[0])}"
        if kind in QUANTIFIERS:
            _, binder = _quantified(t)
            return (f"{self.sym[kind]}{binder.var}:{format_annotation(binder.annotation)}. "
                    f"{self.formula(binder.body)}")
        return self.application(head, args)

    def operand(self, t: Term) -> str:
        s = self.formula(t)
        if _connective(t) not in (None, "not") or isinstance(t, (Abs, TyAbs)):
            return f"({s})"
        return s

    def application(self, head: Term, args: list) -> str:
        if isinstance(head, (Const, Var)):
            out = head.name
        else:
            out = f"({self.formula(head)})"
        group: list[str] = []
        for a in args:
            if isinstance(a, Type):
                if group:
                    out += f"({', '.join(group)})"
                    group = []
                out += f"[{format_type(a)}]"
            else:
                group.append(self.formula(a))
        if group:
            out += f"({', '.join(group)})"
        return out


def render(term: Term, ascii: bool = False) -> str:
    """Linear formula syntax for a normal-form term; ``ascii`` spells connectives as words.

    Raises ``UnrenderableTerm`` for a term that is an abstraction at top level.
    """
    if isinstance(term, (Abs, TyAbs)):
        raise UnrenderableTerm(f"a formula cannot be an abstraction: {term}")
    return _Renderer(ascii).formula(term)


def sort_annotations(term: Term) -> dict[str, str]:
    """Bound variable name to the sort (or type) it ranges over, in binding order."""
    found: dict[str, str] = {}

    def go(t):
        match t:
            case Abs(x, ann, body):
                found.setdefault(x, format_type(ann))
                go(body)
            case App(f, a):
                go(f)
                go(a)
            case TyAbs(_, body) | TyApp(body, _):
                go(body)

    go(term)
    return found


@dataclass(frozen=True)
class RenderedReading:
    formula: str
    sort_annotations: Mapping[str, str]
    trace: tuple[tuple[str, str, str, tuple[int, ...]], ...] = ()
    cost: int = 0
    type: str = field(default="t")


def render_reading(reading, ascii: bool = False) -> RenderedReading:
    term = canonicalize(reading.term)
    trace = tuple((s.modifier, format_type(s.source), format_type(s.target), tuple(s.path))
                  for s in reading.trace)
    return RenderedReading(render(term, ascii), sort_annotations(term), trace, reading.cost,
                           format_type(reading.type))


def reading_report(reading, ascii: bool = False) -> dict[str, Any]:
    """The JSON-ready report of one reading; keys in a fixed order."""
    rendered = render_reading(reading, ascii)
    return {
        "formula": rendered.formula,
        "type": rendered.type,
        "cost": rendered.cost,
        "trace": [
            {"modifier": m, "source": s, "target": t, "path": list(p)}
            for m, s, t, p in rendered.trace
        ],
    }


def dumps_report(document) -> str:
    return json.dumps(document, ensure_ascii=False)


# -- parsing rendered formulas ------------------------------------------------

_PARSE_SYNONYMS = {"λ": "lam", "Λ": "Lam", "→": "->", "∀": "forall"}
_INFIX = {"∧": "and", "∨": "or", "->": "implies", "and": "and", "or": "or", "implies": "implies"}


class _FormulaParser:
    def __init__(self, text: str, signature: Mapping[str, Type]):
        self.text = text
        self.ts = TokenStream(text, tokenize(text, _PARSE_SYNONYMS))
        self.signature = signature

    def constant(self, name: str, offset: int) -> Const:
        ty = LOGICAL_SIGNATURES.get(name) or self.signature.get(name)
        if ty is None:
            raise FormulaSyntaxError(f"unknown constant {name!r} at offset {offset}")
        return Const(name, ty)

    def _quantifier(self) -> Optional[str]:
        tok = self.ts.peek()
        if tok.text == "∃" or (tok.kind == "ident" and tok.text == "exists"):
            return "Exists"
        if tok.kind == "sym" and tok.text == "forall":
            return "Forall"
        return None

    def formula(self, vars_: frozenset, tvars: frozenset) -> Term:
        ts = self.ts
        quant = self._quantifier()
        if quant:
            ts.next()
            x = ts.ident().text
            ts.expect(":")
            ann = parse_type_tokens(ts, tvars)
            ts.expect(".")
            body = self.formula(vars_ | {x}, tvars)
            return App(TyApp(self.constant(quant, 0), ann), Abs(x, ann, body))
        if ts.accept("lam"):
            x = ts.ident().text
            ts.expect(":")
            ann = parse_type_tokens(ts, tvars)
            ts.expect(".")
            return Abs(x, ann, self.formula(vars_ | {x}, tvars))
        if ts.accept("Lam"):
            a = ts.ident().text
            ts.expect(".")
            return TyAbs(a, self.formula(vars_, tvars | {a}))
        left = self.unary(vars_, tvars)
        while True:
            tok = ts.peek()
            op = _INFIX.get(tok.text) if tok.kind != "end" else None
            if op is None:
                return left
            ts.next()
            if self._quantifier() or ts.at("lam") or ts.at("Lam"):
                right = self.formula(vars_, tvars)
            else:
                right = self.unary(vars_, tvars)
            left = App(App(self.constant(op, tok.offset), left), right)

    def unary(self, vars_, tvars) -> Term:
        ts = self.ts
        tok = ts.peek()
        if tok.text == "¬" or (tok.kind == "ident" and tok.text == "not"):
            ts.next()
            return App(self.constant("not", tok.offset), self.unary(vars_, tvars))
        return self.postfix(self.atom(vars_, tvars), vars_, tvars)

    def atom(self, vars_, tvars) -> Term:
        ts = self.ts
        if ts.accept("("):
            t = self.formula(vars_, tvars)
            ts.expect(")")
            return t
        tok = ts.ident()
        if tok.text in vars_:
            return Var(tok.text)
        return self.constant(tok.text, tok.offset)

    def postfix(self, head: Term, vars_, tvars) -> Term:
        ts = self.ts
        while True:
            if ts.accept("["):
                head = TyApp(head, parse_type_tokens(ts, tvars))
                ts.expect("]")
            elif ts.accept("("):
                head = App(head, self.formula(vars_, tvars))
                while ts.accept(","):
                    head = App(head, self.formula(vars_, tvars))
                ts.expect(")")
            else:
                return head


def parse_formula(text: str, signature: Optional[Mapping[str, Type]] = None) -> Term:
    """Read a rendered formula (Unicode or ASCII spelling) back into a term."""
    parser = _FormulaParser(text, signature or {})
    try:
        term = parser.formula(frozenset(), frozenset())
        parser.ts.done()
    except TermSyntaxError as exc:
        raise FormulaSyntaxError(str(exc)) from None
    return term
