"""Concrete syntax for types and terms.

Types::

    t             the proposition type
    Pl            a sort (or a type variable, when bound)
    A -> B        right associative
    forall a. A

Terms::

    lam x:T. body      Lam a. body      f a b      f [T]

``λ``, ``Λ``, ``∀`` and ``→`` are accepted as synonyms.  Identifiers that are
not bound by an enclosing ``lam`` are constants, resolved against a signature.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

from ..errors import TermSyntaxError, UnknownConstant
from .constants import LOGICAL_SIGNATURES
from .terms import Abs, App, Const, Term, TyAbs, TyApp, Var
from .types import PROP, Arrow, ForallType, Prop, SortRef, Type, TypeVar

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>->|[()\[\].:,λΛ∀∃→∧∨¬]))"
)
KEYWORDS = frozenset({"lam", "Lam", "forall"})
_SYNONYMS = {"λ": "lam", "Λ": "Lam", "∀": "forall", "→": "->"}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "sym" or "end"
    text: str
    offset: int


def tokenize(text: str, synonyms: Optional[Mapping[str, str]] = None) -> list[Token]:
    synonyms = _SYNONYMS if synonyms is None else synonyms
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        value = m.group(m.lastgroup)
        value = synonyms.get(value, value)
        kind = "ident" if m.lastgroup == "ident" and value not in KEYWORDS else "sym"
        tokens.append(Token(kind, value, start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class TokenStream:
    def __init__(self, text: str, tokens: Optional[list[Token]] = None):
        self.text = text
        self.tokens = tokenize(text) if tokens is None else tokens
        self.i = 0

    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind != "end" and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.next()

    def ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            self.fail("expected an identifier")
        return self.next()

    def fail(self, message: str):
        tok = self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise TermSyntaxError(f"{message}, found {found}", self.text, tok.offset)

    def done(self):
        if self.peek().kind != "end":
            self.fail("unexpected trailing input")


# -- types --------------------------------------------------------------------


def parse_type_tokens(ts: TokenStream, tvars: frozenset = frozenset()) -> Type:
    if ts.accept("forall"):
        name = ts.ident().text
        ts.expect(".")
        return ForallType(name, parse_type_tokens(ts, tvars | {name}))
    left = _type_atom(ts, tvars)
    if ts.accept("->"):
        return Arrow(left, parse_type_tokens(ts, tvars))
    return left


def _type_atom(ts: TokenStream, tvars) -> Type:
    if ts.accept("("):
        ty = parse_type_tokens(ts, tvars)
        ts.expect(")")
        return ty
    name = ts.ident().text
    if name in tvars:
        return TypeVar(name)
    if name == "t":
        return PROP
    return SortRef(name)


def parse_type(text: str, type_vars: Iterable[str] = ()) -> Type:
    ts = TokenStream(text)
    ty = parse_type_tokens(ts, frozenset(type_vars))
    ts.done()
    return ty


# -- terms --------------------------------------------------------------------


class _TermParser:
    def __init__(self, ts: TokenStream, resolve: Callable[[str, Token], Term]):
        self.ts = ts
        self.resolve = resolve

    def term(self, vars_: frozenset, tvars: frozenset) -> Term:
        ts = self.ts
        if ts.accept("lam"):
            name = ts.ident().text
            ts.expect(":")
            ann = parse_type_tokens(ts, tvars)
            ts.expect(".")
            return Abs(name, ann, self.term(vars_ | {name}, tvars))
        if ts.accept("Lam"):
            name = ts.ident().text
            ts.expect(".")
            return TyAbs(name, self.term(vars_, tvars | {name}))
        head = self.atom(vars_, tvars)
        while True:
            if ts.at("["):
                ts.next()
                ty = parse_type_tokens(ts, tvars)
                ts.expect("]")
                head = TyApp(head, ty)
            elif ts.at("(") or ts.peek().kind == "ident":
                head = App(head, self.atom(vars_, tvars))
            elif ts.at("lam") or ts.at("Lam"):
                # a trailing abstraction extends to the end
                head = App(head, self.term(vars_, tvars))
            else:
                return head

    def atom(self, vars_, tvars) -> Term:
        ts = self.ts
        if ts.accept("("):
            t = self.term(vars_, tvars)
            ts.expect(")")
            return t
        tok = ts.ident()
        if tok.text in vars_:
            return Var(tok.text)
        return self.resolve(tok.text, tok)


def parse_term(
    text: str,
    signature: Optional[Mapping[str, Type]] = None,
    *,
    variables: Iterable[str] = (),
    type_vars: Iterable[str] = (),
) -> Term:
    """Parse a term; every free identifier must be a logical constant or in ``signature``.

    Names in ``variables`` parse as free term variables.
    """
    signature = signature or {}

    def resolve(name, tok):
        ty = LOGICAL_SIGNATURES.get(name) or signature.get(name)
        if ty is None:
            raise UnknownConstant(name, text, tok.offset)
        return Const(name, ty)

    return parse_term_with(text, resolve, variables=variables, type_vars=type_vars)


def parse_term_with(text, resolve, *, variables=(), type_vars=()) -> Term:
    ts = TokenStream(text)
    term = _TermParser(ts, resolve).term(frozenset(variables), frozenset(type_vars))
    ts.done()
    return term


# -- printing -----------------------------------------------------------------


def format_type(ty: Type) -> str:
    match ty:
        case Prop():
            return "t"
        case SortRef(name) | TypeVar(name):
            return name
        case Arrow(d, c):
            left = format_type(d)
            if isinstance(d, (Arrow, ForallType)):
                left = f"({left})"
            return f"{left} -> {format_type(c)}"
        case ForallType(binder, body):
            return f"forall {binder}. {format_type(body)}"
    return repr(ty)


def format_annotation(ty: Type) -> str:
    s = format_type(ty)
    return f"({s})" if isinstance(ty, (Arrow, ForallType)) else s


def format_term(term: Term) -> str:
    match term:
        case Const(name, _) | Var(name):
            return name
        case Abs(x, ann, body):
            return f"lam {x}:{format_annotation(ann)}. {format_term(body)}"
        case TyAbs(binder, body):
            return f"Lam {binder}. {format_term(body)}"
        case App(f, a):
            return f"{_format_fun(f)} {_format_arg(a)}"
        case TyApp(f, ty):
            return f"{_format_fun(f)} [{format_type(ty)}]"
    return repr(term)


def _format_fun(t: Term) -> str:
    s = format_term(t)
    return f"({s})" if isinstance(t, (Abs, TyAbs)) else s


def _format_arg(t: Term) -> str:
    s = format_term(t)
    return s if isinstance(t, (Const, Var)) else f"({s})"
