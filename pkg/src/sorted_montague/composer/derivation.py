"""Binary derivation trees and their s-expression syntax.

Tree addresses are tuples of child indices: an ``Apply`` has the functor at 0
and the argument at 1; a ``Coord`` has its two predicates at 0 and 1 and the
shared argument at 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from ..errors import DerivationSyntaxError
from ..lexicon import COORDINATION_WORD

Path = tuple[int, ...]


@dataclass(frozen=True)
class Leaf:
    word: str


@dataclass(frozen=True)
class Apply:
    functor: "Node"
    argument: "Node"


@dataclass(frozen=True)
class Coord:
    conj: str
    left: "Node"
    right: "Node"
    shared: "Node"

    def __post_init__(self):
        if self.conj != COORDINATION_WORD:
            raise ValueError(f"unknown conjunction {self.conj!r}")


Node = Union[Leaf, Apply, Coord]

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def _tokens(text: str) -> Iterator[tuple[str, int]]:
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise DerivationSyntaxError("unexpected character", pos)
            return
        pos = m.end()
        start = m.start(m.lastindex)
        yield m.group(m.lastindex), start


def parse_derivation(text: str) -> Node:
    """Parse ``(app F A)``, ``(coord and P Q A)`` or a bare word."""
    tokens = list(_tokens(text))
    if not tokens:
        raise DerivationSyntaxError("empty derivation", 0)
    pos = 0

    def node() -> Node:
        nonlocal pos
        if pos >= len(tokens):
            raise DerivationSyntaxError("unexpected end of input", len(text))
        tok, col = tokens[pos]
        pos += 1
        if tok == ")":
            raise DerivationSyntaxError("unexpected ')'", col)
        if tok != "(":
            return Leaf(tok)
        if pos >= len(tokens):
            raise DerivationSyntaxError("unexpected end of input", len(text))
        head, hcol = tokens[pos]
        pos += 1
        if head == "app":
            result: Node = Apply(node(), node())
        elif head == "coord":
            if pos >= len(tokens):
                raise DerivationSyntaxError("unexpected end of input", len(text))
            conj, ccol = tokens[pos]
            pos += 1
            if conj != COORDINATION_WORD:
                raise DerivationSyntaxError(f"unknown conjunction {conj!r}", ccol)
            result = Coord(conj, node(), node(), node())
        else:
            raise DerivationSyntaxError(f"expected 'app' or 'coord', found {head!r}", hcol)
        if pos >= len(tokens):
            raise DerivationSyntaxError("missing ')'", len(text))
        tok, col = tokens[pos]
        if tok != ")":
            raise DerivationSyntaxError(f"expected ')', found {tok!r}", col)
        pos += 1
        return result

    root = node()
    if pos != len(tokens):
        raise DerivationSyntaxError("trailing input", tokens[pos][1])
    return root


def format_derivation(node: Node) -> str:
    match node:
        case Leaf(word):
            return word
        case Apply(f, a):
            return f"(app {format_derivation(f)} {format_derivation(a)})"
        case Coord(conj, p, q, a):
            return f"(coord {conj} {format_derivation(p)} {format_derivation(q)} {format_derivation(a)})"
    raise TypeError(f"not a derivation node: {node!r}")


def children(node: Node) -> tuple[Node, ...]:
    match node:
        case Apply(f, a):
            return (f, a)
        case Coord(_, p, q, a):
            return (p, q, a)
    return ()


def node_at(root: Node, path: Path) -> Node:
    node = root
    for i in path:
        kids = children(node)
        if not 0 <= i < len(kids):
            raise KeyError(path)
        node = kids[i]
    return node


def leaves(node: Node) -> list[str]:
    if isinstance(node, Leaf):
        return [node.word]
    return [w for child in children(node) for w in leaves(child)]


def anchor(node: Node) -> str:
    """The word whose entry governs coercions on ``node`` when it is an argument."""
    match node:
        case Leaf(word):
            return word
        case Apply(_, a):
            return anchor(a)
        case Coord(_, _, _, a):
            return anchor(a)
    raise TypeError(f"not a derivation node: {node!r}")
