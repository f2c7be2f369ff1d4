"""Unreduced composition of a derivation under a fixed assignment of chains.

This is the route shared by trace replay and the brute-force oracle: it builds
the term the derivation denotes before any reduction and type-checks every
node with the kernel checker.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from ..errors import ModifierNotAvailable, SemanticAnomaly, UnknownWord
from ..kernel import PROP, Abs, App, Arrow, Term, Type, Var, polymorphic_and, type_of, types_equal
from ..lexicon import Lexicon, Modifier
from .derivation import Apply, Coord, Leaf, Node, Path, anchor

PREDICATE_SHAPE = "coordinated predicate must have type a -> t"
NOT_A_FUNCTOR = "functor is not a function"


def apply_chain(chain: Sequence[Modifier], term: Term) -> Term:
    for m in chain:
        term = App(m.term, term)
    return term


def chain_function(chain: Sequence[Modifier], ty: Type) -> Term:
    """``lam y:ty. m_k (... (m_1 y))``; the identity for the empty chain."""
    return Abs("y", ty, apply_chain(chain, Var("y")))


def available_modifiers(lexicon: Lexicon, node: Node) -> tuple[Modifier, ...]:
    """Non-identity modifiers usable when ``node`` is coerced as an argument."""
    return lexicon.modifiers_for(anchor(node))


def tried_names(lexicon: Lexicon, node: Node) -> tuple[str, ...]:
    """Every modifier an anomaly report lists as considered at ``node``."""
    word = anchor(node)
    own = [m.name for m in lexicon.lookup(word).modifiers]
    derived = [m.name for m in lexicon.derived_coercions if m.name not in own]
    return tuple(own + derived)


def _check_chain(chain, actual, expected, path, lexicon, node):
    current = actual
    for m in chain:
        if not types_equal(m.source, current):
            raise ModifierNotAvailable(m.name, path)
        current = m.target
    if not types_equal(current, expected):
        if chain:
            raise ModifierNotAvailable(chain[-1].name, path)
        raise SemanticAnomaly(expected, actual, path, tried_names(lexicon, node))


def build_raw_term(root: Node, lexicon: Lexicon,
                   chains: Mapping[Path, Sequence[Modifier]]) -> tuple[Term, Type]:
    """Compose ``root`` with the given chain at each coercion site, without reducing.

    Sites not mentioned in ``chains`` get the empty chain.  Raises
    ``SemanticAnomaly`` or ``ModifierNotAvailable`` when a site does not
    type-check.
    """
    inv = lexicon.inventory

    def build(node: Node, path: Path) -> tuple[Term, Type]:
        match node:
            case Leaf(word):
                try:
                    entry = lexicon.lookup(word)
                except UnknownWord:
                    raise UnknownWord(word, path) from None
                return entry.main_term, type_of(entry.main_term, None, inv)
            case Apply(functor, argument):
                f, tf = build(functor, path + (0,))
                a, ta = build(argument, path + (1,))
                if not isinstance(tf, Arrow):
                    raise SemanticAnomaly(None, tf, path + (0,), (), NOT_A_FUNCTOR)
                site = path + (1,)
                chain = chains.get(site, ())
                _check_chain(chain, ta, tf.domain, site, lexicon, argument)
                term = App(f, apply_chain(chain, a))
                return term, type_of(term, None, inv)
            case Coord(_, left, right, shared):
                p, tp = build(left, path + (0,))
                q, tq = build(right, path + (1,))
                a, xi = build(shared, path + (2,))
                for ty, i in ((tp, 0), (tq, 1)):
                    if not (isinstance(ty, Arrow) and types_equal(ty.codomain, PROP)):
                        raise SemanticAnomaly(None, ty, path + (i,), (), PREDICATE_SHAPE)
                f_chain = chains.get(path + (0,), ())
                g_chain = chains.get(path + (1,), ())
                _check_chain(f_chain, xi, tp.domain, path + (0,), lexicon, shared)
                _check_chain(g_chain, xi, tq.domain, path + (1,), lexicon, shared)
                term = polymorphic_and(tp.domain, tq.domain, p, q, xi, a,
                                       chain_function(f_chain, xi), chain_function(g_chain, xi))
                return term, type_of(term, None, inv)
        raise TypeError(f"not a derivation node: {node!r}")

    return build(root, ())
