"""Exhaustive reference semantics for composition, for small instances only.

Rather than searching chains by type, every sequence of available modifiers up
to the chain bound is generated and kept when the kernel checker accepts it at
the site.  All assignments across sites are then composed unreduced (only the
cheapest ones unless every reading is wanted), normalized once, deduplicated
by alpha-equivalence and ranked.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

from ..errors import AmbiguityOverflow, RigidityViolation, SemanticAnomaly, TypeCheckError, UnknownWord
from ..kernel import (
    PROP,
    Abs,
    App,
    Arrow,
    Const,
    ForallType,
    TyAbs,
    TyApp,
    TypeVar,
    Term,
    TypingContext,
    Var,
    alpha_equal,
    beta_normalize,
    polymorphic_and,
    type_of,
    types_equal,
)
from ..lexicon import Lexicon
from .compose import ComposerOptions, Reading, reading_key, steps_for
from .derivation import Apply, Coord, Leaf, Node, Path
from .raw import (
    NOT_A_FUNCTOR,
    PREDICATE_SHAPE,
    apply_chain,
    available_modifiers,
    chain_function,
    tried_names,
)


class _Oracle:
    def __init__(self, lexicon: Lexicon, opts: ComposerOptions):
        self.lexicon = lexicon
        self.opts = opts
        self.inv = lexicon.inventory
        self.units: list[list[tuple[int, dict]]] = []
        self.types: dict = {}
        self._accepts: dict = {}

    def sequences(self, node: Node, actual, expected) -> list[tuple]:
        mods = available_modifiers(self.lexicon, node)
        ok = []
        for k in range(self.opts.max_chain + 1):
            for seq in product(mods, repeat=k):
                if self.accepts(seq, actual, expected):
                    ok.append(seq)
        ok.sort(key=lambda s: (len(s), [m.name for m in s]))
        return ok

    def accepts(self, seq, actual, expected) -> bool:
        key = (tuple(m.name for m in seq), actual, expected)
        if key not in self._accepts:
            ctx = TypingContext({"a": actual})
            try:
                result = types_equal(type_of(apply_chain(seq, Var("a")), ctx, self.inv), expected)
            except TypeCheckError:
                result = False
            self._accepts[key] = result
        return self._accepts[key]

    def walk(self, node: Node, path: Path):
        """Return a representative term and type, recording each site's options."""
        term, ty = self._walk(node, path)
        self.types[path] = ty
        return term, ty

    def _walk(self, node: Node, path: Path):
        match node:
            case Leaf(word):
                try:
                    entry = self.lexicon.lookup(word)
                except UnknownWord:
                    raise UnknownWord(word, path) from None
                return entry.main_term, type_of(entry.main_term, None, self.inv)
            case Apply(functor, argument):
                f, tf = self.walk(functor, path + (0,))
                a, ta = self.walk(argument, path + (1,))
                if not isinstance(tf, Arrow):
                    raise SemanticAnomaly(None, tf, path + (0,), (), NOT_A_FUNCTOR)
                options = self.sequences(argument, ta, tf.domain)
                if not options:
                    raise SemanticAnomaly(tf.domain, ta, path + (1,),
                                          tried_names(self.lexicon, argument))
                self.units.append([(len(seq), {path + (1,): seq}) for seq in options])
                term = App(f, apply_chain(options[0], a))
                return term, type_of(term, None, self.inv)
            case Coord(_, left, right, shared):
                p, tp = self.walk(left, path + (0,))
                q, tq = self.walk(right, path + (1,))
                a, xi = self.walk(shared, path + (2,))
                for ty, i in ((tp, 0), (tq, 1)):
                    if not (isinstance(ty, Arrow) and types_equal(ty.codomain, PROP)):
                        raise SemanticAnomaly(None, ty, path + (i,), (), PREDICATE_SHAPE)
                tried = tried_names(self.lexicon, shared)
                fs = self.sequences(shared, xi, tp.domain)
                if not fs:
                    raise SemanticAnomaly(tp.domain, xi, path + (0,), tried)
                gs = self.sequences(shared, xi, tq.domain)
                if not gs:
                    raise SemanticAnomaly(tq.domain, xi, path + (1,), tried)
                pairs = []
                rejected = []
                for f, g in product(fs, gs):
                    rigid = [m.name for m in f + g if m.rigid]
                    if rigid and [m.name for m in f] != [m.name for m in g]:
                        rejected.append(rigid[0])
                    else:
                        pairs.append((len(f) + len(g), {path + (0,): f, path + (1,): g}))
                if not pairs:
                    raise RigidityViolation(rejected[0], path)
                self.units.append(pairs)
                f0, g0 = pairs[0][1][path + (0,)], pairs[0][1][path + (1,)]
                term = polymorphic_and(tp.domain, tq.domain, p, q, xi, a,
                                       chain_function(f0, xi), chain_function(g0, xi))
                return term, type_of(term, None, self.inv)
        raise TypeError(f"not a derivation node: {node!r}")


    def assemble(self, node: Node, path: Path, chains) -> Term:
        """The unreduced term under one assignment; node types do not depend on it."""
        match node:
            case Leaf(word):
                return self.lexicon.lookup(word).main_term
            case Apply(functor, argument):
                f = self.assemble(functor, path + (0,), chains)
                a = self.assemble(argument, path + (1,), chains)
                return App(f, apply_chain(chains[path + (1,)], a))
            case Coord(_, left, right, shared):
                p = self.assemble(left, path + (0,), chains)
                q = self.assemble(right, path + (1,), chains)
                a = self.assemble(shared, path + (2,), chains)
                xi = self.types[path + (2,)]
                return polymorphic_and(
                    self.types[path + (0,)].domain, self.types[path + (1,)].domain, p, q, xi, a,
                    chain_function(chains[path + (0,)], xi), chain_function(chains[path + (1,)], xi))
        raise TypeError(f"not a derivation node: {node!r}")


def _nameless(t, env=(), tenv=()):
    """A hashable de Bruijn rendering of a term: alpha-equal terms share it."""
    match t:
        case Const(name, ty):
            return ("c", name, _nameless_type(ty, tenv))
        case Var(name):
            return ("v", env.index(name)) if name in env else ("f", name)
        case Abs(x, ann, body):
            return ("l", _nameless_type(ann, tenv), _nameless(body, (x,) + env, tenv))
        case App(f, a):
            return ("a", _nameless(f, env, tenv), _nameless(a, env, tenv))
        case TyAbs(binder, body):
            return ("L", _nameless(body, env, (binder,) + tenv))
        case TyApp(f, ty):
            return ("A", _nameless(f, env, tenv), _nameless_type(ty, tenv))
    raise TypeError(f"not a term: {t!r}")


def _nameless_type(ty, tenv):
    match ty:
        case TypeVar(name):
            return ("v", tenv.index(name)) if name in tenv else ("f", name)
        case Arrow(d, c):
            return ("->", _nameless_type(d, tenv), _nameless_type(c, tenv))
        case ForallType(binder, body):
            return ("all", _nameless_type(body, (binder,) + tenv))
    return ty


def brute_force_oracle(root: Node, lexicon: Lexicon,
                       opts: Optional[ComposerOptions] = None) -> list[Reading]:
    """Reference implementation of ``compose``; exponential, meant for testing."""
    opts = opts or ComposerOptions()
    oracle = _Oracle(lexicon, opts)
    _, root_type = oracle.walk(root, ())
    # Only the cheapest assignments matter unless every reading is wanted: an
    # alpha-class containing a cheapest candidate is represented by one.
    kept = []
    least = None
    for assignment in product(*oracle.units):
        cost = sum(c for c, _ in assignment)
        if opts.all_readings or least is None or cost < least:
            if not opts.all_readings:
                kept = []
            least = cost
            kept.append(assignment)
        elif cost == least:
            kept.append(assignment)
    candidates = []
    for assignment in kept:
        chains = {}
        for _, part in assignment:
            chains.update(part)
        term = oracle.assemble(root, (), chains)
        trace = sorted((s for site, seq in chains.items() for s in steps_for(seq, site)),
                       key=lambda s: s.path)
        candidates.append(Reading(beta_normalize(term), root_type, tuple(trace)))
    candidates.sort(key=reading_key)
    distinct: list[Reading] = []
    buckets: dict = {}
    for r in candidates:
        bucket = buckets.setdefault(_nameless(r.term), [])
        if not any(alpha_equal(r.term, d.term) for d in bucket):
            bucket.append(r)
            distinct.append(r)
    if len(distinct) > opts.max_readings:
        raise AmbiguityOverflow(len(distinct), opts.max_readings)
    return distinct
