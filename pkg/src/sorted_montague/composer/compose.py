"""Type-driven composition with lexical coercions.

Every argument position is a coercion site.  When the argument's type differs
from what the functor expects, chains of modifiers licensed by the argument's
governing entry are searched; a coordination searches two chains, one per
conjunct, and combines them through the polymorphic conjunction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from ..errors import (
    AmbiguityOverflow,
    InvalidTraceAddress,
    ModifierNotAvailable,
    RigidityViolation,
    SemanticAnomaly,
    UnknownWord,
)
from ..kernel import (
    PROP,
    App,
    Arrow,
    Term,
    Type,
    app,
    beta_normalize,
    format_type,
    logical,
    types_equal,
)
from ..lexicon import Lexicon, Modifier
from ..logic import canonicalize
from .derivation import Apply, Coord, Leaf, Node, Path, anchor, node_at
from .raw import (
    NOT_A_FUNCTOR,
    PREDICATE_SHAPE,
    apply_chain,
    available_modifiers,
    build_raw_term,
    chain_function,
    tried_names,
)

Chain = list[Modifier]


@dataclass(frozen=True)
class ComposerOptions:
    max_chain: int = 2
    max_readings: int = 16
    all_readings: bool = False

    def __post_init__(self):
        for name in ("max_chain", "max_readings"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


def format_path(path: Path) -> str:
    return ".".join(map(str, path)) if path else "root"


@dataclass(frozen=True)
class CoercionStep:
    modifier: str
    path: Path
    source: Type
    target: Type

    def __str__(self):
        return f"{self.modifier}@{format_path(self.path)}: {format_type(self.source)} -> {format_type(self.target)}"


def render_trace(trace: Iterable[CoercionStep]) -> str:
    return "; ".join(map(str, trace))


@dataclass(frozen=True)
class Reading:
    term: Term
    type: Type
    trace: tuple[CoercionStep, ...] = ()

    @property
    def cost(self) -> int:
        return len(self.trace)


def reading_key(reading: Reading) -> tuple[int, str]:
    return reading.cost, render_trace(reading.trace)


def steps_for(chain: Sequence[Modifier], path: Path) -> tuple[CoercionStep, ...]:
    return tuple(CoercionStep(m.name, path, m.source, m.target) for m in chain)


def enumerate_coercions(actual: Type, expected: Type, available: Iterable[Modifier],
                        max_chain: int) -> list[Chain]:
    """Every chain of at most ``max_chain`` modifiers leading from ``actual`` to ``expected``.

    Identity modifiers are never part of a chain; the empty chain stands for
    the identity and is returned exactly when the two types agree.
    """
    mods: list[Modifier] = []
    seen = set()
    for m in available:
        if m.name not in seen and not m.is_identity:
            seen.add(m.name)
            mods.append(m)
    found: list[Chain] = []
    chain: Chain = []

    def extend(current: Type):
        if types_equal(current, expected):
            found.append(list(chain))
        if len(chain) == max_chain:
            return
        for m in mods:
            if types_equal(m.source, current):
                chain.append(m)
                extend(m.target)
                chain.pop()

    extend(actual)
    found.sort(key=lambda c: (len(c), [m.name for m in c]))
    return found


def _merge(*traces: Iterable[CoercionStep]) -> tuple[CoercionStep, ...]:
    return tuple(sorted((s for t in traces for s in t), key=lambda s: s.path))


def _first_rigid(f: Chain, g: Chain) -> Optional[str]:
    for m in list(f) + list(g):
        if m.rigid:
            return m.name
    return None


def _rigid_ok(f: Chain, g: Chain) -> bool:
    if _first_rigid(f, g) is None:
        return True
    return [m.name for m in f] == [m.name for m in g]


def _coord_pairs(f_chains, g_chains, all_readings, path):
    pairs = [(f, g) for f in f_chains for g in g_chains if _rigid_ok(f, g)]
    if not pairs:
        raise RigidityViolation(_first_rigid(f_chains[0], g_chains[0]), path)
    if not all_readings:
        least = min(len(f) + len(g) for f, g in pairs)
        pairs = [(f, g) for f, g in pairs if len(f) + len(g) == least]
    return pairs


def _predicate_domain(ty: Type, path: Path) -> Type:
    if not (isinstance(ty, Arrow) and types_equal(ty.codomain, PROP)):
        raise SemanticAnomaly(None, ty, path, (), PREDICATE_SHAPE)
    return ty.domain


def coordinate(conj: str, left: Sequence[Reading], right: Sequence[Reading],
               shared: Sequence[Reading], lexicon: Lexicon, opts: ComposerOptions, *,
               modifiers: Optional[Iterable[Modifier]] = None, path: Path = (),
               tried: Sequence[str] = ()) -> list[Reading]:
    """Copredication of two predicate reading sets over one shared argument.

    ``modifiers`` are those licensed by the shared argument's entry; by default
    only the lexicon's derived subsumption coercions are available.  The f
    chain is recorded at ``path + (0,)`` and the g chain at ``path + (1,)``.
    """
    if conj != "and":
        raise ValueError(f"unknown conjunction {conj!r}")
    if not (left and right and shared):
        return []
    mods = tuple(lexicon.derived_coercions if modifiers is None else modifiers)
    alpha = _predicate_domain(left[0].type, path + (0,))
    beta = _predicate_domain(right[0].type, path + (1,))
    xi = shared[0].type
    f_chains = enumerate_coercions(xi, alpha, mods, opts.max_chain)
    if not f_chains:
        raise SemanticAnomaly(alpha, xi, path + (0,), tried)
    g_chains = enumerate_coercions(xi, beta, mods, opts.max_chain)
    if not g_chains:
        raise SemanticAnomaly(beta, xi, path + (1,), tried)
    pairs = _coord_pairs(f_chains, g_chains, opts.all_readings, path)
    selectors = [(chain_function(f, xi), chain_function(g, xi),
                  steps_for(f, path + (0,)) + steps_for(g, path + (1,))) for f, g in pairs]
    out = []
    for p, q in product(left, right):
        # AND [alpha] [beta] p q [xi] is shared by every argument and selector pair
        head = beta_normalize(app(logical("AND"), alpha, beta, p.term, q.term, xi))
        for a in shared:
            for f, g, steps in selectors:
                term = beta_normalize(app(head, a.term, f, g))
                out.append(Reading(term, PROP, _merge(p.trace, q.trace, a.trace, steps)))
    return out


class _Composer:
    def __init__(self, lexicon: Lexicon, opts: ComposerOptions):
        self.lexicon = lexicon
        self.opts = opts
        self._chains: dict = {}

    def chains(self, node: Node, actual: Type, expected: Type) -> list[Chain]:
        key = (anchor(node), actual, expected)
        if key not in self._chains:
            mods = available_modifiers(self.lexicon, node)
            self._chains[key] = enumerate_coercions(actual, expected, mods, self.opts.max_chain)
        return self._chains[key]

    def visit(self, node: Node, path: Path) -> list[Reading]:
        match node:
            case Leaf(word):
                try:
                    entry = self.lexicon.lookup(word)
                except UnknownWord:
                    raise UnknownWord(word, path) from None
                return [Reading(entry.main_term, entry.main_type)]
            case Apply(functor, argument):
                fs = self.visit(functor, path + (0,))
                args = self.visit(argument, path + (1,))
                tf, ta = fs[0].type, args[0].type
                if not isinstance(tf, Arrow):
                    raise SemanticAnomaly(None, tf, path + (0,), (), NOT_A_FUNCTOR)
                site = path + (1,)
                chains = self.chains(argument, ta, tf.domain)
                if not chains:
                    raise SemanticAnomaly(tf.domain, ta, site,
                                          tried_names(self.lexicon, argument))
                if not self.opts.all_readings:
                    chains = [c for c in chains if len(c) == len(chains[0])]
                out = []
                for f, a in product(fs, args):
                    for chain in chains:
                        term = beta_normalize(App(f.term, apply_chain(chain, a.term)))
                        out.append(Reading(term, tf.codomain,
                                           _merge(f.trace, a.trace, steps_for(chain, site))))
                return out
            case Coord(conj, left, right, shared):
                ps = self.visit(left, path + (0,))
                qs = self.visit(right, path + (1,))
                args = self.visit(shared, path + (2,))
                return coordinate(conj, ps, qs, args, self.lexicon, self.opts,
                                  modifiers=available_modifiers(self.lexicon, shared),
                                  path=path, tried=tried_names(self.lexicon, shared))
        raise TypeError(f"not a derivation node: {node!r}")


def compose(root: Node, lexicon: Lexicon, opts: Optional[ComposerOptions] = None) -> list[Reading]:
    """All readings of ``root``, cheapest first, ties ordered by rendered trace.

    Raises ``SemanticAnomaly`` at the first node (in post-order) that admits no
    reading, and ``AmbiguityOverflow`` when more than ``opts.max_readings``
    distinct readings remain.
    """
    opts = opts or ComposerOptions()
    readings = sorted(_Composer(lexicon, opts).visit(root, ()), key=reading_key)
    distinct: dict[Term, Reading] = {}
    for r in readings:
        distinct.setdefault(canonicalize(r.term), r)
    out = list(distinct.values())
    if len(out) > opts.max_readings:
        raise AmbiguityOverflow(len(out), opts.max_readings)
    return out


def _site(root: Node, path: Path) -> Node:
    """The argument node whose entry governs the coercion site at ``path``."""
    if not path:
        raise InvalidTraceAddress(path)
    try:
        parent = node_at(root, path[:-1])
    except KeyError:
        raise InvalidTraceAddress(path) from None
    match parent:
        case Apply(_, argument) if path[-1] == 1:
            return argument
        case Coord(_, _, _, shared) if path[-1] in (0, 1):
            return shared
    raise InvalidTraceAddress(path)


def trace_chains(root: Node, lexicon: Lexicon,
                 trace: Iterable[CoercionStep]) -> dict[Path, Chain]:
    """Group a trace into per-site modifier chains, resolving names against the lexicon."""
    chains: dict[Path, Chain] = {}
    for step in trace:
        path = tuple(step.path)
        node = _site(root, path)
        try:
            entry = lexicon.lookup(anchor(node))
        except UnknownWord:
            raise UnknownWord(anchor(node), path) from None
        usable = {m.name: m for m in lexicon.derived_coercions}
        usable.update((m.name, m) for m in entry.modifiers)
        m = usable.get(step.modifier)
        if m is None or not (types_equal(m.source, step.source)
                             and types_equal(m.target, step.target)):
            raise ModifierNotAvailable(step.modifier, path)
        chains.setdefault(path, []).append(m)
    return chains


def replay_trace(root: Node, lexicon: Lexicon, trace: Iterable[CoercionStep]) -> Term:
    """Rebuild the normal-form term a trace denotes, independently of the search."""
    term, _ = build_raw_term(root, lexicon, trace_chains(root, lexicon, trace))
    return beta_normalize(term)
