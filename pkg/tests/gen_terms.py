"""Random well-typed terms and random composition instances for the property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass

from sorted_montague.composer import Apply, ComposerOptions, Coord, Leaf
from sorted_montague.errors import CompositionError, UnknownWord
from sorted_montague.kernel import (
    PROP,
    Abs,
    App,
    Arrow,
    Const,
    ForallType,
    SortRef,
    Term,
    TyAbs,
    TyApp,
    Type,
    TypeVar,
    Var,
    alpha_equal,
    conj,
    exists,
    polymorphic_and,
    term_depth,
)
from sorted_montague.kernel.types import Sort
from sorted_montague.lexicon import (
    LexEntry,
    Modifier,
    SortInventory,
    SubsumptionEdge,
    build_lexicon,
)

SORTS = ("A", "B", "C")


# -- terms --------------------------------------------------------------------


class TermGen:
    """Type-directed generator that plants term and type redexes on purpose."""

    def __init__(self, rng: random.Random, sorts=SORTS):
        self.rng = rng
        self.sorts = [SortRef(s) for s in sorts]
        self.fresh = 0

    def name(self, stem="v"):
        self.fresh += 1
        return f"{stem}{self.fresh}"

    def small_type(self, depth=2, tvars=()) -> Type:
        rng = self.rng
        atoms = self.sorts + [PROP] + [TypeVar(a) for a in tvars]
        if depth == 0 or rng.random() < 0.5:
            return rng.choice(atoms)
        return Arrow(self.small_type(depth - 1, tvars), self.small_type(depth - 1, tvars))

    def term(self, ty: Type, depth: int, ctx: dict, tvars: tuple = ()) -> Term:
        rng = self.rng
        usable = [x for x, t in ctx.items() if t == ty]
        if depth <= 1:
            if usable and rng.random() < 0.6:
                return Var(rng.choice(usable))
            if isinstance(ty, Arrow) and depth == 1:
                x = self.name()
                return Abs(x, ty.domain, self.term(ty.codomain, 0, {**ctx, x: ty.domain}, tvars))
            return Const(self.name("c"), ty)
        roll = rng.random()
        if roll < 0.25:
            # beta redex
            a = self.small_type(1, tvars)
            x = self.name()
            fun = Abs(x, a, self.term(ty, depth - 2, {**ctx, x: a}, tvars))
            return App(fun, self.term(a, depth - 2, ctx, tvars))
        if roll < 0.35:
            # type redex through a polymorphic identity
            a = self.name("a")
            x = self.name()
            ident = TyAbs(a, Abs(x, TypeVar(a), Var(x)))
            return App(TyApp(ident, ty), self.term(ty, depth - 2, ctx, tvars))
        if roll < 0.45 and ty == PROP:
            alpha, beta, xi = (self.rng.choice(self.sorts) for _ in range(3))
            return polymorphic_and(
                alpha, beta,
                self.term(Arrow(alpha, PROP), depth - 3, ctx, tvars),
                self.term(Arrow(beta, PROP), depth - 3, ctx, tvars),
                xi,
                self.term(xi, depth - 3, ctx, tvars),
                self.term(Arrow(xi, alpha), depth - 3, ctx, tvars),
                self.term(Arrow(xi, beta), depth - 3, ctx, tvars),
            )
        if roll < 0.55 and ty == PROP:
            s = rng.choice(self.sorts)
            x = self.name()
            body = self.term(PROP, depth - 2, {**ctx, x: s}, tvars)
            if rng.random() < 0.5:
                body = conj(body, self.term(PROP, depth - 2, {**ctx, x: s}, tvars))
            return exists(x, s, body)
        if isinstance(ty, Arrow) and roll < 0.8:
            x = self.name()
            return Abs(x, ty.domain, self.term(ty.codomain, depth - 1, {**ctx, x: ty.domain}, tvars))
        if roll < 0.9:
            # polymorphic abstraction instantiated at once
            a = self.name("a")
            inner = self.term(ty, depth - 2, ctx, tvars + (a,))
            return TyApp(TyAbs(a, inner), rng.choice(self.sorts))
        a = self.small_type(1, tvars)
        return App(self.term(Arrow(a, ty), depth - 1, ctx, tvars), self.term(a, depth - 1, ctx, tvars))


def random_term(rng: random.Random, max_depth: int = 8) -> tuple[Term, Type]:
    """A closed well-typed term of depth at most ``max_depth`` and its intended type."""
    gen = TermGen(rng)
    while True:
        ty = gen.small_type(2) if rng.random() < 0.6 else PROP
        t = gen.term(ty, rng.randint(2, max_depth), {})
        if term_depth(t) <= max_depth:
            return t, ty


def rename_bound(term: Term, rng: random.Random) -> Term:
    """An alpha-variant of ``term`` with every binder renamed to a fresh random name."""
    counter = iter(range(10**9))

    def fresh(stem):
        return f"{stem}_{rng.randrange(1000)}_{next(counter)}"

    def ty_(t, tenv):
        if isinstance(t, TypeVar):
            return TypeVar(tenv.get(t.name, t.name))
        if isinstance(t, Arrow):
            return Arrow(ty_(t.domain, tenv), ty_(t.codomain, tenv))
        if isinstance(t, ForallType):
            b = fresh("r")
            return ForallType(b, ty_(t.body, {**tenv, t.binder: b}))
        return t

    def go(t, env, tenv):
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, Const):
            return Const(t.name, ty_(t.type, tenv))
        if isinstance(t, Abs):
            x = fresh("y")
            return Abs(x, ty_(t.annotation, tenv), go(t.body, {**env, t.var: x}, tenv))
        if isinstance(t, App):
            return App(go(t.fun, env, tenv), go(t.arg, env, tenv))
        if isinstance(t, TyAbs):
            b = fresh("r")
            return TyAbs(b, go(t.body, env, {**tenv, t.binder: b}))
        return TyApp(go(t.fun, env, tenv), ty_(t.type_arg, tenv))

    return go(term, {}, {})


def open_term(rng: random.Random, free: dict, max_depth: int = 6) -> tuple[Term, Type]:
    """A well-typed term that may mention the variables of ``free``."""
    gen = TermGen(rng)
    ty = gen.small_type(2)
    return gen.term(ty, rng.randint(1, max_depth), dict(free)), ty


# -- composition instances -----------------------------------------------------


@dataclass
class Instance:
    lexicon: object
    root: object
    max_chain: int
    all_readings: bool


class InstanceGen:
    """Random lexicon plus derivation within the oracle's size bounds.

    ``max_mods`` counts explicit modifiers; the implicit identity makes one more.
    """

    def __init__(self, rng: random.Random, max_sorts=6, max_mods=7, max_leaves=8):
        self.rng = rng
        self.max_mods = max_mods
        self.max_leaves = max_leaves
        n = rng.randint(2, max_sorts)
        self.sorts = [f"S{i}" for i in range(n)]
        self.edges = []
        for i in range(1, n):
            if rng.random() < 0.3:
                self.edges.append((self.sorts[i], self.sorts[rng.randrange(i)]))
        self.derive = bool(self.edges) and rng.random() < 0.5
        self.pool: list[Modifier] = []
        for k in range(rng.randint(1, 10)):
            self.pool.append(self._modifier(f"m{k}", self._sort(), self._sort()))
        self.entries: list[LexEntry] = []
        self.extra: dict[str, list[Modifier]] = {}

    def _sort(self) -> Type:
        return SortRef(self.rng.choice(self.sorts))

    def _modifier(self, name, source, target):
        rigid = self.rng.random() < 0.15
        return Modifier(name, Const(name, Arrow(source, target)), source, target, rigid)

    def _chain_to(self, source: Type, target: Type) -> list[Modifier]:
        """Fresh pool modifiers forming a path from source to target."""
        length = self.rng.choice([1, 1, 2, 3])
        stops = [source] + [self._sort() for _ in range(length - 1)] + [target]
        chain = []
        for s, t in zip(stops, stops[1:]):
            for m in self.pool:
                if m.source == s and m.target == t:
                    chain.append(m)
                    break
            else:
                m = self._modifier(f"m{len(self.pool)}", s, t)
                self.pool.append(m)
                chain.append(m)
        return chain

    def _leaf(self, ty: Type) -> Leaf:
        word = f"w{len(self.entries)}"
        self.entries.append(LexEntry(word, Const(word, ty), ty))
        self.extra[word] = []
        return Leaf(word)

    def _anchor(self, node) -> str:
        while not isinstance(node, Leaf):
            node = node.argument if isinstance(node, Apply) else node.shared
        return node.word

    def _repair(self, node, actual: Type, expected: Type):
        if actual != expected and self.rng.random() < 0.85:
            self.extra[self._anchor(node)].extend(self._chain_to(actual, expected))

    def node(self, ty: Type, leaves: int):
        rng = self.rng
        if leaves <= 1:
            return self._leaf(ty)
        if ty == PROP and leaves >= 3 and rng.random() < 0.35:
            split = [1, 1, 1]
            for _ in range(leaves - 3):
                split[rng.randrange(3)] += 1
            alpha, beta = self._sort(), self._sort()
            left = self.node(Arrow(alpha, PROP), split[0])
            right = self.node(Arrow(beta, PROP), split[1])
            xi = self._sort()
            shared = self.node(xi, split[2])
            self._repair(shared, xi, alpha)
            self._repair(shared, xi, beta)
            return Coord("and", left, right, shared)
        k = rng.randint(1, leaves - 1)
        expected = self._sort()
        actual = expected if rng.random() < 0.3 else self._sort()
        functor = self.node(Arrow(expected, ty), leaves - k)
        argument = self.node(actual, k)
        self._repair(argument, actual, expected)
        return Apply(functor, argument)

    def build(self) -> Instance:
        rng = self.rng
        root = self.node(PROP, rng.randint(1, self.max_leaves))
        entries = []
        for e in self.entries:
            mods = list(dict.fromkeys(self.extra[e.word]))
            others = [m for m in self.pool if m not in mods]
            rng.shuffle(others)
            mods += others[: rng.randint(0, 3)]
            rng.shuffle(mods)
            mods = mods[: self.max_mods]
            entries.append(LexEntry(e.word, e.main_term, e.main_type, tuple(mods)))
        inv = SortInventory(
            tuple(Sort(s, None, "domain") for s in self.sorts),
            tuple(SubsumptionEdge(a, b, f"coerce_{a}_{b}") for a, b in self.edges),
            {},
            self.derive,
        )
        lexicon = build_lexicon(inv, entries)
        return Instance(lexicon, root, rng.randint(1, 3), rng.random() < 0.3)


def random_instance(rng: random.Random) -> Instance:
    return InstanceGen(rng).build()


def outcome(fn, inst: Instance, max_readings: int = 16):
    """The reading list ``fn`` returns on ``inst``, or the exception it raises."""
    try:
        return fn(inst.root, inst.lexicon, ComposerOptions(inst.max_chain, max_readings, inst.all_readings))
    except (CompositionError, UnknownWord) as exc:
        return exc


def same_outcome(a, b) -> bool:
    """Readings agree pairwise up to alpha-equivalence with identical traces; errors agree exactly."""
    if isinstance(a, Exception) or isinstance(b, Exception):
        return type(a) is type(b) and str(a) == str(b)
    return len(a) == len(b) and all(
        alpha_equal(x.term, y.term) and x.trace == y.trace and x.type == y.type for x, y in zip(a, b))
