"""Sort inventories: classifier-derived base sorts and their subsumption DAG."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional

from ..errors import (
    DuplicateSort,
    InvalidInventory,
    ParseError,
    SubsumptionCycle,
    UnknownSortInEdge,
)
from ..kernel import RESERVED, Arrow, Const, Sort, SortRef
from ..kernel.types import IDENTIFIER, RESERVED_TYPE_NAMES, SORT_NAME, TIERS
from . import _jsonloc
from .modifiers import Modifier


@dataclass(frozen=True)
class SubsumptionEdge:
    hyponym: str
    hyperonym: str
    coercion: str
    line: int = field(default=0, compare=False, repr=False)


@dataclass(frozen=True, order=True)
class Finding:
    """One violated invariant.  Reports sort by (line, kind, name)."""

    line: int
    kind: str
    name: str
    message: str = field(compare=False)
    detail: tuple = field(default=(), compare=False)

    def __str__(self):
        return f"line {self.line}: {self.kind}: {self.message}"


@dataclass(frozen=True, eq=False)
class SortInventory:
    sorts: tuple[Sort, ...]
    subsumption: tuple[SubsumptionEdge, ...] = ()
    noun_classifiers: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    derive_subsumption_coercions: bool = False
    description: Optional[str] = None

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.sorts)

    @cached_property
    def _index(self) -> dict[str, Sort]:
        index = {}
        for s in self.sorts:
            index.setdefault(s.name, s)
        return index

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self):
        return len(self.sorts)

    def sort(self, name: str) -> Sort:
        return self._index[name]

    def hyperonyms(self, name: str) -> list[str]:
        return [e.hyperonym for e in self.subsumption if e.hyponym == name]


def default_coercion_name(sub: str, sup: str) -> str:
    return f"coerce_{sub}_{sup}"


def validate_inventory(inv: SortInventory) -> list[Finding]:
    findings: list[Finding] = []
    add = findings.append
    seen: dict[str, Sort] = {}
    for s in inv.sorts:
        if not SORT_NAME.match(s.name or ""):
            add(Finding(s.line, "invalid-sort-name", s.name, f"{s.name!r} is not a valid sort name"))
        elif s.name in RESERVED_TYPE_NAMES:
            add(Finding(s.line, "reserved-sort-name", s.name,
                        f"{s.name!r} is reserved by the type syntax"))
        if s.tier not in TIERS:
            add(Finding(s.line, "invalid-tier", s.name,
                        f"sort {s.name!r} has tier {s.tier!r}; expected one of {', '.join(TIERS)}"))
        if s.name in seen:
            add(Finding(s.line, "duplicate-sort", s.name, f"sort {s.name!r} is declared twice"))
        else:
            seen[s.name] = s

    coercions: set[str] = set()
    for e in inv.subsumption:
        for end in (e.hyponym, e.hyperonym):
            if end not in seen:
                add(Finding(e.line, "unknown-sort-in-edge", end,
                            f"edge {e.hyponym} ⊑ {e.hyperonym} mentions undeclared sort {end!r}"))
        if not IDENTIFIER.match(e.coercion or ""):
            add(Finding(e.line, "invalid-coercion-name", e.coercion,
                        f"{e.coercion!r} is not a valid constant name"))
        elif e.coercion in RESERVED:
            add(Finding(e.line, "reserved-name", e.coercion,
                        f"coercion name {e.coercion!r} is a reserved logical constant"))
        if e.coercion in coercions:
            add(Finding(e.line, "duplicate-coercion", e.coercion,
                        f"coercion name {e.coercion!r} is used by two edges"))
        coercions.add(e.coercion)

    for cycle, line in _cycles(inv, seen):
        add(Finding(line, "subsumption-cycle", cycle[0],
                    "subsumption cycle: " + " ⊑ ".join(cycle), tuple(cycle)))

    for noun, classifiers in inv.noun_classifiers.items():
        for c in classifiers:
            if c not in seen:
                add(Finding(0, "unknown-classifier-sort", c,
                            f"noun {noun!r} lists undeclared classifier sort {c!r}"))
    return sorted(findings)


def _cycles(inv: SortInventory, declared) -> list[tuple[tuple[str, ...], int]]:
    graph: dict[str, list[SubsumptionEdge]] = {name: [] for name in declared}
    for e in inv.subsumption:
        if e.hyponym in declared and e.hyperonym in declared:
            graph[e.hyponym].append(e)
    order = {name: i for i, name in enumerate(declared)}
    state: dict[str, int] = {}  # 1 = on stack, 2 = done
    stack: list[str] = []
    edges_on_stack: list[SubsumptionEdge] = []
    found: dict[tuple[str, ...], int] = {}

    def visit(node):
        state[node] = 1
        stack.append(node)
        for e in graph[node]:
            nxt = e.hyperonym
            if state.get(nxt) == 1:
                i = stack.index(nxt)
                nodes = stack[i:]
                lines = [x.line for x in edges_on_stack[i:]] + [e.line]
                # rotate so the earliest declared sort comes first
                k = min(range(len(nodes)), key=lambda j: order[nodes[j]])
                nodes = nodes[k:] + nodes[:k]
                cycle = tuple(nodes) + (nodes[0],)
                found.setdefault(cycle, max(lines))
            elif nxt not in state:
                edges_on_stack.append(e)
                visit(nxt)
                edges_on_stack.pop()
        stack.pop()
        state[node] = 2

    for name in declared:
        if name not in state:
            visit(name)
    return list(found.items())


def _raise_for(findings: list[Finding]):
    first = findings[0]
    match first.kind:
        case "duplicate-sort":
            raise DuplicateSort(first.name, findings)
        case "unknown-sort-in-edge":
            raise UnknownSortInEdge(first.name, findings)
        case "subsumption-cycle":
            raise SubsumptionCycle(first.detail, findings)
    raise InvalidInventory(str(first), findings)


_TOP_KEYS = {"sorts", "subsumption", "noun_classifiers", "derive_subsumption_coercions",
             "description"}


def _expect(cond, line, message):
    if not cond:
        raise ParseError(line, message)


def parse_sort_inventory(document: str) -> SortInventory:
    """Build an inventory from its JSON document without validating invariants."""
    data = _jsonloc.loads(document)
    _expect(isinstance(data, dict), 1, "an inventory document must be a JSON object")
    top = _jsonloc.line_of(data, 1)
    unknown = sorted(set(data) - _TOP_KEYS)
    _expect(not unknown, top, f"unknown key {unknown[0]!r}" if unknown else "")
    _expect(isinstance(data.get("sorts"), list), top, "'sorts' must be a list")

    sorts = []
    for item in data["sorts"]:
        line = _jsonloc.line_of(item, top)
        _expect(isinstance(item, dict), line, "each sort must be an object")
        extra = sorted(set(item) - {"name", "tier", "gloss"})
        _expect(not extra, line, f"unknown sort key {extra[0]!r}" if extra else "")
        _expect(isinstance(item.get("name"), str), line, "sort 'name' must be a string")
        tier = item.get("tier", "domain")
        gloss = item.get("gloss")
        _expect(isinstance(tier, str), line, "sort 'tier' must be a string")
        _expect(gloss is None or isinstance(gloss, str), line, "sort 'gloss' must be a string")
        sorts.append(Sort(item["name"], gloss, tier, line))

    edges = []
    raw_edges = data.get("subsumption", [])
    _expect(isinstance(raw_edges, list), top, "'subsumption' must be a list")
    for item in raw_edges:
        line = _jsonloc.line_of(item, top)
        _expect(isinstance(item, dict), line, "each subsumption edge must be an object")
        extra = sorted(set(item) - {"sub", "super", "coercion"})
        _expect(not extra, line, f"unknown edge key {extra[0]!r}" if extra else "")
        sub, sup = item.get("sub"), item.get("super")
        _expect(isinstance(sub, str) and isinstance(sup, str), line,
                "edge 'sub' and 'super' must be strings")
        coercion = item.get("coercion", default_coercion_name(sub, sup))
        _expect(isinstance(coercion, str), line, "edge 'coercion' must be a string")
        edges.append(SubsumptionEdge(sub, sup, coercion, line))

    classifiers = data.get("noun_classifiers", {})
    _expect(isinstance(classifiers, dict), top, "'noun_classifiers' must be an object")
    nouns = {}
    for noun, sorts_for_noun in classifiers.items():
        _expect(isinstance(sorts_for_noun, list) and all(isinstance(s, str) for s in sorts_for_noun),
                _jsonloc.line_of(classifiers, top), f"classifiers of {noun!r} must be a list of strings")
        nouns[noun] = tuple(sorts_for_noun)

    derive = data.get("derive_subsumption_coercions", False)
    _expect(isinstance(derive, bool), top, "'derive_subsumption_coercions' must be a boolean")
    description = data.get("description")
    return SortInventory(tuple(sorts), tuple(edges), nouns, derive, description)


def load_sort_inventory(document: str) -> SortInventory:
    """Parse and validate; raises the exception matching the first finding."""
    inv = parse_sort_inventory(document)
    findings = validate_inventory(inv)
    if findings:
        _raise_for(findings)
    return inv


def dump_sort_inventory(inv: SortInventory) -> str:
    data: dict = {}
    if inv.description is not None:
        data["description"] = inv.description
    sorts = []
    for s in inv.sorts:
        item = {"name": s.name, "tier": s.tier}
        if s.gloss is not None:
            item["gloss"] = s.gloss
        sorts.append(item)
    data["sorts"] = sorts
    data["subsumption"] = [
        {"sub": e.hyponym, "super": e.hyperonym, "coercion": e.coercion} for e in inv.subsumption
    ]
    data["noun_classifiers"] = {noun: list(cs) for noun, cs in inv.noun_classifiers.items()}
    data["derive_subsumption_coercions"] = inv.derive_subsumption_coercions
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def coercion_constants(inv: SortInventory) -> list[Modifier]:
    """One non-rigid modifier per subsumption edge, hyponym to hyperonym.

    Chains through several edges are left to the composer's search.
    """
    found = []
    for e in inv.subsumption:
        source, target = SortRef(e.hyponym), SortRef(e.hyperonym)
        found.append(Modifier(e.coercion, Const(e.coercion, Arrow(source, target)), source, target))
    return found


def classifiers_of(inv: SortInventory, noun: str) -> list[str]:
    return list(inv.noun_classifiers.get(noun, ()))


def topological_sorts(inv: SortInventory) -> list[Sort]:
    """Hyperonyms before their hyponyms; declaration order breaks ties."""
    position = {s.name: i for i, s in enumerate(inv.sorts)}
    pending = {s.name: 0 for s in inv.sorts}
    below: dict[str, list[str]] = {s.name: [] for s in inv.sorts}
    for e in inv.subsumption:
        if e.hyponym in pending and e.hyperonym in pending:
            pending[e.hyponym] += 1
            below[e.hyperonym].append(e.hyponym)
    ready = sorted((n for n, k in pending.items() if k == 0), key=position.get)
    out = []
    while ready:
        name = ready.pop(0)
        out.append(inv.sort(name))
        for sub in below[name]:
            pending[sub] -= 1
            if pending[sub] == 0:
                ready.append(sub)
                ready.sort(key=position.get)
    return out
