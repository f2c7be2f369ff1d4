"""Lexical entries: a main term plus the modifiers that license type shifts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from ..errors import (
    InferenceError,
    InvalidLexicon,
    LexiconError,
    LexiconReservedName,
    ModifierTypeMismatch,
    ParseError,
    TermSyntaxError,
    TypeCheckError,
    TypeErrorInEntry,
    UnknownWord,
)
from ..kernel import (
    RESERVED,
    Arrow,
    Type,
    alpha_equal,
    constants,
    elaborate,
    format_term,
    format_type,
    free_vars,
    parse_type,
    type_of,
    types_equal,
)
from ..kernel.types import IDENTIFIER, type_problem
from . import _jsonloc
from .inventory import Finding, SortInventory, coercion_constants
from .modifiers import Modifier, identity_modifier, identity_name

COORDINATION_WORD = "and"


@dataclass(frozen=True)
class LexEntry:
    word: str
    main_term: object
    main_type: Type
    modifiers: tuple[Modifier, ...] = ()
    line: int = field(default=0, compare=False, repr=False)

    def modifier(self, name: str) -> Modifier:
        for m in self.modifiers:
            if m.name == name:
                return m
        raise KeyError(name)

    @property
    def shifts(self) -> tuple[Modifier, ...]:
        """Modifiers other than identities."""
        return tuple(m for m in self.modifiers if not m.is_identity)


@dataclass(frozen=True, eq=False)
class Lexicon:
    inventory: SortInventory
    entries: Mapping[str, LexEntry]
    signature: Mapping[str, Type] = field(default_factory=dict)
    description: Optional[str] = None

    def lookup(self, word: str) -> LexEntry:
        try:
            return self.entries[word]
        except KeyError:
            raise UnknownWord(word) from None

    def __contains__(self, word) -> bool:
        return word in self.entries

    @cached_property
    def derived_coercions(self) -> tuple[Modifier, ...]:
        """Sort-level coercions, present only when the inventory opts in."""
        if not self.inventory.derive_subsumption_coercions:
            return ()
        return tuple(coercion_constants(self.inventory))

    def modifiers_for(self, word: str) -> tuple[Modifier, ...]:
        """Every non-identity modifier usable on an occurrence of ``word``."""
        entry = self.lookup(word)
        own = entry.shifts
        names = {m.name for m in own}
        return own + tuple(m for m in self.derived_coercions if m.name not in names)


def lookup(lexicon: Lexicon, word: str) -> LexEntry:
    return lexicon.lookup(word)


def _kernel_check(entry: LexEntry, inv: SortInventory) -> list[LexiconError]:
    errors: list[LexiconError] = []
    fv = free_vars(entry.main_term)
    if fv:
        errors.append(TypeErrorInEntry(entry.word, f"free variables {sorted(fv)}", entry.line))
        return errors
    try:
        ty = type_of(entry.main_term, None, inv)
        if not types_equal(ty, entry.main_type):
            errors.append(TypeErrorInEntry(
                entry.word, f"main term has type {ty}, declared {entry.main_type}", entry.line))
    except TypeCheckError as exc:
        errors.append(TypeErrorInEntry(entry.word, str(exc), entry.line))
    names = set()
    for m in entry.modifiers:
        if m.name in RESERVED:
            errors.append(LexiconReservedName(m.name, f"modifier of {entry.word!r}", entry.line))
        if m.name in names:
            errors.append(InvalidLexicon(
                f"entry {entry.word!r}: modifier {m.name!r} declared twice", entry.line))
        names.add(m.name)
        for side in (m.source, m.target):
            problem = type_problem(side, inv)
            if problem:
                errors.append(TypeErrorInEntry(entry.word, f"modifier {m.name!r}: {problem}",
                                               entry.line))
        try:
            computed = type_of(m.term, None, inv)
        except TypeCheckError as exc:
            errors.append(TypeErrorInEntry(entry.word, f"modifier {m.name!r}: {exc}", entry.line))
            continue
        if not types_equal(computed, m.type):
            errors.append(ModifierTypeMismatch(entry.word, m.name, m.type, computed, entry.line))
    return errors


def _with_identity(entry: LexEntry) -> LexEntry:
    ident = identity_modifier(entry.main_type)
    for m in entry.modifiers:
        if m.name == ident.name:
            return entry
    return LexEntry(entry.word, entry.main_term, entry.main_type, (ident,) + entry.modifiers,
                    entry.line)


def _consistency(entries: Iterable[LexEntry], derived: Iterable[Modifier]) -> list[LexiconError]:
    """A modifier name denotes one modifier across the whole lexicon."""
    errors: list[LexiconError] = []
    seen: dict[str, tuple[Modifier, str]] = {m.name: (m, "<inventory>") for m in derived}
    for entry in entries:
        for m in entry.shifts:
            if m.name not in seen:
                seen[m.name] = (m, entry.word)
                continue
            other, owner = seen[m.name]
            if not (alpha_equal(m.term, other.term) and types_equal(m.type, other.type)
                    and m.rigid == other.rigid):
                errors.append(InvalidLexicon(
                    f"modifier {m.name!r} of {entry.word!r} differs from the one of {owner!r}",
                    entry.line))
    return errors


def _signature_of(entries: Iterable[LexEntry], derived) -> tuple[dict[str, Type], list]:
    signature: dict[str, Type] = {}
    errors = []
    terms = [(e, e.main_term) for e in entries]
    terms += [(e, m.term) for e in entries for m in e.modifiers]
    terms += [(None, m.term) for m in derived]
    for owner, term in terms:
        for name, ty in constants(term).items():
            if name in RESERVED:
                continue
            if name in signature and not types_equal(signature[name], ty):
                where = owner.word if owner else "<inventory>"
                errors.append(InvalidLexicon(
                    f"constant {name!r} used at {ty} in {where!r} but at {signature[name]} elsewhere",
                    owner.line if owner else 0))
                continue
            signature.setdefault(name, ty)
    return signature, errors


def build_lexicon(inventory: SortInventory, entries: Iterable[LexEntry],
                  description: Optional[str] = None) -> Lexicon:
    """Validate entries against the kernel and assemble a lexicon.

    The implicit identity modifier is added to every entry.  Raises the first
    error found.
    """
    lexicon, errors = _assemble(inventory, list(entries), description)
    if errors:
        raise errors[0]
    return lexicon


def _assemble(inventory, entries, description=None):
    errors: list[LexiconError] = []
    by_word: dict[str, LexEntry] = {}
    for entry in entries:
        if entry.word == COORDINATION_WORD:
            errors.append(LexiconReservedName(entry.word, "the coordination word", entry.line))
            continue
        if entry.word in by_word:
            errors.append(InvalidLexicon(f"word {entry.word!r} has two entries", entry.line))
            continue
        entry = _with_identity(entry)
        errors.extend(_kernel_check(entry, inventory))
        by_word[entry.word] = entry
    derived = coercion_constants(inventory)
    errors.extend(_consistency(by_word.values(), derived))
    signature, sig_errors = _signature_of(by_word.values(), derived)
    errors.extend(sig_errors)
    return Lexicon(inventory, by_word, signature, description), errors


# -- file format --------------------------------------------------------------


def _parse_type_at(text, line, inv, what):
    if not isinstance(text, str):
        raise ParseError(line, f"{what} must be a string")
    try:
        ty = parse_type(text)
    except TermSyntaxError as exc:
        raise ParseError(line, f"{what}: {exc}") from None
    return ty


def _read_document(document: str, inv: SortInventory):
    """Return (entries, errors, description); parse errors abort."""
    data = _jsonloc.loads(document)
    if not isinstance(data, dict):
        raise ParseError(1, "a lexicon document must be a JSON object")
    top = _jsonloc.line_of(data, 1)
    unknown = sorted(set(data) - {"entries", "constants", "description"})
    if unknown:
        raise ParseError(top, f"unknown key {unknown[0]!r}")
    if not isinstance(data.get("entries"), list):
        raise ParseError(top, "'entries' must be a list")

    errors: list[LexiconError] = []
    signature: dict[str, Type] = {}
    declared = data.get("constants", {})
    if not isinstance(declared, dict):
        raise ParseError(top, "'constants' must be an object")
    decl_line = _jsonloc.line_of(declared, top)
    for name, text in declared.items():
        ty = _parse_type_at(text, decl_line, inv, f"type of constant {name!r}")
        if name in RESERVED:
            errors.append(LexiconReservedName(name, "cannot be redeclared", decl_line))
            continue
        if not IDENTIFIER.match(name):
            raise ParseError(decl_line, f"{name!r} is not a valid constant name")
        problem = type_problem(ty, inv)
        if problem:
            errors.append(InvalidLexicon(f"constant {name!r}: {problem}", decl_line))
            continue
        signature[name] = ty
    for m in coercion_constants(inv):
        if m.name in signature and not types_equal(signature[m.name], m.type):
            errors.append(InvalidLexicon(
                f"constant {m.name!r} is a subsumption coercion of type {m.type}", decl_line))
        signature.setdefault(m.name, m.type)

    entries = []
    for item in data["entries"]:
        line = _jsonloc.line_of(item, top)
        if not isinstance(item, dict):
            raise ParseError(line, "each entry must be an object")
        extra = sorted(set(item) - {"word", "term", "type", "modifiers"})
        if extra:
            raise ParseError(line, f"unknown entry key {extra[0]!r}")
        word = item.get("word")
        if not isinstance(word, str) or not word or any(c.isspace() or c in "()" for c in word):
            raise ParseError(line, "entry 'word' must be a nonempty token")
        main_type = _parse_type_at(item.get("type"), line, inv, f"type of {word!r}")
        term_text = item.get("term")
        if not isinstance(term_text, str):
            raise ParseError(line, f"term of {word!r} must be a string")
        problem = type_problem(main_type, inv)
        if problem:
            errors.append(TypeErrorInEntry(word, problem, line))
            continue
        try:
            main = _elaborate(term_text, signature, main_type, line,
                              lambda computed: _entry_clash(word, main_type, computed, line))
        except LexiconError as exc:
            errors.append(exc)
            continue

        modifiers = []
        raw_mods = item.get("modifiers", [])
        if not isinstance(raw_mods, list):
            raise ParseError(line, f"modifiers of {word!r} must be a list")
        ok = True
        for mod in raw_mods:
            mline = _jsonloc.line_of(mod, line)
            if not isinstance(mod, dict):
                raise ParseError(mline, "each modifier must be an object")
            extra = sorted(set(mod) - {"name", "term", "source", "target", "rigid"})
            if extra:
                raise ParseError(mline, f"unknown modifier key {extra[0]!r}")
            name = mod.get("name")
            if not isinstance(name, str) or not IDENTIFIER.match(name):
                raise ParseError(mline, "modifier 'name' must be an identifier")
            if name in RESERVED:
                errors.append(LexiconReservedName(name, f"modifier of {word!r}", mline))
                ok = False
                continue
            source = _parse_type_at(mod.get("source"), mline, inv, f"source of {name!r}")
            target = _parse_type_at(mod.get("target"), mline, inv, f"target of {name!r}")
            rigid = mod.get("rigid", False)
            if not isinstance(rigid, bool):
                raise ParseError(mline, f"'rigid' of {name!r} must be a boolean")
            mtext = mod.get("term", name)
            if not isinstance(mtext, str):
                raise ParseError(mline, f"term of modifier {name!r} must be a string")
            declared_ty = Arrow(source, target)
            problem = type_problem(source, inv) or type_problem(target, inv)
            if problem:
                errors.append(TypeErrorInEntry(word, f"modifier {name!r}: {problem}", mline))
                ok = False
                continue

            def clash(computed, name=name, declared_ty=declared_ty, mline=mline):
                raise ModifierTypeMismatch(word, name, declared_ty, computed, mline)

            try:
                mterm = _elaborate(mtext, signature, declared_ty, mline, clash)
            except LexiconError as exc:
                errors.append(exc)
                ok = False
                continue
            modifiers.append(Modifier(name, mterm, source, target, rigid))
        if ok:
            entries.append(LexEntry(word, main, main_type, tuple(modifiers), line))
    return entries, errors, data.get("description")


def _entry_clash(word, declared, computed, line):
    raise TypeErrorInEntry(word, f"main term has type {computed}, declared {declared}", line)


def _elaborate(text, signature, expected, line, on_mismatch):
    try:
        result = elaborate(text, signature, expected, on_mismatch=on_mismatch)
    except TermSyntaxError as exc:
        raise ParseError(line, str(exc)) from None
    except InferenceError as exc:
        raise InvalidLexicon(str(exc), line) from None
    signature.update(result.new_constants)
    return result.term


def check_lexicon(document: str, inventory: SortInventory) -> tuple[Optional[Lexicon], list[Finding]]:
    """Load as far as possible and report every problem as a finding."""
    try:
        entries, errors, description = _read_document(document, inventory)
    except ParseError as exc:
        return None, [Finding(exc.line, "parse-error", "", exc.message)]
    lexicon, more = _assemble(inventory, entries, description)
    return lexicon, sorted(_finding(e) for e in errors + more)


def _finding(exc: LexiconError) -> Finding:
    kind = {
        ModifierTypeMismatch: "modifier-type-mismatch",
        TypeErrorInEntry: "type-error",
        LexiconReservedName: "reserved-name",
        ParseError: "parse-error",
    }.get(type(exc), "invalid-lexicon")
    name = getattr(exc, "word", None) or getattr(exc, "name", "") or ""
    return Finding(getattr(exc, "line", 0), kind, name, str(exc))


def load_lexicon(document: str, inventory: SortInventory) -> Lexicon:
    entries, errors, description = _read_document(document, inventory)
    lexicon, more = _assemble(inventory, entries, description)
    errors = errors + more
    if errors:
        raise min(errors, key=lambda e: getattr(e, "line", 0))
    return lexicon


def dump_lexicon(lexicon: Lexicon) -> str:
    derived = {m.name for m in coercion_constants(lexicon.inventory)}
    data: dict = {}
    if lexicon.description is not None:
        data["description"] = lexicon.description
    data["constants"] = {
        name: format_type(ty) for name, ty in sorted(lexicon.signature.items()) if name not in derived
    }
    entries = []
    for entry in lexicon.entries.values():
        mods = []
        for m in entry.modifiers:
            if m.is_identity and m.name == identity_name(entry.main_type):
                continue
            mods.append({"name": m.name, "term": format_term(m.term), "source": format_type(m.source),
                         "target": format_type(m.target), "rigid": m.rigid})
        item = {"word": entry.word, "term": format_term(entry.main_term),
                "type": format_type(entry.main_type)}
        if mods:
            item["modifiers"] = mods
        entries.append(item)
    data["entries"] = entries
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
