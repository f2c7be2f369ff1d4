"""Exception hierarchy shared by every layer of the engine."""

from __future__ import annotations


class SortedMontagueError(Exception):
    """Base class for all engine errors."""


def _path(path) -> str:
    return ".".join(str(i) for i in path) or "root"


# -- kernel -------------------------------------------------------------------


class TypeCheckError(SortedMontagueError):
    pass


class UnboundVariable(TypeCheckError):
    def __init__(self, name: str, position=()):
        self.name = name
        self.position = tuple(position)
        super().__init__(f"unbound variable {name!r} at {_path(self.position)}")


class ArgumentTypeMismatch(TypeCheckError):
    def __init__(self, expected, actual, position=()):
        self.expected = expected
        self.actual = actual
        self.position = tuple(position)
        super().__init__(
            f"argument at {_path(self.position)} has type {actual}, expected {expected}"
        )


class NotAFunction(TypeCheckError):
    def __init__(self, type_, position=(), detail: str = "a function type"):
        self.type = type_
        self.position = tuple(position)
        super().__init__(f"term at {_path(self.position)} has type {type_}, expected {detail}")


class IllFormedType(TypeCheckError):
    def __init__(self, type_, reason: str, position=()):
        self.type = type_
        self.reason = reason
        self.position = tuple(position)
        super().__init__(f"ill-formed type {type_} at {_path(self.position)}: {reason}")


class ReservedName(SortedMontagueError):
    def __init__(self, name: str, detail: str = ""):
        self.name = name
        super().__init__(f"{name!r} is reserved" + (f": {detail}" if detail else ""))


class NormalizationBudgetExceeded(SortedMontagueError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"normalization exceeded the budget of {budget} contractions")


class TermSyntaxError(SortedMontagueError):
    def __init__(self, message: str, text: str = "", offset: int = 0):
        self.message = message
        self.text = text
        self.offset = offset
        where = f" at column {offset + 1}" if text else ""
        super().__init__(f"{message}{where}")


class UnknownConstant(TermSyntaxError):
    def __init__(self, name: str, text: str = "", offset: int = 0):
        self.name = name
        super().__init__(f"unknown constant {name!r}", text, offset)


class InferenceError(SortedMontagueError):
    """Constant types in a concrete term could not be reconstructed."""


# -- lexicon ------------------------------------------------------------------


class LexiconError(SortedMontagueError):
    line: int = 0


class ParseError(LexiconError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class InventoryError(LexiconError):
    """A sort inventory violates one of its invariants.

    ``findings`` carries the full validation report, not only the first problem.
    """

    def __init__(self, message: str, findings=()):
        self.findings = list(findings)
        super().__init__(message)


class DuplicateSort(InventoryError):
    def __init__(self, name: str, findings=()):
        self.name = name
        super().__init__(f"duplicate sort {name!r}", findings)


class UnknownSortInEdge(InventoryError):
    def __init__(self, name: str, findings=()):
        self.name = name
        super().__init__(f"subsumption edge mentions undeclared sort {name!r}", findings)


class SubsumptionCycle(InventoryError):
    def __init__(self, path, findings=()):
        self.path = tuple(path)
        super().__init__("subsumption cycle: " + " ⊑ ".join(self.path), findings)


class InvalidInventory(InventoryError):
    pass


class TypeErrorInEntry(LexiconError):
    def __init__(self, word: str, detail: str, line: int = 0):
        self.word = word
        self.detail = detail
        self.line = line
        super().__init__(f"entry {word!r}: {detail}")


class ModifierTypeMismatch(LexiconError):
    def __init__(self, word: str, modifier: str, declared, computed, line: int = 0):
        self.word = word
        self.modifier = modifier
        self.declared = declared
        self.computed = computed
        self.line = line
        super().__init__(
            f"entry {word!r}, modifier {modifier!r}: declared {declared}, term has type {computed}"
        )


class LexiconReservedName(ReservedName, LexiconError):
    def __init__(self, name: str, detail: str = "", line: int = 0):
        self.line = line
        super().__init__(name, detail)


class InvalidLexicon(LexiconError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(message)


class UnknownWord(LexiconError, LookupError):
    def __init__(self, word: str, path=None):
        self.word = word
        self.path = None if path is None else tuple(path)
        where = "" if path is None else f" at {_path(self.path)}"
        super().__init__(f"unknown word {word!r}{where}")

    def __str__(self):
        # LookupError would otherwise repr() the message
        return self.args[0]


# -- composer -----------------------------------------------------------------


class CompositionError(SortedMontagueError):
    pass


class DerivationSyntaxError(CompositionError):
    def __init__(self, message: str, column: int = 0):
        self.message = message
        self.column = column
        super().__init__(f"{message} (column {column + 1})")


class SemanticAnomaly(CompositionError):
    """No reading survives at a node: the selection restriction cannot be repaired."""

    def __init__(self, expected, actual, path=(), tried=(), reason: str = "type clash"):
        self.expected = expected
        self.actual = actual
        self.path = tuple(path)
        self.tried = tuple(tried)
        self.reason = reason
        want = "a function type" if expected is None else str(expected)
        super().__init__(
            f"{reason} at {_path(self.path)}: expected {want}, got {actual}"
            f"; tried modifiers: [{', '.join(self.tried)}]"
        )


class RigidityViolation(CompositionError):
    def __init__(self, modifier: str, path=()):
        self.modifier = modifier
        self.path = tuple(path)
        super().__init__(
            f"rigid modifier {modifier!r} blocks the coordination at {_path(self.path)}"
        )


class AmbiguityOverflow(CompositionError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} readings exceed the limit of {limit}")


class InvalidTraceAddress(CompositionError):
    def __init__(self, path):
        self.path = tuple(path)
        super().__init__(f"no coercion site at {_path(self.path)}")


class ModifierNotAvailable(CompositionError):
    def __init__(self, name: str, path):
        self.name = name
        self.path = tuple(path)
        super().__init__(f"modifier {name!r} is not available at {_path(self.path)}")


# -- logic --------------------------------------------------------------------


class UnrenderableTerm(SortedMontagueError):
    pass


class FormulaSyntaxError(SortedMontagueError):
    pass
