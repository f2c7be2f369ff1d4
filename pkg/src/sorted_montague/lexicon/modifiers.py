from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..kernel import Abs, Arrow, SortRef, Term, Type, Var, alpha_equal, types_equal
from ..kernel.types import Prop


@dataclass(frozen=True)
class Modifier:
    """A lexically licensed type shift ``term : source -> target``.

    A rigid modifier used by one conjunct of a coordination forces the other
    conjunct to use the very same chain.
    """

    name: str
    term: Term
    source: Type
    target: Type
    rigid: bool = False

    @property
    def type(self) -> Type:
        return Arrow(self.source, self.target)

    @cached_property
    def is_identity(self) -> bool:
        return types_equal(self.source, self.target) and alpha_equal(
            self.term, Abs("x", self.source, Var("x"))
        )

    def __str__(self):
        flag = " (rigid)" if self.rigid else ""
        return f"{self.name}: {self.source} -> {self.target}{flag}"


def identity_name(ty: Type) -> str:
    match ty:
        case SortRef(name):
            return f"Id_{name}"
        case Prop():
            return "Id_t"
    return "Id"


def identity_modifier(ty: Type) -> Modifier:
    return Modifier(identity_name(ty), Abs("x", ty, Var("x")), ty, ty)
