"""Entity interning, reaction-system representation and the result function.

States, reactant/inhibitor/product sets are all :class:`EntitySet` values: an
integer bitmask over the ordinals of an :class:`EntityTable`. Python integers
have no fixed width, so the one-word and multi-word cases share one code path.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Optional, Sequence

from .config import get_settings
from .logging import get_logger

logger = get_logger(__name__)

ENTITY_NAME = re.compile(r"[A-Za-z0-9_]+")


class ReactionSystemError(Exception):
    """Base class for every error raised by the toolkit."""


class WidthMismatchError(ReactionSystemError, ValueError):
    """Raised when a set does not fit the background it is used with."""


class EntityError(ReactionSystemError, ValueError):
    """Raised when an entity name is invalid, duplicated, or unknown."""


def _check_width(expected: int, actual: int) -> None:
    if expected != actual:
        raise WidthMismatchError(f"background width mismatch: expected {expected}, got {actual}")


@dataclass(frozen=True, slots=True)
class EntitySet:
    """A subset of the background set, stored as a bitmask over entity ordinals."""

    width: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.width < 0:
            raise WidthMismatchError("width must be non-negative")
        if self.mask < 0 or self.mask >> self.width:
            raise WidthMismatchError(
                f"mask {self.mask:#x} has members outside a background of width {self.width}"
            )

    @classmethod
    def empty(cls, width: int) -> "EntitySet":
        return cls(width, 0)

    @classmethod
    def full(cls, width: int) -> "EntitySet":
        return cls(width, (1 << width) - 1)

    @classmethod
    def of(cls, width: int, ordinals: Iterable[int]) -> "EntitySet":
        mask = 0
        for ordinal in ordinals:
            if not 0 <= ordinal < width:
                raise WidthMismatchError(f"ordinal {ordinal} outside background of width {width}")
            mask |= 1 << ordinal
        return cls(width, mask)

    @classmethod
    def from_mask(cls, width: int, mask: int) -> "EntitySet":
        return cls(width, mask)

    def _other(self, other: "EntitySet") -> int:
        _check_width(self.width, other.width)
        return other.mask

    def __or__(self, other: "EntitySet") -> "EntitySet":
        return EntitySet(self.width, self.mask | self._other(other))

    def __and__(self, other: "EntitySet") -> "EntitySet":
        return EntitySet(self.width, self.mask & self._other(other))

    def __sub__(self, other: "EntitySet") -> "EntitySet":
        return EntitySet(self.width, self.mask & ~self._other(other))

    def __le__(self, other: "EntitySet") -> bool:
        return self.mask & ~self._other(other) == 0

    def __ge__(self, other: "EntitySet") -> bool:
        return other <= self

    def isdisjoint(self, other: "EntitySet") -> bool:
        return self.mask & self._other(other) == 0

    def __contains__(self, ordinal: object) -> bool:
        if not isinstance(ordinal, int) or not 0 <= ordinal < self.width:
            return False
        return bool(self.mask >> ordinal & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low


@dataclass(frozen=True, slots=True)
class EntityTable:
    """Ordered, duplicate-free entity names; ordinals are positions in ``names``."""

    names: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        index: dict[str, int] = {}
        for ordinal, name in enumerate(self.names):
            if not ENTITY_NAME.fullmatch(name):
                raise EntityError(f"invalid entity name {name!r}: use letters, digits and '_'")
            if name in index:
                raise EntityError(f"duplicate entity name {name!r}")
            index[name] = ordinal
        object.__setattr__(self, "index", index)

    @classmethod
    def from_names(
        cls, names: Iterable[str], max_background: Optional[int] = None
    ) -> "EntityTable":
        table = cls(tuple(names))
        cap = max_background if max_background is not None else get_settings().max_background
        if table.width > cap:
            raise EntityError(f"background of {table.width} entities exceeds the cap of {cap}")
        return table

    @property
    def width(self) -> int:
        return len(self.names)

    def lookup(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise EntityError(f"unknown entity {name!r}") from None

    def name_of(self, ordinal: int) -> str:
        if not 0 <= ordinal < len(self.names):
            raise EntityError(f"no entity with ordinal {ordinal}")
        return self.names[ordinal]

    def set_of(self, names: Iterable[str]) -> EntitySet:
        return EntitySet.of(self.width, (self.lookup(name) for name in names))

    def names_in(self, entities: EntitySet) -> list[str]:
        _check_width(self.width, entities.width)
        return [self.names[ordinal] for ordinal in entities]


@dataclass(frozen=True, slots=True)
class Reaction:
    """A reaction (R, I, P) over one background."""

    reactants: EntitySet
    inhibitors: EntitySet
    products: EntitySet

    def __post_init__(self) -> None:
        _check_width(self.reactants.width, self.inhibitors.width)
        _check_width(self.reactants.width, self.products.width)

    @property
    def width(self) -> int:
        return self.reactants.width

    @property
    def never_enabled(self) -> bool:
        return not self.reactants.isdisjoint(self.inhibitors)


def is_enabled(reaction: Reaction, state: EntitySet) -> bool:
    """Return True when R ⊆ T and I ∩ T = ∅."""

    _check_width(reaction.width, state.width)
    return reaction.reactants <= state and reaction.inhibitors.isdisjoint(state)


def res_reaction(reaction: Reaction, state: EntitySet) -> EntitySet:
    if is_enabled(reaction, state):
        return reaction.products
    return EntitySet.empty(reaction.width)


@dataclass(frozen=True, slots=True)
class ReactionSystem:
    """A background table plus an ordered reaction list.

    Reaction order only matters for serialization; ``res`` is a union.
    """

    table: EntityTable
    reactions: tuple[Reaction, ...] = ()
    _compiled: tuple[tuple[int, int, int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        for reaction in self.reactions:
            _check_width(self.table.width, reaction.width)
        compiled = tuple(
            (a.reactants.mask, a.inhibitors.mask, a.products.mask) for a in self.reactions
        )
        object.__setattr__(self, "_compiled", compiled)

    @classmethod
    def from_named(
        cls,
        names: Iterable[str],
        reactions: Iterable[tuple[Iterable[str], Iterable[str], Iterable[str]]],
        max_background: Optional[int] = None,
    ) -> "ReactionSystem":
        """Build a system from entity names and (R, I, P) name triples."""

        table = EntityTable.from_names(names, max_background=max_background)
        built = tuple(
            Reaction(table.set_of(r), table.set_of(i), table.set_of(p)) for r, i, p in reactions
        )
        return cls(table, built)

    @property
    def width(self) -> int:
        return self.table.width

    @property
    def state_count(self) -> int:
        return 1 << self.table.width

    def state(self, *names: str) -> EntitySet:
        return self.table.set_of(names)

    def empty(self) -> EntitySet:
        return EntitySet.empty(self.width)

    def from_mask(self, mask: int) -> EntitySet:
        return EntitySet(self.width, mask)

    def names_of(self, state: EntitySet) -> list[str]:
        return self.table.names_in(state)

    def format_state(self, state: EntitySet) -> str:
        return "{" + ",".join(self.names_of(state)) + "}"

    def check_state(self, state: EntitySet) -> None:
        _check_width(self.width, state.width)

    def step(self, mask: int) -> int:
        """res on a raw mask; the inner loop of every simulation."""

        out = 0
        for reactants, inhibitors, products in self._compiled:
            if mask & reactants == reactants and not mask & inhibitors:
                out |= products
        return out

    def products_bound(self) -> EntitySet:
        bound = 0
        for _, _, products in self._compiled:
            bound |= products
        return EntitySet(self.width, bound)


def res(system: ReactionSystem, state: EntitySet) -> EntitySet:
    """The result function: union of the products of all enabled reactions."""

    system.check_state(state)
    return EntitySet(system.width, system.step(state.mask))


def identity_system(names: Sequence[str]) -> ReactionSystem:
    """The system ({x}, ∅, {x}) for every x, whose result function is the identity."""

    return ReactionSystem.from_named(names, (([name], [], [name]) for name in names))


LintKind = Literal["never-enabled", "duplicate", "empty-reactants", "empty-inhibitors"]


@dataclass(frozen=True, slots=True)
class LintIssue:
    kind: LintKind
    severity: Literal["warning", "info"]
    reaction_index: int
    message: str


def lint(system: ReactionSystem, strict: bool = False) -> list[LintIssue]:
    """Report never-enabled and duplicate reactions.

    With ``strict`` also report empty reactant or inhibitor sets, which the
    nonempty-R-and-I variant of the model forbids.
    """

    issues: list[LintIssue] = []
    seen: dict[Reaction, int] = {}
    for position, reaction in enumerate(system.reactions):
        if reaction.never_enabled:
            overlap = system.names_of(reaction.reactants & reaction.inhibitors)
            issues.append(
                LintIssue(
                    "never-enabled",
                    "warning",
                    position,
                    f"reactants and inhibitors share {','.join(overlap)}; reaction never fires",
                )
            )
        if reaction in seen:
            issues.append(
                LintIssue(
                    "duplicate", "warning", position, f"duplicate of reaction {seen[reaction]}"
                )
            )
        else:
            seen[reaction] = position
        if strict and not reaction.reactants:
            issues.append(LintIssue("empty-reactants", "info", position, "empty reactant set"))
        if strict and not reaction.inhibitors:
            issues.append(LintIssue("empty-inhibitors", "info", position, "empty inhibitor set"))
    if issues:
        logger.info("core.lint.issues", count=len(issues), width=system.width)
    return issues


def dedupe(system: ReactionSystem) -> ReactionSystem:
    """Drop repeated reactions, keeping first occurrences in order."""

    unique = tuple(dict.fromkeys(system.reactions))
    return ReactionSystem(system.table, unique)
