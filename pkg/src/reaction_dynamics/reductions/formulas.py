"""Boolean formula gadgets: short cycles, clause fixed points, bijections and basins.

Variable ``i`` is the entity ``x<i>`` (``y<i>`` for universal QBF variables,
keeping the input numbering), clause ``j`` is ``phi<j>``; the auxiliary
entities are ``heart``, ``spade`` and ``spade_<t>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from ..core import EntitySet, ReactionSystem
from ..logging import get_logger
from .turing import ConstructionError

logger = get_logger(__name__)

HEART = "heart"
SPADE = "spade"

FormulaMode = Literal["cnf", "dnf"]


@dataclass(frozen=True, slots=True)
class Clause:
    """Positive and negative variable indices of one clause or conjunct."""

    pos: frozenset[int]
    neg: frozenset[int]

    @classmethod
    def from_literals(cls, literals: list[int]) -> "Clause":
        if 0 in literals:
            raise ConstructionError("literal 0 is not a variable")
        return cls(
            frozenset(v for v in literals if v > 0), frozenset(-v for v in literals if v < 0)
        )

    def literals(self) -> list[int]:
        return sorted(self.pos) + sorted(-v for v in self.neg)

    def variables(self) -> frozenset[int]:
        return self.pos | self.neg


@dataclass(frozen=True)
class Formula:
    """A CNF (conjunction of disjunctions) or DNF (disjunction of conjunctions)."""

    mode: FormulaMode
    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.mode not in ("cnf", "dnf"):
            raise ConstructionError(f"formula mode must be cnf or dnf, got {self.mode!r}")
        if self.n < 0:
            raise ConstructionError("variable count must be non-negative")
        for j, clause in enumerate(self.clauses, start=1):
            for v in clause.variables():
                if not 1 <= v <= self.n:
                    raise ConstructionError(f"clause {j} uses variable {v} outside 1..{self.n}")

    @classmethod
    def from_lists(cls, mode: FormulaMode, n: int, clauses: list[list[int]]) -> "Formula":
        return cls(mode, n, tuple(Clause.from_literals(c) for c in clauses))


@dataclass(frozen=True)
class QbfInstance:
    """∃X ∀Y φ(X, Y) with a DNF matrix."""

    exists: tuple[int, ...]
    forall: tuple[int, ...]
    matrix: Formula

    def __post_init__(self) -> None:
        if self.matrix.mode != "dnf":
            raise ConstructionError("the QBF matrix must be in DNF")
        overlap = set(self.exists) & set(self.forall)
        if overlap:
            raise ConstructionError(f"variables quantified twice: {sorted(overlap)}")
        quantified = set(self.exists) | set(self.forall)
        for clause in self.matrix.clauses:
            free = clause.variables() - quantified
            if free:
                raise ConstructionError(f"unquantified variables {sorted(free)}")

    def entity(self, v: int) -> str:
        return f"x{v}" if v in self.exists else f"y{v}"


def variable(v: int) -> str:
    return f"x{v}"


def clause_entity(j: int) -> str:
    return f"phi{j}"


def spade(t: int) -> str:
    return f"spade_{t}"


def _expect(formula: Formula, mode: FormulaMode) -> None:
    if formula.mode != mode:
        raise ConstructionError(f"expected a {mode.upper()} formula, got {formula.mode.upper()}")


def _variables(formula: Formula) -> list[str]:
    return [variable(v) for v in range(1, formula.n + 1)]


def _names(clause_vars: frozenset[int]) -> list[str]:
    return [variable(v) for v in sorted(clause_vars)]


def compile_cnf_short_cycle(formula: Formula, length: int) -> ReactionSystem:
    """Fixed points on satisfying assignments; everything else falls into a (ℓ+1)-cycle."""

    _expect(formula, "cnf")
    if length < 1:
        raise ConstructionError("cycle bound must be at least 1")
    spades = [spade(t) for t in range(length + 1)]
    reactions = [
        (_names(clause.neg), _names(clause.pos) + spades, [spades[0]])
        for clause in formula.clauses
    ]
    reactions += [([x], spades, [x]) for x in _variables(formula)]
    reactions += [
        ([spades[t]], spades[:t], [spades[(t + 1) % (length + 1)]]) for t in range(length + 1)
    ]
    return ReactionSystem.from_named(_variables(formula) + spades, reactions)


@dataclass(frozen=True)
class ClauseFixpointInstance:
    system: ReactionSystem
    target: EntitySet


def _clause_reactions(formula: Formula) -> list[tuple[list[str], list[str], list[str]]]:
    reactions = []
    for v in range(1, formula.n + 1):
        positive = [clause_entity(j) for j, c in enumerate(formula.clauses, 1) if v in c.pos]
        negative = [clause_entity(j) for j, c in enumerate(formula.clauses, 1) if v in c.neg]
        reactions.append(([variable(v)], [], positive))
        reactions.append(([], [variable(v)], negative))
    return reactions


def _clause_system(formula: Formula, extra: list[str]) -> ClauseFixpointInstance:
    _expect(formula, "cnf")
    xs = _variables(formula)
    cs = [clause_entity(j) for j in range(1, len(formula.clauses) + 1)]
    reactions = _clause_reactions(formula)
    reactions.append((cs, xs, cs + extra))
    system = ReactionSystem.from_named(xs + cs + extra, reactions)
    return ClauseFixpointInstance(system, system.state(*cs))


def compile_cnf_clause_fixpoint(formula: Formula) -> ClauseFixpointInstance:
    """res(U) is the set of clauses U satisfies; C itself is a fixed point."""

    return _clause_system(formula, [])


def compile_cnf_ancestor(formula: Formula) -> ClauseFixpointInstance:
    """As the clause fixed point, but C now moves to the fixed point C ∪ {heart}."""

    return _clause_system(formula, [HEART])


def compile_dnf_bijection(formula: Formula) -> ReactionSystem:
    """res is a bijection, in fact the identity, iff the DNF is a tautology."""

    _expect(formula, "dnf")
    xs = _variables(formula)
    reactions = [
        (_names(clause.pos) + [HEART], _names(clause.neg), [HEART]) for clause in formula.clauses
    ]
    reactions += [([x], [], [x]) for x in xs]
    return ReactionSystem.from_named(xs + [HEART], reactions)


@dataclass(frozen=True)
class BasinInstance:
    system: ReactionSystem
    target: EntitySet
    length: int
    diameter: int


def compile_dnf_basin(formula: Formula) -> BasinInstance:
    """{spade} attracts everything; its basin diameter is 1 iff the DNF is a tautology."""

    _expect(formula, "dnf")
    xs = _variables(formula)
    reactions = [
        (_names(clause.pos) + [HEART], _names(clause.neg) + [SPADE], [HEART])
        for clause in formula.clauses
    ]
    reactions += [([x, HEART], [SPADE], [x]) for x in xs]
    reactions.append(([], [HEART], [SPADE]))
    reactions.append(([SPADE], [], [SPADE]))
    system = ReactionSystem.from_named(xs + [HEART, SPADE], reactions)
    return BasinInstance(system, system.state(SPADE), length=1, diameter=1)


@dataclass(frozen=True)
class QbfBasinInstance:
    system: ReactionSystem
    length: int
    diameter: int

    def fixed_point(self, exists_true: list[str]) -> EntitySet:
        """X_1 ∪ {spade, heart}."""

        return self.system.state(*exists_true, SPADE, HEART)


def compile_qbf_basin(instance: QbfInstance) -> QbfBasinInstance:
    """Some fixed point has basin diameter <= 1 iff ∃X ∀Y φ holds."""

    xs = [instance.entity(v) for v in sorted(instance.exists)]
    ys = [instance.entity(v) for v in sorted(instance.forall)]

    def names(vs: frozenset[int]) -> list[str]:
        return [instance.entity(v) for v in sorted(vs)]

    reactions = [
        (names(clause.pos), names(clause.neg), [HEART]) for clause in instance.matrix.clauses
    ]
    reactions += [([x], [], [x]) for x in xs]
    reactions.append(([], [], [SPADE]))
    reactions.append(([HEART], [], [HEART]))
    reactions.append(([SPADE], [], [HEART]))
    system = ReactionSystem.from_named(xs + ys + [HEART, SPADE], reactions)
    logger.info("reductions.qbf_basin.compiled", width=system.width, exists=len(xs), forall=len(ys))
    return QbfBasinInstance(system, length=1, diameter=1)
