"""Independent ground truth for small systems.

The whole functional graph of ``res`` is materialized as a numpy successor
array and analysed by peeling: states of in-degree zero are removed layer by
layer until only cycle states remain, then preperiods are filled back in layer
order. This shares no code with the trajectory-following searches in
:mod:`reaction_dynamics.dynamics`, which it is used to cross-check. The logic
evaluators are naive exhaustive enumerations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Literal, Optional, Sequence

import numpy as np

from .config import get_settings
from .core import ReactionSystem, ReactionSystemError
from .dynamics import PeriodInfo, SearchBudget, explore_state_space
from .logging import get_logger
from .reductions.formulas import Clause, Formula, QbfInstance
from .reductions.turing import TmConfig, TuringMachine

logger = get_logger(__name__)

MAX_VARIABLES = 20


class OracleCapError(ReactionSystemError):
    """Raised when an input is too large for exhaustive evaluation."""


@dataclass(frozen=True, eq=False)
class StateGraph:
    """successor[t] is the mask of res(t) for every mask t < 2**width."""

    width: int
    successor: np.ndarray
    system: Optional[ReactionSystem] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return int(self.successor.shape[0])


def build_state_graph(system: ReactionSystem, max_width: Optional[int] = None) -> StateGraph:
    cap = max_width if max_width is not None else get_settings().oracle_max_width
    if system.width > cap:
        raise OracleCapError(
            f"background of {system.width} entities exceeds the oracle cap of {cap}"
        )
    states = np.arange(1 << system.width, dtype=np.int64)
    successor = np.zeros_like(states)
    for reaction in system.reactions:
        reactants = reaction.reactants.mask
        enabled = ((states & reactants) == reactants) & ((states & reaction.inhibitors.mask) == 0)
        np.bitwise_or(successor, reaction.products.mask, out=successor, where=enabled)
    logger.info("oracle.graph.built", width=system.width, reactions=len(system.reactions))
    return StateGraph(system.width, successor, system)


CycleKind = Literal["local", "global", "neither"]


@dataclass(frozen=True, slots=True)
class CycleSummary:
    states: tuple[int, ...]
    kind: CycleKind
    basin_size: int
    basin_diameter: int

    @property
    def length(self) -> int:
        return len(self.states)


@dataclass(frozen=True, eq=False)
class GraphAnalysis:
    """Per-state preperiod, period and cycle index; cycles sorted by least mask."""

    width: int
    preperiod: np.ndarray
    period: np.ndarray
    cycle_id: np.ndarray
    cycles: tuple[CycleSummary, ...]

    def period_info(self, mask: int) -> PeriodInfo:
        return PeriodInfo(int(self.preperiod[mask]), int(self.period[mask]))

    def cycle_of(self, mask: int) -> CycleSummary:
        return self.cycles[int(self.cycle_id[mask])]

    def cycle_lengths(self) -> list[int]:
        return [cycle.length for cycle in self.cycles]


def graph_analysis(graph: StateGraph) -> GraphAnalysis:
    successor = graph.successor
    size = graph.size
    indegree = np.bincount(successor, minlength=size)
    removed = np.zeros(size, dtype=bool)
    layers: list[np.ndarray] = []

    frontier = np.flatnonzero(indegree == 0)
    while frontier.size:
        layers.append(frontier)
        removed[frontier] = True
        targets = successor[frontier]
        np.subtract.at(indegree, targets, 1)
        candidates = np.unique(targets)
        frontier = candidates[(indegree[candidates] == 0) & ~removed[candidates]]

    cycle_id = np.full(size, -1, dtype=np.int64)
    preperiod = np.zeros(size, dtype=np.int64)
    members: list[tuple[int, ...]] = []
    for start in np.flatnonzero(~removed).tolist():
        if cycle_id[start] >= 0:
            continue
        orbit = [start]
        node = int(successor[start])
        while node != start:
            orbit.append(node)
            node = int(successor[node])
        cycle_id[orbit] = len(members)
        members.append(tuple(orbit))

    for layer in reversed(layers):
        targets = successor[layer]
        preperiod[layer] = preperiod[targets] + 1
        cycle_id[layer] = cycle_id[targets]

    lengths = np.array([len(orbit) for orbit in members], dtype=np.int64)
    basin_sizes = np.bincount(cycle_id, minlength=len(members))
    diameters = np.zeros(len(members), dtype=np.int64)
    np.maximum.at(diameters, cycle_id, preperiod)

    cycles = []
    for index, orbit in enumerate(members):
        basin = int(basin_sizes[index])
        if basin == size:
            kind: CycleKind = "global"
        elif basin > len(orbit):
            kind = "local"
        else:
            kind = "neither"
        cycles.append(CycleSummary(orbit, kind, basin, int(diameters[index])))

    logger.info(
        "oracle.analysis.completed", width=graph.width, cycles=len(cycles), layers=len(layers)
    )
    return GraphAnalysis(graph.width, preperiod, lengths[cycle_id], cycle_id, tuple(cycles))


# --------------------------------------------------------------------------- cross-check


@dataclass(frozen=True, slots=True)
class Mismatch:
    mask: int
    attribute: str
    expected: int
    actual: int


@dataclass(frozen=True)
class VerificationReport:
    width: int
    states_checked: int
    cycles: int
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify(
    system: ReactionSystem,
    budget: Optional[SearchBudget] = None,
    max_width: Optional[int] = None,
) -> VerificationReport:
    """Compare the peeling analysis with the dynamics exploration on every state."""

    analysis = graph_analysis(build_state_graph(system, max_width))
    space = explore_state_space(system, budget)
    mismatches: list[Mismatch] = []
    for mask in range(system.state_count):
        cycle = analysis.cycle_of(mask)
        checks = (
            ("preperiod", int(analysis.preperiod[mask]), space.preperiod[mask]),
            ("period", cycle.length, space.period(mask)),
            ("cycle", cycle.states[0], space.cycles[space.cycle_id[mask]][0]),
        )
        for name, expected, actual in checks:
            if expected != actual:
                mismatches.append(Mismatch(mask, name, expected, actual))
    if mismatches:
        logger.warning("oracle.verify.mismatch", width=system.width, count=len(mismatches))
    return VerificationReport(
        system.width, system.state_count, len(analysis.cycles), tuple(mismatches)
    )


# --------------------------------------------------------------------------- logic


def _check_variables(count: int) -> None:
    if count > MAX_VARIABLES:
        raise OracleCapError(f"{count} variables exceed the brute-force cap of {MAX_VARIABLES}")


def _clause_true(clause: Clause, true: frozenset[int] | set[int], conjunct: bool) -> bool:
    if conjunct:
        return clause.pos <= true and not clause.neg & true
    return bool(clause.pos & true) or bool(clause.neg - true)


def evaluate_cnf(formula: Formula, true: Iterable[int]) -> bool:
    """Truth of a CNF under the assignment making exactly ``true`` true."""

    assigned = set(true)
    return all(_clause_true(clause, assigned, conjunct=False) for clause in formula.clauses)


def evaluate_dnf(formula: Formula, true: Iterable[int]) -> bool:
    assigned = set(true)
    return any(_clause_true(clause, assigned, conjunct=True) for clause in formula.clauses)


def evaluate(formula: Formula, true: Iterable[int]) -> bool:
    return evaluate_cnf(formula, true) if formula.mode == "cnf" else evaluate_dnf(formula, true)


def assignments(variables: Sequence[int]) -> Iterable[set[int]]:
    """Every subset of ``variables``, as the set of variables made true."""

    for bits in product((False, True), repeat=len(variables)):
        yield {v for v, bit in zip(variables, bits) if bit}


def sat_brute(formula: Formula) -> bool:
    if formula.mode != "cnf":
        raise ValueError("sat_brute expects a CNF formula")
    _check_variables(formula.n)
    return any(evaluate_cnf(formula, a) for a in assignments(range(1, formula.n + 1)))


def taut_brute(formula: Formula) -> bool:
    if formula.mode != "dnf":
        raise ValueError("taut_brute expects a DNF formula")
    _check_variables(formula.n)
    return all(evaluate_dnf(formula, a) for a in assignments(range(1, formula.n + 1)))


def exists_forall_brute(instance: QbfInstance) -> bool:
    """∃X ∀Y φ(X, Y) by enumerating both assignment sets."""

    _check_variables(len(instance.exists) + len(instance.forall))
    xs, ys = sorted(instance.exists), sorted(instance.forall)
    return any(
        all(evaluate_dnf(instance.matrix, x | y) for y in assignments(ys))
        for x in assignments(xs)
    )


# --------------------------------------------------------------------------- machines


RunStatus = Literal["accepted", "off-tape", "running"]


@dataclass(frozen=True)
class TmRun:
    configs: tuple[TmConfig, ...]
    status: RunStatus

    @property
    def steps(self) -> int:
        return len(self.configs) - 1


def simulate_tm(machine: TuringMachine, word: Sequence[str], m: int, steps: int) -> TmRun:
    """Run the machine directly for at most ``steps`` moves on m cells.

    Stops in the accepting state or when the head leaves cells 1..m.
    """

    config = machine.initial_config(word, m)
    configs = [config]
    for _ in range(steps):
        nxt = machine.step(config)
        if nxt is None:
            break
        if not nxt.on_tape():
            return TmRun(tuple(configs), "off-tape")
        configs.append(nxt)
        config = nxt
    status: RunStatus = "accepted" if config.state == machine.accept else "running"
    return TmRun(tuple(configs), status)


def accepts_within(
    machine: TuringMachine, word: Sequence[str], k: int, m: Optional[int] = None
) -> bool:
    """Whether the accepting configuration is reached within k moves."""

    space = m if m is not None else max(k + 1, len(word))
    target = machine.accepting_config(space)
    run = simulate_tm(machine, word, space, k)
    return target in run.configs
