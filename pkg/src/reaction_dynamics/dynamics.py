"""Exact trajectory, periodicity, reachability, ancestor and attractor analysis.

Single-state questions follow the trajectory with a state -> time map, which
yields the minimal preperiod and period at the first repeat. Questions that
quantify over all states share one cached exploration of the state space
(:func:`explore_state_space`) and read the answer off its tables. Every
exponential search is gated by a :class:`SearchBudget`; running out of budget
raises :class:`BudgetExceededError` and never produces an answer.

Enumeration is in ascending mask order, so every witness is the least state
with the required property.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Optional

from .config import get_settings
from .core import EntitySet, ReactionSystem, ReactionSystemError
from .logging import get_logger

logger = get_logger(__name__)

EXPLORE_START = "dynamics.explore.start"
EXPLORE_COMPLETED = "dynamics.explore.completed"
BUDGET_EXCEEDED = "dynamics.budget.exceeded"
EXPLORE_CACHE_SIZE = 4


class BudgetExceededError(ReactionSystemError):
    """Raised when an exact search would exceed its search budget."""

    def __init__(self, limit: str, allowed: int, needed: Optional[int] = None) -> None:
        self.limit = limit
        self.allowed = allowed
        self.needed = needed
        detail = f" (needs {needed})" if needed is not None else ""
        super().__init__(f"search budget exceeded: {limit}={allowed}{detail}")


@dataclass(frozen=True, slots=True)
class SearchBudget:
    max_states_enumerated: int
    max_steps: int

    def __post_init__(self) -> None:
        if self.max_states_enumerated < 1 or self.max_steps < 1:
            raise ValueError("search budget limits must be positive")

    @classmethod
    def from_settings(cls) -> "SearchBudget":
        settings = get_settings()
        return cls(settings.budget_states, settings.budget_steps)

    def require_states(self, count: int) -> None:
        if count > self.max_states_enumerated:
            logger.warning(BUDGET_EXCEEDED, limit="max_states_enumerated", needed=count)
            raise BudgetExceededError("max_states_enumerated", self.max_states_enumerated, count)

    def require_steps(self, count: int) -> None:
        if count > self.max_steps:
            logger.warning(BUDGET_EXCEEDED, limit="max_steps", needed=count)
            raise BudgetExceededError("max_steps", self.max_steps, count)


def _budget(budget: Optional[SearchBudget]) -> SearchBudget:
    return budget if budget is not None else SearchBudget.from_settings()


@dataclass(frozen=True, slots=True)
class Bound:
    """A one-sided integer constraint, ``x <= value`` or ``x >= value``."""

    op: Literal["le", "ge"]
    value: int

    def __post_init__(self) -> None:
        if self.op not in ("le", "ge"):
            raise ValueError(f"bound operator must be 'le' or 'ge', got {self.op!r}")

    @classmethod
    def le(cls, value: int) -> "Bound":
        return cls("le", value)

    @classmethod
    def ge(cls, value: int) -> "Bound":
        return cls("ge", value)

    def holds(self, x: int) -> bool:
        return x <= self.value if self.op == "le" else x >= self.value

    def __str__(self) -> str:
        return ("<= " if self.op == "le" else ">= ") + str(self.value)


@dataclass(frozen=True, slots=True)
class PeriodInfo:
    preperiod: int
    period: int

    @property
    def is_periodic(self) -> bool:
        return self.preperiod == 0


@dataclass(frozen=True, slots=True)
class Trajectory:
    """States T, res(T), ..., res^(h+p)(T); the last one repeats ``states[h]``."""

    states: tuple[EntitySet, ...]
    preperiod: int
    period: int

    @property
    def info(self) -> PeriodInfo:
        return PeriodInfo(self.preperiod, self.period)

    @property
    def cycle(self) -> tuple[EntitySet, ...]:
        return self.states[self.preperiod : self.preperiod + self.period]

    def visits(self, state: EntitySet) -> bool:
        return state in self.states


@dataclass(frozen=True, slots=True)
class Decision:
    """Answer to a decision problem, with the least witness when one exists."""

    answer: bool
    witness: Optional[EntitySet] = None
    exhaustive: bool = True

    def __bool__(self) -> bool:
        return self.answer


AttractorKind = Literal["local", "global", "neither"]


@dataclass(frozen=True, slots=True)
class AttractorReport:
    """The cycle reached from a state, with its basin.

    ``kind`` is ``global`` when every state reaches the cycle, ``local`` when
    some state outside the cycle enters it in one step, ``neither`` otherwise.
    """

    cycle: tuple[EntitySet, ...]
    kind: AttractorKind
    basin_size: int
    basin_diameter: int

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def is_local(self) -> bool:
        # In a functional graph a basin larger than its cycle always has a
        # state one step away from the cycle.
        return self.basin_size > len(self.cycle)

    @property
    def is_global(self) -> bool:
        return self.kind == "global"


# --------------------------------------------------------------------------- trajectories


def preperiod_period(
    system: ReactionSystem, state: EntitySet, budget: Optional[SearchBudget] = None
) -> Trajectory:
    """Follow the dynamics from ``state`` until the first repeat."""

    system.check_state(state)
    budget = _budget(budget)
    seen: dict[int, int] = {}
    masks: list[int] = []
    mask = state.mask
    step = system.step
    while mask not in seen:
        if len(masks) >= budget.max_steps:
            budget.require_steps(len(masks) + 1)
        seen[mask] = len(masks)
        masks.append(mask)
        mask = step(mask)
    preperiod = seen[mask]
    period = len(masks) - preperiod
    masks.append(mask)
    width = system.width
    return Trajectory(tuple(EntitySet(width, m) for m in masks), preperiod, period)


def period_info(
    system: ReactionSystem, state: EntitySet, budget: Optional[SearchBudget] = None
) -> PeriodInfo:
    return preperiod_period(system, state, budget).info


def simulate(system: ReactionSystem, state: EntitySet, steps: int) -> list[EntitySet]:
    """Return ``[T, res(T), ..., res^steps(T)]``."""

    if steps < 0:
        raise ValueError("steps must be non-negative")
    system.check_state(state)
    mask = state.mask
    masks = [mask]
    for _ in range(steps):
        mask = system.step(mask)
        masks.append(mask)
    return [EntitySet(system.width, m) for m in masks]


def reaches_within(
    system: ReactionSystem,
    state: EntitySet,
    target: EntitySet,
    k: int,
    budget: Optional[SearchBudget] = None,
) -> bool:
    """True iff res^t(T) = U for some 0 <= t <= k."""

    if k < 0:
        raise ValueError("k must be non-negative")
    system.check_state(state)
    system.check_state(target)
    budget = _budget(budget)
    mask, goal = state.mask, target.mask
    seen: set[int] = set()
    for t in range(k + 1):
        if mask == goal:
            return True
        if mask in seen:
            # The rest of the trajectory repeats states already compared.
            return False
        if t >= budget.max_steps:
            budget.require_steps(t + 1)
        seen.add(mask)
        mask = system.step(mask)
    return False


def reaches(
    system: ReactionSystem,
    state: EntitySet,
    target: EntitySet,
    budget: Optional[SearchBudget] = None,
) -> bool:
    """True iff ``target`` appears anywhere on the trajectory of ``state``."""

    system.check_state(target)
    return preperiod_period(system, state, budget).visits(target)


def state_matches(
    system: ReactionSystem,
    state: EntitySet,
    period: Bound,
    preperiod: Optional[Bound] = None,
    budget: Optional[SearchBudget] = None,
) -> bool:
    if period.value < 1:
        raise ValueError("period bound must be at least 1")
    if preperiod is not None and preperiod.value < 0:
        raise ValueError("preperiod bound must be non-negative")
    info = period_info(system, state, budget)
    return period.holds(info.period) and (preperiod is None or preperiod.holds(info.preperiod))


# --------------------------------------------------------------------------- state space


@dataclass(frozen=True)
class StateSpace:
    """Per-mask successor, preperiod and cycle membership for a whole system.

    ``cycles[c]`` lists the masks of cycle ``c`` in orbit order starting from its
    least mask; cycles are numbered by discovery in ascending mask order.
    """

    system: ReactionSystem
    successor: list[int]
    preperiod: list[int]
    cycle_id: list[int]
    cycles: list[tuple[int, ...]]

    def period(self, mask: int) -> int:
        return len(self.cycles[self.cycle_id[mask]])

    def basin_sizes(self) -> list[int]:
        sizes = [0] * len(self.cycles)
        for c in self.cycle_id:
            sizes[c] += 1
        return sizes

    def basin_diameters(self) -> list[int]:
        diameters = [0] * len(self.cycles)
        for c, h in zip(self.cycle_id, self.preperiod):
            if h > diameters[c]:
                diameters[c] = h
        return diameters

    def state(self, mask: int) -> EntitySet:
        return EntitySet(self.system.width, mask)


def explore_state_space(
    system: ReactionSystem, budget: Optional[SearchBudget] = None
) -> StateSpace:
    """Classify every state by following trajectories until they hit known ground.

    Results are cached per system; the budget is checked on every call.
    """

    _budget(budget).require_states(system.state_count)
    return _explore(system)


@lru_cache(maxsize=EXPLORE_CACHE_SIZE)
def _explore(system: ReactionSystem) -> StateSpace:
    total = system.state_count
    logger.info(EXPLORE_START, width=system.width, states=total)

    step = system.step
    successor = [0] * total
    preperiod = [-1] * total
    cycle_id = [-1] * total
    cycles: list[tuple[int, ...]] = []

    for start in range(total):
        if preperiod[start] >= 0:
            continue
        path: list[int] = []
        position: dict[int, int] = {}
        mask = start
        while preperiod[mask] < 0 and mask not in position:
            position[mask] = len(path)
            path.append(mask)
            nxt = step(mask)
            successor[mask] = nxt
            mask = nxt
        if preperiod[mask] < 0:
            entry = position[mask]
            loop = path[entry:]
            least = loop.index(min(loop))
            current = len(cycles)
            cycles.append(tuple(loop[least:] + loop[:least]))
            for member in loop:
                preperiod[member] = 0
                cycle_id[member] = current
            tail, base = path[:entry], 0
        else:
            tail, base, current = path, preperiod[mask], cycle_id[mask]
        for distance, member in enumerate(reversed(tail), start=1):
            preperiod[member] = base + distance
            cycle_id[member] = current

    logger.info(EXPLORE_COMPLETED, width=system.width, cycles=len(cycles))
    return StateSpace(system, successor, preperiod, cycle_id, cycles)


def all_k_ancestors(
    system: ReactionSystem,
    state: EntitySet,
    k: int,
    budget: Optional[SearchBudget] = None,
) -> list[EntitySet]:
    """Every U with res^k(U) = T, in ascending mask order."""

    if k < 0:
        raise ValueError("k must be non-negative")
    system.check_state(state)
    budget = _budget(budget)
    if k == 0:
        return [state]
    budget.require_steps(k)
    space = explore_state_space(system, budget)
    images = list(range(system.state_count))
    successor = space.successor
    for _ in range(k):
        images = [successor[image] for image in images]
    return [space.state(mask) for mask, image in enumerate(images) if image == state.mask]


def k_ancestors(
    system: ReactionSystem,
    state: EntitySet,
    k: int,
    budget: Optional[SearchBudget] = None,
) -> Decision:
    """Whether T has a k-ancestor; the witness is the least one."""

    ancestors = all_k_ancestors(system, state, k, budget)
    return Decision(bool(ancestors), ancestors[0] if ancestors else None)


def exists_state(
    system: ReactionSystem,
    period: Bound,
    preperiod: Optional[Bound] = None,
    budget: Optional[SearchBudget] = None,
) -> Decision:
    """Whether some state meets the period (and preperiod) constraints."""

    if period.value < 1:
        raise ValueError("period bound must be at least 1")
    space = explore_state_space(system, budget)
    lengths = [len(cycle) for cycle in space.cycles]
    for mask in range(system.state_count):
        if not period.holds(lengths[space.cycle_id[mask]]):
            continue
        if preperiod is None or preperiod.holds(space.preperiod[mask]):
            return Decision(True, space.state(mask))
    return Decision(False)


def periodic_with_far_ancestor(
    system: ReactionSystem,
    state: EntitySet,
    max_period: int,
    k: int,
    budget: Optional[SearchBudget] = None,
) -> Decision:
    """T is periodic with period <= ℓ and some U reaching T has preperiod >= k."""

    if max_period < 1 or k < 0:
        raise ValueError("need max_period >= 1 and k >= 0")
    info = period_info(system, state, budget)
    if not info.is_periodic or info.period > max_period:
        return Decision(False)
    space = explore_state_space(system, budget)
    target_cycle = space.cycle_id[state.mask]
    for mask in range(system.state_count):
        if space.cycle_id[mask] == target_cycle and space.preperiod[mask] >= k:
            return Decision(True, space.state(mask))
    return Decision(False)


def is_bijective(system: ReactionSystem, budget: Optional[SearchBudget] = None) -> bool:
    """True iff res is injective on all states (so every state is periodic)."""

    total = system.state_count
    _budget(budget).require_states(total)
    hit = bytearray(total)
    step = system.step
    for mask in range(total):
        image = step(mask)
        if hit[image]:
            return False
        hit[image] = 1
    return True


def is_identity(system: ReactionSystem, budget: Optional[SearchBudget] = None) -> bool:
    total = system.state_count
    _budget(budget).require_states(total)
    step = system.step
    return all(step(mask) == mask for mask in range(total))


def _kind(basin_size: int, cycle_length: int, total: int) -> AttractorKind:
    if basin_size == total:
        return "global"
    if basin_size > cycle_length:
        return "local"
    return "neither"


def attractor_report(
    system: ReactionSystem, state: EntitySet, budget: Optional[SearchBudget] = None
) -> AttractorReport:
    trajectory = preperiod_period(system, state, budget)
    space = explore_state_space(system, budget)
    target_cycle = space.cycle_id[state.mask]
    basin_size = space.basin_sizes()[target_cycle]
    diameter = space.basin_diameters()[target_cycle]
    cycle = trajectory.cycle
    return AttractorReport(
        cycle=cycle,
        kind=_kind(basin_size, len(cycle), system.state_count),
        basin_size=basin_size,
        basin_diameter=diameter,
    )


def decide_attractor_basin(
    system: ReactionSystem,
    state: Optional[EntitySet],
    max_length: int,
    diameter: Bound,
    budget: Optional[SearchBudget] = None,
) -> Decision:
    """Local attractor cycle of length <= ℓ whose basin diameter meets ``diameter``.

    With ``state`` the cycle must contain it; with ``None`` any cycle qualifies
    and the witness is the least state on a qualifying cycle.
    """

    if max_length < 1 or diameter.value < 0:
        raise ValueError("need max_length >= 1 and a non-negative diameter bound")
    if state is not None:
        system.check_state(state)
    space = explore_state_space(system, budget)
    sizes = space.basin_sizes()
    diameters = space.basin_diameters()

    def qualifies(c: int) -> bool:
        length = len(space.cycles[c])
        return length <= max_length and sizes[c] > length and diameter.holds(diameters[c])

    if state is not None:
        if space.preperiod[state.mask] != 0:
            return Decision(False)
        ok = qualifies(space.cycle_id[state.mask])
        return Decision(ok, state if ok else None)
    best: Optional[int] = None
    for c, cycle in enumerate(space.cycles):
        if qualifies(c) and (best is None or min(cycle) < best):
            best = min(cycle)
    return Decision(best is not None, space.state(best) if best is not None else None)


def decide_global_attractor(
    system: ReactionSystem,
    state: Optional[EntitySet],
    length: Bound,
    budget: Optional[SearchBudget] = None,
) -> Decision:
    """Cycle reachable from every state, with length meeting ``length``.

    Such a cycle exists exactly when the system has a single cycle.
    """

    if length.value < 1:
        raise ValueError("length bound must be at least 1")
    if state is not None:
        system.check_state(state)
    space = explore_state_space(system, budget)
    if len(space.cycles) != 1:
        return Decision(False)
    cycle = space.cycles[0]
    if not length.holds(len(cycle)):
        return Decision(False)
    if state is not None:
        on_cycle = space.preperiod[state.mask] == 0
        return Decision(on_cycle, state if on_cycle else None)
    return Decision(True, space.state(cycle[0]))


def certify_global_attractor(
    system: ReactionSystem,
    state: EntitySet,
    states: Iterable[EntitySet],
    length: Bound,
    budget: Optional[SearchBudget] = None,
) -> Decision:
    """Check that every given state reaches the cycle through ``state``.

    For systems too wide to enumerate. The answer covers only the given states
    (``exhaustive`` is False); a failing state is returned as the witness.
    """

    budget = _budget(budget)
    trajectory = preperiod_period(system, state, budget)
    if trajectory.preperiod != 0 or not length.holds(trajectory.period):
        return Decision(False, state, exhaustive=False)
    good = {member.mask for member in trajectory.cycle}
    step = system.step
    checked = 0
    for candidate in states:
        system.check_state(candidate)
        checked += 1
        path: list[int] = []
        on_path: set[int] = set()
        mask = candidate.mask
        while mask not in good and mask not in on_path:
            if len(path) >= budget.max_steps:
                budget.require_steps(len(path) + 1)
            path.append(mask)
            on_path.add(mask)
            mask = step(mask)
        if mask in good:
            good.update(path)
            continue
        logger.info("dynamics.certify.counterexample", checked=checked)
        return Decision(False, candidate, exhaustive=False)
    logger.info("dynamics.certify.completed", checked=checked, memo=len(good))
    return Decision(True, None, exhaustive=False)
