"""Bounded-tape Turing machines and their reaction-system simulations.

Entity naming is fixed so compiled systems serialize byte-for-byte the same:

* ``sym_<a>_<i>``: symbol ``a`` on tape cell ``i`` (1 <= i <= m)
* ``q_<q>_<i>``: machine state ``q`` with the head on cell ``i`` (1 <= i <= m + 1)
* ``reset`` and ``c_<k>_<t>``: reset entity and timer cells of the resettable system

A transition that would move the head to cell 0 or m + 1 leaves the tape. Cell
m + 1 has state entities (which nothing consumes); a left move off cell 1
produces no state entity at all.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from ..core import (
    ENTITY_NAME,
    EntitySet,
    EntityTable,
    Reaction,
    ReactionSystem,
    ReactionSystemError,
)
from ..logging import get_logger

logger = get_logger(__name__)

RESET = "reset"


class ConstructionError(ReactionSystemError, ValueError):
    """Raised when a compiler receives an ill-formed machine, formula or bound."""


class Direction(IntEnum):
    L = -1
    S = 0
    R = 1

    @classmethod
    def from_str(cls, text: str) -> "Direction":
        try:
            return cls[text]
        except KeyError:
            raise ValueError(f"direction must be L, S or R, got {text!r}") from None


@dataclass(frozen=True, slots=True)
class Transition:
    state: str
    symbol: str
    next_state: str
    write: str
    direction: Direction

    def __str__(self) -> str:
        return f"{self.state} {self.symbol} -> {self.next_state} {self.write} {self.direction.name}"


@dataclass(frozen=True, slots=True)
class TmConfig:
    """State, 1-based head position and tape contents."""

    state: str
    head: int
    tape: tuple[str, ...]

    def on_tape(self) -> bool:
        return 1 <= self.head <= len(self.tape)


@dataclass(frozen=True)
class TuringMachine:
    """Deterministic single-tape machine, total on Q x Σ except at ``accept``."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    blank: str
    initial: str
    accept: str
    transitions: tuple[Transition, ...]
    delta: dict[tuple[str, str], Transition] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for kind, names in (("state", self.states), ("symbol", self.alphabet)):
            if not names:
                raise ConstructionError(f"machine needs at least one {kind}")
            if len(set(names)) != len(names):
                raise ConstructionError(f"duplicate {kind} names")
            for name in names:
                if not ENTITY_NAME.fullmatch(name):
                    raise ConstructionError(f"invalid {kind} name {name!r}")
        if self.blank not in self.alphabet:
            raise ConstructionError(f"blank symbol {self.blank!r} is not in the alphabet")
        for label, state in (("initial", self.initial), ("accept", self.accept)):
            if state not in self.states:
                raise ConstructionError(f"{label} state {state!r} is not a machine state")

        delta: dict[tuple[str, str], Transition] = {}
        for rule in self.transitions:
            if rule.state not in self.states or rule.next_state not in self.states:
                raise ConstructionError(f"rule {rule} uses an unknown state")
            if rule.symbol not in self.alphabet or rule.write not in self.alphabet:
                raise ConstructionError(f"rule {rule} uses an unknown symbol")
            if rule.state == self.accept:
                raise ConstructionError(f"accepting state {self.accept!r} has transitions")
            key = (rule.state, rule.symbol)
            if key in delta:
                raise ConstructionError(f"nondeterministic rules for {key[0]} {key[1]}")
            delta[key] = rule
        missing = [
            f"{q} {a}"
            for q in self.states
            if q != self.accept
            for a in self.alphabet
            if (q, a) not in delta
        ]
        if missing:
            raise ConstructionError("transition function is partial; missing " + ", ".join(missing))
        object.__setattr__(self, "delta", delta)

    def tape_for(self, word: Sequence[str], m: int) -> tuple[str, ...]:
        symbols = tuple(word)
        if len(symbols) > m:
            raise ConstructionError(f"input of length {len(symbols)} does not fit {m} tape cells")
        for symbol in symbols:
            if symbol not in self.alphabet:
                raise ConstructionError(f"input symbol {symbol!r} is not in the alphabet")
        return symbols + (self.blank,) * (m - len(symbols))

    def initial_config(self, word: Sequence[str], m: int) -> TmConfig:
        return TmConfig(self.initial, 1, self.tape_for(word, m))

    def accepting_config(self, m: int) -> TmConfig:
        """The unique accepting configuration: accept state on cell 1, blank tape."""

        return TmConfig(self.accept, 1, (self.blank,) * m)

    def step(self, config: TmConfig) -> Optional[TmConfig]:
        """One move, or None in the accepting state. The head may leave the tape."""

        if not config.on_tape():
            raise ValueError("cannot step a configuration whose head is off the tape")
        if config.state == self.accept:
            return None
        rule = self.delta[(config.state, config.tape[config.head - 1])]
        tape = list(config.tape)
        tape[config.head - 1] = rule.write
        return TmConfig(rule.next_state, config.head + int(rule.direction), tuple(tape))

    def configurations(self, m: int) -> Iterator[TmConfig]:
        """Every configuration in space m (state, head on 1..m, tape)."""

        def tapes(length: int) -> Iterator[tuple[str, ...]]:
            if length == 0:
                yield ()
                return
            for rest in tapes(length - 1):
                for symbol in self.alphabet:
                    yield rest + (symbol,)

        for state in self.states:
            for head in range(1, m + 1):
                for tape in tapes(m):
                    yield TmConfig(state, head, tape)


def config_count(machine: TuringMachine, m: int) -> int:
    """|Σ|^m · m · |Q|."""

    return len(machine.alphabet) ** m * m * len(machine.states)


def symbol_entity(symbol: str, cell: int) -> str:
    return f"sym_{symbol}_{cell}"


def state_entity(state: str, cell: int) -> str:
    return f"q_{state}_{cell}"


def _check_space(m: int) -> None:
    if m < 1:
        raise ConstructionError("tape length m must be at least 1")


def tm_entity_names(machine: TuringMachine, m: int) -> list[str]:
    _check_space(m)
    names = [symbol_entity(a, i) for i in range(1, m + 1) for a in machine.alphabet]
    names += [state_entity(q, i) for i in range(1, m + 2) for q in machine.states]
    return names


def _tm_reactions(
    machine: TuringMachine, m: int, table: EntityTable, guards: Iterable[str] = ()
) -> list[Reaction]:
    """Transition and tape-preservation reactions, each inhibited also by ``guards``."""

    guard = table.set_of(guards)
    reactions: list[Reaction] = []
    for i in range(1, m + 1):
        for rule in machine.transitions:
            target = i + int(rule.direction)
            products = [symbol_entity(rule.write, i)]
            if target >= 1:
                products.append(state_entity(rule.next_state, target))
            reactions.append(
                Reaction(
                    table.set_of([state_entity(rule.state, i), symbol_entity(rule.symbol, i)]),
                    guard,
                    table.set_of(products),
                )
            )
    for i in range(1, m + 1):
        heads = table.set_of(state_entity(q, i) for q in machine.states)
        for a in machine.alphabet:
            cell = table.set_of([symbol_entity(a, i)])
            reactions.append(Reaction(cell, heads | guard, cell))
    return reactions


def compile_tm(machine: TuringMachine, m: int) -> ReactionSystem:
    """Reaction system simulating ``machine`` on m tape cells."""

    table = EntityTable.from_names(tm_entity_names(machine, m))
    system = ReactionSystem(table, tuple(_tm_reactions(machine, m, table)))
    logger.info("reductions.tm.compiled", m=m, width=system.width, reactions=len(system.reactions))
    return system


def encode_config(
    machine: TuringMachine, m: int, config: TmConfig, table: Optional[EntityTable] = None
) -> EntitySet:
    """The state {sym_<x_j>_j} ∪ {q_<q>_<head>} of a configuration."""

    if len(config.tape) != m:
        raise ValueError(f"configuration tape has {len(config.tape)} cells, expected {m}")
    if not 1 <= config.head <= m + 1:
        raise ValueError(f"head position {config.head} outside 1..{m + 1}")
    if table is None:
        table = EntityTable.from_names(tm_entity_names(machine, m))
    names = [symbol_entity(a, i) for i, a in enumerate(config.tape, start=1)]
    names.append(state_entity(config.state, config.head))
    return table.set_of(names)


def decode_config(
    machine: TuringMachine, m: int, state: EntitySet, table: Optional[EntityTable] = None
) -> Optional[TmConfig]:
    """Inverse of :func:`encode_config`; None for malformed states.

    Malformed means anything other than exactly one state entity on cells 1..m
    and exactly one symbol per cell. Entities outside the tape encoding (timer
    cells, ``reset``) are ignored.
    """

    if table is None:
        table = EntityTable.from_names(tm_entity_names(machine, m))
    present = set(table.names_in(state))
    heads = [
        (q, i)
        for i in range(1, m + 2)
        for q in machine.states
        if state_entity(q, i) in present
    ]
    if len(heads) != 1 or heads[0][1] > m:
        return None
    tape: list[str] = []
    for i in range(1, m + 1):
        cell = [a for a in machine.alphabet if symbol_entity(a, i) in present]
        if len(cell) != 1:
            return None
        tape.append(cell[0])
    q, head = heads[0]
    return TmConfig(q, head, tuple(tape))


@dataclass(frozen=True)
class BoundedHaltingInstance:
    system: ReactionSystem
    initial: EntitySet
    accepting: EntitySet
    k: int
    m: int


def compile_bounded_halting(
    machine: TuringMachine, word: Sequence[str], k: int
) -> BoundedHaltingInstance:
    """Does the machine accept ``word`` within k steps, as reachability in k steps.

    The tape has k + 1 cells, widened to the input length for longer inputs.
    """

    if k < 0:
        raise ConstructionError("step bound k must be non-negative")
    m = max(k + 1, len(word))
    system = compile_tm(machine, m)
    table = system.table
    return BoundedHaltingInstance(
        system=system,
        initial=encode_config(machine, m, machine.initial_config(word, m), table),
        accepting=encode_config(machine, m, machine.accepting_config(m), table),
        k=k,
        m=m,
    )


@dataclass(frozen=True)
class HaltingCycleInstance:
    system: ReactionSystem
    accepting: EntitySet
    length: int
    initial: EntitySet
    m: int


def compile_halting_cycle(
    machine: TuringMachine, word: Sequence[str], length: int
) -> HaltingCycleInstance:
    """Acceptance within ℓ - 1 steps as the accepting state lying on a cycle of length <= ℓ."""

    if length < 1:
        raise ConstructionError("cycle bound must be at least 1")
    m = max(length, len(word))
    table = EntityTable.from_names(tm_entity_names(machine, m))
    halted = state_entity(machine.accept, 1)
    initial = encode_config(machine, m, machine.initial_config(word, m), table)
    reactions = _tm_reactions(machine, m, table, guards=[halted])
    reactions.append(Reaction(table.set_of([halted]), EntitySet.empty(table.width), initial))
    system = ReactionSystem(table, tuple(reactions))
    logger.info("reductions.halting_cycle.compiled", m=m, width=system.width)
    return HaltingCycleInstance(
        system=system,
        accepting=encode_config(machine, m, machine.accepting_config(m), table),
        length=length,
        initial=initial,
        m=m,
    )


# --------------------------------------------------------------------------- resettable system


def first_primes(count: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes if p * p <= candidate):
            primes.append(candidate)
        candidate += 1
    return primes


@dataclass(frozen=True, slots=True)
class TimerSpec:
    """K coprime counters; together they count to L = p_1 ··· p_K."""

    k: int
    primes: tuple[int, ...]
    period: int

    def cell(self, k: int, t: int) -> str:
        return f"c_{k}_{t}"

    def names(self) -> list[str]:
        return [self.cell(k, t) for k, p in enumerate(self.primes, start=1) for t in range(p)]

    def value_names(self, t: int) -> list[str]:
        """The timer cells present at time t, one per prime."""

        return [self.cell(k, t % p) for k, p in enumerate(self.primes, start=1)]


def timer_spec(machine: TuringMachine, m: int) -> TimerSpec:
    _check_space(m)
    count = config_count(machine, m)
    k = (count - 1).bit_length() + 1
    primes = first_primes(k)
    period = 1
    for p in primes:
        period *= p
    while period - 1 <= count:
        k += 1
        primes = first_primes(k)
        period *= primes[-1]
    return TimerSpec(k, tuple(primes), period)


def timer_state(spec: TimerSpec, t: int, table: EntityTable) -> EntitySet:
    """Y_t."""

    return table.set_of(spec.value_names(t))


@dataclass(frozen=True)
class ResettableSystem:
    system: ReactionSystem
    initial: EntitySet
    start: EntitySet
    accepting: EntitySet
    timer: TimerSpec
    machine: TuringMachine
    m: int

    @property
    def reset(self) -> EntitySet:
        return self.system.state(RESET)


def encode_timed(
    instance: ResettableSystem, config: TmConfig, t: int
) -> EntitySet:
    """A well-formed state: the encoding of ``config`` plus Y_t."""

    table = instance.system.table
    encoded = encode_config(instance.machine, instance.m, config, table)
    return encoded | timer_state(instance.timer, t, table)


def _pairs(table: EntityTable, names: Sequence[str], guard: EntitySet) -> Iterator[Reaction]:
    for first, second in combinations(names, 2):
        yield Reaction(table.set_of([first, second]), guard, table.set_of([RESET]))


def compile_tm_resettable(
    machine: TuringMachine, word: Sequence[str], m: int
) -> ResettableSystem:
    """Machine simulation in which every state but an accepting run is reset to C0.

    {f_1} is a fixed point; a head overflow, an expired timer or a malformed
    state produces ``reset``, and ``reset`` without f_1 produces C0 = T ∪ Y_0.
    """

    _check_space(m)
    timer = timer_spec(machine, m)
    table = EntityTable.from_names(tm_entity_names(machine, m) + [RESET] + timer.names())
    halted = state_entity(machine.accept, 1)
    guard_names = [halted, RESET]
    guard = table.set_of(guard_names)
    reset = table.set_of([RESET])
    nothing = EntitySet.empty(table.width)

    initial = encode_config(machine, m, machine.initial_config(word, m), table)
    start = initial | timer_state(timer, 0, table)

    reactions = _tm_reactions(machine, m, table, guards=guard_names)
    reactions.append(Reaction(table.set_of([halted]), nothing, table.set_of([halted])))
    for q in machine.states:
        reactions.append(Reaction(table.set_of([state_entity(q, m + 1)]), guard, reset))

    for k, p in enumerate(timer.primes, start=1):
        for t in range(p):
            reactions.append(
                Reaction(
                    table.set_of([timer.cell(k, t)]),
                    guard,
                    table.set_of([timer.cell(k, (t + 1) % p)]),
                )
            )
    reactions.append(Reaction(timer_state(timer, timer.period - 1, table), guard, reset))
    reactions.append(Reaction(reset, table.set_of([halted]), start))

    heads = [state_entity(q, i) for i in range(1, m + 1) for q in machine.states]
    reactions.append(Reaction(nothing, table.set_of(heads) | guard, reset))
    reactions.extend(_pairs(table, [h for h in heads if h != halted], guard))
    for i in range(1, m + 1):
        cell = [symbol_entity(a, i) for a in machine.alphabet]
        reactions.append(Reaction(nothing, table.set_of(cell) | guard, reset))
        reactions.extend(_pairs(table, cell, guard))
    for k, p in enumerate(timer.primes, start=1):
        counter = [timer.cell(k, t) for t in range(p)]
        reactions.append(Reaction(nothing, table.set_of(counter) | guard, reset))
        reactions.extend(_pairs(table, counter, guard))

    system = ReactionSystem(table, tuple(reactions))
    logger.info(
        "reductions.tm_resettable.compiled",
        m=m,
        width=system.width,
        reactions=len(system.reactions),
        timer_period=timer.period,
    )
    return ResettableSystem(
        system=system,
        initial=initial,
        start=start,
        accepting=table.set_of([halted]),
        timer=timer,
        machine=machine,
        m=m,
    )
