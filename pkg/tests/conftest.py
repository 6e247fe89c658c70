from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterator

import pytest

from reaction_dynamics.core import EntitySet, EntityTable, Reaction, ReactionSystem
from reaction_dynamics.formats import parse_tm
from reaction_dynamics.logging import configure_logging
from reaction_dynamics.reductions import Formula, TuringMachine
from reaction_dynamics.reductions.formulas import FormulaMode

DATA = Path(__file__).resolve().parent.parent / "data"

Literals = tuple[int, ...]


@pytest.fixture(autouse=True)
def _quiet_logging() -> None:
    configure_logging("WARNING")


def load_machine(name: str) -> TuringMachine:
    return parse_tm((DATA / "machines" / f"{name}.tm").read_text(encoding="utf-8"))


@pytest.fixture
def eraser() -> TuringMachine:
    return load_machine("eraser")


@pytest.fixture
def spin() -> TuringMachine:
    return load_machine("spin")


@pytest.fixture
def clear() -> TuringMachine:
    return load_machine("clear")


@pytest.fixture
def walker() -> TuringMachine:
    return load_machine("walker")


def random_system(rng: random.Random, width: int, max_reactions: int = 12) -> ReactionSystem:
    """Sparse random reactions; about a third of the entities per set."""

    table = EntityTable.from_names(f"e{i}" for i in range(width))

    def subset() -> EntitySet:
        return EntitySet.of(width, (i for i in range(width) if rng.random() < 0.3))

    reactions = tuple(
        Reaction(subset(), subset(), subset()) for _ in range(rng.randint(0, max_reactions))
    )
    return ReactionSystem(table, reactions)


def random_systems(seed: int, count: int, widths: tuple[int, int]) -> Iterator[ReactionSystem]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_system(rng, rng.randint(*widths))


# --------------------------------------------------------------------------- formula families


def _clause_universe(n: int) -> list[Literals]:
    clauses = []
    for signs in product((0, 1, -1), repeat=n):
        clauses.append(tuple(sorted(s * v for v, s in enumerate(signs, start=1) if s)))
    return clauses


def _symmetries(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    return [
        (perm, flips)
        for perm in permutations(range(1, n + 1))
        for flips in product((1, -1), repeat=n)
    ]


def _rename(literal: int, perm: tuple[int, ...], flips: tuple[int, ...]) -> int:
    v = abs(literal)
    return perm[v - 1] * flips[v - 1] * (1 if literal > 0 else -1)


def _canonical(clauses: tuple[Literals, ...], n: int) -> tuple[Literals, ...]:
    return min(
        tuple(sorted(tuple(sorted(_rename(x, perm, flips) for x in c)) for c in clauses))
        for perm, flips in _symmetries(n)
    )


@lru_cache
def formula_family(n: int = 3, max_clauses: int = 3) -> tuple[tuple[Literals, ...], ...]:
    """Every set of at most ``max_clauses`` distinct clauses over n variables, up to
    renaming and negating variables."""

    universe = _clause_universe(n)
    seen: set[tuple[Literals, ...]] = set()
    family: list[tuple[Literals, ...]] = []
    for size in range(max_clauses + 1):
        for chosen in combinations(universe, size):
            key = _canonical(chosen, n)
            if key in seen:
                continue
            seen.add(key)
            family.append(key)
    return tuple(family)


def random_clause_lists(
    seed: int, count: int, max_vars: int = 3
) -> Iterator[tuple[int, list[list[int]]]]:
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_vars)
        clauses = []
        for _ in range(rng.randint(0, 3)):
            clause = [v * rng.choice((1, -1)) for v in range(1, n + 1) if rng.random() < 0.5]
            clauses.append(clause)
        yield n, clauses


def formulas(mode: FormulaMode, seed: int, random_count: int) -> list[Formula]:
    built = [
        Formula.from_lists(mode, 3, [list(c) for c in clauses]) for clauses in formula_family()
    ]
    built += [
        Formula.from_lists(mode, n, clauses)
        for n, clauses in random_clause_lists(seed, random_count)
    ]
    return built
