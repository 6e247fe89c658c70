"""Two-input Boolean gates as reaction systems.

Each wire ``w`` carries two entities, ``0_w`` and ``1_w``; a gate has one
reaction per input combination producing the entity for its output bit.
"""
from __future__ import annotations

from typing import Callable

from ..core import ReactionSystem

GateFunction = Callable[[int, int], int]

GATES: dict[str, GateFunction] = {
    "nand": lambda a, b: 1 - (a & b),
    "and": lambda a, b: a & b,
    "or": lambda a, b: a | b,
    "nor": lambda a, b: 1 - (a | b),
    "xor": lambda a, b: a ^ b,
}


def wire(bit: int, name: str) -> str:
    return f"{bit}_{name}"


def compile_gate(
    function: GateFunction, a: str = "a", b: str = "b", out: str = "out"
) -> ReactionSystem:
    names = [wire(bit, w) for w in (a, b, out) for bit in (0, 1)]
    reactions = [
        ([wire(x, a), wire(y, b)], [], [wire(function(x, y), out)])
        for x in (0, 1)
        for y in (0, 1)
    ]
    return ReactionSystem.from_named(names, reactions)


def compile_nand() -> ReactionSystem:
    """The four-reaction NAND gate over {0_a,1_a,0_b,1_b,0_out,1_out}."""

    return compile_gate(GATES["nand"])
