from __future__ import annotations

import pytest

from reaction_dynamics.core import res
from reaction_dynamics.reductions import GATES, compile_gate, compile_nand


def test_nand_background_and_reactions():
    nand = compile_nand()
    assert nand.table.names == ("0_a", "1_a", "0_b", "1_b", "0_out", "1_out")
    assert len(nand.reactions) == 4


@pytest.mark.parametrize(
    ("inputs", "output"),
    [
        (("0_a", "0_b"), "1_out"),
        (("0_a", "1_b"), "1_out"),
        (("1_a", "0_b"), "1_out"),
        (("1_a", "1_b"), "0_out"),
    ],
)
def test_nand_truth_table(inputs, output):
    nand = compile_nand()
    assert res(nand, nand.state(*inputs)) == nand.state(output)


def test_nand_without_inputs_produces_nothing():
    nand = compile_nand()
    assert res(nand, nand.empty()) == nand.empty()
    assert res(nand, nand.state("0_a")) == nand.empty()


@pytest.mark.parametrize("name", sorted(GATES))
def test_gate_helper_computes_its_function(name):
    function = GATES[name]
    gate = compile_gate(function, a="p", b="q", out="r")
    for x in (0, 1):
        for y in (0, 1):
            image = res(gate, gate.state(f"{x}_p", f"{y}_q"))
            assert gate.names_of(image) == [f"{function(x, y)}_r"]
