from __future__ import annotations

import re

import pytest

from reaction_dynamics.core import ReactionSystem
from reaction_dynamics.dot import export_dot
from reaction_dynamics.dynamics import preperiod_period
from reaction_dynamics.oracle import build_state_graph

NODE = re.compile(r"^  s(\d+) \[label=", re.MULTILINE)
EDGE = re.compile(r"^  s(\d+) -> s(\d+)", re.MULTILINE)


@pytest.fixture
def constant() -> ReactionSystem:
    return ReactionSystem.from_named(["a", "b"], [([], [], ["a"])])


def test_state_graph_export(constant):
    text = export_dot(build_state_graph(constant), color="red")
    assert text.startswith("digraph res {")
    assert [int(m) for m in NODE.findall(text)] == [0, 1, 2, 3]
    assert sorted((int(s), int(t)) for s, t in EDGE.findall(text)) == [
        (0, 1), (1, 1), (2, 1), (3, 1),
    ]
    assert 's1 [label="{a}", color="red", penwidth=2];' in text
    assert 's3 [label="{a,b}"];' in text
    assert 's1 -> s1 [color="red"];' in text


def test_export_is_deterministic(constant):
    graph = build_state_graph(constant)
    assert export_dot(graph) == export_dot(build_state_graph(constant))


def test_trajectory_export():
    swap = ReactionSystem.from_named(["a", "b"], [(["a"], ["b"], ["b"]), (["b"], ["a"], ["a"])])
    trajectory = preperiod_period(swap, swap.state("a", "b"))
    assert (trajectory.preperiod, trajectory.period) == (1, 1)
    text = export_dot(trajectory, swap, color="blue")
    assert text.startswith("digraph trajectory {")
    nodes = NODE.findall(text)
    assert len(nodes) <= trajectory.preperiod + trajectory.period + 1
    assert [int(m) for m in nodes] == [0, 3]
    assert "s3 -> s0;" in text
    assert 's0 -> s0 [color="blue"];' in text


def test_trajectory_export_needs_the_system(constant):
    trajectory = preperiod_period(constant, constant.empty())
    with pytest.raises(ValueError):
        export_dot(trajectory)
