"""Graphviz export of state graphs and trajectories.

Nodes are emitted in ascending mask order and labelled in set notation; cycle
nodes and edges are drawn in the highlight colour.
"""
from __future__ import annotations

from typing import Iterator, Optional, Union

from .config import get_settings
from .core import ReactionSystem
from .dynamics import Trajectory
from .oracle import StateGraph, graph_analysis


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


def _node(system: ReactionSystem, mask: int, highlight: Optional[str]) -> str:
    label = _gvquote(system.format_state(system.from_mask(mask)))
    style = f", color={_gvquote(highlight)}, penwidth=2" if highlight else ""
    return f"  s{mask} [label={label}{style}];\n"


def _edge(source: int, target: int, highlight: Optional[str]) -> str:
    style = f" [color={_gvquote(highlight)}]" if highlight else ""
    return f"  s{source} -> s{target}{style};\n"


def graph_lines(graph: StateGraph, system: ReactionSystem, color: str) -> Iterator[str]:
    analysis = graph_analysis(graph)
    on_cycle = (analysis.preperiod == 0).tolist()
    successor = graph.successor.tolist()
    yield "digraph res {\n"
    yield "  node [shape=box];\n"
    for mask in range(graph.size):
        yield _node(system, mask, color if on_cycle[mask] else None)
    for mask, target in enumerate(successor):
        yield _edge(mask, target, color if on_cycle[mask] else None)
    yield "}\n"


def trajectory_lines(
    trajectory: Trajectory, system: ReactionSystem, color: str
) -> Iterator[str]:
    masks = [state.mask for state in trajectory.states]
    cycle = set(masks[trajectory.preperiod :])
    yield "digraph trajectory {\n"
    yield "  node [shape=box];\n"
    for mask in sorted(set(masks)):
        yield _node(system, mask, color if mask in cycle else None)
    for index in range(len(masks) - 1):
        source, target = masks[index], masks[index + 1]
        yield _edge(source, target, color if index >= trajectory.preperiod else None)
    yield "}\n"


def export_dot(
    source: Union[StateGraph, Trajectory],
    system: Optional[ReactionSystem] = None,
    color: Optional[str] = None,
) -> str:
    """DOT text for a whole state graph or a single trajectory."""

    highlight = color or get_settings().dot_highlight_color
    if isinstance(source, StateGraph):
        owner = system or source.system
        if owner is None:
            raise ValueError("state graph export needs the reaction system for labels")
        return "".join(graph_lines(source, owner, highlight))
    if system is None:
        raise ValueError("trajectory export needs the reaction system for labels")
    return "".join(trajectory_lines(source, system, highlight))
