from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Literal, Optional, Sequence, Union

from .. import dynamics, oracle
from ..core import EntitySet, ReactionSystem, lint
from ..dot import export_dot
from ..dynamics import Bound, BudgetExceededError, Decision, SearchBudget, Trajectory
from ..formats import serialize_rs
from ..logging import get_logger
from ..oracle import StateGraph
from ..reductions import (
    Formula,
    QbfInstance,
    TuringMachine,
    compile_bounded_halting,
    compile_cnf_ancestor,
    compile_cnf_clause_fixpoint,
    compile_cnf_short_cycle,
    compile_dnf_basin,
    compile_dnf_bijection,
    compile_halting_cycle,
    compile_nand,
    compile_qbf_basin,
    compile_tm,
    compile_tm_resettable,
)

logger = get_logger(__name__)

Comparison = Literal["le", "ge"]

PROBLEMS = (
    "reachable-within",
    "reachable",
    "period",
    "exists-period",
    "far-ancestor",
    "k-ancestor",
    "bijective",
    "identity",
    "local-basin",
    "exists-local-basin",
    "global-attractor",
    "exists-global-attractor",
)

TARGETS = (
    "nand",
    "tm",
    "tm-reset",
    "bounded-halting",
    "halting-cycle",
    "cnf-cycle",
    "cnf-fixpoint",
    "cnf-ancestor",
    "dnf-bijection",
    "dnf-basin",
    "qbf-basin",
)


class AnalysisWorkflow:
    """One ``run_*`` method per command; each returns ``{"request": ..., "result": ...}``."""

    def __init__(self, budget: SearchBudget) -> None:
        self._budget = budget

    @property
    def budget(self) -> SearchBudget:
        return self._budget

    def _write_dot(
        self, system: ReactionSystem, dot: Path, state: Optional[EntitySet] = None
    ) -> None:
        """The trajectory of ``state``, or the whole state graph without one."""

        source: Union[StateGraph, Trajectory]
        if state is not None:
            source = dynamics.preperiod_period(system, state, self._budget)
        else:
            source = oracle.build_state_graph(system)
        dot.write_text(export_dot(source, system), encoding="utf-8")
        logger.info("workflow.dot.written", path=str(dot), trajectory=state is not None)

    def run_simulate(
        self,
        system: ReactionSystem,
        state: EntitySet,
        steps: int,
        dot: Optional[Path] = None,
    ) -> Dict[str, Any]:
        try:
            states = dynamics.simulate(system, state, steps)
            if dot is not None:
                self._write_dot(system, dot, state)
        except Exception as exc:
            logger.error("workflow.simulate.failed", error=str(exc))
            raise
        return {
            "request": {"state": system.format_state(state), "steps": steps},
            "result": {"states": [system.format_state(s) for s in states]},
        }

    def run_analyze(
        self, system: ReactionSystem, state: EntitySet, dot: Optional[Path] = None
    ) -> Dict[str, Any]:
        try:
            trajectory = dynamics.preperiod_period(system, state, self._budget)
            try:
                report = dynamics.attractor_report(system, state, self._budget)
            except BudgetExceededError as exc:
                logger.warning("workflow.analyze.attractor_skipped", error=str(exc))
                report = None
            if dot is not None:
                dot.write_text(export_dot(trajectory, system), encoding="utf-8")
        except Exception as exc:
            logger.error("workflow.analyze.failed", error=str(exc))
            raise
        attractor = None
        if report is not None:
            attractor = {
                "kind": report.kind,
                "local": report.is_local,
                "basin_size": report.basin_size,
                "basin_diameter": report.basin_diameter,
            }
        return {
            "request": {"state": system.format_state(state)},
            "result": {
                "preperiod": trajectory.preperiod,
                "period": trajectory.period,
                "cycle": [system.format_state(s) for s in trajectory.cycle],
                "attractor": attractor,
            },
        }

    def decide(
        self,
        system: ReactionSystem,
        problem: str,
        state: Optional[EntitySet] = None,
        target: Optional[EntitySet] = None,
        ell: Optional[int] = None,
        k: Optional[int] = None,
        d: Optional[int] = None,
        cmp: Comparison = "le",
        k_cmp: Optional[Comparison] = None,
    ) -> Decision:
        budget = self._budget

        def need(value: Optional[Any], name: str) -> Any:
            if value is None:
                raise ValueError(f"problem {problem!r} requires --{name}")
            return value

        if problem == "reachable-within":
            found = dynamics.reaches_within(
                system, need(state, "state"), need(target, "target"), need(k, "k"), budget
            )
            return Decision(found)
        if problem == "reachable":
            return Decision(
                dynamics.reaches(system, need(state, "state"), need(target, "target"), budget)
            )
        if problem in ("period", "exists-period"):
            period = Bound(cmp, need(ell, "l"))
            preperiod = Bound(k_cmp or cmp, k) if k is not None else None
            if problem == "period":
                current = need(state, "state")
                ok = dynamics.state_matches(system, current, period, preperiod, budget)
                return Decision(ok, current if ok else None)
            return dynamics.exists_state(system, period, preperiod, budget)
        if problem == "far-ancestor":
            return dynamics.periodic_with_far_ancestor(
                system, need(state, "state"), need(ell, "l"), need(k, "k"), budget
            )
        if problem == "k-ancestor":
            return dynamics.k_ancestors(system, need(state, "state"), need(k, "k"), budget)
        if problem == "bijective":
            return Decision(dynamics.is_bijective(system, budget))
        if problem == "identity":
            return Decision(dynamics.is_identity(system, budget))
        if problem in ("local-basin", "exists-local-basin"):
            current = need(state, "state") if problem == "local-basin" else None
            return dynamics.decide_attractor_basin(
                system, current, need(ell, "l"), Bound(cmp, need(d, "d")), budget
            )
        if problem in ("global-attractor", "exists-global-attractor"):
            current = need(state, "state") if problem == "global-attractor" else None
            return dynamics.decide_global_attractor(
                system, current, Bound(cmp, need(ell, "l")), budget
            )
        raise ValueError(f"unknown problem {problem!r}; expected one of {', '.join(PROBLEMS)}")

    def run_decide(
        self,
        system: ReactionSystem,
        problem: str,
        dot: Optional[Path] = None,
        **params: Any,
    ) -> Dict[str, Any]:
        try:
            decision = self.decide(system, problem, **params)
            if dot is not None:
                self._write_dot(system, dot, params.get("state"))
        except Exception as exc:
            logger.error("workflow.decide.failed", problem=problem, error=str(exc))
            raise
        request = {
            key: system.format_state(value) if isinstance(value, EntitySet) else value
            for key, value in params.items()
            if value is not None
        }
        witness = decision.witness
        return {
            "request": {"problem": problem, **request},
            "result": {
                "answer": decision.answer,
                "witness": system.format_state(witness) if witness is not None else None,
                "exhaustive": decision.exhaustive,
            },
        }

    def run_compile(
        self,
        target: str,
        machine: Optional[TuringMachine] = None,
        word: Sequence[str] = (),
        formula: Optional[Formula] = None,
        qbf: Optional[QbfInstance] = None,
        k: Optional[int] = None,
        ell: Optional[int] = None,
        m: Optional[int] = None,
        dot: Optional[Path] = None,
    ) -> Dict[str, Any]:
        def need(value: Optional[Any], name: str) -> Any:
            if value is None:
                raise ValueError(f"target {target!r} requires {name}")
            return value

        states: Dict[str, EntitySet] = {}
        params: Dict[str, int] = {}
        try:
            if target == "nand":
                system = compile_nand()
            elif target == "tm":
                system = compile_tm(need(machine, "a machine"), need(m, "--m"))
                params["m"] = m  # type: ignore[assignment]
            elif target == "tm-reset":
                bundle = compile_tm_resettable(need(machine, "a machine"), word, need(m, "--m"))
                system = bundle.system
                states = {"T": bundle.initial, "C0": bundle.start, "U": bundle.accepting}
                params = {
                    "m": bundle.m,
                    "timer_primes": bundle.timer.k,
                    "timer_period": bundle.timer.period,
                }
            elif target == "bounded-halting":
                halting = compile_bounded_halting(need(machine, "a machine"), word, need(k, "--k"))
                system = halting.system
                states = {"T": halting.initial, "U": halting.accepting}
                params = {"k": halting.k, "m": halting.m}
            elif target == "halting-cycle":
                cycle = compile_halting_cycle(need(machine, "a machine"), word, need(ell, "--l"))
                system = cycle.system
                states = {"T": cycle.accepting, "U": cycle.initial}
                params = {"l": cycle.length, "m": cycle.m}
            elif target == "cnf-cycle":
                system = compile_cnf_short_cycle(need(formula, "a formula"), need(ell, "--l"))
                params["l"] = ell  # type: ignore[assignment]
            elif target in ("cnf-fixpoint", "cnf-ancestor"):
                if target == "cnf-fixpoint":
                    fixpoint = compile_cnf_clause_fixpoint(need(formula, "a formula"))
                else:
                    fixpoint = compile_cnf_ancestor(need(formula, "a formula"))
                system = fixpoint.system
                states = {"T": fixpoint.target}
            elif target == "dnf-bijection":
                system = compile_dnf_bijection(need(formula, "a formula"))
            elif target == "dnf-basin":
                basin = compile_dnf_basin(need(formula, "a formula"))
                system = basin.system
                states = {"T": basin.target}
                params = {"l": basin.length, "d": basin.diameter}
            elif target == "qbf-basin":
                qbf_basin = compile_qbf_basin(need(qbf, "a QBF instance"))
                system = qbf_basin.system
                params = {"l": qbf_basin.length, "d": qbf_basin.diameter}
            else:
                raise ValueError(f"unknown target {target!r}; expected one of {', '.join(TARGETS)}")
            if dot is not None:
                self._write_dot(system, dot)
        except Exception as exc:
            logger.error("workflow.compile.failed", target=target, error=str(exc))
            raise
        logger.info("workflow.compile.completed", target=target, width=system.width)
        return {
            "request": {"target": target, "k": k, "l": ell, "m": m, "input": list(word)},
            "result": {
                "document": serialize_rs(system),
                "states": {name: system.format_state(value) for name, value in states.items()},
                "params": params,
            },
        }

    def run_oracle(
        self, system: ReactionSystem, action: str, dot: Optional[Path] = None
    ) -> Dict[str, Any]:
        try:
            if action == "graph":
                graph = oracle.build_state_graph(system)
                analysis = oracle.graph_analysis(graph)
                if dot is not None:
                    dot.write_text(export_dot(graph, system), encoding="utf-8")
                result: Dict[str, Any] = {
                    "states": graph.size,
                    "cycles": [
                        {
                            "states": [
                                system.format_state(system.from_mask(s)) for s in cycle.states
                            ],
                            "kind": cycle.kind,
                            "basin_size": cycle.basin_size,
                            "basin_diameter": cycle.basin_diameter,
                        }
                        for cycle in analysis.cycles
                    ],
                }
            elif action == "verify":
                report = oracle.verify(system, self._budget)
                result = {
                    "ok": report.ok,
                    "states_checked": report.states_checked,
                    "cycles": report.cycles,
                    "mismatches": [
                        {
                            "state": system.format_state(system.from_mask(item.mask)),
                            "attribute": item.attribute,
                            "oracle": item.expected,
                            "dynamics": item.actual,
                        }
                        for item in report.mismatches
                    ],
                }
            else:
                raise ValueError(f"unknown oracle action {action!r}; expected graph or verify")
        except Exception as exc:
            logger.error("workflow.oracle.failed", action=action, error=str(exc))
            raise
        return {"request": {"action": action}, "result": result}

    def run_lint(self, system: ReactionSystem, strict: bool = False) -> Dict[str, Any]:
        issues = lint(system, strict=strict)
        return {
            "request": {"strict": strict},
            "result": {
                "issues": [
                    {
                        "kind": issue.kind,
                        "severity": issue.severity,
                        "reaction": issue.reaction_index,
                        "message": issue.message,
                    }
                    for issue in issues
                ]
            },
        }
