"""Command-line surface.

Decisions print ``true``/``false`` (and a witness) on stdout and exit 0 when
true, 1 when false, 2 on any error including an exhausted search budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from .container import ServiceContainer
from .core import ReactionSystemError
from .formats import (
    parse_formula,
    parse_qbf,
    parse_rs,
    parse_state,
    parse_tm,
    parse_word,
)
from .logging import get_logger
from .workflows.analysis import PROBLEMS, TARGETS

logger = get_logger(__name__)

COMMAND_COMPLETED = "cli.command.completed"
EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2

MACHINE_TARGETS = {"tm", "tm-reset", "bounded-halting", "halting-cycle"}
FORMULA_TARGETS = {"cnf-cycle", "cnf-fixpoint", "cnf-ancestor", "dnf-bijection", "dnf-basin"}


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsdyn", description="Dynamics and reductions for reaction systems."
    )
    parser.add_argument("--budget-states", type=_positive, help="most states a search may visit")
    parser.add_argument("--budget-steps", type=_positive, help="longest trajectory to follow")
    parser.add_argument("--dot", type=Path, help="also write a Graphviz rendering here")
    commands = parser.add_subparsers(dest="command", required=True)

    sim = commands.add_parser("sim", help="print the trajectory of a state")
    sim.add_argument("rs", type=Path)
    sim.add_argument("--state", default="")
    sim.add_argument("--steps", type=_natural, default=10)
    sim.add_argument("--json", action="store_true")

    analyze = commands.add_parser("analyze", help="preperiod, period and attractor of a state")
    analyze.add_argument("rs", type=Path)
    analyze.add_argument("--state", default="")
    analyze.add_argument("--json", action="store_true")

    decide = commands.add_parser("decide", help="answer a decision problem exactly")
    decide.add_argument("problem", choices=PROBLEMS)
    decide.add_argument("rs", type=Path)
    decide.add_argument("--state")
    decide.add_argument("--target")
    decide.add_argument("--l", type=_positive, dest="ell")
    decide.add_argument("--k", type=_natural)
    decide.add_argument("--d", type=_natural)
    decide.add_argument("--cmp", choices=("le", "ge"), default="le")
    decide.add_argument("--k-cmp", choices=("le", "ge"), dest="k_cmp")

    compile_ = commands.add_parser("compile", help="build a reduction gadget")
    compile_.add_argument("target", choices=TARGETS)
    compile_.add_argument("source", type=Path, nargs="?", help="machine, formula or QBF file")
    compile_.add_argument("--input", default="", help="tape input for machine targets")
    compile_.add_argument("--k", type=_natural)
    compile_.add_argument("--l", type=_positive, dest="ell")
    compile_.add_argument("--m", type=_positive)
    compile_.add_argument("-o", "--output", type=Path)

    oracle = commands.add_parser("oracle", help="exhaustive state-graph analysis")
    oracle.add_argument("action", choices=("graph", "verify"))
    oracle.add_argument("rs", type=Path)

    lint = commands.add_parser("lint", help="report never-enabled and duplicate reactions")
    lint.add_argument("rs", type=Path)
    lint.add_argument("--strict", action="store_true")
    return parser


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _print_json(payload: Dict[str, Any]) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _compile_document(payload: Dict[str, Any]) -> str:
    result = payload["result"]
    header = [f"# state {name} = {value}" for name, value in result["states"].items()]
    header += [f"# param {name} = {value}" for name, value in result["params"].items()]
    return "".join(line + "\n" for line in header) + result["document"]


def _dispatch(args: argparse.Namespace, container: ServiceContainer) -> int:
    workflow = container.workflow

    if args.command == "compile":
        machine = formula = qbf = None
        if args.target != "nand":
            if args.source is None:
                raise ValueError(f"target {args.target!r} needs an input file")
            text = _read(args.source)
            if args.target in MACHINE_TARGETS:
                machine = parse_tm(text)
            elif args.target in FORMULA_TARGETS:
                formula = parse_formula(text)
            else:
                qbf = parse_qbf(text)
        payload = workflow.run_compile(
            args.target,
            machine=machine,
            word=parse_word(args.input),
            formula=formula,
            qbf=qbf,
            k=args.k,
            ell=args.ell,
            m=args.m,
            dot=args.dot,
        )
        document = _compile_document(payload)
        if args.output is not None:
            args.output.write_text(document, encoding="utf-8")
        else:
            sys.stdout.write(document)
        return EXIT_TRUE

    system = parse_rs(_read(args.rs))

    if args.command == "sim":
        payload = workflow.run_simulate(
            system, parse_state(args.state, system.table), args.steps, dot=args.dot
        )
        if args.json:
            _print_json(payload)
        else:
            for step, state in enumerate(payload["result"]["states"]):
                print(f"{step}: {state}")
        return EXIT_TRUE

    if args.command == "analyze":
        payload = workflow.run_analyze(system, parse_state(args.state, system.table), dot=args.dot)
        if args.json:
            _print_json(payload)
            return EXIT_TRUE
        result = payload["result"]
        print(f"preperiod: {result['preperiod']}")
        print(f"period: {result['period']}")
        print("cycle: " + " -> ".join(result["cycle"]))
        attractor = result["attractor"]
        if attractor is None:
            print("attractor: not computed (search budget)")
        else:
            print(f"attractor: {attractor['kind']}")
            print(f"basin size: {attractor['basin_size']}")
            print(f"basin diameter: {attractor['basin_diameter']}")
        return EXIT_TRUE

    if args.command == "decide":
        table = system.table
        payload = workflow.run_decide(
            system,
            args.problem,
            state=parse_state(args.state, table) if args.state is not None else None,
            target=parse_state(args.target, table) if args.target is not None else None,
            ell=args.ell,
            k=args.k,
            d=args.d,
            cmp=args.cmp,
            k_cmp=args.k_cmp,
            dot=args.dot,
        )
        result = payload["result"]
        line = "true" if result["answer"] else "false"
        if result["witness"] is not None:
            line += f" {result['witness']}"
        print(line)
        return EXIT_TRUE if result["answer"] else EXIT_FALSE

    if args.command == "oracle":
        payload = workflow.run_oracle(system, args.action, dot=args.dot)
        result = payload["result"]
        if args.action == "graph":
            print(f"states: {result['states']}")
            for cycle in result["cycles"]:
                print(
                    f"cycle length {len(cycle['states'])} {cycle['kind']}"
                    f" basin {cycle['basin_size']} diameter {cycle['basin_diameter']}: "
                    + " -> ".join(cycle["states"])
                )
            return EXIT_TRUE
        print("ok" if result["ok"] else f"mismatches: {len(result['mismatches'])}")
        for item in result["mismatches"]:
            print(f"  {item['state']} {item['attribute']}: {item['oracle']} != {item['dynamics']}")
        return EXIT_TRUE if result["ok"] else EXIT_FALSE

    if args.dot is not None:
        raise ValueError("lint has no graph to write; drop --dot")
    payload = workflow.run_lint(system, strict=args.strict)
    for issue in payload["result"]["issues"]:
        print(f"reaction {issue['reaction']}: {issue['severity']}: {issue['message']}")
    return EXIT_TRUE


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        container = ServiceContainer(args.budget_states, args.budget_steps)
        code = _dispatch(args, container)
    except (ReactionSystemError, ValueError, OSError) as exc:
        logger.error("cli.command.failed", command=args.command, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    logger.info(COMMAND_COMPLETED, command=args.command, exit_code=code)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
