"""Compilers from circuits, Turing machines and Boolean formulas to reaction systems."""

from .circuits import GATES, compile_gate, compile_nand
from .formulas import (
    BasinInstance,
    Clause,
    ClauseFixpointInstance,
    Formula,
    QbfBasinInstance,
    QbfInstance,
    compile_cnf_ancestor,
    compile_cnf_clause_fixpoint,
    compile_cnf_short_cycle,
    compile_dnf_basin,
    compile_dnf_bijection,
    compile_qbf_basin,
)
from .turing import (
    BoundedHaltingInstance,
    ConstructionError,
    Direction,
    HaltingCycleInstance,
    ResettableSystem,
    TimerSpec,
    TmConfig,
    Transition,
    TuringMachine,
    compile_bounded_halting,
    compile_halting_cycle,
    compile_tm,
    compile_tm_resettable,
    config_count,
    decode_config,
    encode_config,
    encode_timed,
    timer_spec,
    timer_state,
)

__all__ = [
    "GATES",
    "BasinInstance",
    "BoundedHaltingInstance",
    "Clause",
    "ClauseFixpointInstance",
    "ConstructionError",
    "Direction",
    "Formula",
    "HaltingCycleInstance",
    "QbfBasinInstance",
    "QbfInstance",
    "ResettableSystem",
    "TimerSpec",
    "TmConfig",
    "Transition",
    "TuringMachine",
    "compile_bounded_halting",
    "compile_cnf_ancestor",
    "compile_cnf_clause_fixpoint",
    "compile_cnf_short_cycle",
    "compile_dnf_basin",
    "compile_dnf_bijection",
    "compile_gate",
    "compile_halting_cycle",
    "compile_nand",
    "compile_qbf_basin",
    "compile_tm",
    "compile_tm_resettable",
    "config_count",
    "decode_config",
    "encode_config",
    "encode_timed",
    "timer_spec",
    "timer_state",
]
