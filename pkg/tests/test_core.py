from __future__ import annotations

import random

import pytest

from conftest import random_systems
from reaction_dynamics.core import (
    EntityError,
    EntitySet,
    EntityTable,
    Reaction,
    ReactionSystem,
    WidthMismatchError,
    dedupe,
    identity_system,
    is_enabled,
    lint,
    res,
    res_reaction,
)
from reaction_dynamics.reductions import compile_nand


def _constant() -> ReactionSystem:
    return ReactionSystem.from_named(["a", "b"], [([], [], ["a"])])


def test_entity_set_algebra():
    a = EntitySet.of(4, [0, 2])
    b = EntitySet.of(4, [2, 3])
    assert (a | b).mask == 0b1101
    assert (a & b) == EntitySet.of(4, [2])
    assert (a - b) == EntitySet.of(4, [0])
    assert EntitySet.of(4, [2]) <= a
    assert not a <= b
    assert list(a | b) == [0, 2, 3]
    assert len(a) == 2
    assert 2 in a and 1 not in a
    assert not EntitySet.empty(4)
    assert EntitySet.full(3).mask == 0b111


def test_entity_set_rejects_foreign_members():
    with pytest.raises(WidthMismatchError):
        EntitySet(2, 0b100)
    with pytest.raises(WidthMismatchError):
        EntitySet.of(2, [5])
    with pytest.raises(WidthMismatchError):
        EntitySet.empty(2) | EntitySet.empty(3)


def test_entity_table_lookup_and_errors():
    table = EntityTable.from_names(["x", "y", "z"])
    assert table.width == 3
    assert table.lookup("y") == 1
    assert table.name_of(2) == "z"
    assert table.names_in(table.set_of(["z", "x"])) == ["x", "z"]
    with pytest.raises(EntityError):
        table.lookup("w")
    with pytest.raises(EntityError):
        EntityTable.from_names(["x", "x"])
    with pytest.raises(EntityError):
        EntityTable.from_names(["bad name"])
    with pytest.raises(EntityError, match="exceeds the cap"):
        EntityTable.from_names(["a", "b", "c"], max_background=2)


def test_is_enabled_examples():
    nand = compile_nand()
    first = nand.reactions[0]
    assert is_enabled(first, nand.state("0_a", "0_b"))

    free = ReactionSystem.from_named(["p", "q"], [([], [], ["p"])]).reactions[0]
    for mask in range(4):
        assert is_enabled(free, EntitySet(2, mask))

    blocked = ReactionSystem.from_named(["x", "p"], [(["x"], ["x"], ["p"])])
    assert not is_enabled(blocked.reactions[0], blocked.state("x"))
    assert blocked.reactions[0].never_enabled


def test_res_reaction_examples():
    nand = compile_nand()
    last = nand.reactions[3]
    assert res_reaction(last, nand.state("1_a", "1_b")) == nand.state("0_out")

    system = ReactionSystem.from_named(["x", "y"], [(["x"], [], ["y"])])
    assert res_reaction(system.reactions[0], system.empty()) == system.empty()


def test_res_reaction_matches_definition_on_every_state():
    rng = random.Random(7)
    names = [f"s{i}" for i in range(6)]
    for _ in range(20):
        picks = [{n for n in names if rng.random() < 0.35} for _ in range(3)]
        system = ReactionSystem.from_named(names, [tuple(picks)])
        reaction = system.reactions[0]
        reactants, inhibitors, products = picks
        for mask in range(64):
            state = system.from_mask(mask)
            present = set(system.names_of(state))
            fires = reactants <= present and not inhibitors & present
            expected = products if fires else set()
            assert set(system.names_of(res_reaction(reaction, state))) == expected


def test_res_examples():
    nand = compile_nand()
    assert res(nand, nand.state("0_a", "1_b")) == nand.state("1_out")
    assert res(nand, nand.empty()) == nand.empty()

    empty = ReactionSystem(EntityTable.from_names(["a", "b"]))
    for mask in range(4):
        assert res(empty, empty.from_mask(mask)).mask == 0

    constant = _constant()
    assert res(constant, constant.state("b")) == constant.state("a")
    assert res(constant, constant.state("a")) == constant.state("a")


def test_res_rejects_width_mismatch():
    with pytest.raises(WidthMismatchError):
        res(compile_nand(), EntitySet.empty(3))


def test_res_is_a_union_and_order_free():
    system = ReactionSystem.from_named(
        ["a", "b", "c"], [(["a"], [], ["b"]), (["a"], ["c"], ["c"]), ([], ["b"], ["a"])]
    )
    flipped = ReactionSystem(system.table, tuple(reversed(system.reactions)))
    for mask in range(8):
        assert system.step(mask) == flipped.step(mask)
        assert system.step(mask) & ~system.products_bound().mask == 0


def test_format_state_uses_ordinal_order():
    nand = compile_nand()
    assert nand.format_state(nand.state("1_out", "0_a")) == "{0_a,1_out}"
    assert nand.format_state(nand.empty()) == "{}"


def test_identity_system_fixes_every_state():
    system = identity_system(["a", "b", "c"])
    assert all(system.step(mask) == mask for mask in range(8))


def test_lint_reports_never_enabled_and_duplicates():
    system = ReactionSystem.from_named(
        ["x", "y"],
        [(["x"], ["x"], ["y"]), (["x"], ["y"], ["y"]), (["x"], ["y"], ["y"])],
    )
    kinds = [(issue.kind, issue.reaction_index) for issue in lint(system)]
    assert kinds == [("never-enabled", 0), ("duplicate", 2)]


def test_lint_strict_flags_empty_sets():
    system = ReactionSystem.from_named(["a"], [([], [], ["a"])])
    assert lint(system) == []
    kinds = {issue.kind for issue in lint(system, strict=True)}
    assert kinds == {"empty-reactants", "empty-inhibitors"}


def test_dedupe_keeps_first_occurrences():
    system = ReactionSystem.from_named(
        ["a", "b"], [(["a"], [], ["b"]), (["b"], [], ["a"]), (["a"], [], ["b"])]
    )
    unique = dedupe(system)
    assert len(unique.reactions) == 2
    assert unique.reactions == system.reactions[:2]
    assert all(unique.step(m) == system.step(m) for m in range(4))


def test_reaction_rejects_mixed_widths():
    with pytest.raises(WidthMismatchError):
        Reaction(EntitySet.empty(2), EntitySet.empty(3), EntitySet.empty(2))


def test_never_enabled_reaction_leaves_res_unchanged():
    rng = random.Random(23)
    for system in random_systems(seed=23, count=60, widths=(1, 7)):
        width = system.width
        shared = EntitySet.of(width, [rng.randrange(width)])
        reactants, inhibitors = (
            EntitySet.of(width, (i for i in range(width) if rng.random() < 0.3)) | shared
            for _ in range(2)
        )
        blocked = Reaction(reactants, inhibitors, EntitySet.of(width, range(width)))
        assert blocked.never_enabled
        extended = ReactionSystem(system.table, system.reactions + (blocked,))
        assert ("never-enabled", len(system.reactions)) in [
            (issue.kind, issue.reaction_index) for issue in lint(extended)
        ]
        for mask in range(system.state_count):
            assert extended.step(mask) == system.step(mask), (system, mask)
