from __future__ import annotations

import pytest

from conftest import random_systems
from reaction_dynamics.core import EntityTable, ReactionSystem, identity_system
from reaction_dynamics.dynamics import (
    Bound,
    BudgetExceededError,
    SearchBudget,
    all_k_ancestors,
    attractor_report,
    certify_global_attractor,
    decide_attractor_basin,
    decide_global_attractor,
    exists_state,
    explore_state_space,
    is_bijective,
    is_identity,
    k_ancestors,
    periodic_with_far_ancestor,
    preperiod_period,
    reaches,
    reaches_within,
    simulate,
    state_matches,
)
from reaction_dynamics.reductions import Formula, compile_cnf_short_cycle


@pytest.fixture
def constant() -> ReactionSystem:
    """res(T) = {a} for every T over {a, b}."""
    return ReactionSystem.from_named(["a", "b"], [([], [], ["a"])])


@pytest.fixture
def swap() -> ReactionSystem:
    """{a} and {b} alternate; {a,b} and ∅ fall to ∅."""
    return ReactionSystem.from_named(["a", "b"], [(["a"], ["b"], ["b"]), (["b"], ["a"], ["a"])])


def _spade_cycle(length: int) -> ReactionSystem:
    return compile_cnf_short_cycle(Formula.from_lists("cnf", 1, []), length)


def test_one_step_collapse(constant):
    trajectory = preperiod_period(constant, constant.state("b"))
    assert (trajectory.preperiod, trajectory.period) == (1, 1)
    assert trajectory.cycle == (constant.state("a"),)
    assert trajectory.states[-1] == trajectory.states[trajectory.preperiod]


def test_spade_cycle_has_period_length_plus_one():
    system = _spade_cycle(2)
    info = preperiod_period(system, system.state("spade_0")).info
    assert info.is_periodic
    assert info.period == 3


def test_trajectory_budget_is_enforced():
    system = _spade_cycle(5)
    with pytest.raises(BudgetExceededError) as raised:
        preperiod_period(system, system.state("spade_0"), SearchBudget(16, 3))
    assert raised.value.limit == "max_steps"


def test_trajectory_budget_counts_every_visited_state():
    fits = _spade_cycle(2)
    trajectory = preperiod_period(fits, fits.state("spade_0"), SearchBudget(16, 3))
    assert len(trajectory.states) == 4

    one_more = _spade_cycle(3)
    with pytest.raises(BudgetExceededError) as raised:
        preperiod_period(one_more, one_more.state("spade_0"), SearchBudget(16, 3))
    assert raised.value.needed == 4


def test_simulate_returns_steps_plus_one_states(swap):
    states = simulate(swap, swap.state("a"), 3)
    assert [swap.format_state(s) for s in states] == ["{a}", "{b}", "{a}", "{b}"]
    with pytest.raises(ValueError):
        simulate(swap, swap.state("a"), -1)


def test_reaches_within(constant):
    b, a = constant.state("b"), constant.state("a")
    assert reaches_within(constant, b, b, 0)
    assert reaches_within(constant, b, a, 1)
    assert not reaches_within(constant, b, a, 0)
    assert not reaches_within(constant, a, b, 50)


def test_reaches_cycle_members(swap):
    assert reaches(swap, swap.state("a"), swap.state("b"))
    assert reaches(swap, swap.state("a"), swap.state("a"))
    assert not reaches(swap, swap.state("a"), swap.empty())


def test_k_ancestors_of_constant_image(constant):
    assert k_ancestors(constant, constant.state("b"), 0).answer
    assert not k_ancestors(constant, constant.state("b"), 1)
    ancestors = all_k_ancestors(constant, constant.state("a"), 1)
    assert [s.mask for s in ancestors] == [0, 1, 2, 3]
    decision = k_ancestors(constant, constant.state("a"), 1)
    assert decision.witness == constant.empty()


def test_state_matches_fixed_point(constant):
    a = constant.state("a")
    assert state_matches(constant, a, Bound.le(1), Bound.le(0))
    assert not state_matches(constant, constant.state("b"), Bound.le(1), Bound.le(0))
    assert state_matches(constant, constant.state("b"), Bound.le(1), Bound.ge(1))
    with pytest.raises(ValueError):
        state_matches(constant, a, Bound.le(0))


def test_exists_state_is_monotone_in_period(constant, swap):
    for ell in range(1, 5):
        assert exists_state(constant, Bound.le(ell)).answer
    decision = exists_state(swap, Bound.ge(2))
    assert decision.answer
    assert decision.witness == swap.state("a")
    assert not exists_state(swap, Bound.ge(3))


def test_exists_state_with_preperiod(swap):
    decision = exists_state(swap, Bound.le(1), Bound.ge(1))
    assert decision.witness == swap.state("a", "b")
    assert not exists_state(swap, Bound.ge(2), Bound.ge(1))


def test_periodic_with_far_ancestor(constant, swap):
    a = constant.state("a")
    assert periodic_with_far_ancestor(constant, a, 1, 0).witness == constant.empty()
    assert periodic_with_far_ancestor(constant, a, 1, 1).answer
    assert not periodic_with_far_ancestor(constant, a, 1, 2)
    assert not periodic_with_far_ancestor(constant, constant.state("b"), 1, 0)
    assert not periodic_with_far_ancestor(swap, swap.state("a"), 2, 1)


def test_bijective_and_identity(constant):
    identity = identity_system(["a", "b", "c"])
    assert is_bijective(identity)
    assert is_identity(identity)
    assert not is_bijective(constant)
    assert not is_identity(constant)
    empty = ReactionSystem(EntityTable.from_names(["a"]))
    assert not is_bijective(empty)


def test_bijection_that_is_not_the_identity(swap):
    rotate = ReactionSystem.from_named(["a", "b"], [(["a"], [], ["b"]), (["b"], [], ["a"])])
    assert is_bijective(rotate)
    assert not is_identity(rotate)
    assert not is_bijective(swap)


def test_exhaustive_searches_respect_the_state_budget():
    system = identity_system(["a", "b", "c"])
    budget = SearchBudget(max_states_enumerated=4, max_steps=100)
    with pytest.raises(BudgetExceededError) as raised:
        is_bijective(system, budget)
    assert raised.value.needed == 8
    with pytest.raises(BudgetExceededError):
        exists_state(system, Bound.le(1), budget=budget)


def test_state_space_tables(swap):
    space = explore_state_space(swap)
    assert space.cycles == [(0,), (1, 2)]
    assert space.preperiod == [0, 0, 0, 1]
    assert space.cycle_id == [0, 1, 1, 0]
    assert space.basin_sizes() == [2, 2]
    assert space.basin_diameters() == [1, 0]


def test_attractor_report_global(constant):
    report = attractor_report(constant, constant.state("b"))
    assert report.cycle == (constant.state("a"),)
    assert report.kind == "global"
    assert report.is_global and report.is_local
    assert (report.basin_size, report.basin_diameter) == (4, 1)


def test_attractor_report_neither_and_local(swap):
    report = attractor_report(swap, swap.state("a"))
    assert report.kind == "neither"
    assert report.length == 2
    assert not report.is_local
    sink = attractor_report(swap, swap.state("a", "b"))
    assert sink.kind == "local"
    assert sink.cycle == (swap.empty(),)


def test_decide_attractor_basin(swap, constant):
    assert decide_attractor_basin(swap, swap.empty(), 1, Bound.le(1)).answer
    assert not decide_attractor_basin(swap, swap.state("a"), 2, Bound.le(4))
    assert not decide_attractor_basin(swap, swap.state("a", "b"), 1, Bound.le(4))
    found = decide_attractor_basin(swap, None, 2, Bound.ge(1))
    assert found.witness == swap.empty()
    assert not decide_attractor_basin(constant, None, 1, Bound.ge(2))


def test_large_diameter_bound_accepts_any_local_cycle(swap):
    bound = Bound.le(1 << swap.width)
    assert decide_attractor_basin(swap, None, 1, bound).answer


def test_decide_global_attractor(constant, swap):
    assert decide_global_attractor(constant, constant.state("a"), Bound.le(1)).answer
    assert not decide_global_attractor(constant, constant.state("b"), Bound.le(1))
    assert decide_global_attractor(constant, None, Bound.le(1)).witness == constant.state("a")
    assert not decide_global_attractor(constant, None, Bound.ge(2))
    identity = identity_system(["a", "b"])
    for mask in range(4):
        assert not decide_global_attractor(identity, identity.from_mask(mask), Bound.le(4))
    assert not decide_global_attractor(swap, None, Bound.le(2))


def test_certify_global_attractor(constant, swap):
    everything = [constant.from_mask(m) for m in range(4)]
    decision = certify_global_attractor(constant, constant.state("a"), everything, Bound.le(1))
    assert decision.answer and not decision.exhaustive

    states = [swap.from_mask(m) for m in range(4)]
    failed = certify_global_attractor(swap, swap.state("a"), states, Bound.le(2))
    assert not failed
    assert failed.witness == swap.empty()

    off_cycle = certify_global_attractor(constant, constant.state("b"), everything, Bound.le(1))
    assert off_cycle.witness == constant.state("b")


def test_image_preperiod_drops_by_one_and_period_is_kept():
    for system in random_systems(seed=31, count=80, widths=(1, 7)):
        for mask in range(system.state_count):
            info = preperiod_period(system, system.from_mask(mask)).info
            image = preperiod_period(system, system.from_mask(system.step(mask))).info
            assert image.preperiod == max(info.preperiod - 1, 0), (system, mask)
            assert image.period == info.period, (system, mask)


def test_identity_implies_bijective():
    pool = list(random_systems(seed=37, count=150, widths=(1, 4)))
    pool += [identity_system([f"e{i}" for i in range(width)]) for width in range(1, 6)]
    identities = 0
    for system in pool:
        if is_identity(system):
            identities += 1
            assert is_bijective(system), system
    assert identities >= 5


def test_state_space_exploration_is_cached_per_system(swap):
    first = explore_state_space(swap)
    assert explore_state_space(swap) is first
    rebuilt = ReactionSystem(swap.table, swap.reactions)
    assert explore_state_space(rebuilt) is first
    with pytest.raises(BudgetExceededError):
        explore_state_space(swap, SearchBudget(max_states_enumerated=2, max_steps=10))
