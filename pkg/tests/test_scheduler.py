import pytest

from aqft.circuit import GateOp, build_aqft_plan, build_qft_plan
from aqft.scheduler import Schedule, schedule_depth, schedule_plan, validate_schedule

PAPER_L5 = "[P4] [Q34] [P3 Q24] [Q23 Q14] [P2 Q13 Q04] [Q12 Q03] [P1 Q02] [Q01] [P0]"


def test_l5_matches_bracket_display():
    sched = schedule_plan(build_qft_plan(5))
    assert sched.to_text() == PAPER_L5
    assert sched.steps == tuple(range(8, -1, -1))
    assert schedule_depth(sched) == 9


def test_single_qubit():
    sched = schedule_plan(build_qft_plan(1))
    assert sched.to_text() == "[P0]"
    assert schedule_depth(sched) == 1


def test_l2_is_sequential():
    sched = schedule_plan(build_qft_plan(2))
    assert sched.to_text() == "[P1] [Q01] [P0]"
    assert schedule_depth(sched) == 3


def test_aqft_5_2_nearest_neighbour_layers():
    # P_I at step 2I and Q_{I,I+1} at 2I+1 fill every step 8..0
    sched = schedule_plan(build_aqft_plan(5, 2))
    assert sched.to_text() == "[P4] [Q34] [P3] [Q23] [P2] [Q12] [P1] [Q01] [P0]"
    assert schedule_depth(sched) == 9
    assert validate_schedule(sched, build_aqft_plan(5, 2)).ok


def test_hadamard_only_depth():
    # Hadamards land on even steps 14, 12, ..., 0; odd steps stay empty
    sched = schedule_plan(build_aqft_plan(8, 1))
    assert schedule_depth(sched) == 8
    assert sched.steps == tuple(range(14, -1, -2))
    assert sched.empty_steps == tuple(range(13, 0, -2))


@pytest.mark.parametrize("l", range(2, 13))
def test_full_depth(l):
    assert schedule_depth(schedule_plan(build_qft_plan(l))) == 2 * l - 1


def test_validate_l5():
    plan = build_qft_plan(5)
    rep = validate_schedule(schedule_plan(plan), plan)
    assert rep.ok and rep.disjoint and rep.complete and rep.equivalent
    assert rep.max_matrix_error < 1e-10


def test_validate_aqft_6_3():
    plan = build_aqft_plan(6, 3)
    rep = validate_schedule(schedule_plan(plan), plan)
    assert rep.ok and rep.equivalent


def test_corrupted_schedule_shares_qubit():
    plan = build_qft_plan(2)
    p1, q01, p0 = plan.gates
    bad = Schedule(2, (frozenset({p1}), frozenset({q01, p0})), (2, 0))
    rep = validate_schedule(bad, plan)
    assert not rep.disjoint
    assert any("qubit 0" in p for p in rep.problems)
    assert not rep.ok


def test_missing_gate_is_reported():
    plan = build_qft_plan(2)
    p1, q01, p0 = plan.gates
    bad = Schedule(2, (frozenset({p1}), frozenset({p0})), (2, 0))
    rep = validate_schedule(bad, plan)
    assert not rep.complete
    assert any("Q01" in p for p in rep.problems)


def test_reordered_schedule_fails_equivalence():
    plan = build_qft_plan(2)
    p1, q01, p0 = plan.gates
    # P0 before Q01 is not a legal interchange
    bad = Schedule(2, (frozenset({p1}), frozenset({p0}), frozenset({q01})), (2, 1, 0))
    rep = validate_schedule(bad, plan)
    assert rep.disjoint and rep.complete
    assert rep.equivalent is False


def test_gate_beyond_width_rejected():
    from aqft.circuit import CircuitPlan
    plan = CircuitPlan(2, 2, (GateOp.hadamard(3),))
    with pytest.raises(ValueError):
        schedule_plan(plan)


def test_disjoint_and_complete_up_to_12():
    for l in range(1, 13):
        for m in range(1, l + 1):
            plan = build_aqft_plan(l, m)
            sched = schedule_plan(plan)
            rep = validate_schedule(sched, plan)
            assert rep.disjoint and rep.complete, (l, m, rep.problems)
            assert schedule_depth(sched) <= 2 * l - 1
