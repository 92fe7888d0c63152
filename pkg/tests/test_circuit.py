import itertools
import math

import numpy as np
import pytest

from aqft.circuit import (
    GateKind,
    GateOp,
    bit_reversal_permutation,
    bit_reverse,
    build_aqft_plan,
    build_qft_plan,
    expected_phase_count,
    gate_counts,
    gates_to_matrix,
    parse_plan,
    plan_to_matrix,
    run_plan,
    to_frequency_order,
)
from aqft.numerics import BasisIndex, new_basis_state
from aqft.reference import afft_matrix, dft_matrix, hadamard_matrix


def labels(plan):
    return [g.label for g in plan.gates]


def enumerated_phase_count(l, m):
    return sum(1 for j, k in itertools.combinations(range(l), 2) if k - j < m)


def test_qft_plan_order_l4():
    assert labels(build_qft_plan(4)) == [
        "P3", "Q23", "P2", "Q13", "Q12", "P1", "Q03", "Q02", "Q01", "P0",
    ]


def test_qft_plan_l1():
    assert labels(build_qft_plan(1)) == ["P0"]


def test_qft_plan_l3_with_exponents():
    plan = build_qft_plan(3)
    assert labels(plan) == ["P2", "Q12", "P1", "Q02", "Q01", "P0"]
    exps = [g.phase.exponent for g in plan.gates if g.kind is GateKind.CONTROLLED_PHASE]
    assert exps == [2, 1, 2]
    assert all(g.phase.modulus_log2 == 3 for g in plan.gates if g.phase)


def test_aqft_m1_is_hadamards_only():
    assert gate_counts(build_aqft_plan(5, 1)) == (5, 0)


def test_aqft_m_equals_l_is_qft():
    assert build_aqft_plan(5, 5).gates == build_qft_plan(5).gates


def test_aqft_l6_m2_nearest_neighbours():
    qs = [g for g in build_aqft_plan(6, 2).gates if g.kind is GateKind.CONTROLLED_PHASE]
    assert len(qs) == 5
    assert sorted((g.j, g.k) for g in qs) == [(j, j + 1) for j in range(5)]


@pytest.mark.parametrize("l, m", [(0, 1), (3, 0), (3, 4), (27, 1)])
def test_plan_guards(l, m):
    with pytest.raises(ValueError):
        build_aqft_plan(l, m)


@pytest.mark.parametrize("plan, expected", [
    (build_qft_plan(4), (4, 6)),
    (build_aqft_plan(5, 1), (5, 0)),
    (build_aqft_plan(10, 3), (10, 17)),
])
def test_gate_counts_examples(plan, expected):
    assert gate_counts(plan) == expected
    assert enumerated_phase_count(plan.width_l, plan.approx_m) == expected[1]


def test_gate_count_closed_form_matches_enumeration():
    for l in range(1, 21):
        for m in range(1, l + 1):
            h, q = gate_counts(build_aqft_plan(l, m))
            assert h == l
            assert q == enumerated_phase_count(l, m) == expected_phase_count(l, m)
            assert q <= l * m


def test_gate_exponents_follow_rule():
    for g in build_qft_plan(7).gates:
        if g.kind is GateKind.CONTROLLED_PHASE:
            assert g.phase.exponent == 2 ** (7 - 1 - g.k + g.j)


def test_pass_structure():
    l, m = 7, 3
    expected = []
    for j in range(l - 1, -1, -1):
        expected += [f"Q{j}{k}" for k in range(min(j + m - 1, l - 1), j, -1)] + [f"P{j}"]
    assert labels(build_aqft_plan(l, m)) == expected


def test_gateop_validation():
    with pytest.raises(ValueError):
        GateOp.q(2, 1, 3)
    with pytest.raises(ValueError):
        GateOp.q(0, 3, 3)


def test_run_plan_one_qubit():
    out = run_plan(new_basis_state(1, 0), build_qft_plan(1))
    np.testing.assert_allclose(out.amplitudes, [1 / math.sqrt(2)] * 2)


def test_run_plan_l3_column_one():
    w = np.exp(2j * np.pi / 8)
    out = run_plan(new_basis_state(3, 1), build_qft_plan(3)).amplitudes
    expected = w ** np.array([0, 4, 2, 6, 1, 5, 3, 7]) / math.sqrt(8)
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_run_plan_two_hadamards():
    out = run_plan(new_basis_state(2, 3), build_aqft_plan(2, 1)).amplitudes
    np.testing.assert_allclose(out, [0.5, -0.5, -0.5, 0.5], atol=1e-15)


def test_run_plan_width_mismatch():
    with pytest.raises(ValueError):
        run_plan(new_basis_state(2, 0), build_qft_plan(3))


def test_run_plan_on_wider_register_leaves_upper_qubits():
    sv = new_basis_state(4, 1 | 8)
    out = run_plan(sv, build_qft_plan(3))
    assert np.allclose(out.amplitudes[:8], 0)


def test_plan_to_matrix_single_hadamard():
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(plan_to_matrix(build_aqft_plan(1, 1)), [[s, s], [s, -s]])


def test_plan_to_matrix_guard():
    with pytest.raises(ValueError):
        plan_to_matrix(build_qft_plan(11))


@pytest.mark.parametrize("l", range(1, 8))
def test_circuit_matches_formulas(l):
    for m in range(1, l + 1):
        circ = to_frequency_order(plan_to_matrix(build_aqft_plan(l, m)), l)
        np.testing.assert_allclose(circ, afft_matrix(l, m), atol=1e-10)
        assert np.abs(circ @ circ.conj().T - np.eye(1 << l)).max() < 1e-10
    np.testing.assert_allclose(
        to_frequency_order(plan_to_matrix(build_qft_plan(l)), l), dft_matrix(l), atol=1e-10)
    np.testing.assert_allclose(
        to_frequency_order(plan_to_matrix(build_aqft_plan(l, 1)), l), hadamard_matrix(l),
        atol=1e-12)


@pytest.mark.parametrize("value, expected", [(1, 4), (6, 3), (0, 0), (7, 7)])
def test_bit_reverse_width3(value, expected):
    assert bit_reverse(value, 3) == expected
    assert bit_reverse(BasisIndex(value, 3)) == BasisIndex(expected, 3)


def test_bit_reversal_row_order():
    assert [bit_reverse(i, 3) for i in range(8)] == [0, 4, 2, 6, 1, 5, 3, 7]
    assert list(bit_reversal_permutation(3)) == [0, 4, 2, 6, 1, 5, 3, 7]


def test_gates_to_matrix_empty_is_identity():
    np.testing.assert_array_equal(gates_to_matrix([], 2), np.eye(4))


@pytest.mark.parametrize("l, m", [(1, 1), (4, 4), (6, 2), (12, 5)])
def test_plan_text_roundtrip(l, m):
    plan = build_aqft_plan(l, m)
    assert parse_plan(plan.to_text()) == plan


def test_plan_text_format():
    lines = build_qft_plan(3).to_text().splitlines()[1:]
    assert lines == ["P 2", "Q 1 2 2 3", "P 1", "Q 0 2 1 3", "Q 0 1 2 3", "P 0"]


@pytest.mark.parametrize("text", [
    "",
    "P 0\nX 1\n",
    "P 1\nP 0\nQ 0 1 2 2\n",   # not in canonical order
    "P 1\nQ 0 1 3 2\nP 0\n",   # wrong exponent
])
def test_parse_plan_rejects(text):
    with pytest.raises(ValueError):
        parse_plan(text)
