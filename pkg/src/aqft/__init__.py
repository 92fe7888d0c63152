"""Statevector simulation of the radix-2**L quantum Fourier transform,
its approximate variant, parallel scheduling, and early-measurement order
finding."""

from .circuit import (
    CircuitPlan,
    GateKind,
    GateOp,
    bit_reverse,
    build_aqft_plan,
    build_qft_plan,
    gate_counts,
    plan_to_matrix,
    run_plan,
)
from .numerics import (
    BasisIndex,
    PhaseExponent,
    StateVector,
    apply_controlled_phase,
    apply_hadamard,
    born_distribution,
    measure_qubit,
    new_basis_state,
    new_uniform,
)
from .reference import afft_matrix, deviation_report, dft_matrix, hadamard_matrix
from .scheduler import schedule_depth, schedule_plan, validate_schedule

__all__ = [
    "BasisIndex", "CircuitPlan", "GateKind", "GateOp", "PhaseExponent", "StateVector",
    "afft_matrix", "apply_controlled_phase", "apply_hadamard", "bit_reverse",
    "born_distribution", "build_aqft_plan", "build_qft_plan", "deviation_report",
    "dft_matrix", "gate_counts", "hadamard_matrix", "measure_qubit", "new_basis_state",
    "new_uniform", "plan_to_matrix", "run_plan", "schedule_depth", "schedule_plan",
    "validate_schedule",
]
