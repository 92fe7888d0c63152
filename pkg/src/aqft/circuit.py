"""Gate sequences for the radix-2**L Fourier transform and its approximation.

The transform is built pass by pass, ``J = L-1`` down to ``0``.  Pass ``J``
applies the controlled phases ``Q(J, K)`` for ``K`` descending from
``min(J+m-1, L-1)`` to ``J+1`` and then the Hadamard ``P(J)``.  ``Q(J, K)``
multiplies states with a 1 on both qubits by ``w**(2**(L-1-K+J))`` where
``w = exp(2*pi*i/2**L)``.

Running a plan leaves amplitudes indexed by the bit-reversed frequency:
the amplitude for frequency ``c`` sits at ``bit_reverse(c, L)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .numerics import MAX_QUBITS, BasisIndex, PhaseExponent, StateVector, new_basis_state

MAX_MATRIX_WIDTH = 10


class GateKind(enum.Enum):
    HADAMARD = "P"
    CONTROLLED_PHASE = "Q"


@dataclass(frozen=True)
class GateOp:
    kind: GateKind
    j: int
    k: int | None = None
    phase: PhaseExponent | None = None

    def __post_init__(self):
        if self.kind is GateKind.CONTROLLED_PHASE:
            if self.k is None or self.phase is None:
                raise ValueError("controlled phase gate needs k and phase")
            if not 0 <= self.j < self.k < self.phase.modulus_log2:
                raise ValueError(
                    f"controlled phase requires 0 <= j < k < L, got "
                    f"j={self.j} k={self.k} L={self.phase.modulus_log2}"
                )
        elif self.k is not None or self.phase is not None:
            raise ValueError("Hadamard gate takes a single qubit")

    @classmethod
    def hadamard(cls, j: int) -> "GateOp":
        return cls(GateKind.HADAMARD, j)

    @classmethod
    def q(cls, j: int, k: int, l: int) -> "GateOp":
        """``Q(j, k)`` in a width-``l`` plan, phase exponent ``2**(l-1-k+j)``."""
        return cls(GateKind.CONTROLLED_PHASE, j, k, PhaseExponent(1 << (l - 1 - k + j), l))

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.j,) if self.k is None else (self.j, self.k)

    @property
    def label(self) -> str:
        if self.kind is GateKind.HADAMARD:
            return f"P{self.j}"
        return f"Q{self.j}{self.k}" if self.k < 10 else f"Q{self.j},{self.k}"

    def sort_key(self) -> tuple:
        # Hadamard first, then higher control qubit first, as in the bracket display
        return (self.kind.value, -self.j, -1 if self.k is None else self.k)

    def to_line(self) -> str:
        if self.kind is GateKind.HADAMARD:
            return f"P {self.j}"
        return f"Q {self.j} {self.k} {self.phase.exponent} {self.phase.modulus_log2}"

    def apply(self, sv: StateVector) -> StateVector:
        if self.kind is GateKind.HADAMARD:
            return sv.hadamard(self.j)
        return sv.controlled_phase(self.j, self.k, self.phase)


@dataclass(frozen=True)
class CircuitPlan:
    width_l: int
    approx_m: int
    gates: tuple[GateOp, ...]

    def __iter__(self):
        return iter(self.gates)

    def __len__(self):
        return len(self.gates)

    def to_text(self) -> str:
        lines = [f"# plan l={self.width_l} m={self.approx_m}"]
        lines.extend(g.to_line() for g in self.gates)
        return "\n".join(lines) + "\n"


def _check_params(l: int, m: int) -> None:
    if not 1 <= l <= MAX_QUBITS:
        raise ValueError(f"register width l must be in [1, {MAX_QUBITS}], got {l}")
    if not 1 <= m <= l:
        raise ValueError(f"approximation parameter m must be in [1, l={l}], got {m}")


def build_aqft_plan(l: int, m: int) -> CircuitPlan:
    """Plan for the approximate transform: ``Q(J, K)`` with ``K >= J + m`` is dropped."""
    _check_params(l, m)
    gates: list[GateOp] = []
    for j in range(l - 1, -1, -1):
        for k in range(min(j + m - 1, l - 1), j, -1):
            gates.append(GateOp.q(j, k, l))
        gates.append(GateOp.hadamard(j))
    return CircuitPlan(l, m, tuple(gates))


def build_qft_plan(l: int) -> CircuitPlan:
    return build_aqft_plan(l, l)


def expected_phase_count(l: int, m: int) -> int:
    """Closed form for the number of controlled phases in ``build_aqft_plan(l, m)``."""
    return (m - 1) * (l - m) + m * (m - 1) // 2


def gate_counts(plan: CircuitPlan) -> tuple[int, int]:
    h = sum(1 for g in plan.gates if g.kind is GateKind.HADAMARD)
    return h, len(plan.gates) - h


def run_plan(sv: StateVector, plan: CircuitPlan, *, inplace: bool = False) -> StateVector:
    if sv.num_qubits < plan.width_l:
        raise ValueError(
            f"plan needs {plan.width_l} qubits, state has {sv.num_qubits}"
        )
    out = sv if inplace else sv.copy()
    for gate in plan.gates:
        gate.apply(out)
    return out


def gates_to_matrix(gates: Iterable[GateOp], l: int) -> np.ndarray:
    """Dense ``2**l x 2**l`` unitary of a gate sequence (first gate applied first)."""
    if not 1 <= l <= MAX_MATRIX_WIDTH:
        raise ValueError(f"dense matrix width guard: l={l} > {MAX_MATRIX_WIDTH}")
    gates = list(gates)
    size = 1 << l
    cols = np.empty((size, size), dtype=np.complex128)
    for a in range(size):
        sv = new_basis_state(l, a)
        for g in gates:
            g.apply(sv)
        cols[:, a] = sv.amplitudes
    return cols


def plan_to_matrix(plan: CircuitPlan) -> np.ndarray:
    """Column ``a`` is ``run_plan`` applied to basis state ``a``; rows are indexed by b."""
    return gates_to_matrix(plan.gates, plan.width_l)


def bit_reverse(index: int | BasisIndex, width: int | None = None) -> int | BasisIndex:
    """Reverse the low ``width`` bits of ``index``.

    >>> bit_reverse(1, 3), bit_reverse(6, 3)
    (4, 3)
    """
    if isinstance(index, BasisIndex):
        return BasisIndex(bit_reverse(index.value, index.width), index.width)
    if width is None:
        raise TypeError("width is required for integer indices")
    out = 0
    for _ in range(width):
        out = (out << 1) | (index & 1)
        index >>= 1
    return out


def bit_reversal_permutation(width: int) -> np.ndarray:
    """``perm[i] = bit_reverse(i, width)`` for all ``i < 2**width``."""
    idx = np.arange(1 << width)
    out = np.zeros_like(idx)
    for i in range(width):
        out |= ((idx >> i) & 1) << (width - 1 - i)
    return out


def to_frequency_order(matrix_b: np.ndarray, width: int) -> np.ndarray:
    """Reorder rows from b-indexing to frequency c-indexing."""
    return matrix_b[bit_reversal_permutation(width)]


def parse_plan(text: str) -> CircuitPlan:
    """Read the ``P j`` / ``Q j k exponent L`` line format back into a plan.

    The gate list must match a plan produced by :func:`build_aqft_plan`.
    """
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "P" and len(fields) == 2:
                gates.append(GateOp.hadamard(int(fields[1])))
            elif fields[0] == "Q" and len(fields) == 5:
                j, k, e, l = map(int, fields[1:])
                gates.append(GateOp(GateKind.CONTROLLED_PHASE, j, k, PhaseExponent(e, l)))
            else:
                raise ValueError("unrecognised gate")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {raw!r}: {exc}") from None
    if not gates:
        raise ValueError("empty plan")
    l = max(max(g.qubits) for g in gates) + 1
    spans = [g.k - g.j for g in gates if g.k is not None]
    m = max(spans) + 1 if spans else 1
    plan = build_aqft_plan(l, m)
    if tuple(gates) != plan.gates:
        raise ValueError(f"gate list is not the canonical plan for l={l}, m={m}")
    return plan
