"""Dense statevector storage, gate application and measurement.

Bit convention used throughout the package: qubit ``j`` carries weight
``2**j`` in the basis index (little-endian), so index ``a`` decomposes as
``a = sum(a_j * 2**j)``.

Phases are kept as exact integers modulo ``2**L`` and only turned into a
complex number when a gate is applied.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 26
DEGENERATE_BRANCH = 1e-15
NORM_TOL = 1e-12


class QubitBudgetError(ValueError):
    """Raised when a register would exceed ``MAX_QUBITS``."""


class DegenerateBranchError(ArithmeticError):
    """Raised when a measurement selects a branch of (near) zero probability."""


def _check_width(num_qubits: int) -> None:
    if num_qubits < 0:
        raise ValueError(f"num_qubits must be non-negative, got {num_qubits}")
    if num_qubits > MAX_QUBITS:
        raise QubitBudgetError(
            f"qubit budget exceeded: {num_qubits} > {MAX_QUBITS}"
        )


@dataclass(frozen=True)
class BasisIndex:
    value: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"width must be non-negative, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    def bit(self, i: int) -> int:
        return (self.value >> i) & 1


@dataclass(frozen=True)
class PhaseExponent:
    """The root of unity ``exp(2*pi*i * exponent / 2**modulus_log2)``."""

    exponent: int
    modulus_log2: int

    def __post_init__(self):
        if self.modulus_log2 < 0:
            raise ValueError("modulus_log2 must be non-negative")
        if not 0 <= self.exponent < (1 << self.modulus_log2):
            raise ValueError(
                f"exponent {self.exponent} outside [0, 2**{self.modulus_log2})"
            )

    @classmethod
    def reduced(cls, exponent: int, modulus_log2: int) -> "PhaseExponent":
        return cls(exponent % (1 << modulus_log2), modulus_log2)

    def value(self) -> complex:
        modulus = 1 << self.modulus_log2
        if (4 * self.exponent) % modulus == 0:
            return (1.0, 1.0j, -1.0, -1.0j)[4 * self.exponent // modulus]
        return cmath.exp(2j * math.pi * self.exponent / modulus)


class StateVector:
    """A register of ``num_qubits`` qubits holding ``2**num_qubits`` amplitudes.

    The methods ``hadamard``, ``controlled_phase`` and ``collapse`` mutate the
    amplitudes in place; the module-level functions of the same purpose work
    on a copy.
    """

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes, num_qubits: int | None = None):
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be one-dimensional")
        if num_qubits is None:
            num_qubits = max(int(amps.size).bit_length() - 1, 0)
        _check_width(num_qubits)
        if amps.size != 1 << num_qubits:
            raise ValueError(
                f"expected {1 << num_qubits} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalised: squared norm {norm2!r}")
        self.num_qubits = num_qubits
        self.amplitudes = amps

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"

    def __len__(self):
        return self.amplitudes.size

    def copy(self) -> "StateVector":
        out = object.__new__(StateVector)
        out.num_qubits = self.num_qubits
        out.amplitudes = self.amplitudes.copy()
        return out

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def _check_qubit(self, j: int) -> None:
        if not 0 <= j < self.num_qubits:
            raise IndexError(
                f"qubit index {j} out of range for {self.num_qubits} qubits"
            )

    def _split(self, j: int) -> np.ndarray:
        # view as (high, bit j, low)
        return self.amplitudes.reshape(-1, 2, 1 << j)

    def hadamard(self, j: int) -> "StateVector":
        self._check_qubit(j)
        v = self._split(j)
        lo = v[:, 0, :].copy()
        hi = v[:, 1, :]
        v[:, 0, :] += hi
        v[:, 1, :] = lo - hi
        v *= 1 / math.sqrt(2)
        return self

    def controlled_phase(self, j: int, k: int, phase: PhaseExponent) -> "StateVector":
        self._check_qubit(j)
        self._check_qubit(k)
        if j == k:
            raise ValueError("controlled phase needs two distinct qubits")
        if phase.exponent == 0:
            return self
        lo, hi = sorted((j, k))
        v = self.amplitudes.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
        v[:, 1, :, 1, :] *= phase.value()
        return self

    def probability_one(self, j: int) -> float:
        self._check_qubit(j)
        v = self._split(j)[:, 1, :]
        return float(np.sum(v.real**2 + v.imag**2))

    def collapse(self, j: int, bit: int) -> float:
        """Project qubit ``j`` onto ``bit`` and renormalise; return the branch probability."""
        p1 = self.probability_one(j)
        p = p1 if bit else 1.0 - p1
        if p < DEGENERATE_BRANCH:
            raise DegenerateBranchError(
                f"outcome {bit} on qubit {j} has probability {p:.3g}"
            )
        v = self._split(j)
        v[:, 1 - bit, :] = 0
        v[:, bit, :] *= 1 / math.sqrt(p)
        return p


def new_basis_state(num_qubits: int, index: int | BasisIndex) -> StateVector:
    _check_width(num_qubits)
    value = index.value if isinstance(index, BasisIndex) else int(index)
    if not 0 <= value < (1 << num_qubits):
        raise ValueError(f"basis index {value} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[value] = 1.0
    return StateVector(amps, num_qubits)


def new_uniform(num_qubits: int) -> StateVector:
    _check_width(num_qubits)
    size = 1 << num_qubits
    return StateVector(np.full(size, 1 / math.sqrt(size), dtype=np.complex128), num_qubits)


def apply_hadamard(sv: StateVector, j: int) -> StateVector:
    return sv.copy().hadamard(j)


def apply_controlled_phase(
    sv: StateVector, j: int, k: int, phase: PhaseExponent
) -> StateVector:
    return sv.copy().controlled_phase(j, k, phase)


def project_qubit(sv: StateVector, j: int, bit: int) -> tuple[float, StateVector]:
    """Return ``(probability, post-measurement state)`` for outcome ``bit`` on qubit ``j``."""
    out = sv.copy()
    p = out.collapse(j, bit)
    return p, out


def measure_qubit(sv: StateVector, j: int, random_draw: float) -> tuple[int, StateVector]:
    """Measure qubit ``j``; outcome is 1 iff ``random_draw`` falls below P(1)."""
    if not 0.0 <= random_draw < 1.0:
        raise ValueError(f"random_draw must lie in [0, 1), got {random_draw}")
    bit = int(random_draw < sv.probability_one(j))
    _, out = project_qubit(sv, j, bit)
    return bit, out


def born_distribution(sv: StateVector) -> np.ndarray:
    """Probabilities ``|amplitude_i|**2`` for every basis index ``i``."""
    a = sv.amplitudes
    return a.real**2 + a.imag**2
