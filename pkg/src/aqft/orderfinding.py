"""Order finding with the approximate transform and early measurement.

Register layout: qubits ``0 .. L-1`` hold the exponent register ``a`` (and,
after the transform, the bit-reversed frequency ``b``); qubits ``L ..`` hold
the work register ``y``.  The joint basis index is ``a + (y << L)``.

The semiclassical run interleaves the work per pass ``J = L-1 .. 0``:
prepare qubit ``J`` in ``(|0> + |1>)/sqrt(2)``, multiply ``y`` by
``x**(2**J) mod n`` when ``a_J = 1``, apply the retained ``Q(J, K)`` and
``P(J)``, then measure qubit ``J+m-1`` if ``J <= L-m`` since it takes part in
no later gate.  The low ``m-1`` qubits are measured at the end.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .circuit import GateOp, bit_reversal_permutation, bit_reverse, build_aqft_plan, run_plan
from .numerics import MAX_QUBITS, QubitBudgetError, StateVector, born_distribution

PRUNE = 1e-15


def default_width(n: int) -> int:
    """Smallest ``L`` with ``2**L >= 5 n**2``."""
    return max(1, (5 * n * n - 1).bit_length())


def work_width(n: int) -> int:
    """Qubits needed to hold residues ``0 .. n-1``."""
    return max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class OrderFindingConfig:
    modulus_n: int
    base_x: int
    width_l: int | None = None
    approx_m: int | None = None
    seed: int = 0

    def __post_init__(self):
        n, x = self.modulus_n, self.base_x
        if n < 3:
            raise ValueError(f"modulus n must be >= 3, got {n}")
        if not 1 <= x < n:
            raise ValueError(f"base x must lie in [1, n), got {x}")
        if math.gcd(x, n) != 1:
            raise ValueError(f"base x={x} shares a factor with n={n}")
        if self.width_l is None:
            object.__setattr__(self, "width_l", default_width(n))
        if self.approx_m is None:
            object.__setattr__(self, "approx_m", self.width_l)
        if not 1 <= self.approx_m <= self.width_l:
            raise ValueError(f"m must be in [1, L={self.width_l}], got {self.approx_m}")
        if self.total_qubits > MAX_QUBITS:
            raise QubitBudgetError(
                f"qubit budget exceeded: L={self.width_l} + {work_width(n)} > {MAX_QUBITS}"
            )

    @property
    def total_qubits(self) -> int:
        return self.width_l + work_width(self.modulus_n)

    @property
    def q(self) -> int:
        return 1 << self.width_l


@dataclass
class RunRecord:
    config: OrderFindingConfig
    measured_bits: list[tuple[int | None, str, int]] = field(default_factory=list)
    b_value: int = 0
    frequency_estimate: int = 0

    def as_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "measured_bits": [
                {"pass": j, "bit": name, "value": v} for j, name, v in self.measured_bits
            ],
            "b_value": self.b_value,
            "frequency_estimate": self.frequency_estimate,
        }


def modexp_factor(base_x: int, j: int, modulus_n: int) -> int:
    """``x**(2**j) mod n`` by ``j`` modular squarings."""
    if math.gcd(base_x, modulus_n) != 1:
        raise ValueError(f"base {base_x} is not coprime to {modulus_n}")
    if j < 0:
        raise ValueError("pass index must be non-negative")
    y = base_x % modulus_n
    for _ in range(j):
        y = y * y % modulus_n
    return y


def controlled_modmul(sv: StateVector, control: int, l: int, factor: int, n: int) -> StateVector:
    """Map ``|a, y> -> |a, y*factor mod n>`` when bit ``control`` of ``a`` is set.

    Residues ``y >= n`` are left alone so the map stays a permutation.
    """
    v = sv.amplitudes.reshape(-1, 1 << (l - 1 - control), 2, 1 << control)
    target = (np.arange(n) * factor) % n
    moved = v[:n, :, 1, :].copy()
    v[target, :, 1, :] = moved
    return sv


# one step of the semiclassical program: (kind, payload)
#   ("prep", J) / ("mul", (J, factor)) / ("gate", GateOp) / ("measure", (qubit, pass))
Step = tuple


def semiclassical_steps(config: OrderFindingConfig) -> list[Step]:
    l, m, n, x = config.width_l, config.approx_m, config.modulus_n, config.base_x
    plan = build_aqft_plan(l, m)
    by_pass: dict[int, list[GateOp]] = {}
    for gate in plan.gates:
        by_pass.setdefault(gate.j, []).append(gate)
    steps: list[Step] = []
    for j in range(l - 1, -1, -1):
        steps.append(("prep", j))
        steps.append(("mul", (j, modexp_factor(x, j, n))))
        steps.extend(("gate", g) for g in by_pass[j])
        if j <= l - m:
            steps.append(("measure", (j + m - 1, j)))
    for i in range(m - 2, -1, -1):
        steps.append(("measure", (i, None)))
    return steps


def _initial_state(config: OrderFindingConfig) -> StateVector:
    amps = np.zeros(1 << config.total_qubits, dtype=np.complex128)
    amps[1 << config.width_l] = 1.0  # a = 0, y = 1
    return StateVector(amps, config.total_qubits)


def _apply(step: Step, sv: StateVector, config: OrderFindingConfig) -> None:
    kind, arg = step
    if kind == "prep":
        sv.hadamard(arg)
    elif kind == "mul":
        j, factor = arg
        controlled_modmul(sv, j, config.width_l, factor, config.modulus_n)
    elif kind == "gate":
        arg.apply(sv)
    else:
        raise ValueError(f"not a unitary step: {kind}")


def _finish(record: RunRecord) -> RunRecord:
    b = 0
    for _, name, value in record.measured_bits:
        b |= value << int(name[1:])
    record.b_value = b
    record.frequency_estimate = bit_reverse(b, record.config.width_l)
    return record


def run_semiclassical(config: OrderFindingConfig, rng: np.random.Generator | None = None) -> RunRecord:
    """One shot of the rearranged algorithm; draws come from ``rng`` (seeded from the config if absent)."""
    if rng is None:
        rng = np.random.default_rng(config.seed)
    sv = _initial_state(config)
    record = RunRecord(config)
    for step in semiclassical_steps(config):
        if step[0] != "measure":
            _apply(step, sv, config)
            continue
        qubit, j = step[1]
        draw = float(rng.random())
        bit = int(draw < sv.probability_one(qubit))
        sv.collapse(qubit, bit)
        record.measured_bits.append((j, f"b{qubit}", bit))
    return _finish(record)


def run_shots(config: OrderFindingConfig, shots: int) -> list[RunRecord]:
    """Independent shots, each with its own generator spawned from ``config.seed``."""
    children = np.random.SeedSequence(config.seed).spawn(shots)
    return [run_semiclassical(config, np.random.default_rng(s)) for s in children]


def _branches(config: OrderFindingConfig) -> Iterator[tuple[float, dict[int, int]]]:
    steps = semiclassical_steps(config)

    def walk(i: int, sv: StateVector, prob: float, bits: dict[int, int]):
        while i < len(steps) and steps[i][0] != "measure":
            _apply(steps[i], sv, config)
            i += 1
        if i == len(steps):
            yield prob, bits
            return
        qubit = steps[i][1][0]
        p1 = sv.probability_one(qubit)
        for bit, p in ((0, 1.0 - p1), (1, p1)):
            if p * prob < PRUNE or p < PRUNE:
                continue
            branch = sv if bit == 1 or p1 < PRUNE else sv.copy()
            branch.collapse(qubit, bit)
            yield from walk(i + 1, branch, prob * p, {**bits, qubit: bit})

    yield from walk(0, _initial_state(config), 1.0, {})


def semiclassical_distribution(config: OrderFindingConfig) -> np.ndarray:
    """Outcome distribution over frequency ``c`` by enumerating every measurement branch."""
    l = config.width_l
    dist = np.zeros(1 << l)
    for prob, bits in _branches(config):
        b = sum(v << q for q, v in bits.items())
        dist[bit_reverse(b, l)] += prob
    return dist


def entangled_state(config: OrderFindingConfig) -> StateVector:
    """``(1/sqrt(q)) sum_a |a, x**a mod n>``, built directly from modular powers."""
    l, n, x = config.width_l, config.modulus_n, config.base_x
    q = 1 << l
    amps = np.zeros(1 << config.total_qubits, dtype=np.complex128)
    ys = np.empty(q, dtype=np.int64)
    y = 1
    for a in range(q):
        ys[a] = y
        y = y * x % n
    amps[np.arange(q) + (ys << l)] = 1 / math.sqrt(q)
    return StateVector(amps, config.total_qubits)


def full_circuit_distribution(config: OrderFindingConfig) -> np.ndarray:
    """Measurement-free oracle: transform the whole ``a`` register, then marginalise ``y``."""
    l = config.width_l
    sv = run_plan(entangled_state(config), build_aqft_plan(l, config.approx_m), inplace=True)
    by_b = born_distribution(sv).reshape(-1, 1 << l).sum(axis=0)
    return by_b[bit_reversal_permutation(l)]


def peak_outcomes(q: int, r: int) -> list[int]:
    """Frequencies ``round(i*q/r)`` where the mass concentrates for period ``r``."""
    return sorted({round(i * q / r) % q for i in range(r)})


def multiplicative_order(x: int, n: int) -> int:
    if math.gcd(x, n) != 1:
        raise ValueError(f"{x} has no multiplicative order mod {n}")
    r, y = 1, x % n
    while y != 1:
        y = y * x % n
        r += 1
    return r


def convergents(num: int, den: int) -> list[Fraction]:
    """Continued-fraction convergents of ``num/den``."""
    out = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    while den:
        t, rem = divmod(num, den)
        h0, h1 = h1, t * h1 + h0
        k0, k1 = k1, t * k1 + k0
        out.append(Fraction(h1, k1))
        num, den = den, rem
    return out


def extract_period(frequency_estimates, q: int, n: int, x: int) -> int | None:
    """Least denominator ``r < n`` of a convergent of some ``c/q`` with ``x**r = 1 mod n``."""
    if q <= 0 or q & (q - 1):
        raise ValueError(f"q must be a power of two, got {q}")
    best = None
    for c in frequency_estimates:
        if c % q == 0:
            continue
        for frac in convergents(c, q):
            r = frac.denominator
            if r >= n:
                break
            if pow(x, r, n) == 1 and (best is None or r < best):
                best = r
                break
    return best


def factor_from_period(n: int, x: int, r: int) -> tuple[int, int] | None:
    if r <= 0 or pow(x, r, n) != 1:
        raise ValueError(f"{x}**{r} is not 1 mod {n}")
    if r % 2:
        return None
    h = pow(x, r // 2, n)
    if h == n - 1:
        return None
    f1, f2 = math.gcd(h - 1, n), math.gcd(h + 1, n)
    if 1 < f1 < n and 1 < f2 < n:
        return f1, f2
    return None
