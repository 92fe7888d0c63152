"""Dense transform matrices built straight from their summation formulas.

All builders share one kernel: entry ``(c, a)`` is
``2**(-l/2) * exp(2*pi*i/2**l * sum(a_j * c_k * 2**(j+k)))`` with the sum
restricted to a window ``lo <= j + k <= l - 1``.  The exponent is kept as an
exact integer modulo ``2**l``.  Rows are frequency ``c``, columns are ``a``.

  * ``dft_matrix``:      lo = 0
  * ``afft_matrix``:     lo = l - m
  * ``hadamard_matrix``: lo = l - 1
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

MAX_WIDTH = 10


def _check(l: int, m: int | None = None) -> None:
    if not 1 <= l <= MAX_WIDTH:
        raise ValueError(f"dense width guard: l must be in [1, {MAX_WIDTH}], got {l}")
    if m is not None and not 1 <= m <= l:
        raise ValueError(f"m must be in [1, l={l}], got {m}")


def _bits(width: int) -> np.ndarray:
    idx = np.arange(1 << width)
    return (idx[:, None] >> np.arange(width)[None, :]) & 1  # (2**width, width)


def windowed_exponents(l: int, lo: int, hi: int | None = None) -> np.ndarray:
    """Integer matrix ``E[c, a] = sum_{lo <= j+k <= hi} a_j c_k 2**(j+k)``.

    ``hi`` defaults to ``l - 1``.  The result is not reduced modulo ``2**l``.
    """
    if hi is None:
        hi = l - 1
    bits = _bits(l).astype(np.int64)
    size = 1 << l
    exps = np.zeros((size, size), dtype=np.int64)
    for j in range(l):
        for k in range(l):
            if lo <= j + k <= hi:
                # rows are c (bit k), columns a (bit j)
                exps += np.outer(bits[:, k], bits[:, j]) << (j + k)
    return exps


def _from_exponents(exps: np.ndarray, l: int) -> np.ndarray:
    modulus = 1 << l
    reduced = exps % modulus
    # table lookup keeps every entry an exact root of unity up to one rounding
    roots = np.exp(2j * np.pi * np.arange(modulus) / modulus)
    # exact 0 components at the quarter turns, so +-1 and +-i come out exact
    roots.real[np.abs(roots.real) < 1e-15] = 0.0
    roots.imag[np.abs(roots.imag) < 1e-15] = 0.0
    return roots[reduced] / math.sqrt(modulus)


def dft_matrix(l: int) -> np.ndarray:
    _check(l)
    return _from_exponents(windowed_exponents(l, 0), l)


def hadamard_matrix(l: int) -> np.ndarray:
    """Hadamard transform with the output index reversed.

    Entry ``(c, a)`` is ``2**(-l/2) * (-1)**sum(a_j * c_{l-1-j})``.
    """
    _check(l)
    bits = _bits(l)
    parity = (bits @ bits[:, ::-1].T) & 1  # [a, c]
    return np.where(parity.T == 1, -1.0, 1.0).astype(np.complex128) / math.sqrt(1 << l)


def afft_matrix(l: int, m: int) -> np.ndarray:
    _check(l, m)
    return _from_exponents(windowed_exponents(l, l - m), l)


def afft_exponents(l: int, m: int) -> np.ndarray:
    """Exponents of ``w = exp(2*pi*i/2**l)`` for ``afft_matrix``, reduced mod ``2**l``."""
    _check(l, m)
    return windowed_exponents(l, l - m) % (1 << l)


def analytic_bound(l: int, m: int) -> float:
    """Upper bound ``2*pi*l*2**-m`` on the per-entry phase error of the approximation."""
    return 2 * math.pi * l * math.ldexp(1.0, -m)


@dataclass(frozen=True)
class DeviationReport:
    width_l: int
    approx_m: int
    max_phase_deviation: float | None
    analytic_bound: float
    bound_satisfied: bool | None
    max_dropped_exponent: int | None = None

    def as_dict(self) -> dict:
        return {
            "l": self.width_l,
            "m": self.approx_m,
            "max_phase_deviation": self.max_phase_deviation,
            "analytic_bound": self.analytic_bound,
            "bound_satisfied": self.bound_satisfied,
        }


def deviation_report(l: int, m: int) -> DeviationReport:
    """Phase deviation of the approximate transform from the exact one.

    The deviation of entry ``(c, a)`` is the dropped-term sum
    ``2*pi/2**l * sum_{j+k < l-m} a_j c_k 2**(j+k)``, evaluated in integers
    and scaled once.  Widths above the dense guard only get the analytic
    bound.
    """
    if not 1 <= m <= l:
        raise ValueError(f"m must be in [1, l={l}], got {m}")
    bound = analytic_bound(l, m)
    if l > MAX_WIDTH:
        return DeviationReport(l, m, None, bound, None)
    if m == l:
        worst = 0
    else:
        worst = int(windowed_exponents(l, 0, l - m - 1).max())
    dev = 2 * math.pi * worst / (1 << l)
    return DeviationReport(l, m, dev, bound, dev <= bound, worst)


def matrix_to_json(matrix: np.ndarray, l: int, m: int | None = None, kind: str = "") -> str:
    """JSON export: header plus row-major ``[re, im]`` pairs at 17 significant digits."""
    header = {"kind": kind, "l": l, "m": m, "convention": "row=c, col=a",
              "size": int(matrix.shape[0])}
    rows = []
    for row in matrix:
        rows.append("[" + ", ".join(f"[{z.real:.17g}, {z.imag:.17g}]" for z in row) + "]")
    head = json.dumps(header)[:-1]
    return head + ', "entries": [\n' + ",\n".join(rows) + "\n]}\n"


def matrix_to_csv(matrix: np.ndarray) -> str:
    lines = ["row,col,re,im"]
    for c, row in enumerate(matrix):
        for a, z in enumerate(row):
            lines.append(f"{c},{a},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"


def matrix_to_text(matrix: np.ndarray, l: int) -> str:
    """Render as a table of powers of ``w = exp(2*pi*i/2**l)``, scaled by ``1/sqrt(2**l)``."""
    modulus = 1 << l
    scaled = matrix * math.sqrt(modulus)
    exps = np.rint(np.angle(scaled) * modulus / (2 * np.pi)).astype(int) % modulus
    if not np.allclose(np.exp(2j * np.pi * exps / modulus), scaled, atol=1e-9):
        raise ValueError("matrix entries are not scaled roots of unity")
    width = len(str(modulus - 1))
    lines = [f"1/sqrt({modulus}) * w^e, w = exp(2 pi i/{modulus}); rows c, columns a"]
    lines.extend(" ".join(f"{e:>{width}d}" for e in row) for row in exps)
    return "\n".join(lines) + "\n"
