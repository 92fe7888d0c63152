"""Peak mass of the order-finding distribution as a function of m.

Prints CSV: m, peak_mass, loss_vs_exact, analytic_bound.

    python scripts/peak_mass_sweep.py --n 21 --x 2 --l 12
"""

import argparse
from dataclasses import dataclass

from aqft.orderfinding import (
    OrderFindingConfig,
    full_circuit_distribution,
    multiplicative_order,
    peak_outcomes,
)
from aqft.reference import analytic_bound


@dataclass
class SweepConfig:
    n: int = 21
    x: int = 2
    l: int | None = None


def sweep(cfg: SweepConfig):
    base = OrderFindingConfig(cfg.n, cfg.x, cfg.l)
    r = multiplicative_order(cfg.x, cfg.n)
    peaks = peak_outcomes(base.q, r)
    rows = []
    exact = None
    for m in range(base.width_l, 0, -1):
        dist = full_circuit_distribution(OrderFindingConfig(cfg.n, cfg.x, base.width_l, m))
        mass = float(dist[peaks].sum())
        exact = mass if exact is None else exact
        rows.append((m, mass, exact - mass, analytic_bound(base.width_l, m)))
    return r, rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=21)
    p.add_argument("--x", type=int, default=2)
    p.add_argument("--l", type=int, default=None)
    args = p.parse_args()
    r, rows = sweep(SweepConfig(args.n, args.x, args.l))
    print(f"# order r={r}")
    print("m,peak_mass,loss_vs_exact,analytic_bound")
    for m, mass, loss, bound in rows:
        print(f"{m},{mass:.12f},{loss:.3e},{bound:.3e}")


if __name__ == "__main__":
    main()
