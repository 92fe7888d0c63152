"""Compare a sampled semiclassical histogram with the full-circuit distribution.

Reports total variation distance and the largest z-score over outcomes with an
expected count of at least 5.
"""

import argparse
import math
from collections import Counter

from aqft.orderfinding import OrderFindingConfig, full_circuit_distribution, run_shots


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=15)
    p.add_argument("--x", type=int, default=7)
    p.add_argument("--l", type=int, default=9)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--shots", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    cfg = OrderFindingConfig(args.n, args.x, args.l, args.m, args.seed)
    oracle = full_circuit_distribution(cfg)
    counts = Counter(r.frequency_estimate for r in run_shots(cfg, args.shots))
    tv = 0.5 * sum(abs(counts.get(c, 0) / args.shots - p) for c, p in enumerate(oracle))
    worst = 0.0
    for c, p in enumerate(oracle):
        if args.shots * p >= 5:
            sigma = math.sqrt(args.shots * p * (1 - p)) or 1.0
            worst = max(worst, abs(counts.get(c, 0) - args.shots * p) / sigma)
    print(f"l={cfg.width_l} m={cfg.approx_m} shots={args.shots} seed={args.seed}")
    print(f"total_variation {tv:.4f}")
    print(f"max_z {worst:.2f}")


if __name__ == "__main__":
    main()
