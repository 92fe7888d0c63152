"""Observed maximum phase deviation against the analytic bound for all m <= l <= L."""

import argparse

from aqft.reference import deviation_report


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-l", type=int, default=10)
    args = p.parse_args()
    print("l,m,observed,bound,ratio")
    for l in range(1, args.max_l + 1):
        for m in range(1, l + 1):
            rep = deviation_report(l, m)
            ratio = rep.max_phase_deviation / rep.analytic_bound
            print(f"{l},{m},{rep.max_phase_deviation:.6e},{rep.analytic_bound:.6e},{ratio:.4f}")


if __name__ == "__main__":
    main()
