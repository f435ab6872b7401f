"""Tabulate the exact t-threshold of the index-1 slope chain as eps varies.

The chain is strict exactly for 0 < t < threshold(eps); the table shows how
much room each genus leaves at the default t = 1/100.

    python scripts/index1_threshold_scan.py --eps 1/20,1/10,1/5,1/4,2/5
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from kstab.fano3 import DEFAULT_T, alpha_threshold, catalog, index1_chain
from kstab.numeric import fmt, parse


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eps", default="1/20,1/10,1/5,1/4,2/5")
    ap.add_argument("--t", default=fmt(DEFAULT_T))
    args = ap.parse_args(argv)
    eps_values = [parse(s) for s in args.eps.split(",")]
    t = parse(args.t)
    print("genus  " + "  ".join(f"eps={fmt(e):<6}" for e in eps_values))
    for g in (6, 8, 10, 12):
        cells = []
        for eps in eps_values:
            beta, _ = index1_chain(g, eps)
            th = alpha_threshold(catalog(1, g), beta)
            mark = "*" if th is not None and th > t else " "
            cells.append(f"{('inf' if th is None else fmt(th)) + mark:<10}")
        print(f"{g:>5}  " + "  ".join(cells))
    print(f"* = chain strict at t = {fmt(t)}")


if __name__ == "__main__":
    main()
