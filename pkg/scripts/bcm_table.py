#!/usr/bin/env python3
"""Uniform asymptotic count against exact enumeration, across k doublings.

Prints |approx/exact - 1| for c(k, k+l) per excess l at each k in the
doubling grid. Rows shrinking left to right show the k^{-1} convergence;
larger l needs larger k before the gap is small.

Example:
    python3 scripts/bcm_table.py --l-max 8 --k 64,128,256,512
"""

import argparse

from exlab.asymptotics import c_bcm
from exlab.exact_enum import ConnectedCountTable
from exlab.logreal import LogReal


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l-max", type=int, default=8)
    ap.add_argument("--k", default="64,128,256,512,1024")
    ap.add_argument("--terms", type=int, default=3)
    args = ap.parse_args()

    ks = [int(x) for x in args.k.split(",")]
    table = ConnectedCountTable(max_k=max(ks))
    table.ensure_band(max(ks), args.l_max)
    print("l," + ",".join(f"gap_k{k}" for k in ks))
    for l in range(1, args.l_max + 1):
        gaps = []
        for k in ks:
            exact = LogReal.from_number(table.connected_count(k, k + l))
            gaps.append(abs(c_bcm(k, l, args.terms).value.ratio_to(exact) - 1.0))
        print(f"{l}," + ",".join(f"{g:.4f}" for g in gaps))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
