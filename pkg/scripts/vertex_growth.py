#!/usr/bin/env python3
"""Growth of V_l and V_l^max across n, normalized by their predicted scales.

V_l counts vertices that ever sit in a component of excess exactly l,
predicted to grow like (12 l)^{1/3} n^{2/3}; V_l^max is the largest
order such a component ever attains, predicted O(l^{1/3} n^{2/3}).
The first ratio should drift toward 1, the second should stay bounded.

Example:
    python3 scripts/vertex_growth.py --l 5 --n 10000,100000 --replicas 1000
"""

import argparse
import sys

from exlab.asymptotics import v_expected
from exlab.simulator import aggregate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--l", type=int, default=5)
    ap.add_argument("--n", default="10000,100000,1000000")
    ap.add_argument("--replicas", type=int, default=600)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    l = args.l
    print("n,replicas,v_mean,v_stderr,v_ratio,vmax_mean,vmax_ratio")
    for n in (int(x) for x in args.n.split(",")):
        agg = aggregate(n, base_seed=args.seed, replicas=args.replicas,
                        tracked={l}, l_stop=l)
        scale = v_expected(l, n).value.to_float()
        vmax_scale = l ** (1 / 3) * n ** (2 / 3)
        print(f"{n},{args.replicas},{agg.v_mean[l]:.1f},{agg.v_stderr[l]:.1f},"
              f"{agg.v_mean[l] / scale:.4f},{agg.v_max_mean[l]:.1f},"
              f"{agg.v_max_mean[l] / vmax_scale:.4f}")
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
