"""Which T5 conditions block feasibility?

Rejection-samples (A, B, beta, gamma) and tabulates, for each condition, how
often it holds and how often it is the only failing one.  With m ranging over
[0, 1], condition (v) at m = 0 forces B = -1 or beta + gamma + G = 0, so the
B = -1 slice is tabulated separately.

The set is empty for a structural reason: (iii) for all k >= 1 has slope
-8 G (A-B)^2 in k, forcing G <= 0; (iv) asks G >= 0; (i) asks B G (beta+gamma) > 0.

    python scripts/t5_feasibility.py --draws 200000
"""

import argparse

import numpy as np

from bbsub import theorems as th


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--box", type=float, default=4.0)
    ap.add_argument("--k-points", type=int, default=64)
    ap.add_argument("--m-points", type=int, default=33)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    n = args.draws
    for label, B in (("-1 < B < 1", rng.uniform(-1, 1, n)), ("B = -1", -np.ones(n))):
        A = B + (1 - B) * rng.random(n)
        beta = rng.uniform(-args.box, args.box, n)
        gamma = rng.uniform(-args.box, args.box, n)
        table(label, A, B, beta, gamma, args.k_points, args.m_points)


def table(label, A, B, beta, gamma, k_points, m_points):
    rows = th.t5_margins(A, B, beta, gamma, k_points=k_points, m_points=m_points)
    holds = {cid: (v > 0) if strict else (v >= -th.NONSTRICT_EPS) for cid, v, strict in rows}
    stack = np.stack(list(holds.values()))
    n_fail = np.sum(~stack, axis=0)
    print(f"\n{label}: {len(A)} draws; all conditions hold in {int(np.sum(n_fail == 0))}")
    print(f"{'condition':<10} {'holds':>8} {'only failure':>13}")
    for i, cid in enumerate(holds):
        only = int(np.sum((n_fail == 1) & ~stack[i]))
        print(f"{cid:<10} {int(holds[cid].sum()):>8} {only:>13}")
    trio = holds["i"] & holds["iv_b"] & holds["iii_k_inf"]
    print(f"(i), (iv_b) and (iii_k_inf) together: {int(trio.sum())}")

if __name__ == "__main__":
    main()
