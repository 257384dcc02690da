"""Test theorem conclusions directly on exact Briot-Bouquet solutions.

For hypothesis-satisfying parameters, p solves p + zp'/(beta p + gamma) = h
with h the theorem's dominant map, so the premise holds trivially.  A
violated conclusion for such p (analytic, small residual) refutes the theorem
at those parameters, independent of any proof technique.

    python scripts/probe_conclusions.py --draws 40
"""

import argparse
import importlib
import warnings
from collections import Counter

import numpy as np

from bbsub import theorems as th
from bbsub.analytic import EXP, SQRT_1PZ, janowski_fn
from bbsub.bernardi import bb_solution
from bbsub.io import atomic_write, dumps
from bbsub.regions import EXP_DISC, LEMNISCATE, janowski
from bbsub.subordination import is_subordinate, ode_residual

cert = importlib.import_module("bbsub.certify")


def setting(theorem, p):
    """(dominant map h of the premise, region of the conclusion)."""
    return {
        "t1": (SQRT_1PZ, EXP_DISC),
        "t2": (EXP, janowski(p.A, p.B)),
        "t3": (janowski_fn(p.A, p.B), LEMNISCATE),
        "t4": (janowski_fn(p.A, p.B), EXP_DISC),
    }[theorem]


def probe(theorem, p, r_max):
    h, region = setting(theorem, p)
    sol = bb_solution(h, p.beta, p.gamma)
    z = r_max * np.exp(2j * np.pi * np.arange(256) / 256)
    rep = is_subordinate(sol, region, r_max=r_max, n_radii=6, n_samples=256)
    return {
        "params": p,
        "verdict": rep.verdict,
        "min_gap": rep.min_gap,
        "argmin": {"r": rep.argmin[0], "theta": rep.argmin[1]},
        "ode_residual": ode_residual(sol, h, p.beta, p.gamma, r_max, n_samples=128),
        "min_abs_beta_p_plus_gamma": float(np.min(np.abs(p.beta * np.asarray(sol(z)) + p.gamma))),
        "certified_gap": cert.certify(theorem, p, check_hypothesis=False).min_gap,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=40)
    ap.add_argument("--seed", type=int, default=400)
    ap.add_argument("--rmax", type=float, default=0.98)
    ap.add_argument("--out")
    args = ap.parse_args()
    report = {}
    for i, theorem in enumerate(("t1", "t2", "t3", "t4")):
        rows = []
        for p in th.sample_feasible(theorem, args.draws, seed=args.seed + i):
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    rows.append(probe(theorem, p, args.rmax))
            except (ArithmeticError, ValueError) as exc:
                rows.append({"params": p, "verdict": f"error: {type(exc).__name__}"})
        counts = Counter(r["verdict"] for r in rows)
        print(f"{theorem}: {dict(counts)}")
        for r in sorted((r for r in rows if r["verdict"] == "violated"), key=lambda r: r["min_gap"])[:3]:
            print(f"   {r['params']}  min_gap={r['min_gap']:.4f}  residual={r['ode_residual']:.1e}  "
                  f"min|beta p + gamma|={r['min_abs_beta_p_plus_gamma']:.3f}")
        report[theorem] = rows
    if args.out:
        atomic_write(args.out, dumps(report, indent=2))


if __name__ == "__main__":
    main()
