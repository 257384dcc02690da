"""Audit the endpoint-minimum claims and the certified gap on random feasible draws.

For each theorem, draws hypothesis-satisfying parameters, runs the endpoint
check and the global gap minimisation, and writes every counterexample.

    python scripts/audit_endpoint_claims.py --draws 50 --out audit.json
"""

import argparse
import importlib

from bbsub import theorems as th
from bbsub.io import atomic_write, dumps

cert = importlib.import_module("bbsub.certify")


def audit(theorem, draws, seed, max_draws):
    grid = {"k_max": 16.0, "m_points": 65} if theorem == "t5" else {}
    try:
        ps = th.sample_feasible(theorem, draws, seed=seed, max_draws=max_draws, **grid)
    except th.InfeasibleError as exc:
        return {"theorem": theorem, "status": "no feasible draws", "detail": str(exc)}
    endpoint_fail, negative = [], []
    for p in ps:
        chk = cert.endpoint_minimum_check(theorem, p)
        if not chk.passed:
            endpoint_fail.append(chk.to_dict())
        rep = cert.certify(theorem, p, check_hypothesis=False, **grid)
        if rep.min_gap < -1e-9:
            negative.append({"params": rep.params, "min_gap": rep.min_gap, "argmin": rep.argmin})
    return {
        "theorem": theorem,
        "draws": len(ps),
        "endpoint_claim_failures": len(endpoint_fail),
        "negative_certified_gap": len(negative),
        "endpoint_examples": endpoint_fail[:10],
        "gap_examples": sorted(negative, key=lambda d: d["min_gap"])[:10],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=50)
    ap.add_argument("--seed", type=int, default=900)
    ap.add_argument("--max-draws", type=int, default=200_000, help="rejection budget (T5 is expensive)")
    ap.add_argument("--theorem", action="append", choices=th.THEOREMS)
    ap.add_argument("--out")
    args = ap.parse_args()
    results = [audit(t, args.draws, args.seed + i, args.max_draws)
               for i, t in enumerate(args.theorem or th.THEOREMS)]
    for r in results:
        if "draws" in r:
            print(f"{r['theorem']}: endpoint claim fails {r['endpoint_claim_failures']}/{r['draws']}, "
                  f"negative gap {r['negative_certified_gap']}/{r['draws']}")
        else:
            print(f"{r['theorem']}: {r['status']}")
    if args.out:
        atomic_write(args.out, dumps(results, indent=2))


if __name__ == "__main__":
    main()
