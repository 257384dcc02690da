"""Reproduce the worked examples: feasible intervals, example solutions, printed forms.

    python scripts/reproduce_examples.py [--out examples.json]
"""

import argparse
import math
import warnings

from bbsub import theorems as th
from bbsub.analytic import EXP, SQRT_1PZ
from bbsub.bernardi import example_p1_as_printed, example_p1_fn, example_p2_as_printed, example_p2_fn
from bbsub.io import atomic_write, dumps
from bbsub.regions import EXP_DISC, janowski
from bbsub.subordination import is_subordinate, ode_residual

E = math.e


def intervals():
    t1 = th.feasible_interval("t1", {"beta": 1.0}, "gamma")
    t2 = th.feasible_interval("t2", {"A": 0.5, "B": -0.5, "beta": 1.0}, "gamma")
    return {
        "t1_beta_1": {"found": [iv.to_list() for iv in t1],
                      "closed_form": [-1 / E + 1 / (1 - math.sqrt(2) * E), -1 / E]},
        "t2_A_half_B_minus_half_beta_1": {"found": [iv.to_list() for iv in t2],
                                          "closed_form": [-1 / 3, (1 - E) / (1 + 3 * E)],
                                          "note": "lower end is open (strict condition)"},
    }


def examples(r=0.9, r_max=0.99):
    out = {}
    for name, p, h, gamma, region, printed in (
        ("example_p1", example_p1_fn(-0.5), SQRT_1PZ, -0.5, EXP_DISC, example_p1_as_printed(-0.5)),
        ("example_p2", example_p2_fn(-0.25), EXP, -0.25, janowski(0.5, -0.5), example_p2_as_printed(-0.25)),
    ):
        rep = is_subordinate(p, region, r_max=r_max)
        out[name] = {
            "gamma": gamma,
            "ode_residual": ode_residual(p, h, 1.0, gamma, r),
            "subordination": rep.to_dict(),
            "as_printed": {"p_at_0": complex(printed(0.0)),
                           "ode_residual": ode_residual(printed, h, 1.0, gamma, r, n_samples=128)},
        }
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out")
    args = ap.parse_args()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        doc = {"intervals": intervals(), "examples": examples()}
    text = dumps(doc, indent=2)
    if args.out:
        atomic_write(args.out, text)
    print(text)


if __name__ == "__main__":
    main()
