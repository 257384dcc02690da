"""Membership verdict for every corpus entry in its claimed region.

    python scripts/corpus_report.py --rmax 0.95
"""

import argparse

from bbsub.bernardi import class_membership, load_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rmax", type=float, default=0.95)
    ap.add_argument("--manifest")
    args = ap.parse_args()
    corpus = load_corpus(args.manifest)
    width = max(map(len, corpus))
    for name, entry in corpus.items():
        rep = class_membership(entry, r_max=args.rmax)
        print(f"{name:<{width}}  {entry.mode:<10} {entry.region.label:<22} {rep.verdict:<12} "
              f"min_gap={rep.min_gap:.4f}  normalisation defect={entry.normalization_defect():.1e}")


if __name__ == "__main__":
    main()
