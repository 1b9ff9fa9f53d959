"""Scan every lemma (and its mutated form) at a given radius and tabulate the outcome."""

import argparse
from fractions import Fraction

from rank2ex.falsify import LEMMAS, falsify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius-sq", type=Fraction, default=Fraction(3600))
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    print(f"{'lemma':10s} {'instances':>10s}  {'result':14s} mutation")
    for lemma in LEMMAS:
        res = falsify(lemma, args.radius_sq, jobs=args.jobs)
        mut = falsify(lemma, args.radius_sq, jobs=args.jobs, mutated=True)
        verdict = "holds" if res.holds else f"counterexample {' '.join(map(repr, res.counterexample))}"
        print(f"{lemma:10s} {res.instances_checked:>10d}  {verdict:14s} "
              f"{'witness' if mut.counterexample else 'inconclusive'}")


if __name__ == "__main__":
    main()
