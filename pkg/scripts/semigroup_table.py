#!/usr/bin/env python3
"""Apery set, Frobenius number and minimal presentation of numerical semigroups.

    python scripts/semigroup_table.py 6,8,10,13 6,7,11,15 2,3
"""
import argparse

from macdual.construct import NumericalSemigroup


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("semigroups", nargs="*", default=["6,8,10,13", "6,7,11,15", "6,10,14,18"])
    args = ap.parse_args()
    for text in args.semigroups:
        gens = tuple(int(t) for t in text.split(","))
        S = NumericalSemigroup(gens, strict=False)
        P = S.presentation()
        degs = sorted(S.weighted_degree(next(iter(g.terms))) for g in P.generators)
        print(f"<{text}>  gcd {S.gcd}  frobenius {S.frobenius()}  apery {S.apery()}")
        print(f"  presentation {P}  relation degrees {degs}")


if __name__ == "__main__":
    main()
