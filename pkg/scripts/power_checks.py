#!/usr/bin/env python3
"""Socle degree and type of R/(I + z^n) for the two graded level fixtures.

For a level ring of dimension d and index of nilpotency s the socle degree
of the quotient by z^n should be s + |n| - d, and the type should not move.
"""
import argparse

from macdual import fixtures as fx
from macdual.quotient import level_power_check, socdeg_power_check

CASES = {
    "cone": (fx.EX53_IDEAL, fx.XYZ, ("x",), 1, 3),
    "matroid": (fx.EX57_IDEAL, fx.Y5, ("y1", "y2"), 2, 2),
}


def indices(d, total):
    if d == 1:
        return [(k,) for k in range(1, total + 1)]
    return [(a, b) for a in range(1, total) for b in range(1, total) if a + b <= total]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--extra", type=int, default=3, help="check all |n| <= s + extra")
    args = ap.parse_args()

    bad = 0
    for name, (gens, names, z, d, s) in CASES.items():
        I = fx.ideal(gens, names)
        zs = [fx.rp(v, names) for v in z]
        ns = indices(d, s + args.extra)
        socs = socdeg_power_check(I, zs, d, s, ns)
        levs = level_power_check(I, zs, d, ns)
        print(f"{name}: {I}")
        for a, b in zip(socs, levs):
            ok = a.ok and b.ok
            bad += not ok
            print(f"  n={list(a.n)}  socdeg {a.socdeg} (expect {a.expected})  "
                  f"{'level' if b.level else 'not level'} type {b.type}  {'ok' if ok else 'MISMATCH'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
