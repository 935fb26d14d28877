#!/usr/bin/env python3
"""Replay every worked example and print one verdict line each.

    python scripts/reproduce_examples.py [--seed 0] [--json]
"""
import argparse
import json
import sys

from macdual.examples import RUNNERS, run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    results = [run(k, seed=args.seed, trials=args.trials) for k in RUNNERS]
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2, sort_keys=True))
    else:
        for r in results:
            print(f"{r.id:7s} {'PASS' if r.passed else 'FAIL'}  {r.summary}")
    return 0 if all(r.passed for r in results) else 2


if __name__ == "__main__":
    sys.exit(main())
