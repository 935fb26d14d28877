"""Command-line entry point.

Exit codes: 0 on success, 2 when a mathematical check fails (not level,
not admissible, family not extendable), 1 on usage or IO errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import examples as fixtures_runner
from .admissible import check_family, check_Gd, check_weak, format_family, parse_family
from .construct import (
    NumericalSemigroup,
    cone_family,
    effective_construct,
    matroid_from_matrix,
    stanley_reisner,
)
from .dpmodule import submodule_closure
from .duality import Ideal, annihilator, inverse_system, perp_json
from .exactalg import default_names, parse_poly
from .quotient import NotArtinian, default_cap, is_level, resolve_seed

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    seed: Optional[int] = None
    trials: int = 3
    cap: Optional[int] = None


# ---------------------------------------------------------------------------
# input files

_HEAD = re.compile(r"^\s*(vars|names)\s*=\s*(.+)$")


def _split_names(text: str) -> Tuple[str, ...]:
    text = text.strip().strip("[]")
    return tuple(t.strip() for t in re.split(r"[;,\s]+", text) if t.strip())


def _resolve_names(header: dict, args) -> Tuple[str, ...]:
    if "names" in header:
        return _split_names(header["names"])
    if getattr(args, "names", None):
        return _split_names(args.names)
    m = header.get("vars") or getattr(args, "vars", None)
    if m is None:
        raise UsageError("number of variables unknown: pass --vars or --names, or put vars= in the file")
    return default_names(int(m))


def read_poly_file(path: str, args) -> Tuple[Tuple[str, ...], List[str]]:
    """Generators one per line (or comma separated); optional ``vars=`` / ``names=`` header lines."""
    if path == "empty":
        return _resolve_names({}, args), []
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    header, polys = {}, []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        mt = _HEAD.match(line)
        if mt:
            header[mt.group(1)] = mt.group(2)
            continue
        polys.extend(t.strip() for t in line.split(",") if t.strip())
    return _resolve_names(header, args), polys


def read_ideal(args) -> Ideal:
    names, texts = read_poly_file(args.ideal, args)
    try:
        return Ideal.parse(texts, names)
    except ValueError as exc:
        raise UsageError(str(exc))


def read_family(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        return parse_family(text)
    except ValueError as exc:
        raise UsageError(str(exc))


def parse_matrix(text: str) -> List[List[Fraction]]:
    rows = [r for r in text.split(";") if r.strip()]
    try:
        out = [[Fraction(x.strip()) for x in re.split(r"[,\s]+", r.strip()) if x.strip()] for r in rows]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad matrix {text!r}; expected rows like '1,0,2;0,1,0'")
    if not out or len({len(r) for r in out}) != 1:
        raise UsageError("matrix rows must be non-empty and of equal length")
    return out


def parse_ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# output

def emit(cfg: RunConfig, payload: dict, lines: Sequence[str]) -> None:
    if cfg.fmt == "json":
        payload = {"schema": 1, **payload}
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for ln in lines:
            print(ln)


def _level_lines(rep, names) -> List[str]:
    a = rep.artinian
    verdict = "level" if rep.level else "NOT level"
    out = [
        f"{verdict}: type {rep.type}, socle degrees {sorted(a.dual_gen_degrees)}",
        f"HF of A/(reduction) = {tuple(a.hf)}, e = {rep.e}, s = {rep.s}",
        f"reduction: {', '.join(f.format(names) for f in rep.reduction)}",
        f"stability: {rep.stability}/{rep.trials} ({a.certainty})",
    ]
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_perp(cfg: RunConfig, args) -> int:
    I = read_ideal(args)
    cap = cfg.cap if cfg.cap is not None else default_cap(I)
    P = inverse_system(I, cap)
    names = I.var_names()
    data = perp_json(P, names)
    lines = [f"I^perp truncated at degree {cap} ({data['certainty']}), dim {data['dim']}"]
    for j, basis in data["perp"].items():
        lines.append(f"  degree {j}: " + (", ".join(basis) if basis else "-"))
    data.pop("schema")
    emit(cfg, data, lines)
    return EXIT_OK


def cmd_ann(cfg: RunConfig, args) -> int:
    names, texts = read_poly_file(args.module, args)
    try:
        gens = [parse_poly(t, names, dual=True) for t in texts]
    except ValueError as exc:
        raise UsageError(str(exc))
    W = submodule_closure(gens, len(names))
    I = annihilator(W, degree_bound=args.bound, names=names)
    count, degrees = W.min_generators()
    data = {
        "module_generators": [g.format(names) for g in gens],
        "hilbert_function": W.hilbert_function(),
        "min_generator_degrees": degrees,
        "ideal": I.format_generators(),
        "degree_bound": args.bound,
    }
    lines = [
        f"W: dim {W.dim}, HF {tuple(W.hilbert_function())}, {count} minimal generator(s) in degrees {degrees}",
        f"ann(W){'' if args.bound is None else f'_<={args.bound}'} = {I.format()}",
    ]
    emit(cfg, data, lines)
    return EXIT_OK


def _reduction(args, names) -> Optional[list]:
    if not args.reduction:
        return None
    try:
        return [parse_poly(t, names, dual=False) for t in args.reduction.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_level(cfg: RunConfig, args) -> int:
    I = read_ideal(args)
    names = I.var_names()
    red = _reduction(args, names)
    if red is not None and len(red) != args.dim:
        raise UsageError(f"--reduction needs exactly {args.dim} linear forms")
    try:
        rep = is_level(I, args.dim, seed=cfg.seed, trials=cfg.trials, reduction=red, cap=cfg.cap)
    except NotArtinian as exc:
        emit(cfg, {"level": False, "error": str(exc)}, [f"NOT level: {exc}"])
        return EXIT_MATH
    emit(cfg, rep.to_json(names), _level_lines(rep, names))
    return EXIT_OK if rep.level else EXIT_MATH


def cmd_admissible(cfg: RunConfig, args) -> int:
    F = read_family(args.family)
    names = F.var_names()
    label = f"L_{F.d}^{F.tau}"
    if args.mode == "full":
        rep = check_family(F)
        lines = [f"{label}-admissible: {'PASS' if rep.passed else 'FAIL'}"]
        for k, c in (("cond1", rep.cond1), ("cond2", rep.cond2), ("cond3", rep.cond3)):
            line = f"  {k}: {'PASS' if c.passed else 'FAIL'} ({c.checked} checks)"
            if c.witness:
                w = c.witness
                elem = w.get("element")
                line += f"; witness {elem.format(names) if elem is not None else ''} at n={w.get('n')}"
                if "i" in w:
                    line += f", i={w['i']}"
            lines.append(line)
        if rep.missing:
            lines.append(f"  missing indices: {rep.missing}")
        emit(cfg, {"mode": "full", **rep.to_json(names)}, lines)
        return EXIT_OK if rep.passed else EXIT_MATH
    if args.mode == "gd":
        if F.tau != 1:
            raise UsageError("--mode gd needs a family with tau=1")
        rep = check_Gd(F)
        title = f"G_{F.d}-admissible"
    else:
        rep = check_weak(F)
        title = "weak condition"
    lines = [f"{title}: {'PASS' if rep.passed else 'FAIL'}"]
    emit(cfg, {"mode": args.mode, **rep.to_json(names)}, lines)
    return EXIT_OK if rep.passed else EXIT_MATH


def cmd_construct(cfg: RunConfig, args) -> int:
    kind = args.kind
    if kind == "cone":
        names = _split_names(args.names) if args.names else default_names(args.vars or 0)
        if not names:
            raise UsageError("cone needs --names or --vars")
        try:
            H = [parse_poly(t, names, dual=True) for t in args.gens.split(",") if t.strip()]
            F = cone_family(H, args.dim, args.t0, names)
        except ValueError as exc:
            raise UsageError(str(exc))
        text = format_family(F)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        emit(cfg, {"family": text.splitlines()}, text.rstrip("\n").splitlines())
        return EXIT_OK
    if kind == "effective":
        if not args.family:
            raise UsageError("construct effective needs --family FILE")
        F = read_family(args.family)
        try:
            res = effective_construct(F, s=args.s, seed=cfg.seed, trials=cfg.trials, check=not args.no_check)
        except ValueError as exc:
            emit(cfg, {"verdict": "error", "error": str(exc)}, [f"FAIL: {exc}"])
            return EXIT_MATH
        names = F.var_names()
        lines = [f"I={res.ideal.format()}", f"verdict: {res.verdict}"]
        if res.level is not None:
            lines += _level_lines(res.level, names)
        else:
            lines.append(f"R/I is not {F.d}-dimensional")
        data = {
            "ideal": res.ideal.format_generators(),
            "verdict": res.verdict,
            "level": res.level.to_json(names) if res.level is not None else None,
        }
        emit(cfg, data, lines)
        return EXIT_OK if res.extendable else EXIT_MATH
    if kind == "matroid":
        if not args.matrix:
            raise UsageError("construct matroid needs --matrix 'r1;r2;...'")
        C = matroid_from_matrix(parse_matrix(args.matrix))
        SR = stanley_reisner(C)
        facets = [list(f) for f in C.facets]
        lines = [f"facets: {' '.join('{' + ','.join(map(str, f)) + '}' for f in facets)}", f"I_Delta={SR.format()}"]
        emit(cfg, {"facets": facets, "stanley_reisner": SR.format_generators()}, lines)
        return EXIT_OK
    if kind == "semigroup":
        if not args.gens:
            raise UsageError("construct semigroup needs --gens a,b,c")
        try:
            S = NumericalSemigroup(tuple(parse_ints(args.gens)), strict=not args.non_strict)
        except ValueError as exc:
            raise UsageError(str(exc))
        P = S.presentation()
        data = {
            "generators": list(S.generators),
            "apery": S.apery(),
            "frobenius": S.frobenius(),
            "presentation": P.format_generators(),
        }
        lines = [
            f"S = <{','.join(map(str, S.generators))}>",
            f"Apery set w.r.t. {S.generators[0]}: {S.apery()}",
            f"Frobenius number: {S.frobenius()}",
            f"presentation: {P.format()}",
        ]
        emit(cfg, data, lines)
        return EXIT_OK
    raise UsageError(f"unknown construct kind {kind!r}")


def cmd_examples(cfg: RunConfig, args) -> int:
    seed = cfg.seed
    if args.all:
        ids = list(fixtures_runner.RUNNERS)
    elif args.id:
        if args.id not in fixtures_runner.RUNNERS:
            raise UsageError(f"unknown example {args.id!r}; known: {', '.join(fixtures_runner.RUNNERS)}")
        ids = [args.id]
    else:
        raise UsageError("examples needs --id ID or --all")
    results = [fixtures_runner.run(i, seed=seed, trials=cfg.trials) for i in ids]
    if len(results) == 1:
        lines = [results[0].summary]
    else:
        lines = [f"{r.id}: {'PASS' if r.passed else 'FAIL'}  {r.summary}" for r in results]
        lines.append(f"{sum(r.passed for r in results)}/{len(results)} examples pass")
    emit(cfg, {"examples": [r.to_json() for r in results]}, lines)
    return EXIT_OK if all(r.passed for r in results) else EXIT_MATH


# ---------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None, help="random seed (fallback: $MACDUAL_SEED, then 0)")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--cap", type=int, default=None, help="degree cap for truncated computations")
    p.add_argument("--vars", type=int, default=None, help="number of variables (names x1..xm)")
    p.add_argument("--names", default=None, help="comma separated variable names")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="macdual", description="Inverse systems and level algebras in exact arithmetic.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("perp", help="inverse system of an ideal up to a degree cap")
    _common(p)
    p.add_argument("--ideal", required=True, help="generator file, or 'empty' for the zero ideal")

    p = sub.add_parser("ann", help="annihilator of the submodule generated by dual polynomials")
    _common(p)
    p.add_argument("--module", required=True, help="file of D-side generators (uppercase variables)")
    p.add_argument("--bound", type=int, default=None, help="keep generators of degree <= bound")

    p = sub.add_parser("level-check", help="decide levelness of R/I via a minimal reduction")
    _common(p)
    p.add_argument("--ideal", required=True)
    p.add_argument("--dim", type=int, required=True, help="Krull dimension d of R/I")
    p.add_argument("--reduction", default=None, help="explicit linear forms 'x1+2x2,...' instead of random ones")

    p = sub.add_parser("admissible-check", help="check a finite family for admissibility")
    _common(p)
    p.add_argument("--family", required=True)
    p.add_argument("--mode", choices=("full", "gd", "weak"), default="full")

    p = sub.add_parser("construct", help="cone families, effective construction, matroids, semigroups")
    _common(p)
    p.add_argument("kind", choices=("cone", "effective", "matroid", "semigroup"))
    p.add_argument("--family", default=None)
    p.add_argument("--gens", default=None, help="cone: dual generators; semigroup: integers")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--t0", type=int, default=None)
    p.add_argument("--s", type=int, default=None, help="socle degree s (default: degree of the first generator)")
    p.add_argument("--matrix", default=None, help="rows separated by ';', entries by ','")
    p.add_argument("--out", default=None, help="cone: also write the family file here")
    p.add_argument("--non-strict", action="store_true", help="semigroup: allow non-coprime or redundant generators")
    p.add_argument("--no-check", action="store_true", help="effective: skip the admissibility check")

    p = sub.add_parser("examples", help="replay the worked examples")
    _common(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--id", default=None)
    g.add_argument("--all", action="store_true")
    ap.commands = sub.choices
    return ap


COMMANDS = {
    "perp": cmd_perp,
    "ann": cmd_ann,
    "level-check": cmd_level,
    "admissible-check": cmd_admissible,
    "construct": cmd_construct,
    "examples": cmd_examples,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        seed = resolve_seed(args.seed)
        if args.trials < 1:
            raise UsageError("--trials must be positive")
        if args.command == "construct" and args.kind == "cone" and (not args.gens or args.t0 is None):
            raise UsageError("construct cone needs --gens and --t0")
        cfg = RunConfig(args.command, args.format, seed, args.trials, args.cap)
        return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"macdual {args.command}: {exc}", file=sys.stderr)
        parser.commands[args.command].print_usage(sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
