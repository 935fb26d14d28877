"""Artinian quotients and levelness of positive-dimensional algebras via reductions."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .dpmodule import top_forms_independent
from .duality import Ideal, inverse_system
from .exactalg import Poly, poly_span


class NotArtinian(ValueError):
    pass


@dataclass
class ArtinianReport:
    hf: List[int]
    socdeg: int
    type: int
    level: bool
    dual_gen_degrees: List[int]
    dim_K: int
    certainty: str = "exact"

    def to_json(self) -> dict:
        return {
            "hf": self.hf,
            "socdeg": self.socdeg,
            "type": self.type,
            "level": self.level,
            "dual_gen_degrees": self.dual_gen_degrees,
            "dim_K": self.dim_K,
            "certainty": self.certainty,
        }


def default_cap(I: Ideal) -> int:
    return 2 * (I.nvars + I.max_degree())


def artinian_report(J: Ideal, cap: Optional[int] = None) -> ArtinianReport:
    """Hilbert function, socle degree, type and levelness of R/J.

    The perp of J is built degree by degree until it stops growing, which
    certifies M^(s+1) in J; the dual module's minimal generators then give
    type and levelness.
    """
    if cap is None:
        cap = default_cap(J)
    P = inverse_system(J, cap + 1)
    if not P.stable:
        raise NotArtinian(f"not Artinian within cap {cap}")
    W = P.module()
    if W.is_zero():
        return ArtinianReport([], -1, 0, True, [], 0)
    gens = W.min_generator_polys()
    count, degs = len(gens), sorted((g.degree() for g in gens), reverse=True)
    s = W.top_degree
    return ArtinianReport(
        hf=W.hilbert_function(),
        socdeg=s,
        type=count,
        level=all(d == s for d in degs) and top_forms_independent(gens),
        dual_gen_degrees=degs,
        dim_K=W.dim,
    )


def _check_linear(z: Sequence[Poly]) -> None:
    for f in z:
        if not (f.is_homogeneous() and f.degree() == 1):
            raise ValueError(f"{f} is not a linear form")
    if z and poly_span(z, z[0].nvars, False).rank != len(z):
        raise ValueError("linear forms are dependent")


def quotient_by_powers(I: Ideal, z: Sequence[Poly], n: Sequence[int]) -> Ideal:
    """I + (z_1^{n_1}, ..., z_d^{n_d})."""
    if len(z) != len(n):
        raise ValueError("need one exponent per linear form")
    if any(k < 1 for k in n):
        raise ValueError("exponents must be positive")
    _check_linear(z)
    return I.with_generators([f ** k for f, k in zip(z, n)])


def random_linear_forms(m: int, d: int, rng: random.Random, bound: int = 100) -> List[Poly]:
    """d random integer linear forms, coefficients uniform in [-bound, bound]."""
    while True:
        forms = []
        for _ in range(d):
            coeffs = [rng.randint(-bound, bound) for _ in range(m)]
            forms.append(Poly(m, {tuple(int(i == k) for i in range(m)): c for k, c in enumerate(coeffs)}))
        if all(forms) and poly_span(forms, m, False).rank == d:
            return forms


def resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return int(seed)
    return int(os.environ.get("MACDUAL_SEED", "0"))


@dataclass
class LevelReport:
    d: int
    reduction: List[Poly]
    seed: Optional[int]
    artinian: ArtinianReport
    e: int
    s: int
    stability: int
    trials: int
    disagreements: List[Tuple[int, ArtinianReport]] = field(default_factory=list)

    @property
    def level(self) -> bool:
        return self.artinian.level

    @property
    def type(self) -> int:
        return self.artinian.type

    @property
    def stable(self) -> bool:
        return self.stability == self.trials

    def to_json(self, names: Optional[Sequence[str]] = None) -> dict:
        return {
            "d": self.d,
            "seed": self.seed,
            "reduction": [f.format(names) for f in self.reduction],
            "level": self.level,
            "type": self.type,
            "e": self.e,
            "s": self.s,
            "stability": self.stability,
            "trials": self.trials,
            "artinian": self.artinian.to_json(),
            "disagreements": [{"seed": sd, **r.to_json()} for sd, r in self.disagreements],
        }


def _signature(r: ArtinianReport):
    return (tuple(r.hf), r.socdeg, r.type, r.level, tuple(r.dual_gen_degrees))


def is_level(
    I: Ideal,
    d: int,
    seed: Optional[int] = None,
    trials: int = 3,
    reduction: Optional[Sequence[Poly]] = None,
    cap: Optional[int] = None,
    bound: int = 100,
    retries: int = 5,
) -> LevelReport:
    """Levelness of R/I (assumed Cohen-Macaulay of dimension d) via Artinian reductions.

    With an explicit ``reduction`` exactly that one is used.  Otherwise each
    trial t draws d random linear forms from seed + t; the first trial's report
    is returned and the others are compared against it.
    """
    if reduction is not None:
        reduction = list(reduction)
        if len(reduction) != d:
            raise ValueError(f"need {d} reduction elements, got {len(reduction)}")
        rep = artinian_report(I.with_generators(reduction), cap)
        return LevelReport(d, reduction, None, rep, rep.dim_K, rep.socdeg, 1, 1)
    seed = resolve_seed(seed)
    results = []
    for t in range(trials):
        rng = random.Random(seed + t)
        for _ in range(retries):
            forms = random_linear_forms(I.nvars, d, rng, bound)
            try:
                rep = artinian_report(I.with_generators(forms), cap)
                break
            except NotArtinian:
                continue
        else:
            raise NotArtinian("reduction not Artinian after retry budget")
        results.append((seed + t, forms, rep))
    first = results[0]
    sig = _signature(first[2])
    agree = sum(1 for r in results if _signature(r[2]) == sig)
    disagreements = [(sd, rep) for sd, _, rep in results if _signature(rep) != sig]
    rep = first[2]
    return LevelReport(d, first[1], first[0], rep, rep.dim_K, rep.socdeg, agree, trials, disagreements)


@dataclass
class PowerVerdict:
    n: Tuple[int, ...]
    socdeg: int
    expected: Optional[int]
    level: bool
    type: int
    ok: bool


def socdeg_power_check(I: Ideal, z: Sequence[Poly], d: int, s: int, n_list) -> List[PowerVerdict]:
    """socdeg(R/(I + z^n)) against s + |n| - d for each n."""
    out = []
    for n in n_list:
        n = tuple(n)
        rep = artinian_report(quotient_by_powers(I, z, n))
        exp = s + sum(n) - d
        out.append(PowerVerdict(n, rep.socdeg, exp, rep.level, rep.type, rep.socdeg == exp))
    return out


def level_power_check(I: Ideal, z: Sequence[Poly], d: int, n_list, tau: Optional[int] = None) -> List[PowerVerdict]:
    """Each R/(I + z^n) should be level of the same type as R/(I + z)."""
    if tau is None:
        tau = artinian_report(quotient_by_powers(I, z, (1,) * d)).type
    out = []
    for n in n_list:
        n = tuple(n)
        rep = artinian_report(quotient_by_powers(I, z, n))
        out.append(PowerVerdict(n, rep.socdeg, None, rep.level, rep.type, rep.level and rep.type == tau))
    return out
