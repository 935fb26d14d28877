"""Constructors for level algebras and admissible families.

Covers cones over a fixed set of dual generators, the effective graded
construction from a finite admissible family, a heuristic local variant,
coordinate changes, column matroids with their Stanley-Reisner ideals,
and presentations of numerical semigroup rings.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .admissible import AdmissibleFamily, MultiIndex, check_family, multi_indices, positive, shift_index
from .coords import LinearChange
from .dpmodule import contract, top_forms_independent
from .duality import Certified, Ideal, annihilator, ideal_equal, inverse_system
from .exactalg import Poly, default_names, determinant, sparse_solve
from .quotient import LevelReport, NotArtinian, is_level


# ---------------------------------------------------------------------------
# coordinate changes

def apply_change(phi: LinearChange, obj: Union[Ideal, Poly]):
    """Substitute in an ideal or R-polynomial; contragredient map on D-polynomials."""
    if isinstance(obj, Ideal):
        return Ideal(obj.nvars, tuple(phi.apply_poly(g) for g in obj.generators), obj.names)
    return phi.apply_poly(obj)


# ---------------------------------------------------------------------------
# cones

def cone_family(H: Sequence[Poly], d: int, t0: int, names: Optional[Sequence[str]] = None) -> AdmissibleFamily:
    """H_n^j = X_1^{n_1-1} ... X_d^{n_d-1} H^j (formal multiplication), z = x_1..x_d."""
    H = list(H)
    if not H:
        raise ValueError("need at least one generator")
    m = H[0].nvars
    if not top_forms_independent(H):
        raise ValueError("top forms of the generators are dependent")
    for h in H:
        if any(mono[k] for mono in h.terms for k in range(d)):
            raise ValueError("cone generators must not involve the first d variables")
    entries = {}
    for n in multi_indices(d, t0):
        shift = tuple(n[k] - 1 if k < d else 0 for k in range(m))
        for j, h in enumerate(H, start=1):
            entries[(n, j)] = h.shift(shift)
    z = [Poly.var(m, k) for k in range(d)]
    return AdmissibleFamily(d, len(H), t0, m, z, entries, tuple(names) if names else None)


# ---------------------------------------------------------------------------
# families from a top element or from an ideal

def derive_below(H_top: Sequence[Poly], n_top: MultiIndex, z: Sequence[Poly]) -> Dict[MultiIndex, List[Poly]]:
    """H_n = z^(n_top - n) o H_top for every n <= n_top."""
    out: Dict[MultiIndex, List[Poly]] = {tuple(n_top): list(H_top)}
    order = sorted(
        (n for n in _box(n_top)),
        key=lambda n: -sum(n),
    )
    for n in order:
        if n in out:
            continue
        i = next(k for k in range(len(n)) if n[k] < n_top[k])
        up = list(n)
        up[i] += 1
        out[n] = [contract(z[i], h) for h in out[tuple(up)]]
    return out


def _box(n_top):
    from itertools import product

    return [tuple(n) for n in product(*[range(1, k + 1) for k in n_top])]


def lift_family(F: AdmissibleFamily, I: Ideal, t0: Optional[int] = None) -> AdmissibleFamily:
    """Fill in every index with |n| <= t0 that ``F`` lacks.

    A missing H_n^j is the unique element of degree s_n in (I + (z^n))^perp
    with z_i o H_n^j = H_{n-e_i}^j for every i with n - e_i > 0.  Needs a
    graded I whose perp contains the given family.
    """
    if not I.graded:
        raise ValueError("lifting needs a graded ideal")
    t0 = F.t0 if t0 is None else t0
    entries = dict(F.entries)
    base = tuple([1] * F.d)
    s = F.H(base)[0].degree()
    for n in multi_indices(F.d, t0):
        if all((n, j) in entries for j in range(1, F.tau + 1)):
            continue
        s_n = s + sum(n) - F.d
        J = I.with_generators([f ** k for f, k in zip(F.z, n)])
        P = inverse_system(J, s_n)
        cands = P.basis_by_degree(s_n)
        for j in range(1, F.tau + 1):
            eqs = []
            for i in range(1, F.d + 1):
                prev = shift_index(n, i)
                if not positive(prev):
                    continue
                target = entries.get((prev, j))
                if target is None:
                    raise ValueError(f"cannot lift {n}: H{list(prev)}[{j}] missing")
                images = [contract(F.z[i - 1], c) for c in cands]
                monos = set(target.terms)
                for im in images:
                    monos.update(im.terms)
                for mono in monos:
                    eq = {k: im.terms[mono] for k, im in enumerate(images) if mono in im.terms}
                    eqs.append((eq, target.terms.get(mono, 0)))
            sol = sparse_solve(eqs, range(len(cands)))
            if sol is None:
                raise ValueError(f"family does not lift at n={n}, j={j}")
            h = Poly.zero(F.nvars, True)
            for k, lam in sol.items():
                h = h + cands[k].scale(lam)
            entries[(n, j)] = h
    return AdmissibleFamily(F.d, F.tau, t0, F.nvars, F.z, entries, F.names)


def family_from_ideal(I: Ideal, z: Sequence[Poly], tau: int, t0: int) -> AdmissibleFamily:
    """Family read off the perp of a graded level ideal: H_{1_d} from (I + (z))^perp, then lifted."""
    d = len(z)
    J = I.with_generators(list(z))
    W = inverse_system(J, 2 * (I.nvars + I.max_degree())).module()
    gens = W.min_generator_polys()
    if len(gens) != tau:
        raise ValueError(f"reduction has type {len(gens)}, expected {tau}")
    base = tuple([1] * d)
    F = AdmissibleFamily(d, tau, t0, I.nvars, z, {(base, j): g for j, g in enumerate(gens, start=1)}, I.names)
    return lift_family(F, I, t0)


# ---------------------------------------------------------------------------
# effective constructions

@dataclass
class EffectiveResult:
    ideal: Ideal
    level: Optional[LevelReport]
    verdict: str
    n_star: MultiIndex
    certified: Optional[Certified] = None

    @property
    def extendable(self) -> bool:
        return self.verdict == "level"


def effective_construct(
    F: AdmissibleFamily,
    s: Optional[int] = None,
    seed: Optional[int] = None,
    trials: int = 3,
    check: bool = True,
    certify: bool = False,
) -> EffectiveResult:
    """I = (ann W_{(s+2)_d})_{<= s+1} for a finite graded admissible family, then verified.

    If R/I turns out not to be level of type tau and socle degree s, the
    family cannot be extended to an admissible submodule and the verdict
    says so.
    """
    if not F.graded:
        raise ValueError("the effective construction needs a homogeneous family")
    base = tuple([1] * F.d)
    if s is None:
        s = F.H(base)[0].degree()
    if F.t0 < (s + 2) * F.d:
        raise ValueError(f"need t0 >= (s+2)d = {(s + 2) * F.d}, have {F.t0}")
    if check:
        rep = check_family(F)
        if not rep.passed:
            raise ValueError("family is not admissible")
    n_star = tuple([s + 2] * F.d)
    W = F.W(n_star)
    I = annihilator(W, degree_bound=s + 1, names=F.names)
    try:
        lev = is_level(I, F.d, seed=seed, trials=trials)
    except NotArtinian:
        # R/I does not even have dimension d
        lev = None
    ok = lev is not None and lev.level and lev.type == F.tau and lev.s == s and lev.stable
    cert = None
    if certify:
        full = annihilator(W, names=F.names)
        cert = ideal_equal(full, I.with_generators([f ** k for f, k in zip(F.z, n_star)]))
    return EffectiveResult(I, lev, "level" if ok else "family not extendable", n_star, cert)


@dataclass
class LocalResult:
    ideal: Ideal
    dropped: List[Poly]
    certified: Certified
    n_star: MultiIndex
    label: str = "heuristic"


def local_construct_heuristic(
    F: AdmissibleFamily,
    n_star: MultiIndex,
    split_z: bool = True,
    degree_bound: Optional[int] = None,
    modulus: Optional[int] = None,
) -> LocalResult:
    """Candidate ideal from ann(W_{n_star}) for a non-graded family.

    The powers z_i^{n_i} are offered first as generators; with ``split_z``
    they are removed from the output.  The claim ann(W_{n_star}) =
    I + (z^{n_star}) is then checked modulo M^modulus (default 2(s+2), s the
    socle degree of W_{n_star}).  There is no finite criterion behind this
    in the local case, hence the label.
    """
    n_star = tuple(n_star)
    W = F.W(n_star)
    powers = [f ** k for f, k in zip(F.z, n_star)]
    ann = annihilator(W, degree_bound=degree_bound, prefer=powers, names=F.names)
    kept, dropped = [], []
    for g in ann.generators:
        if split_z and g in powers:
            dropped.append(g)
        else:
            kept.append(g)
    I = Ideal(F.nvars, tuple(kept), F.names)
    if modulus is None:
        modulus = 2 * (W.top_degree + 2)
    full = annihilator(W, names=F.names)
    cert = ideal_equal(full, I.with_generators(powers), trunc_N=modulus - 1)
    return LocalResult(I, dropped, cert, n_star)


# ---------------------------------------------------------------------------
# matroids and Stanley-Reisner ideals

@dataclass(frozen=True)
class SimplicialComplexFacets:
    n: int
    facets: Tuple[Tuple[int, ...], ...]

    def is_face(self, S) -> bool:
        S = set(S)
        return any(S <= set(f) for f in self.facets)


def matroid_from_matrix(X: Sequence[Sequence]) -> SimplicialComplexFacets:
    """Column m-subsets (1-based) with nonzero maximal minor."""
    rows = [list(r) for r in X]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    if m > n:
        raise ValueError("need at least as many columns as rows")
    facets = []
    for cols in combinations(range(n), m):
        if determinant([[r[c] for c in cols] for r in rows]) != 0:
            facets.append(tuple(c + 1 for c in cols))
    return SimplicialComplexFacets(n, tuple(facets))


def minimal_nonfaces(C: SimplicialComplexFacets) -> List[Tuple[int, ...]]:
    top = max((len(f) for f in C.facets), default=0)
    out = []
    for k in range(1, min(top + 1, C.n) + 1):
        for S in combinations(range(1, C.n + 1), k):
            if C.is_face(S):
                continue
            if all(C.is_face(S[:i] + S[i + 1:]) for i in range(k)):
                out.append(S)
    # colex order: compare the largest vertex first
    return sorted(out, key=lambda S: tuple(reversed(S)))


def stanley_reisner(C: SimplicialComplexFacets, names: Optional[Sequence[str]] = None) -> Ideal:
    gens = []
    for S in minimal_nonfaces(C):
        gens.append(Poly.monomial(tuple(int(v + 1 in S) for v in range(C.n))))
    return Ideal(C.n, tuple(gens), tuple(names) if names else default_names(C.n))


# ---------------------------------------------------------------------------
# numerical semigroups

@dataclass(frozen=True)
class NumericalSemigroup:
    """Semigroup of N generated by ``generators``.

    With ``strict`` the generators must be coprime and minimal.  Otherwise
    any list is accepted: the presentation is then that of the monomial
    ring K[t^g : g in generators] in one variable per listed generator, and
    Apery set and Frobenius number refer to the semigroup divided by the
    gcd of the generators.
    """

    generators: Tuple[int, ...]
    strict: bool = True

    def __post_init__(self):
        gens = tuple(sorted(self.generators))
        if not gens or gens[0] <= 0:
            raise ValueError("generators must be positive")
        object.__setattr__(self, "generators", gens)
        if not self.strict:
            return
        if self.gcd != 1:
            raise ValueError("generators are not coprime")
        for i, a in enumerate(gens):
            rest = gens[:i] + gens[i + 1:]
            if rest and _representable(a, rest):
                raise ValueError(f"{a} is not a minimal generator")

    @property
    def gcd(self) -> int:
        g = 0
        for a in self.generators:
            g = gcd(g, a)
        return g

    def reduced(self) -> "NumericalSemigroup":
        """The numerical semigroup generated by generators / gcd, minimal generators only."""
        g = self.gcd
        gens = sorted(set(a // g for a in self.generators))
        minimal = [a for i, a in enumerate(gens) if not _representable(a, gens[:i])]
        return NumericalSemigroup(tuple(minimal))

    def apery(self, a: Optional[int] = None) -> List[int]:
        """Least element of S in each residue class modulo a (default n_1)."""
        if not self.strict:
            return self.reduced().apery(a)
        a = self.generators[0] if a is None else a
        if a <= 0 or not self.contains(a):
            raise ValueError("the Apery set needs a nonzero element of S")
        dist = [None] * a
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            dv, r = heapq.heappop(heap)
            if dv != dist[r]:
                continue
            for g in self.generators:
                nd, nr = dv + g, (r + g) % a
                if dist[nr] is None or nd < dist[nr]:
                    dist[nr] = nd
                    heapq.heappush(heap, (nd, nr))
        return sorted(dist)

    def frobenius(self) -> int:
        if not self.strict:
            return self.reduced().frobenius()
        return max(self.apery()) - self.generators[0]

    def contains(self, s: int) -> bool:
        return s >= 0 and (s == 0 or _representable(s, self.generators))

    def factorizations(self, s: int) -> List[Tuple[int, ...]]:
        gens = self.generators
        out = []

        def rec(i, rem, acc):
            if i == len(gens) - 1:
                if rem % gens[i] == 0:
                    out.append(tuple(acc + [rem // gens[i]]))
                return
            for k in range(rem // gens[i] + 1):
                rec(i + 1, rem - k * gens[i], acc + [k])

        rec(0, s, [])
        return out

    def betti_bound(self) -> int:
        """Degrees of minimal relations lie below F + n_1 + n_l (scaled by the gcd)."""
        g = self.gcd
        return g * (self.frobenius() + self.generators[0] // g + self.generators[-1] // g)

    def relations(self, bound: Optional[int] = None) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Minimal presentation as pairs (u, v) of factorizations of the same element.

        For each s the factorizations are grouped into classes connected by
        sharing a generator; c classes contribute c - 1 relations joining
        the lex-largest representative of the first class to the others.
        """
        bound = self.betti_bound() if bound is None else bound
        rels = []
        for s in range(1, bound + 1):
            facts = self.factorizations(s)
            if len(facts) < 2:
                continue
            comps = _support_components(facts)
            if len(comps) < 2:
                continue
            reps = sorted((max(c) for c in comps), reverse=True)
            for r in reps[1:]:
                rels.append((reps[0], r))
        return rels

    def presentation(self, names: Optional[Sequence[str]] = None) -> Ideal:
        l = len(self.generators)
        names = tuple(names) if names else _semigroup_names(l)
        gens = [Poly.monomial(u) - Poly.monomial(v) for u, v in self.relations()]
        return Ideal(l, tuple(gens), names)

    def weighted_degree(self, mono: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(mono, self.generators))


def _semigroup_names(l: int) -> Tuple[str, ...]:
    return ("x", "y", "z", "w")[:l] if l <= 4 else default_names(l)


def _representable(s: int, gens: Sequence[int]) -> bool:
    ok = [False] * (s + 1)
    ok[0] = True
    for v in range(1, s + 1):
        ok[v] = any(v >= g and ok[v - g] for g in gens)
    return ok[s]


def _support_components(facts: List[Tuple[int, ...]]) -> List[List[Tuple[int, ...]]]:
    parent = list(range(len(facts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(range(len(facts)), 2):
        if any(x and y for x, y in zip(facts[a], facts[b])):
            parent[find(a)] = find(b)
    groups: Dict[int, list] = {}
    for k, f in enumerate(facts):
        groups.setdefault(find(k), []).append(f)
    return sorted(groups.values(), key=lambda c: max(c), reverse=True)


def semigroup_tools(gens: Sequence[int], names: Optional[Sequence[str]] = None, strict: bool = True) -> dict:
    S = NumericalSemigroup(tuple(gens), strict)
    return {
        "apery": S.apery(),
        "frobenius": S.frobenius(),
        "presentation": S.presentation(names),
    }
