"""Macaulay duality at finite truncation: inverse systems, annihilators, pairing.

Local (non-homogeneous) statements are only ever certified modulo a power
of the maximal ideal; every result that depends on such a truncation
carries a ``certainty`` string saying which power.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .dpmodule import DualSubmodule, _contract_var_vec, module_from_basis
from .exactalg import (
    AmbientMismatch,
    Poly,
    SpanBasis,
    default_names,
    mono_key,
    monomials_of_degree,
    parse_poly,
    sparse_kernel,
)


@dataclass(frozen=True)
class Ideal:
    """Ideal of R given by generators; ``graded`` iff every generator is homogeneous."""

    nvars: int
    generators: Tuple[Poly, ...]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        gens = tuple(g for g in self.generators if g)
        for g in gens:
            if g.dual:
                raise TypeError("ideal generators must be R-side polynomials")
            if g.nvars != self.nvars:
                raise AmbientMismatch("generator in the wrong ring")
        object.__setattr__(self, "generators", gens)
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def parse(cls, texts: Sequence[str], names: Sequence[str]) -> "Ideal":
        return cls(len(names), tuple(parse_poly(t, names, dual=False) for t in texts), tuple(names))

    @property
    def graded(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    @property
    def is_unit(self) -> bool:
        return any(g.constant_term() for g in self.generators)

    def max_degree(self) -> int:
        return max((g.degree() for g in self.generators), default=0)

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.nvars != other.nvars:
            raise AmbientMismatch("ideals in different rings")
        return Ideal(self.nvars, self.generators + other.generators, self.names or other.names)

    def with_generators(self, extra: Sequence[Poly]) -> "Ideal":
        return Ideal(self.nvars, self.generators + tuple(extra), self.names)

    def renamed(self, names: Sequence[str]) -> "Ideal":
        return Ideal(self.nvars, self.generators, tuple(names))

    def var_names(self) -> Tuple[str, ...]:
        return self.names or default_names(self.nvars)

    def format_generators(self, compact: bool = True) -> List[str]:
        return [g.format(self.var_names(), compact) for g in self.generators]

    def format(self, sort: bool = False) -> str:
        gens = self.generators
        if sort:
            gens = sorted(gens, key=_lex_desc_key)
        return "(" + ",".join(g.format(self.var_names()) for g in gens) + ")"

    def __str__(self):
        return self.format()


def _lex_desc_key(g: Poly):
    lead = max(g.terms)
    return tuple(-e for e in lead)


@dataclass
class Certified:
    """Boolean verdict plus the precision at which it holds."""

    value: bool
    certainty: str

    def __bool__(self):
        return self.value


def pairing(f: Poly, F: Poly) -> Fraction:
    """<f, F> = (f o F)(0); on monomials <x^a, X^b> = [a == b]."""
    if f.nvars != F.nvars:
        raise AmbientMismatch(f"{f.nvars} vs {F.nvars} variables")
    if f.dual or not F.dual:
        raise TypeError("pairing expects an R-side f and a D-side F")
    small, big = (f.terms, F.terms) if len(f.terms) <= len(F.terms) else (F.terms, f.terms)
    return sum((c * big[m] for m, c in small.items() if m in big), Fraction(0))


def _pair_vec(f_terms: Dict, vec: Dict) -> Fraction:
    small, big = (f_terms, vec) if len(f_terms) <= len(vec) else (vec, f_terms)
    return sum((c * big[m] for m, c in small.items() if m in big), Fraction(0))


@dataclass
class TruncatedPerp:
    """I^perp intersected with D of degree <= cap.

    ``stable`` is set once the perp stopped growing before the cap; then the
    basis is all of I^perp and M^(top+1) is contained in I.
    """

    ideal: Ideal
    cap: int
    basis: SpanBasis = field(repr=False)
    stable: bool = False

    @property
    def nvars(self):
        return self.ideal.nvars

    def module(self) -> DualSubmodule:
        return module_from_basis(self.nvars, self.basis)

    def basis_by_degree(self, j: int) -> List[Poly]:
        return [Poly._raw(self.nvars, dict(r), True) for r in self.basis.rows_of_degree(j)]

    @property
    def top_degree(self) -> int:
        return max((sum(p) for p in self.basis.pivots), default=-1)

    def dim(self) -> int:
        return self.basis.rank

    def kills(self, f: Poly) -> bool:
        """True iff <f, F> = 0 for every F in the truncated perp."""
        return all(not _pair_vec(f.terms, r) for r in self.basis.rows)

    def certainty(self) -> str:
        """"exact" when the basis is all of I^perp, else the power of M it is blind to."""
        if self.stable:
            return "exact"
        return f"mod-M^{self.cap + 1}"


def _integrate(B: List[Dict], nvars: int):
    """Candidates X_i * (B_l with X_1..X_{i-1} set to zero), keyed by (i, l)."""
    out = {}
    for l, b in enumerate(B):
        for i in range(nvars):
            v = {}
            for mono, c in b.items():
                if any(mono[:i]):
                    continue
                e = list(mono)
                e[i] += 1
                v[tuple(e)] = c
            if v:
                out[(i, l)] = v
    return out


def inverse_system(I: Ideal, N: int) -> TruncatedPerp:
    """I^perp within D_{<=N}, computed degree by degree.

    An element of degree <= k+1 lies in I^perp iff its contractions by the
    variables lie in the degree <= k part and it pairs to zero with every
    generator.  Elements with prescribed contractions G_i are recovered as
    sum_i X_i * G_i|_{X_1=..=X_{i-1}=0}; the unknowns are the coefficients of
    the G_i on the previous basis, constrained by x_j o G_i = x_i o G_j.
    """
    if N < 0:
        raise ValueError("degree cap must be >= 0")
    m = I.nvars
    basis = SpanBasis.for_polys(m, True)
    if I.is_unit:
        return TruncatedPerp(I, N, basis, stable=True)
    basis._insert({(0,) * m: Fraction(1)})
    graded = I.graded
    gens = [g.terms for g in I.generators]
    stable = False
    for k in range(N):
        if graded:
            B = basis.rows_of_degree(k)
        else:
            B = basis.rows
        if not B:
            stable = True
            break
        cand = _integrate(B, m)
        equations: Dict = {}
        # compatibility x_j o G_i = x_i o G_j
        contr = [[_contract_var_vec(j, b) for j in range(m)] for b in B]
        for i in range(m):
            for j in range(i + 1, m):
                for l in range(len(B)):
                    for mono, c in contr[l][j].items():
                        eq = equations.setdefault((i, j, mono), {})
                        eq[(i, l)] = eq.get((i, l), 0) + c
                    for mono, c in contr[l][i].items():
                        eq = equations.setdefault((i, j, mono), {})
                        eq[(j, l)] = eq.get((j, l), 0) - c
        eqs = [{u: c for u, c in e.items() if c} for e in equations.values()]
        for g in gens:
            eq = {}
            for u, v in cand.items():
                c = _pair_vec(g, v)
                if c:
                    eq[u] = c
            if eq:
                eqs.append(eq)
        unknowns = [(i, l) for l in range(len(B)) for i in range(m)]
        for sol in sparse_kernel(eqs, unknowns):
            F: Dict = {}
            for u, lam in sol.items():
                v = cand.get(u)
                if not v:
                    continue
                for mono, c in v.items():
                    nv = F.get(mono, 0) + lam * c
                    if nv:
                        F[mono] = nv
                    else:
                        F.pop(mono, None)
            if F:
                basis._insert(F)
        if not any(sum(p) == k + 1 for p in basis.pivots):
            stable = True
            break
    return TruncatedPerp(I, N, basis, stable=stable)


# ---------------------------------------------------------------------------
# annihilators

def _orth_complement(rows: List[Dict], columns: Sequence, m: int) -> List[Dict]:
    """Basis of {f in span(columns) : <f, r> = 0 for all rows}, rows in RREF.

    ``rows`` must be supported on ``columns``.
    """
    pivots = {min(r, key=mono_key): r for r in rows}
    out = []
    for c in columns:
        if c in pivots:
            continue
        v = {c: Fraction(1)}
        for p, r in pivots.items():
            a = r.get(c)
            if a:
                v[p] = -a
        out.append(v)
    return out


def _mul_var_vec(i: int, vec: Dict, cap: Optional[int] = None) -> Dict:
    out = {}
    for mono, c in vec.items():
        if cap is not None and sum(mono) + 1 > cap:
            continue
        e = list(mono)
        e[i] += 1
        out[tuple(e)] = c
    return out


def annihilator_space(W: DualSubmodule) -> SpanBasis:
    """ann_R(W) modulo M^(s+2), as an echelon basis of R_{<=s+1} (s = top degree)."""
    m = W.nvars
    s = W.top_degree
    cols = []
    for j in range(s + 1, -1, -1):
        cols.extend(monomials_of_degree(m, j))
    V = SpanBasis.for_polys(m, False)
    for v in _orth_complement(W.basis.rows, cols, m):
        V._insert(v)
    return V


def annihilator(
    W: DualSubmodule,
    degree_bound: Optional[int] = None,
    prefer: Sequence[Poly] = (),
    names: Optional[Sequence[str]] = None,
) -> Ideal:
    """Minimal generators of ann_R(W) = W^perp in R_{<=s} + M^(s+1).

    Generators are chosen by increasing degree, each one independent modulo
    M * ann + the ones chosen before.  Elements of ``prefer`` that lie in
    the annihilator are tried first: at their own degree for homogeneous W,
    ahead of everything otherwise.  With
    ``degree_bound`` only generators of degree <= bound are returned.
    A zero module gives the unit ideal.
    """
    m = W.nvars
    if W.is_zero():
        return Ideal(m, (Poly.constant(m, 1),), names)
    s = W.top_degree
    top = s + 1 if degree_bound is None else min(s + 1, degree_bound)
    if W.is_homogeneous():
        gens = _ann_graded(W, top, prefer)
    else:
        gens = _ann_local(W, top, prefer)
    return Ideal(m, tuple(gens), names)


def _ann_graded(W: DualSubmodule, top: int, prefer: Sequence[Poly]) -> List[Poly]:
    m = W.nvars
    gens: List[Poly] = []
    prev: List[Dict] = []
    for k in range(top + 1):
        cols = monomials_of_degree(m, k)
        ann_k = _orth_complement(W.basis.rows_of_degree(k), cols, m)
        span = SpanBasis.for_polys(m, False)
        for v in prev:
            for i in range(m):
                span._insert(_mul_var_vec(i, v))
        ann_span = SpanBasis.for_polys(m, False)
        for v in ann_k:
            ann_span._insert(v)
        for p in prefer:
            if p.is_homogeneous() and p.degree() == k and ann_span.contains(p.terms):
                if span._insert(p.terms) is not None:
                    gens.append(p)
        for r in ann_span.rows:
            if span._insert(r) is not None:
                gens.append(Poly._raw(m, dict(r), False))
        prev = ann_span.rows
    return gens


def _ann_local(W: DualSubmodule, top: int, prefer: Sequence[Poly]) -> List[Poly]:
    m = W.nvars
    s = W.top_degree
    V = annihilator_space(W)
    span = SpanBasis.for_polys(m, False)
    for r in V.rows:
        for i in range(m):
            v = _mul_var_vec(i, r, cap=s + 1)
            if v:
                span._insert(v)
    gens: List[Poly] = []
    # seeds go in before the filtration so that lower-degree rows they make
    # redundant modulo M * ann are not picked
    for p in prefer:
        if V.contains(p.truncate(s + 1).terms):
            if span._insert(p.truncate(s + 1).terms) is not None and p.degree() <= top:
                gens.append(p)
    for k in range(top + 1):
        for r in V.rows_of_degree(k):
            if span._insert(r) is not None:
                gens.append(Poly._raw(m, dict(r), False))
    return gens


# ---------------------------------------------------------------------------
# membership and equality

def ideal_contains(I: Ideal, f: Poly, trunc_N: Optional[int] = None) -> Certified:
    """Membership of f in I.

    Graded I: exact.  Otherwise the answer is membership in I + M^(N+1)
    with N = ``trunc_N`` (default: 2 * (max(deg f, max generator degree) + 2)).
    """
    if f.nvars != I.nvars:
        raise AmbientMismatch("polynomial and ideal in different rings")
    if not f:
        return Certified(True, "exact")
    if I.graded:
        P = inverse_system(I, f.degree())
        return Certified(P.kills(f), "exact")
    if trunc_N is None:
        trunc_N = 2 * (max(f.degree(), I.max_degree()) + 2)
    P = inverse_system(I, trunc_N)
    return Certified(P.kills(f.truncate(trunc_N)), P.certainty())


def ideal_equal(I: Ideal, J: Ideal, trunc_N: Optional[int] = None) -> Certified:
    """Equality of ideals; exact when both are graded, else modulo M^(N+1)."""
    if I.nvars != J.nvars:
        raise AmbientMismatch("ideals in different rings")
    if I.graded and J.graded:
        for A, B in ((I, J), (J, I)):
            if not A.generators:
                continue
            P = inverse_system(B, A.max_degree())
            if not all(P.kills(g) for g in A.generators):
                return Certified(False, "exact")
        return Certified(True, "exact")
    if trunc_N is None:
        trunc_N = 2 * (max(I.max_degree(), J.max_degree()) + 2)
    PI = inverse_system(I, trunc_N)
    PJ = inverse_system(J, trunc_N)
    same = PI.basis == PJ.basis
    cert = "exact" if (PI.stable and PJ.stable) else f"mod-M^{trunc_N + 1}"
    return Certified(same, cert)


def perp_json(P: TruncatedPerp, names: Optional[Sequence[str]] = None) -> dict:
    names = names or P.ideal.var_names()
    out = {}
    for j in range(P.top_degree + 1):
        out[str(j)] = [p.format(names) for p in P.basis_by_degree(j)]
    return {
        "schema": 1,
        "ideal": P.ideal.format_generators(),
        "perp": out,
        "dim": P.dim(),
        "certainty": P.certainty(),
    }


def module_json(W: DualSubmodule, names: Sequence[str]) -> List[Dict[str, str]]:
    """Basis as a list of term maps {monomial text: coefficient text}."""
    dn = [n.upper() for n in names]
    out = []
    for p in W.basis_polys():
        out.append({Poly.monomial(mono, dual=True).format(dn): str(c) for mono, c in p.sorted_terms()})
    return out
