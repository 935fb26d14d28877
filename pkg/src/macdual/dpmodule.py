"""The divided power ring D as an R-module under contraction."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import AmbientMismatch, Poly, SpanBasis, mono_key, poly_span, span_intersect, unit


def contract(f: Poly, F: Poly) -> Poly:
    """Contraction f o F: x^a o X^b = X^(b-a) when b >= a, else 0.

    No factorial coefficients appear; this is not differentiation.
    """
    if f.dual or not F.dual:
        raise TypeError("contract expects an R-side f and a D-side F")
    if f.nvars != F.nvars:
        raise AmbientMismatch(f"{f.nvars} vs {F.nvars} variables")
    out: Dict[tuple, Fraction] = {}
    for a, ca in f.terms.items():
        for b, cb in F.terms.items():
            d = tuple(y - x for x, y in zip(a, b))
            if min(d, default=0) < 0:
                continue
            v = out.get(d, 0) + ca * cb
            if v:
                out[d] = v
            else:
                out.pop(d, None)
    return Poly._raw(F.nvars, out, True)


def contract_var(i: int, F: Poly) -> Poly:
    """Contraction by the i-th variable (0-based)."""
    out = {}
    for b, c in F.terms.items():
        if b[i]:
            d = list(b)
            d[i] -= 1
            out[tuple(d)] = c
    return Poly._raw(F.nvars, out, True)


def _contract_var_vec(i: int, vec: dict) -> dict:
    out = {}
    for b, c in vec.items():
        if b[i]:
            d = list(b)
            d[i] -= 1
            out[tuple(d)] = c
    return out


def formal_multiply(F: Poly, exps: Sequence[int]) -> Poly:
    """X^exps * F as formal multiplication (exponent shift), not the D-product."""
    if len(exps) != F.nvars:
        raise AmbientMismatch("exponent vector has the wrong length")
    return F.shift(tuple(exps))


def top_forms_independent(gens: Sequence[Poly]) -> bool:
    """True iff the top-degree forms of ``gens`` are linearly independent.

    All generators must share the same degree.
    """
    gens = list(gens)
    if not gens:
        return True
    degs = {g.degree() for g in gens}
    if len(degs) != 1:
        raise ValueError(f"generators have different degrees {sorted(degs)}")
    if -1 in degs:
        return False
    m = gens[0].nvars
    span = poly_span((g.top_form() for g in gens), m, True)
    return span.rank == len(gens)


@dataclass
class DualSubmodule:
    """Finitely generated R-submodule of D, stored as a contraction-closed K-basis.

    ``basis`` is a reduced echelon form with leading column the highest
    degree monomial, so its rows with pivot degree j span the elements of
    top degree j modulo lower ones.  For homogeneous generators every row is
    homogeneous.
    """

    nvars: int
    generators: Tuple[Poly, ...]
    basis: SpanBasis = field(repr=False)

    @property
    def dim(self) -> int:
        return self.basis.rank

    @property
    def top_degree(self) -> int:
        return max((sum(p) for p in self.basis.pivots), default=-1)

    def is_zero(self) -> bool:
        return self.basis.rank == 0

    def is_homogeneous(self) -> bool:
        return all(len({sum(m) for m in r}) == 1 for r in self.basis.rows)

    def basis_by_degree(self, j: int) -> List[Poly]:
        return [Poly._raw(self.nvars, dict(r), True) for r in self.basis.rows_of_degree(j)]

    def basis_polys(self) -> List[Poly]:
        return self.basis.polys()

    def hilbert_function(self) -> List[int]:
        """Dimensions of the spaces of top-degree forms, degree 0..top."""
        counts = self.basis.pivot_degree_counts()
        return [counts.get(j, 0) for j in range(self.top_degree + 1)]

    def contains(self, F: Poly) -> bool:
        return self.basis.contains(F.terms)

    def contraction_image(self) -> SpanBasis:
        """K-span of x_i o w over all variables and basis elements (M o W)."""
        out = SpanBasis.for_polys(self.nvars, True)
        for r in self.basis.rows:
            for i in range(self.nvars):
                v = _contract_var_vec(i, r)
                if v:
                    out._insert(v)
        return out

    def min_generator_polys(self) -> List[Poly]:
        """A deterministic minimal generating set.

        Works through the degree filtration from the bottom: at degree j it
        adds the basis rows of top degree j that are independent modulo
        M o W plus the generators already chosen.  The resulting degree
        multiset is the smallest possible one.
        """
        span = self.contraction_image()
        chosen = []
        for j in range(self.top_degree + 1):
            for r in self.basis.rows_of_degree(j):
                if span._insert(r) is not None:
                    chosen.append(Poly._raw(self.nvars, dict(r), True))
        return chosen

    def min_generators(self) -> Tuple[int, List[int]]:
        gens = self.min_generator_polys()
        return len(gens), sorted((g.degree() for g in gens), reverse=True)

    def intersect(self, other: "DualSubmodule") -> "DualSubmodule":
        if self.nvars != other.nvars:
            raise AmbientMismatch("modules in different divided power rings")
        b = span_intersect(self.basis, other.basis)
        return DualSubmodule(self.nvars, tuple(b.polys()), b)

    def __eq__(self, other):
        if not isinstance(other, DualSubmodule):
            return NotImplemented
        return self.nvars == other.nvars and self.basis == other.basis

    def subset_of(self, other: "DualSubmodule") -> bool:
        return all(other.basis.contains(r) for r in self.basis.rows)


def submodule_closure(gens: Sequence[Poly], nvars: Optional[int] = None) -> DualSubmodule:
    """R-submodule of D generated by ``gens``: their span plus all iterated contractions."""
    gens = [g for g in gens]
    if nvars is None:
        if not gens:
            raise ValueError("need generators or nvars")
        nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise AmbientMismatch("generators in different rings")
        if not g.dual:
            raise TypeError("generators must be D-side polynomials")
    basis = SpanBasis.for_polys(nvars, True)
    # highest degree first keeps the echelon form small during the build
    stack = sorted((dict(g.terms) for g in gens if g), key=lambda v: max(sum(m) for m in v))
    while stack:
        v = stack.pop()
        if basis._insert(v) is None:
            continue
        for i in range(nvars):
            w = _contract_var_vec(i, v)
            if w:
                stack.append(w)
    return DualSubmodule(nvars, tuple(gens), basis)


def module_from_basis(nvars: int, basis: SpanBasis, generators: Sequence[Poly] = ()) -> DualSubmodule:
    """Wrap a basis already known to be contraction-closed."""
    return DualSubmodule(nvars, tuple(generators), basis)


def is_closed(basis: SpanBasis, nvars: int) -> bool:
    return all(basis.contains(_contract_var_vec(i, r)) for r in basis.rows for i in range(nvars))


def min_generators(W: DualSubmodule) -> Tuple[int, List[int]]:
    return W.min_generators()


def variable(nvars: int, i: int) -> Poly:
    return Poly.monomial(unit(nvars, i))
