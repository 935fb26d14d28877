"""Linear changes of coordinates acting on R and, contragrediently, on D."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence

from .exactalg import AmbientMismatch, Poly, determinant, matrix_inverse, monomials_of_degree, poly_span, unit


def _linear_form(row: Sequence[Fraction], m: int) -> Poly:
    return Poly(m, {unit(m, k): c for k, c in enumerate(row) if c})


@dataclass(frozen=True)
class LinearChange:
    """New coordinates y = A x.

    R-side elements map by f(x) -> f(A^{-1} y).  D-side elements map by the
    coefficient rule F -> sum_b <(Ax)^b, F> Y^b, which keeps the pairing and
    sends the dual basis of the x's to the dual basis of the y's.
    """

    matrix: tuple

    def __init__(self, matrix):
        rows = tuple(tuple(Fraction(x) for x in r) for r in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("change of coordinates needs a square matrix")
        if determinant(rows) == 0:
            raise ValueError("singular change of coordinates")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, m: int) -> "LinearChange":
        return cls([[int(i == j) for j in range(m)] for i in range(m)])

    @classmethod
    def from_forms(cls, forms: Sequence[Poly]) -> "LinearChange":
        """y_i = forms[i]; every form must be linear."""
        m = forms[0].nvars
        rows = []
        for f in forms:
            if not (f.is_homogeneous() and f.degree() == 1):
                raise ValueError(f"{f} is not a linear form")
            rows.append([f.terms.get(unit(m, k), Fraction(0)) for k in range(m)])
        return cls(rows)

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, r in enumerate(self.matrix) for j, x in enumerate(r))

    def inverse(self) -> "LinearChange":
        return LinearChange(matrix_inverse(self.matrix))

    def new_coordinates(self) -> List[Poly]:
        """The y_i as linear forms in the x's."""
        return [_linear_form(r, self.nvars) for r in self.matrix]

    def apply_poly(self, f: Poly) -> Poly:
        if f.nvars != self.nvars:
            raise AmbientMismatch("polynomial and change of coordinates disagree on m")
        if f.dual:
            return self._apply_dual(f)
        if self.is_identity():
            return f
        inv = matrix_inverse(self.matrix)
        subs = [_linear_form(r, self.nvars) for r in inv]
        return _substitute(f, subs)

    def _apply_dual(self, F: Poly) -> Poly:
        if self.is_identity():
            return F
        m = self.nvars
        ys = self.new_coordinates()
        cache: Dict[tuple, Poly] = {(0,) * m: Poly.constant(m, 1)}

        def power(b):
            if b not in cache:
                k = next(i for i, e in enumerate(b) if e)
                prev = list(b)
                prev[k] -= 1
                cache[b] = power(tuple(prev)) * ys[k]
            return cache[b]

        out = {}
        degrees = {sum(a) for a in F.terms}
        for j in sorted(degrees):
            for b in monomials_of_degree(m, j):
                p = power(b)
                c = sum((v * F.terms.get(a, 0) for a, v in p.terms.items()), Fraction(0))
                if c:
                    out[b] = c
        return Poly._raw(m, out, True)


def _substitute(f: Poly, subs: Sequence[Poly]) -> Poly:
    m = f.nvars
    out = Poly.zero(m)
    cache: Dict[tuple, Poly] = {(0,) * m: Poly.constant(m, 1)}

    def power(a):
        if a not in cache:
            k = next(i for i, e in enumerate(a) if e)
            prev = list(a)
            prev[k] -= 1
            cache[a] = power(tuple(prev)) * subs[k]
        return cache[a]

    for a, c in f.terms.items():
        out = out + power(a).scale(c)
    return out


def extend_to_basis(z: Sequence[Poly]) -> LinearChange:
    """Complete the linear forms z by standard variables of least index."""
    if not z:
        raise ValueError("need at least one linear form")
    m = z[0].nvars
    forms = list(z)
    span = poly_span(forms, m, False)
    if span.rank != len(forms):
        raise ValueError("linear forms are dependent")
    for k in range(m):
        v = Poly.var(m, k)
        if span._insert(dict(v.terms)) is not None:
            forms.append(v)
    return LinearChange.from_forms(forms)
