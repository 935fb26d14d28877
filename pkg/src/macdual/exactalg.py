"""Exact rational scalars, sparse polynomials and echelon-form linear algebra.

Polynomials on both sides of the duality share one representation: a map
from exponent tuples to nonzero ``Fraction`` coefficients, tagged with the
number of variables and whether the element lives in the polynomial ring R
(lowercase variables) or in the divided power ring D (uppercase variables).

Vector spaces spanned by polynomials are handled by :class:`SpanBasis`, a
reduced row echelon form whose rows are sparse dicts.  Columns are ordered
so that the *leading* column of a row is its highest-degree monomial
(ties broken by graded reverse-lexicographic order).  With that order, the
rows of an echelon basis whose pivot has degree ``j`` are exactly the
elements of top degree ``j``, which is what both the graded and the local
computations need.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Scalar = Fraction
Monomial = Tuple[int, ...]


class AmbientMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# monomials

def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_key(a: Monomial):
    """Sort key putting the leading monomial first: degree desc, then grevlex."""
    return (-sum(a), a[::-1])


def monomials_of_degree(m: int, j: int) -> List[Monomial]:
    """All exponent tuples of length m and total degree j, leading first."""
    out = []
    for combo in combinations_with_replacement(range(m), j):
        e = [0] * m
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(key=mono_key)
    return out


def monomials_up_to(m: int, j: int) -> List[Monomial]:
    out = []
    for k in range(j, -1, -1):
        out.extend(monomials_of_degree(m, k))
    return out


def unit(m: int, i: int, power: int = 1) -> Monomial:
    e = [0] * m
    e[i] = power
    return tuple(e)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def default_names(m: int, dual: bool = False) -> Tuple[str, ...]:
    base = "X" if dual else "x"
    return tuple(f"{base}{i + 1}" for i in range(m))


def dual_names(names: Sequence[str]) -> Tuple[str, ...]:
    return tuple(n.upper() for n in names)


# --------------------------------------------------------------------------
# polynomials

class Poly:
    """Sparse polynomial over Q in ``nvars`` variables.

    ``dual=False`` means an element of R, ``dual=True`` an element of D.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "dual", "terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Dict[Monomial, object]] = None, dual: bool = False):
        self.nvars = nvars
        self.dual = dual
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise AmbientMismatch(f"monomial {mono} has wrong length for {nvars} variables")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = Fraction(c)
                if c:
                    clean[tuple(mono)] = clean.get(tuple(mono), Fraction(0)) + c
            clean = {k: v for k, v in clean.items() if v}
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars, dual=False):
        return cls(nvars, {}, dual)

    @classmethod
    def constant(cls, nvars, c, dual=False):
        return cls(nvars, {(0,) * nvars: c}, dual)

    @classmethod
    def monomial(cls, exps, c=1, dual=False):
        exps = tuple(exps)
        return cls(len(exps), {exps: c}, dual)

    @classmethod
    def var(cls, nvars, i, dual=False):
        return cls(nvars, {unit(nvars, i): 1}, dual)

    @classmethod
    def _raw(cls, nvars, terms, dual):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.dual = dual
        p.terms = terms
        p._hash = None
        return p

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Top degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def order(self) -> int:
        """Lowest degree of a term; -1 for zero."""
        return min((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_component(self, j: int) -> "Poly":
        return Poly._raw(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == j}, self.dual)

    def top_form(self) -> "Poly":
        return self.homogeneous_component(self.degree())

    def truncate(self, n: int) -> "Poly":
        """Drop every term of degree > n."""
        return Poly._raw(self.nvars, {m: c for m, c in self.terms.items() if sum(m) <= n}, self.dual)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def leading_monomial(self) -> Monomial:
        return min(self.terms, key=mono_key)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    # arithmetic
    def _check(self, other):
        if self.nvars != other.nvars or self.dual != other.dual:
            raise AmbientMismatch("polynomials live in different rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other, self.dual)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly._raw(self.nvars, t, self.dual)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()}, self.dual)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other, self.dual)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars, self.dual)
        return Poly._raw(self.nvars, {m: c * v for m, v in self.terms.items()}, self.dual)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if self.dual:
            raise TypeError("the internal product of D is not provided; use shift() for formal multiplication")
        t: Dict[Monomial, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(a, b))
                v = t.get(m, 0) + ca * cb
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Poly._raw(self.nvars, t, self.dual)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = Poly.constant(self.nvars, 1, self.dual)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exps: Monomial) -> "Poly":
        """Formal multiplication by the monomial with exponents ``exps``."""
        return Poly._raw(self.nvars, {tuple(x + y for x, y in zip(m, exps)): c for m, c in self.terms.items()}, self.dual)

    def restrict_zero(self, variables: Iterable[int]) -> "Poly":
        """Set the given variables to zero."""
        vs = list(variables)
        return Poly._raw(self.nvars, {m: c for m, c in self.terms.items() if all(m[v] == 0 for v in vs)}, self.dual)

    def as_dual(self) -> "Poly":
        return Poly._raw(self.nvars, dict(self.terms), True)

    def as_primal(self) -> "Poly":
        return Poly._raw(self.nvars, dict(self.terms), False)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(1 / self.terms[self.leading_monomial()])

    # comparison
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.dual == other.dual and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.dual, frozenset(self.terms.items())))
        return self._hash

    # text
    def format(self, names: Optional[Sequence[str]] = None, compact: bool = True) -> str:
        if names is None:
            names = default_names(self.nvars, self.dual)
        elif self.dual and all(n.islower() for n in names if n.isalpha()):
            names = dual_names(names)
        return format_poly(self, names, compact)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r}, dual={self.dual})"


def format_poly(p: Poly, names: Sequence[str], compact: bool = True) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for mono, c in p.sorted_terms():
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "".join(factors) if compact else "*".join(factors)
        mag = abs(c)
        if body:
            coef = "" if mag == 1 else (str(mag) if compact else f"{mag}*")
            piece = coef + body
        else:
            piece = str(mag)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, piece))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    sep = "" if compact else " "
    for sign, piece in pieces[1:]:
        out += f"{sep}{sign}{sep}{piece}"
    return out


_NUM = re.compile(r"\d+(?:/\d+)?")


def parse_poly(text: str, names: Sequence[str], dual: Optional[bool] = None) -> Poly:
    """Parse the shared polynomial grammar.

    Terms are joined by ``+``/``-``; a term is an optional rational
    coefficient ``p/q`` followed by factors ``name`` or ``name^k`` with an
    optional ``*`` between them.  Variable names are matched longest first,
    so ``x1x2`` and ``x10`` both parse.  Uppercase versions of ``names``
    denote D-side variables.  Parenthesised sums are not supported.
    """
    names = list(names)
    upper = [n.upper() for n in names]
    lookup = {}
    for i, n in enumerate(names):
        lookup[n] = (i, False)
    for i, n in enumerate(upper):
        lookup.setdefault(n, (i, True))
    alts = sorted(lookup, key=len, reverse=True)
    var_re = re.compile("|".join(re.escape(a) for a in alts)) if alts else None
    m = len(names)
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ValueError("empty polynomial")
    terms: Dict[Monomial, Fraction] = {}
    seen_dual = set()
    pos = 0
    n = len(s)
    first = True
    while pos < n:
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
        first = False
        coef = Fraction(1)
        mnum = _NUM.match(s, pos)
        had_coef = False
        if mnum:
            coef = Fraction(mnum.group(0))
            pos = mnum.end()
            had_coef = True
            if pos < n and s[pos] == "*":
                pos += 1
        exps = [0] * m
        had_var = False
        while pos < n and s[pos] not in "+-":
            if s[pos] == "*":
                pos += 1
                continue
            mv = var_re.match(s, pos) if var_re else None
            if not mv:
                raise ValueError(f"unexpected character {s[pos]!r} in {text!r}")
            idx, is_dual = lookup[mv.group(0)]
            seen_dual.add(is_dual)
            pos = mv.end()
            power = 1
            if pos < n and s[pos] == "^":
                mp = re.compile(r"\d+").match(s, pos + 1)
                if not mp:
                    raise ValueError(f"bad exponent in {text!r}")
                power = int(mp.group(0))
                pos = mp.end()
            exps[idx] += power
            had_var = True
        if not had_var and not had_coef:
            raise ValueError(f"empty term in {text!r}")
        key = tuple(exps)
        v = terms.get(key, Fraction(0)) + sign * coef
        if v:
            terms[key] = v
        else:
            terms.pop(key, None)
    if len(seen_dual) > 1:
        raise ValueError(f"mixed R-side and D-side variables in {text!r}")
    is_dual = dual if dual is not None else (seen_dual == {True})
    return Poly._raw(m, terms, is_dual)


# --------------------------------------------------------------------------
# echelon forms

Vector = Dict[Hashable, Fraction]


def _identity_key(c):
    return c


class SpanBasis:
    """Reduced row echelon basis of a subspace.

    ``ambient`` identifies the coordinate space: ``("cols", n)`` for dense
    column vectors of length n, or ``("D", m)`` / ``("R", m)`` for
    polynomials in m variables.  ``key`` orders columns; the pivot of a row
    is its smallest column under ``key`` and has coefficient 1.  Rows are
    pairwise pivot-distinct and every row vanishes at every other pivot.
    """

    def __init__(self, ambient, key: Callable = _identity_key):
        self.ambient = ambient
        self.key = key
        self._rows: Dict[Hashable, Vector] = {}

    @classmethod
    def for_polys(cls, m: int, dual: bool = True) -> "SpanBasis":
        return cls(("D" if dual else "R", m), mono_key)

    @classmethod
    def from_vectors(cls, ambient, vectors: Iterable[Vector], key: Callable = _identity_key) -> "SpanBasis":
        b = cls(ambient, key)
        for v in vectors:
            b._insert(v)
        return b

    def copy(self) -> "SpanBasis":
        b = SpanBasis(self.ambient, self.key)
        b._rows = {p: dict(r) for p, r in self._rows.items()}
        return b

    # queries
    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self._rows, key=self.key)

    @property
    def rows(self) -> List[Vector]:
        return [self._rows[p] for p in self.pivots]

    def row(self, pivot) -> Vector:
        return self._rows[pivot]

    def reduce(self, vec: Vector) -> Vector:
        """Remainder of ``vec`` after elimination against the basis."""
        v = {c: Fraction(a) for c, a in vec.items() if a}
        rows = self._rows
        for p in [c for c in v if c in rows]:
            a = v.get(p)
            if not a:
                continue
            for col, b in rows[p].items():
                nv = v.get(col, 0) - a * b
                if nv:
                    v[col] = nv
                else:
                    v.pop(col, None)
        return v

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def _insert(self, vec: Vector) -> Optional[Vector]:
        r = self.reduce(vec)
        if not r:
            return None
        p = min(r, key=self.key)
        inv = 1 / r[p]
        r = {c: a * inv for c, a in r.items()}
        for q, row in self._rows.items():
            a = row.get(p)
            if a:
                for col, b in r.items():
                    nv = row.get(col, 0) - a * b
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
        self._rows[p] = r
        return r

    # dense helpers
    def dense_rows(self) -> List[List[Fraction]]:
        if self.ambient[0] != "cols":
            raise TypeError("dense_rows needs a ('cols', n) ambient")
        n = self.ambient[1]
        return [[r.get(c, Fraction(0)) for c in range(n)] for r in self.rows]

    # polynomial helpers
    def polys(self) -> List[Poly]:
        kind, m = self.ambient
        return [Poly._raw(m, dict(r), kind == "D") for r in self.rows]

    def rows_of_degree(self, j: int) -> List[Vector]:
        return [self._rows[p] for p in self.pivots if sum(p) == j]

    def pivot_degree_counts(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for p in self._rows:
            out[sum(p)] = out.get(sum(p), 0) + 1
        return out

    def __eq__(self, other):
        if not isinstance(other, SpanBasis):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __repr__(self):
        return f"SpanBasis(ambient={self.ambient}, rank={self.rank})"


def rref(rows: Sequence[Sequence]) -> SpanBasis:
    """Canonical reduced row echelon form of dense rows."""
    rows = list(rows)
    n = len(rows[0]) if rows else 0
    if any(len(r) != n for r in rows):
        raise ValueError("rows have different lengths")
    vecs = ({i: Fraction(a) for i, a in enumerate(r) if a} for r in rows)
    return SpanBasis.from_vectors(("cols", n), vecs)


def kernel_basis(matrix: Sequence[Sequence]) -> SpanBasis:
    """Right null space of a dense matrix as a reduced echelon basis."""
    matrix = list(matrix)
    n = len(matrix[0]) if matrix else 0
    eqs = [{i: Fraction(a) for i, a in enumerate(r) if a} for r in matrix]
    return SpanBasis.from_vectors(("cols", n), sparse_kernel(eqs, range(n)))


def sparse_kernel(equations: Iterable[Vector], unknowns: Iterable[Hashable], key: Callable = None) -> List[Vector]:
    """Basis of {u : sum_c eq[c] u[c] = 0 for every equation}.

    ``unknowns`` lists every coordinate (order is used for pivoting unless
    ``key`` is given).  Unknowns that appear in no equation are free.
    """
    unknowns = list(unknowns)
    if key is None:
        order = {u: i for i, u in enumerate(unknowns)}
        key = order.__getitem__
    ech = SpanBasis(("eq", len(unknowns)), key)
    for e in equations:
        ech._insert(e)
    piv = set(ech._rows)
    free = [u for u in unknowns if u not in piv]
    # column index: for each free unknown the rows mentioning it
    touch: Dict[Hashable, List[Hashable]] = {}
    for p, row in ech._rows.items():
        for c in row:
            if c != p:
                touch.setdefault(c, []).append(p)
    out = []
    for f in free:
        v = {f: Fraction(1)}
        for p in touch.get(f, ()):
            v[p] = -ech._rows[p][f]
        out.append(v)
    return out


_RHS = ("__rhs__",)


def sparse_solve(equations: Iterable[Tuple[Vector, Fraction]], unknowns: Iterable[Hashable]) -> Optional[Vector]:
    """One solution of sum eq[c] u[c] = rhs (free unknowns set to zero), or None."""
    unknowns = list(unknowns)
    order = {u: i for i, u in enumerate(unknowns)}
    order[_RHS] = len(unknowns)
    ech = SpanBasis(("eq", len(unknowns) + 1), order.__getitem__)
    for e, rhs in equations:
        v = dict(e)
        if rhs:
            v[_RHS] = -Fraction(rhs)
        ech._insert(v)
    if _RHS in ech._rows:
        return None
    sol = {}
    for p, row in ech._rows.items():
        c = -row.get(_RHS, 0)
        if c:
            sol[p] = c
    return sol


def span_sum(a: SpanBasis, b: SpanBasis) -> SpanBasis:
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"{a.ambient} vs {b.ambient}")
    out = a.copy()
    for r in b.rows:
        out._insert(r)
    return out


def span_intersect(a: SpanBasis, b: SpanBasis) -> SpanBasis:
    """Zassenhaus intersection of two subspaces of the same ambient."""
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"{a.ambient} vs {b.ambient}")
    k = a.key

    def zkey(c):
        return (c[0], k(c[1]))

    z = SpanBasis(("zassenhaus", a.ambient), zkey)
    for r in a.rows:
        v = {(0, c): x for c, x in r.items()}
        v.update({(1, c): x for c, x in r.items()})
        z._insert(v)
    for r in b.rows:
        z._insert({(0, c): x for c, x in r.items()})
    out = SpanBasis(a.ambient, a.key)
    for p, row in z._rows.items():
        if p[0] == 1:
            out._insert({c[1]: x for c, x in row.items()})
    return out


def span_contains(a: SpanBasis, v) -> bool:
    if isinstance(v, Poly):
        kind = "D" if v.dual else "R"
        if a.ambient != (kind, v.nvars):
            raise AmbientMismatch(f"{a.ambient} vs {(kind, v.nvars)}")
        return a.contains(v.terms)
    if isinstance(v, dict):
        return a.contains(v)
    v = list(v)
    if a.ambient != ("cols", len(v)):
        raise AmbientMismatch(f"{a.ambient} vs ('cols', {len(v)})")
    return a.contains({i: Fraction(x) for i, x in enumerate(v) if x})


def poly_span(polys: Iterable[Poly], m: int, dual: bool) -> SpanBasis:
    b = SpanBasis.for_polys(m, dual)
    for p in polys:
        if p.nvars != m or p.dual != dual:
            raise AmbientMismatch("polynomial outside the ambient space")
        b._insert(p.terms)
    return b


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def matrix_inverse(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]
