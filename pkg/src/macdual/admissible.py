"""Admissibility checks for finite families {H_n^j} of dual generators.

Multi-indices n, variable positions i and generator labels j are 1-based
here, matching the usual notation; H_n^j with n in N^d_+.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coords import LinearChange, extend_to_basis
from .dpmodule import DualSubmodule, contract, submodule_closure, top_forms_independent
from .duality import annihilator
from .exactalg import Poly, SpanBasis, default_names, monomials_up_to, parse_poly, sparse_kernel

MultiIndex = Tuple[int, ...]


def multi_indices(d: int, t0: int) -> List[MultiIndex]:
    """All n in N^d_+ with |n| <= t0, ordered by |n| then lexicographically."""
    out = [n for n in product(range(1, t0 + 1), repeat=d) if sum(n) <= t0]
    return sorted(out, key=lambda n: (sum(n), n))


def shift_index(n: MultiIndex, i: int, k: int = 1) -> MultiIndex:
    """n - k e_i (i 1-based)."""
    out = list(n)
    out[i - 1] -= k
    return tuple(out)


def positive(n: MultiIndex) -> bool:
    return all(k >= 1 for k in n)


@dataclass
class AdmissibleFamily:
    """Finite family H_n^j (j = 1..tau) with the linear forms z it is tested against."""

    d: int
    tau: int
    t0: int
    nvars: int
    z: Tuple[Poly, ...]
    entries: Dict[Tuple[MultiIndex, int], Poly]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        self.z = tuple(self.z)
        if len(self.z) != self.d:
            raise ValueError(f"need {self.d} linear forms, got {len(self.z)}")
        self.entries = {(tuple(n), j): p for (n, j), p in self.entries.items()}
        for (n, j), p in self.entries.items():
            if len(n) != self.d or not positive(n):
                raise ValueError(f"bad multi-index {n}")
            if not 1 <= j <= self.tau:
                raise ValueError(f"generator label {j} outside 1..{self.tau}")
            if not p.dual or p.nvars != self.nvars:
                raise ValueError(f"H{list(n)}[{j}] is not a D-side polynomial in {self.nvars} variables")
        self._closures: Dict[MultiIndex, DualSubmodule] = {}

    @property
    def graded(self) -> bool:
        return all(p.is_homogeneous() for p in self.entries.values())

    def indices(self) -> List[MultiIndex]:
        return sorted({n for n, _ in self.entries}, key=lambda n: (sum(n), n))

    def missing(self) -> List[MultiIndex]:
        have = {n for n, _ in self.entries}
        return [n for n in multi_indices(self.d, self.t0)
                if n not in have or any((n, j) not in self.entries for j in range(1, self.tau + 1))]

    def H(self, n: MultiIndex) -> List[Poly]:
        return [self.entries[(tuple(n), j)] for j in range(1, self.tau + 1)]

    def has(self, n: MultiIndex) -> bool:
        return all((tuple(n), j) in self.entries for j in range(1, self.tau + 1))

    def W(self, n: MultiIndex) -> DualSubmodule:
        n = tuple(n)
        if n not in self._closures:
            self._closures[n] = submodule_closure(self.H(n), self.nvars)
        return self._closures[n]

    def s(self, n: MultiIndex) -> int:
        return self.H(n)[0].degree()

    def var_names(self) -> Tuple[str, ...]:
        return self.names or default_names(self.nvars)

    def restrict(self, js: Sequence[int]) -> "AdmissibleFamily":
        """Subfamily keeping the labels in ``js`` (relabelled 1..len)."""
        ents = {}
        for new, j in enumerate(js, start=1):
            for n in self.indices():
                if (n, j) in self.entries:
                    ents[(n, new)] = self.entries[(n, j)]
        return AdmissibleFamily(self.d, len(js), self.t0, self.nvars, self.z, ents, self.names)

    def truncated(self, t0: int) -> "AdmissibleFamily":
        ents = {k: v for k, v in self.entries.items() if sum(k[0]) <= t0}
        return AdmissibleFamily(self.d, self.tau, t0, self.nvars, self.z, ents, self.names)


@dataclass
class CondResult:
    passed: bool
    checked: int = 0
    witness: Optional[dict] = None
    failures: int = 0

    def to_json(self, names=None) -> dict:
        w = None
        if self.witness is not None:
            w = {k: (v.format(names) if isinstance(v, Poly) else v) for k, v in self.witness.items()}
        return {"passed": self.passed, "checked": self.checked, "failures": self.failures, "witness": w}


@dataclass
class AdmissibilityReport:
    cond1: CondResult
    cond2: CondResult
    cond3: CondResult
    s_map: Dict[MultiIndex, int]
    change: LinearChange = field(repr=False)
    missing: List[MultiIndex] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cond1.passed and self.cond2.passed and self.cond3.passed and not self.missing

    def to_json(self, names=None) -> dict:
        zn = tuple(n.upper() for n in names) if names else None
        return {
            "passed": self.passed,
            "cond1": self.cond1.to_json(names),
            "cond2": self.cond2.to_json(zn),
            # cond3 lives in z-adapted coordinates; they keep the names only if nothing moved
            "cond3": self.cond3.to_json(zn if self.change.is_identity() else None),
            "s_map": {str(list(n)): s for n, s in self.s_map.items()},
            "coordinates": [[str(x) for x in r] for r in self.change.matrix],
            "missing": [list(n) for n in self.missing],
        }


def build_Vni(n: MultiIndex, i: int, s_n: int, m: int) -> SpanBasis:
    """Span of the Z-monomials Z^k with k_i <= n_i - 2 and |k| <= s_n."""
    if n[i - 1] < 2:
        raise ValueError(f"n_{i} = {n[i - 1]} < 2: the slice is only defined when n - e_i > 0")
    b = SpanBasis.for_polys(m, True)
    for k in monomials_up_to(m, s_n):
        if k[i - 1] <= n[i - 1] - 2:
            b._insert({k: 1})
    return b


def _in_z_coordinates(W: DualSubmodule, change: LinearChange) -> SpanBasis:
    out = SpanBasis.for_polys(W.nvars, True)
    for p in W.basis_polys():
        out._insert(change.apply_poly(p).terms)
    return out


def slice_intersection(Wz: SpanBasis, n: MultiIndex, i: int) -> SpanBasis:
    """W_n cap V_n^i: elements of W_n with no monomial of Z_i-exponent >= n_i - 1."""
    rows = Wz.rows
    bad = n[i - 1] - 1
    eqs: Dict[tuple, Dict[int, object]] = {}
    for r, row in enumerate(rows):
        for mono, c in row.items():
            if mono[i - 1] >= bad:
                eqs.setdefault(mono, {})[r] = c
    out = SpanBasis(Wz.ambient, Wz.key)
    for sol in sparse_kernel(eqs.values(), range(len(rows))):
        v: Dict = {}
        for r, lam in sol.items():
            for mono, c in rows[r].items():
                nv = v.get(mono, 0) + lam * c
                if nv:
                    v[mono] = nv
                else:
                    v.pop(mono, None)
        out._insert(v)
    return out


def check_family(F: AdmissibleFamily) -> AdmissibilityReport:
    """The three admissibility conditions on every in-range index.

    (1) the H_n^j share a degree s_n and have independent top forms;
    (2) z_i o H_n^j = H_{n-e_i}^j when n - e_i > 0 and 0 otherwise;
    (3) W_n cap V_n^i is contained in W_{n-e_i}, computed in the dual
        coordinates Z of z extended by standard variables.
    """
    change = extend_to_basis(F.z)
    idx = [n for n in F.indices() if F.has(n)]
    s_map: Dict[MultiIndex, int] = {}

    c1 = CondResult(True)
    for n in idx:
        H = F.H(n)
        c1.checked += 1
        degs = {h.degree() for h in H}
        if len(degs) != 1 or not top_forms_independent(H):
            c1.passed = False
            c1.failures += 1
            c1.witness = c1.witness or {"n": list(n), "degrees": [h.degree() for h in H]}
            continue
        s_map[n] = degs.pop()

    c2 = CondResult(True)
    for n in idx:
        for i in range(1, F.d + 1):
            prev = shift_index(n, i)
            for j, h in enumerate(F.H(n), start=1):
                c2.checked += 1
                got = contract(F.z[i - 1], h)
                if positive(prev):
                    if not F.has(prev):
                        continue
                    want = F.entries[(prev, j)]
                else:
                    want = Poly.zero(F.nvars, True)
                if got != want:
                    c2.failures += 1
                if got != want and c2.passed:
                    c2.passed = False
                    c2.witness = {"n": list(n), "i": i, "j": j, "contraction": got, "expected": want}

    c3 = CondResult(True)
    for n in idx:
        for i in range(1, F.d + 1):
            prev = shift_index(n, i)
            if not positive(prev) or not F.has(prev):
                continue
            c3.checked += 1
            Wz = _in_z_coordinates(F.W(n), change)
            Pz = _in_z_coordinates(F.W(prev), change)
            inter = slice_intersection(Wz, n, i)
            for r in inter.rows:
                rem = Pz.reduce(r)
                if rem:
                    c3.failures += 1
                    if c3.passed:
                        c3.passed = False
                        c3.witness = {"n": list(n), "i": i, "element": Poly._raw(F.nvars, rem, True)}
                    break
    return AdmissibilityReport(c1, c2, c3, s_map, change, F.missing())


def _span_equal(a: Iterable[Poly], b: DualSubmodule) -> Tuple[bool, SpanBasis]:
    sp = SpanBasis.for_polys(b.nvars, True)
    for p in a:
        if p:
            sp._insert(p.terms)
    return sp == b.basis, sp


@dataclass
class EqualityReport:
    passed: bool
    checked: int = 0
    witness: Optional[dict] = None

    def to_json(self, names=None) -> dict:
        return {"passed": self.passed, "checked": self.checked, "witness": self.witness}


def check_weak(F: AdmissibleFamily) -> EqualityReport:
    """ann(W_{n-e_i}) o W_n = W_{n-(n_i-1)e_i} for every applicable (n, i)."""
    rep = EqualityReport(True)
    for n in F.indices():
        for i in range(1, F.d + 1):
            prev = shift_index(n, i)
            if not positive(prev) or not F.has(prev):
                continue
            low = shift_index(n, i, n[i - 1] - 1)
            rep.checked += 1
            ann = annihilator(F.W(prev))
            images = [contract(g, w) for g in ann.generators for w in F.W(n).basis_polys()]
            ok, sp = _span_equal(images, F.W(low))
            if not ok:
                rep.passed = False
                rep.witness = {"n": list(n), "i": i, "dim_image": sp.rank, "dim_target": F.W(low).dim}
                return rep
    return rep


def check_Gd(F: AdmissibleFamily) -> EqualityReport:
    """For tau = 1: span{(x^a g) o H_n : g in ann<H_{n-e_i}>} = <H_{n-(n_i-1)e_i}>."""
    if F.tau != 1:
        raise ValueError("the G_d condition is defined for a single generator per index")
    rep = EqualityReport(True)
    m = F.nvars
    for n in F.indices():
        for i in range(1, F.d + 1):
            prev = shift_index(n, i)
            if not positive(prev) or not F.has(prev):
                continue
            low = shift_index(n, i, n[i - 1] - 1)
            rep.checked += 1
            H = F.H(n)[0]
            s_n = H.degree()
            ann = annihilator(F.W(prev))
            images = []
            for g in ann.generators:
                for a in monomials_up_to(m, max(s_n - g.degree(), 0)):
                    images.append(contract(Poly.monomial(a) * g, H))
            ok, sp = _span_equal(images, F.W(low))
            if not ok:
                rep.passed = False
                rep.witness = {"n": list(n), "i": i, "dim_image": sp.rank, "dim_target": F.W(low).dim}
                return rep
    return rep


# ---------------------------------------------------------------------------
# family files

_HEADER = re.compile(r"(\w+)\s*=\s*(\[[^\]]*\]|[^,]+)")
_LINE = re.compile(r"H\s*\[([\d,\s]+)\]\s*\[\s*(\d+)\s*\]\s*=\s*(.+)")


def _parse_list(v: str) -> List[str]:
    v = v.strip()
    if v.startswith("["):
        v = v[1:-1]
    return [t.strip() for t in re.split(r"[;,]", v) if t.strip()]


def parse_family(text: str) -> AdmissibleFamily:
    """Read a family file.

    First non-comment line: ``d=1, tau=2, t0=5, vars=3, z=[x], names=[x,y,z]``
    (``names`` optional, lists may also use ``;``).  Then one line per entry:
    ``H[n1,...,nd][j] = <polynomial>``.  ``#`` starts a comment.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty family file")
    head = {k: v.strip() for k, v in _HEADER.findall(lines[0])}
    for key in ("d", "tau", "t0", "vars", "z"):
        if key not in head:
            raise ValueError(f"family header lacks {key}=")
    m = int(head["vars"])
    names = tuple(_parse_list(head["names"])) if "names" in head else default_names(m)
    if len(names) != m:
        raise ValueError("names= does not match vars=")
    z = [parse_poly(t, names, dual=False) for t in _parse_list(head["z"])]
    entries = {}
    for ln in lines[1:]:
        mt = _LINE.fullmatch(ln)
        if not mt:
            raise ValueError(f"cannot parse family line {ln!r}")
        n = tuple(int(t) for t in mt.group(1).split(","))
        entries[(n, int(mt.group(2)))] = parse_poly(mt.group(3), names, dual=True)
    return AdmissibleFamily(int(head["d"]), int(head["tau"]), int(head["t0"]), m, z, entries, names)


def format_family(F: AdmissibleFamily) -> str:
    names = F.var_names()
    z = ",".join(f.format(names) for f in F.z)
    out = [f"d={F.d}, tau={F.tau}, t0={F.t0}, vars={F.nvars}, z=[{z}], names=[{','.join(names)}]"]
    for n in F.indices():
        for j in range(1, F.tau + 1):
            if (n, j) in F.entries:
                idx = ",".join(str(k) for k in n)
                out.append(f"H[{idx}][{j}] = {F.entries[(n, j)].format(names)}")
    return "\n".join(out) + "\n"
