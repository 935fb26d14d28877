"""Worked examples: ideals, families and expected values used by tests, scripts and the CLI."""
from __future__ import annotations

from typing import Dict, List, Sequence

from .admissible import AdmissibleFamily
from .duality import Ideal
from .exactalg import Poly, parse_poly

XYZ = ("x", "y", "z")
XYZW = ("x", "y", "z", "w")
Y5 = ("y1", "y2", "y3", "y4", "y5")
X5 = ("x1", "x2", "x3", "x4", "x5")


def dp(text: str, names: Sequence[str]) -> Poly:
    return parse_poly(text, names, dual=True)


def rp(text: str, names: Sequence[str]) -> Poly:
    return parse_poly(text, names, dual=False)


def _recursive(names, first: str, steps: Sequence[str], shift_var: int = 0) -> List[Poly]:
    """H_1 = first, H_{k+1} = X * H_k + steps[k-1] (X = variable ``shift_var``)."""
    m = len(names)
    e = tuple(int(i == shift_var) for i in range(m))
    out = [dp(first, names)]
    for extra in steps:
        nxt = out[-1].shift(e)
        if extra:
            nxt = nxt + dp(extra, names)
        out.append(nxt)
    return out


def _family_1d(names, tau_lists: Sequence[List[Poly]], z: str) -> AdmissibleFamily:
    t0 = len(tau_lists[0])
    entries = {}
    for j, seq in enumerate(tau_lists, start=1):
        for k, h in enumerate(seq, start=1):
            entries[((k,), j)] = h
    return AdmissibleFamily(1, len(tau_lists), t0, len(names), [rp(z, names)], entries, tuple(names))


# cone over {Y^3, Z^3}
def ex53_family() -> AdmissibleFamily:
    return _family_1d(XYZ, [_recursive(XYZ, "Y^3", [""] * 4), _recursive(XYZ, "Z^3", [""] * 4)], "x")


EX53_IDEAL = ("y^4", "yz", "z^4")


def ex55_family() -> AdmissibleFamily:
    h1 = _recursive(XYZ, "Y^3-Z^3", ["YZ^3", "-Y^2Z^3", "Y^3Z^3-4Z^6", "Y^7-Y^4Z^3+4YZ^6"])
    h2 = _recursive(XYZ, "Y^2Z", [""] * 4)
    return _family_1d(XYZ, [h1, h2], "x")


EX55_I = ("yz+xz", "y^3+z^3-xy^2+x^2y-x^3")
EX55_J = ("z^2", "y^3")
# as printed; the last term breaks homogeneity
EX55_INTERSECTION_PRINTED = ("xz^2+yz^2", "4y^3z+z^4", "x^3y^3-x^2y^4+xy^5-y^6-y^2z^3")
# homogeneous generators of I cap J, equal to ann(I^perp + J^perp)
EX55_INTERSECTION = ("xz^2+yz^2", "4y^3z+z^4", "x^3y^3-x^2y^4+xy^5-y^6-y^3z^3")
# socle degrees after a general linear reduction, read off the last shifts R(-6)+R(-7)
EX55_DUAL_DEGREES = (4, 5)


def ex54_family() -> AdmissibleFamily:
    h1 = _recursive(XYZW, "YW", ["", "Z^2W", "Y^2ZW+W^3"])
    h2 = _recursive(XYZW, "ZW", ["Y^2W", "", "YZ^2W"])
    return _family_1d(XYZW, [h1, h2], "x")


EX54_ANN = ("x^4", "y^2-xz", "x^3-yz", "x^2y-z^2", "w^2-x^3y")
EX54_IDEAL = ("y^2-xz", "x^3-yz", "x^2y-z^2", "w^2-x^3y")


def ex56_family() -> AdmissibleFamily:
    h1 = _recursive(XYZW, "Y", ["", "", "YW+Z^2", "Y^2Z"])
    h2 = _recursive(XYZW, "Z", ["Y^2", "", "ZW", "YZ^2+Y^2W"])
    return _family_1d(XYZW, [h1, h2], "x")


EX56_PRESENTATION = ("x^3-w", "x^4-yz", "xz-y^2", "x^3y-z^2")
EX56_IDEAL = ("x^3-w", "xz-y^2", "xw-yz", "z^2-yw")

# semigroup examples: generators and the expected presentation
EX211_SEMIGROUP = (6, 8, 10, 13)
EX211_IDEAL = ("y^2-xz", "yz-x^3", "z^2-x^2y", "w^2-x^3y")
EX25_SEMIGROUP = (6, 7, 11, 15)
EX25_HF_FIRST = [1, 3, 2]
EX25_HF_SECOND = [1, 3, 1, 1]

# Stanley-Reisner example
EX57_MATRIX = ((1, 0, 2, 0, 3), (0, 1, 0, 2, 0))
EX57_FACETS = ((1, 2), (2, 3), (3, 4), (4, 5), (1, 4), (2, 5))
EX57_SR = ("x1x3", "x2x4", "x1x5", "x3x5")
# y1 = x2 + x4, y2 = x1 + x3 + x5, y3..y5 = x3..x5
EX57_CHANGE = (
    (0, 1, 0, 1, 0),
    (1, 0, 1, 0, 1),
    (0, 0, 1, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 0, 0, 0, 1),
)
EX57_PHI_IDEAL = ("(y2-y3-y5)y3", "(y1-y4)y4", "(y2-y3-y5)y5", "y3y5")
EX57_PHI_IDEAL_EXPANDED = ("y2y3-y3^2-y3y5", "y1y4-y4^2", "y2y5-y3y5-y5^2", "y3y5")
EX57_IDEAL = ("y3y5", "y2y5-y5^2", "y1y4-y4^2", "y2y3-y3^2")


def ex57_listed() -> Dict[tuple, List[Poly]]:
    """The generators written out explicitly: H_(1,1), H_(1,2), H_(2,2), H_(4,4)."""
    n = Y5
    h11 = [dp("Y4Y5", n), dp("Y3Y4", n)]
    h12 = [h11[0].shift((0, 1, 0, 0, 0)) + dp("Y4Y5^2", n), h11[1].shift((0, 1, 0, 0, 0)) + dp("Y3^2Y4", n)]
    h22 = [
        h12[0].shift((1, 0, 0, 0, 0)) + dp("Y2Y4^2Y5+Y4^2Y5^2", n),
        h12[1].shift((1, 0, 0, 0, 0)) + dp("Y2Y3Y4^2+Y3^2Y4^2", n),
    ]
    h44 = [
        h22[0].shift((2, 2, 0, 0, 0)) + dp(
            "Y1Y2^3Y4^3Y5+Y2^3Y4^4Y5+Y1Y2^2Y4^3Y5^2+Y2^2Y4^4Y5^2+Y1^3Y2Y4Y5^3"
            "+Y1^2Y2Y4^2Y5^3+Y1Y2Y4^3Y5^3+Y2Y4^4Y5^3+Y1^3Y4Y5^4+Y1^2Y4^2Y5^4+Y1Y4^3Y5^4+Y4^4Y5^4", n),
        h22[1].shift((2, 2, 0, 0, 0)) + dp(
            "Y1^3Y2Y3^3Y4+Y1^3Y3^4Y4+Y1^2Y2Y3^3Y4^2+Y1^2Y3^4Y4^2+Y1Y2^3Y3Y4^3"
            "+Y1Y2^2Y3^2Y4^3+Y1Y2Y3^3Y4^3+Y1Y3^4Y4^3+Y2^3Y3Y4^4+Y2^2Y3^2Y4^4+Y2Y3^3Y4^4+Y3^4Y4^4", n),
    ]
    return {(1, 1): h11, (1, 2): h12, (2, 2): h22, (4, 4): h44}


def ideal(gens: Sequence[str], names: Sequence[str]) -> Ideal:
    return Ideal.parse(list(gens), names)


def expand_products(texts: Sequence[str], names: Sequence[str]) -> Ideal:
    """Parse generators of the form (a)(b)... or a(b) into an ideal."""
    import re

    gens = []
    for t in texts:
        parts = [p for p in re.split(r"[()]", t) if p]
        g = Poly.constant(len(names), 1)
        for p in parts:
            g = g * rp(p, names)
        gens.append(g)
    return Ideal(len(names), tuple(gens), tuple(names))
