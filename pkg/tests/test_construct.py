import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from macdual import fixtures as fx
from macdual.admissible import check_family
from macdual.construct import (
    NumericalSemigroup,
    SimplicialComplexFacets,
    apply_change,
    cone_family,
    derive_below,
    effective_construct,
    local_construct_heuristic,
    matroid_from_matrix,
    semigroup_tools,
    stanley_reisner,
)
from macdual.coords import LinearChange
from macdual.duality import Ideal, annihilator, ideal_equal, pairing
from macdual.dpmodule import submodule_closure
from macdual.exactalg import Poly
from macdual.examples import ex57_family

import oracles
from strategies import to_sympy

XYZW = fx.XYZW


def test_cone_reproduces_listed_family():
    F = cone_family([fx.dp("Y^3", fx.XYZ), fx.dp("Z^3", fx.XYZ)], 1, 5, fx.XYZ)
    assert F.entries == fx.ex53_family().entries


def test_cone_over_constant():
    F = cone_family([fx.dp("1", fx.XYZ)], 1, 4, fx.XYZ)
    assert [F.H((k,))[0] for k in range(1, 5)] == [fx.dp(t, fx.XYZ) for t in ("1", "X", "X^2", "X^3")]
    assert ideal_equal(annihilator(F.W((4,))), fx.ideal(["y", "z", "x^4"], fx.XYZ))
    assert ideal_equal(effective_construct(F, seed=0).ideal, fx.ideal(["y", "z"], fx.XYZ))


def test_two_dimensional_cone_is_admissible():
    F = cone_family([fx.dp("Z^2", XYZW), fx.dp("W^2", XYZW)], 2, 6, XYZW)
    assert check_family(F).passed


def test_cone_rejects_head_variables():
    with pytest.raises(ValueError):
        cone_family([fx.dp("XY", fx.XYZ)], 1, 3, fx.XYZ)


def test_effective_on_cone_over_cubics():
    res = effective_construct(fx.ex53_family(), seed=0, certify=True)
    assert ideal_equal(res.ideal, fx.ideal(fx.EX53_IDEAL, fx.XYZ))
    assert res.verdict == "level" and res.level.type == 2 and res.level.s == 3
    assert res.certified


def test_effective_on_matroid_family():
    res = effective_construct(ex57_family(), seed=1)
    assert ideal_equal(res.ideal, fx.ideal(fx.EX57_IDEAL, fx.Y5)).certainty == "exact"
    assert ideal_equal(res.ideal, fx.ideal(fx.EX57_IDEAL, fx.Y5))
    assert res.verdict == "level" and res.level.d == 2 and res.level.type == 2


def test_effective_flags_non_extendable_family():
    res = effective_construct(fx.ex55_family(), check=False, seed=0)
    assert res.verdict == "family not extendable" and not res.extendable


def test_effective_equals_tail_annihilator_extended():
    F = cone_family([fx.dp("Y^3", fx.XYZ), fx.dp("Z^3", fx.XYZ)], 1, 5, fx.XYZ)
    tail = annihilator(submodule_closure([fx.dp("Y^3", ("y", "z")), fx.dp("Z^3", ("y", "z"))]))
    extended = Ideal(3, tuple(Poly(3, {(0,) + a: c for a, c in g.terms.items()}) for g in tail.generators), fx.XYZ)
    res = effective_construct(F, seed=0)
    assert ideal_equal(res.ideal, extended)


def test_local_heuristic_semigroup_family():
    res = local_construct_heuristic(fx.ex54_family(), (4,))
    assert ideal_equal(res.ideal, fx.ideal(fx.EX54_IDEAL, XYZW))
    assert res.dropped == [fx.rp("x^4", XYZW)]
    assert res.certified and res.label == "heuristic"


def test_local_heuristic_with_degree_bound():
    res = local_construct_heuristic(fx.ex56_family(), (5,), degree_bound=4)
    v = ideal_equal(res.ideal, fx.ideal(fx.EX56_IDEAL, XYZW))
    assert v and v.certainty.startswith("mod-M^")
    assert res.certified


def test_local_heuristic_on_cone():
    res = local_construct_heuristic(fx.ex53_family(), (3,))
    assert ideal_equal(res.ideal, fx.ideal(fx.EX53_IDEAL, fx.XYZ))
    assert res.dropped == [fx.rp("x^3", fx.XYZ)]


def test_apply_change_identity():
    I = fx.ideal(fx.EX53_IDEAL, fx.XYZ)
    assert apply_change(LinearChange.identity(3), I) == I


def test_apply_change_swap():
    swap = LinearChange([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    I = fx.ideal(["x^2", "xy^3", "z"], fx.XYZ)
    assert ideal_equal(apply_change(swap, I), fx.ideal(["y^2", "x^3y", "z"], fx.XYZ))


def test_change_on_stanley_reisner_ideal():
    I = apply_change(LinearChange(fx.EX57_CHANGE), fx.ideal(fx.EX57_SR, fx.X5)).renamed(fx.Y5)
    assert ideal_equal(I, fx.expand_products(fx.EX57_PHI_IDEAL, fx.Y5))
    assert ideal_equal(I, fx.ideal(fx.EX57_PHI_IDEAL_EXPANDED, fx.Y5))


def test_listed_generators_contract_down():
    listed = fx.ex57_listed()
    below = derive_below(listed[(4, 4)], (4, 4), [fx.rp("y1", fx.Y5), fx.rp("y2", fx.Y5)])
    for n in ((1, 1), (1, 2), (2, 2)):
        assert below[n] == listed[n]


def test_matroid_facets():
    C = matroid_from_matrix(fx.EX57_MATRIX)
    assert set(C.facets) == set(fx.EX57_FACETS)
    assert matroid_from_matrix([[1, 0], [0, 1]]).facets == ((1, 2),)


def test_generic_matroid_is_uniform():
    X = [[1, 0, 1, 1], [0, 1, 2, 3]]
    for cols in itertools.combinations(range(4), 2):
        assert sp.Matrix([[X[r][c] for c in cols] for r in range(2)]).det() != 0
    assert len(matroid_from_matrix(X).facets) == 6


def test_stanley_reisner_ideals():
    assert stanley_reisner(matroid_from_matrix(fx.EX57_MATRIX)).format_generators() == list(fx.EX57_SR)
    assert stanley_reisner(SimplicialComplexFacets(3, ((1, 2, 3),))).generators == ()
    two_edges = stanley_reisner(SimplicialComplexFacets(4, ((1, 2), (3, 4))))
    assert set(two_edges.format_generators()) == {"x1x3", "x1x4", "x2x3", "x2x4"}


def test_semigroup_two_three():
    S = NumericalSemigroup((2, 3))
    assert S.apery() == [0, 3] == oracles.apery_brute((2, 3), 2)
    assert S.frobenius() == 1
    assert ideal_equal(S.presentation(("x", "y")), fx.ideal(["y^2-x^3"], ("x", "y")))


def test_semigroup_matches_stated_presentation():
    P = NumericalSemigroup(fx.EX211_SEMIGROUP).presentation()
    assert ideal_equal(P, fx.ideal(fx.EX211_IDEAL, XYZW))


def test_semigroup_tools_bundle():
    out = semigroup_tools(fx.EX211_SEMIGROUP)
    assert out["frobenius"] == oracles.frobenius_brute(fx.EX211_SEMIGROUP) == 17
    assert out["apery"] == oracles.apery_brute(fx.EX211_SEMIGROUP, 6)


def test_semigroup_strictness():
    with pytest.raises(ValueError):
        NumericalSemigroup((6, 10, 14, 18))
    with pytest.raises(ValueError):
        NumericalSemigroup((3, 5, 6))
    assert NumericalSemigroup((6, 10, 14, 18), strict=False).gcd == 2


@pytest.mark.parametrize("gens,strict", [((6, 7, 11, 15), True), ((6, 10, 14, 18), False), ((6, 8, 10, 13), True)])
def test_presentation_against_brute_force(gens, strict):
    S = NumericalSemigroup(gens, strict=strict)
    P = S.presentation()
    names = P.var_names()
    # weight homogeneous binomials
    for g in P.generators:
        assert len(g.terms) == 2
        assert len({S.weighted_degree(a) for a in g.terms}) == 1
    # the degrees of a minimal presentation are the fibre-graph Betti degrees
    bound = 2 * max(S.weighted_degree(a) for g in P.generators for a in g.terms)
    assert sorted(S.weighted_degree(next(iter(g.terms))) for g in P.generators) == oracles.betti_degrees(gens, bound)
    # and they generate the whole toric ideal
    xs = sp.symbols(" ".join(names))
    polys, _ = to_sympy(P)
    assert oracles.same_ideal(polys, oracles.toric_ideal(gens, xs), list(xs))


def test_non_coprime_presentation_matches_both_forms():
    P = NumericalSemigroup((6, 10, 14, 18), strict=False).presentation()
    assert ideal_equal(P, fx.ideal(fx.EX56_PRESENTATION, XYZW))
    assert ideal_equal(P, fx.ideal(fx.EX56_IDEAL, XYZW))


# --- properties ----------------------------------------------------------------

def _random_change(draw, m):
    # L U with unit lower L and nonzero diagonal U is always invertible
    L = sp.Matrix(m, m, lambda i, j: 1 if i == j else (draw(st.integers(-2, 2)) if i > j else 0))
    U = sp.Matrix(m, m, lambda i, j: draw(st.sampled_from([1, -1, 2])) if i == j
                  else (draw(st.integers(-2, 2)) if i < j else 0))
    return LinearChange([[int(v) for v in row] for row in (L * U).tolist()])


@st.composite
def change_and_pair(draw):
    m = draw(st.integers(1, 3))
    phi = _random_change(draw, m)
    mono = st.tuples(*[st.integers(0, 3)] * m)
    f = Poly.zero(m)
    F = Poly.zero(m, True)
    for a, c in draw(st.lists(st.tuples(mono, st.integers(-3, 3)), max_size=4)):
        f = f + Poly.monomial(a, c)
    for a, c in draw(st.lists(st.tuples(mono, st.integers(-3, 3)), max_size=4)):
        F = F + Poly.monomial(a, c, True)
    return phi, f, F


@settings(max_examples=100, deadline=None)
@given(change_and_pair())
def test_change_preserves_pairing(data):
    phi, f, F = data
    assert pairing(f, F) == pairing(apply_change(phi, f), apply_change(phi, F))
    # and the R-side map is undone by the inverse
    assert apply_change(phi.inverse(), apply_change(phi, f)) == f


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda s: st.tuples(
    st.just(s),
    st.lists(st.integers(-3, 3), min_size=s + 1, max_size=s + 1).filter(any))))
def test_effective_on_random_cone_is_tail_annihilator(data):
    s, coeffs = data
    H = Poly(3, {(0, k, s - k): Fraction(c) for k, c in enumerate(coeffs) if c}, True)
    F = cone_family([H], 1, s + 2, fx.XYZ)
    assert check_family(F).passed
    res = effective_construct(F, seed=0, check=False)
    tail_H = Poly(2, {a[1:]: c for a, c in H.terms.items()}, True)
    tail = annihilator(submodule_closure([tail_H]))
    extended = Ideal(3, tuple(Poly(3, {(0,) + a: c for a, c in g.terms.items()}) for g in tail.generators), fx.XYZ)
    assert ideal_equal(res.ideal, extended)
    assert res.verdict == "level" and res.level.type == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(3, 12), min_size=2, max_size=4, unique=True))
def test_semigroup_relations_are_weight_homogeneous(gens):
    S = NumericalSemigroup(tuple(sorted(gens)), strict=False)
    red = tuple(g // S.gcd for g in S.generators)
    assert S.frobenius() == oracles.frobenius_brute(red)
    assert S.apery() == oracles.apery_brute(red, min(red))
    for g in S.presentation().generators:
        assert len({S.weighted_degree(a) for a in g.terms}) == 1
