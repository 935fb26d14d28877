import pytest
from hypothesis import example, given, settings

from macdual import fixtures as fx
from macdual.construct import NumericalSemigroup
from macdual.dpmodule import submodule_closure
from macdual.duality import inverse_system
from macdual.quotient import (
    NotArtinian,
    artinian_report,
    is_level,
    level_power_check,
    quotient_by_powers,
    random_linear_forms,
    socdeg_power_check,
)

import oracles
from strategies import artinian_ideals, to_sympy

import random


def rp(t, names):
    return fx.rp(t, names)


def socle_of(I):
    polys, xs = to_sympy(I)
    return oracles.socle_data(polys, xs)


def test_report_of_maximal_ideal():
    r = artinian_report(fx.ideal(["x1", "x2"], ("x1", "x2")))
    assert (r.hf, r.socdeg, r.type, r.level) == ([1], 0, 1, True)


def test_report_cone_reduction():
    r = artinian_report(fx.ideal(list(fx.EX53_IDEAL) + ["x"], fx.XYZ))
    assert (r.socdeg, r.type, r.level) == (3, 2, True)


def test_not_artinian():
    with pytest.raises(NotArtinian):
        artinian_report(fx.ideal(fx.EX53_IDEAL, fx.XYZ))


def test_explicit_reductions_of_semigroup_ring():
    P = NumericalSemigroup(fx.EX25_SEMIGROUP).presentation()
    x, y = rp("x", fx.XYZW), rp("y", fx.XYZW)
    first = is_level(P, 1, reduction=[x])
    second = is_level(P, 1, reduction=[x + y])
    assert first.artinian.hf == [1, 3, 2] and first.level
    assert second.artinian.hf == [1, 3, 1, 1] and not second.level


def test_general_reduction_of_semigroup_ring_is_stable():
    P = NumericalSemigroup(fx.EX25_SEMIGROUP).presentation()
    for seed in (0, 1, 2):
        r = is_level(P, 1, seed=seed, trials=3)
        assert r.stable and not r.level
        assert r.artinian.hf == [1, 3, 1, 1]


def test_quotient_by_first_powers():
    I = fx.ideal(fx.EX53_IDEAL, fx.XYZ)
    assert quotient_by_powers(I, [rp("x", fx.XYZ)], (1,)) == I.with_generators([rp("x", fx.XYZ)])


def test_quotient_by_powers_local():
    F = fx.ex56_family()
    I = fx.ideal(fx.EX56_IDEAL, fx.XYZW)
    Q = quotient_by_powers(I, F.z, (5,))
    W = inverse_system(Q, 12).module()
    assert W == F.W((5,))


def test_quotient_by_powers_graded_two_dim():
    from macdual.examples import ex57_family

    F = ex57_family()
    I = fx.ideal(fx.EX57_IDEAL, fx.Y5)
    Q = quotient_by_powers(I, F.z, (4, 4))
    assert inverse_system(Q, 8).module() == F.W((4, 4))


def test_quotient_by_powers_rejects_nonlinear():
    with pytest.raises(ValueError):
        quotient_by_powers(fx.ideal(fx.EX53_IDEAL, fx.XYZ), [rp("x^2", fx.XYZ)], (1,))


def test_cone_ideal_is_level():
    r = is_level(fx.ideal(fx.EX53_IDEAL, fx.XYZ), 1, seed=3)
    assert r.level and r.type == 2 and r.s == 3 and r.d == 1
    assert r.e == 7 == sum(r.artinian.hf)


def test_semigroup_ring_is_level():
    P = NumericalSemigroup(fx.EX211_SEMIGROUP).presentation()
    r = is_level(P, 1, seed=5)
    assert r.level and r.type == 2


def test_intersection_is_not_level():
    I = fx.ideal(fx.EX55_INTERSECTION, fx.XYZ)
    r = is_level(I, 1, seed=0, trials=3)
    assert not r.level and r.stable
    assert sorted(r.artinian.dual_gen_degrees) == list(fx.EX55_DUAL_DEGREES)


def test_intersection_degrees_match_socle_oracle():
    import sympy as sp

    x, y, z = sp.symbols("x y z")
    I = [y * z + x * z, y**3 + z**3 - x * y**2 + x**2 * y - x**3]
    J = [z**2, y**3]
    K = oracles.intersect_ideals(I, J, [x, y, z])
    stated = to_sympy(fx.ideal(fx.EX55_INTERSECTION, fx.XYZ))[0]
    assert oracles.same_ideal(K, stated, [x, y, z])
    hf, socle = oracles.socle_data(stated + [x + 2 * y + 3 * z], [x, y, z])
    assert hf == [1, 2, 3, 3, 2, 1]
    assert socle == list(fx.EX55_DUAL_DEGREES)


def test_printed_intersection_is_not_homogeneous():
    printed = fx.ideal(fx.EX55_INTERSECTION_PRINTED, fx.XYZ)
    assert not printed.graded
    r = is_level(printed, 1, seed=0)
    assert not r.level


def test_socle_degree_of_powers():
    I = fx.ideal(fx.EX53_IDEAL, fx.XYZ)
    (v,) = socdeg_power_check(I, [rp("x", fx.XYZ)], 1, 3, [(2,)])
    assert v.socdeg == 4 and v.ok
    assert socle_of(quotient_by_powers(I, [rp("x", fx.XYZ)], (2,)))[1][-1] == 4
    I7 = fx.ideal(fx.EX57_IDEAL, fx.Y5)
    z7 = [rp("y1", fx.Y5), rp("y2", fx.Y5)]
    (v,) = socdeg_power_check(I7, z7, 2, 2, [(2, 2)])
    assert v.socdeg == 4 and v.ok
    assert socle_of(quotient_by_powers(I7, z7, (2, 2)))[1][-1] == 4


def test_levelness_of_powers():
    I = fx.ideal(fx.EX53_IDEAL, fx.XYZ)
    (v,) = level_power_check(I, [rp("x", fx.XYZ)], 1, [(3,)])
    assert v.level and v.type == 2
    assert socle_of(quotient_by_powers(I, [rp("x", fx.XYZ)], (3,)))[1] == [5, 5]
    I7 = fx.ideal(fx.EX57_IDEAL, fx.Y5)
    z7 = [rp("y1", fx.Y5), rp("y2", fx.Y5)]
    (v,) = level_power_check(I7, z7, 2, [(2, 1)])
    assert v.level and v.type == 2
    assert socle_of(quotient_by_powers(I7, z7, (2, 1)))[1] == [3, 3]


@pytest.mark.parametrize("which", ["ex5.3", "ex5.7"])
def test_socle_formula_and_type_for_small_powers(which):
    if which == "ex5.3":
        I, z, d, s = fx.ideal(fx.EX53_IDEAL, fx.XYZ), [rp("x", fx.XYZ)], 1, 3
    else:
        I, z, d, s = fx.ideal(fx.EX57_IDEAL, fx.Y5), [rp("y1", fx.Y5), rp("y2", fx.Y5)], 2, 2
    ns = [n for n in _indices(d, s + 3)]
    assert all(v.ok for v in socdeg_power_check(I, z, d, s, ns))
    assert all(v.ok for v in level_power_check(I, z, d, ns, tau=2))


def _indices(d, total):
    if d == 1:
        return [(k,) for k in range(1, total + 1)]
    return [(a, b) for a in range(1, total) for b in range(1, total) if a + b <= total]


def test_random_forms_are_reproducible():
    a = random_linear_forms(3, 2, random.Random(11))
    b = random_linear_forms(3, 2, random.Random(11))
    assert a == b


def test_seed_fallback_from_environment(monkeypatch):
    I = fx.ideal(fx.EX53_IDEAL, fx.XYZ)
    monkeypatch.setenv("MACDUAL_SEED", "42")
    r1 = is_level(I, 1)
    r2 = is_level(I, 1, seed=42)
    assert r1.seed == r2.seed == 42
    assert r1.reduction == r2.reduction


# --- properties ----------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(artinian_ideals())
@example(fx.ideal(["x^2", "xy", "y^3"], ("x", "y")))
@example(fx.ideal(["x^2", "y^2", "z^2", "xy", "xz"], fx.XYZ))
@example(fx.ideal(["x^3", "y^3", "x^2y^2", "xz", "yz", "z^2"], fx.XYZ))
@example(fx.ideal(["x^2", "y^2", "z^2"], fx.XYZ))
def test_level_biconditional(I):
    """Dual side (tau generators of degree s, independent top forms) vs socle of R/I."""
    r = artinian_report(I)
    hf, socle = socle_of(I)
    assert r.hf == hf
    assert r.socdeg == max(socle)
    assert r.type == len(socle)
    assert r.level == (set(socle) == {r.socdeg})
    W = inverse_system(I, r.socdeg).module()
    gens = W.min_generator_polys()
    assert sorted(g.degree() for g in gens) == socle


@settings(max_examples=100, deadline=None)
@given(artinian_ideals(graded=False))
def test_local_report_is_consistent(I):
    r = artinian_report(I)
    assert sum(r.hf) == r.dim_K
    assert r.type == len(r.dual_gen_degrees)
    assert max(r.dual_gen_degrees) == r.socdeg
    if r.level:
        assert set(r.dual_gen_degrees) == {r.socdeg}
