"""Acceptance gate: one PASS/FAIL line per criterion, printed in the terminal summary."""
from contextlib import contextmanager

import pytest
import sympy as sp

from macdual import fixtures as fx
from macdual.admissible import build_Vni, check_family, check_Gd, check_weak
from macdual.construct import (
    NumericalSemigroup,
    apply_change,
    cone_family,
    effective_construct,
    local_construct_heuristic,
    matroid_from_matrix,
    stanley_reisner,
)
from macdual.coords import LinearChange
from macdual.duality import ideal_equal
from macdual.examples import ex57_family
from macdual.quotient import is_level

import oracles
import test_admissible
import test_construct
import test_dpmodule
import test_duality
import test_quotient
from strategies import to_sympy

RESULTS = {}


@contextmanager
def criterion(key, title):
    try:
        yield
    except BaseException:
        RESULTS[key] = ("FAIL", title)
        raise
    RESULTS[key] = ("PASS", title)


def test_criterion_1_cone_over_cubics():
    with criterion("1", "cone over Y^3, Z^3: admissible, I=(y^4,yz,z^4), level d=1 tau=2 s=3"):
        F = cone_family([fx.dp("Y^3", fx.XYZ), fx.dp("Z^3", fx.XYZ)], 1, 5, fx.XYZ)
        assert check_family(F).passed
        res = effective_construct(F, seed=0)
        same = ideal_equal(res.ideal, fx.ideal(fx.EX53_IDEAL, fx.XYZ))
        assert same and same.certainty == "exact"
        lev = res.level
        assert lev.level and (lev.d, lev.type, lev.s) == (1, 2, 3)
        assert res.ideal.format(sort=True) == "(y^4,yz,z^4)"


def _strict_gap_checks():
    F = fx.ex55_family()
    rep = check_family(F)
    assert not rep.cond3.passed
    w = rep.cond3.witness
    assert (w["n"], w["i"], w["element"]) == ([2], 1, fx.dp("Z^3", fx.XYZ))
    # replay: in W_2 and in the slice space, not in W_1
    assert F.W((2,)).contains(w["element"])
    assert build_Vni((2,), 1, rep.s_map[(2,)], 3).contains(w["element"].terms)
    assert not F.W((1,)).contains(w["element"])
    assert check_weak(F).passed
    assert all(check_Gd(F.restrict([j])).passed for j in (1, 2))


def _oracle_dual_degrees():
    x, y, z = sp.symbols("x y z")
    I = [y * z + x * z, y**3 + z**3 - x * y**2 + x**2 * y - x**3]
    J = [z**2, y**3]
    K = oracles.intersect_ideals(I, J, [x, y, z])
    return oracles.socle_data(K + [x + 2 * y + 3 * z], [x, y, z])[1]


def test_criterion_2_strict_gap_with_corrected_intersection():
    with criterion("2a", "strict gap: cond3 fails at Z^3 (n=2,i=1), weak and G_1 pass; "
                         "I cap J not level, dual degrees {4,5} (oracle)"):
        _strict_gap_checks()
        r = is_level(fx.ideal(fx.EX55_INTERSECTION, fx.XYZ), 1, seed=0, trials=3)
        assert not r.level and r.stable
        degrees = sorted(r.artinian.dual_gen_degrees)
        assert degrees == _oracle_dual_degrees() == [4, 5]


@pytest.mark.xfail(strict=True, reason="stated generator y^2z^3 is inhomogeneous and the stated degrees {3,4} "
                                       "disagree with the independent socle oracle, which gives {4,5}")
def test_criterion_2_as_stated():
    with criterion("2", "strict gap as stated: printed I cap J not level with dual degrees {3,4}"):
        _strict_gap_checks()
        printed = fx.ideal(fx.EX55_INTERSECTION_PRINTED, fx.XYZ)
        r = is_level(printed, 1, seed=0, trials=3)
        assert not r.level
        assert set(_oracle_dual_degrees()) == {3, 4}
        assert set(r.artinian.dual_gen_degrees) == {3, 4}


def test_criterion_3_matroid_pipeline():
    with criterion("3", "matroid: six facets, I_Delta, L_2^2-admissible up to (4,4), four-generator ideal"):
        C = matroid_from_matrix(fx.EX57_MATRIX)
        assert set(C.facets) == set(fx.EX57_FACETS) and len(C.facets) == 6
        SR = stanley_reisner(C)
        assert SR.format_generators() == list(fx.EX57_SR)
        I = apply_change(LinearChange(fx.EX57_CHANGE), SR).renamed(fx.Y5)
        assert ideal_equal(I, fx.expand_products(fx.EX57_PHI_IDEAL, fx.Y5))
        F = ex57_family()
        assert F.has((4, 4)) and check_family(F).passed
        res = effective_construct(F, seed=0, check=False)
        same = ideal_equal(res.ideal, fx.ideal(fx.EX57_IDEAL, fx.Y5))
        assert same and same.certainty == "exact" and len(res.ideal.generators) == 4


def test_criterion_4_local_pipeline():
    with criterion("4", "local heuristic reproduces both ideals modulo M^(2(s+2))"):
        for F, n, bound, target in ((fx.ex54_family(), (4,), None, fx.EX54_IDEAL),
                                    (fx.ex56_family(), (5,), 4, fx.EX56_IDEAL)):
            res = local_construct_heuristic(F, n, degree_bound=bound)
            N = 2 * (F.W(n).top_degree + 2)
            assert res.certified and res.certified.certainty in ("exact", f"mod-M^{N}")
            same = ideal_equal(res.ideal, fx.ideal(target, fx.XYZW), trunc_N=N - 1)
            assert same and same.certainty in ("exact", f"mod-M^{N}")


def test_criterion_5_reduction_counterexample():
    with criterion("5", "semigroup ring: HF (1,3,2) level vs (1,3,1,1) not level; general verdict stable"):
        P = NumericalSemigroup(fx.EX25_SEMIGROUP).presentation()
        x, y = fx.rp("x", fx.XYZW), fx.rp("y", fx.XYZW)
        first = is_level(P, 1, reduction=[x])
        second = is_level(P, 1, reduction=[x + y])
        assert first.artinian.hf == [1, 3, 2] and first.level
        assert second.artinian.hf == [1, 3, 1, 1] and not second.level
        verdicts = set()
        for seed in range(3):
            r = is_level(P, 1, seed=seed, trials=3)
            assert r.stable
            verdicts.add((r.level, tuple(r.artinian.hf)))
        assert len(verdicts) == 1


PROPERTY_SUITES = [
    test_dpmodule.test_action_is_associative,
    test_dpmodule.test_action_is_bilinear,
    test_duality.test_ann_of_intersection_is_sum,
    test_quotient.test_level_biconditional,
    test_duality.test_round_trip_ann_of_perp,
    test_admissible.test_single_generator_equivalence,
    test_admissible.test_slice_condition_implies_weak,
    test_admissible.test_cones_are_admissible,
    test_construct.test_change_preserves_pairing,
]


def test_criterion_6_property_suites():
    with criterion("6", "property suites (>= 100 cases each) plus socle-degree and type formulas on fixtures"):
        for fn in PROPERTY_SUITES:
            assert fn._hypothesis_internal_use_settings.max_examples >= 100
            fn()
        for which in ("ex5.3", "ex5.7"):
            test_quotient.test_socle_formula_and_type_for_small_powers(which)
        assert test_admissible._slice_equals_previous(fx.ex53_family())


def test_criterion_7_semigroup_presentations():
    with criterion("7", "semigroup presentations: match, weight-homogeneous, brute-force validated"):
        P = NumericalSemigroup(fx.EX211_SEMIGROUP).presentation()
        assert ideal_equal(P, fx.ideal(fx.EX211_IDEAL, fx.XYZW))
        for gens, strict in (((6, 8, 10, 13), True), ((6, 7, 11, 15), True), ((6, 10, 14, 18), False)):
            S = NumericalSemigroup(gens, strict=strict)
            Q = S.presentation()
            for g in Q.generators:
                assert len({S.weighted_degree(a) for a in g.terms}) == 1
            degs = sorted(S.weighted_degree(next(iter(g.terms))) for g in Q.generators)
            assert degs == oracles.betti_degrees(gens, 2 * max(degs))
            polys, xs = to_sympy(Q)
            assert oracles.same_ideal(polys, oracles.toric_ideal(gens, xs), xs)
