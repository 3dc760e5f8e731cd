from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from builders import random_knot_complex, random_lspace_poly
from oracles import dense_profile, grading_window, module_profile
from knotfloer.complexes import BigradedComplex, dualize, tensor_product, unknot_complex
from knotfloer.corpus import left_trefoil
from knotfloer.errors import DomainError
from knotfloer.homology import homology_dvr
from knotfloer.knots import (FIGURE_EIGHT, TREFOIL, Alternating, LSpaceKnot, build, genus,
                             staircase_from_alexander, torus_knot_alexander)
from knotfloer.modules import RELATIVE, DvrModule, plus_and_hat_views
from knotfloer.surgery import (SurgeryError, b_summand, build_cone, class_rep, default_window,
                               flip_map, is_lspace_result, large_surgery, large_surgery_all,
                               spinc_representatives, surgery_homology)


def rel(free=(0,), tors=()) -> DvrModule:
    return DvrModule(free, tors, RELATIVE)


def right_trefoil() -> BigradedComplex:
    return staircase_from_alexander(TREFOIL)


def t34() -> BigradedComplex:
    return staircase_from_alexander(torus_knot_alexander(3, 4))


def exponents(modules) -> Counter:
    return Counter(e for m in modules for _, e in m.torsion)


# ---------------------------------------------------------------------------
# spin^c bookkeeping


@pytest.mark.parametrize("n,reps", [(1, [0]), (2, [0, 1]), (3, [-1, 0, 1]), (4, [-1, 0, 1, 2]),
                                    (5, [-2, -1, 0, 1, 2]), (-1, [0]), (-3, [-1, 0, 1])])
def test_spinc_representatives(n, reps):
    assert spinc_representatives(n) == reps


def test_class_rep_reduces_mod_n():
    assert [class_rep(s, 4) for s in range(-4, 5)] == [0, 1, 2, -1, 0, 1, 2, -1, 0]
    assert class_rep(7, -3) == 1


def test_default_window():
    assert default_window(1, 1) == 0
    assert default_window(1, 4) == 2
    assert default_window(3, 5) == 2
    assert default_window(0, -2) == 0
    assert default_window(2, -1) == 1


# ---------------------------------------------------------------------------
# B_s and large surgery


def test_b_summands_of_left_trefoil():
    lt = left_trefoil()
    for s in range(-3, 4):
        assert homology_dvr(b_summand(lt, s), mode=RELATIVE).module == rel()


def test_b_summand_rejects_non_knot_complex():
    two = BigradedComplex.build([("x", (0, 0)), ("y", (0, 0))], [])
    with pytest.raises(DomainError):
        b_summand(two, 0)


def test_large_surgery_on_left_trefoil():
    lt = left_trefoil()
    assert large_surgery(lt, 1, 0) == rel((0,), ((1, 1),))
    assert large_surgery_all(lt, 3) == {-1: rel(), 0: rel((0,), ((1, 1),)), 1: rel()}


def test_large_surgery_thresholds():
    with pytest.raises(SurgeryError):
        large_surgery(t34(), 4, 0)        # genus 3 needs n >= 5
    with pytest.raises(SurgeryError):
        large_surgery(left_trefoil(), -1, 0)
    with pytest.raises(SurgeryError):
        large_surgery(left_trefoil(), 3, 2)


def test_large_surgery_on_lspace_knots_is_torsion_free():
    c = t34()
    assert all(m == rel() for m in large_surgery_all(c, 5).values())


# ---------------------------------------------------------------------------
# the flip map


def test_flip_map_of_unknot_is_identity():
    f = flip_map(unknot_complex(), 0)
    assert f.matrix == {0: {0: 1}}
    assert f.is_chain_map() and f.is_quasi_isomorphism()


@pytest.mark.parametrize("s", range(-4, 5))
def test_flip_map_of_t34(s):
    f = flip_map(t34(), s)
    assert f.is_chain_map() and f.is_quasi_isomorphism()


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_flip_map_is_chain_quasi_isomorphism(rng):
    c = random_knot_complex(rng, 20)
    s = rng.randint(-genus(c) - 1, genus(c) + 1)
    f = flip_map(c, s, "random", rng)
    assert f.is_chain_map() and f.is_quasi_isomorphism()


# ---------------------------------------------------------------------------
# the truncated cone


def test_cone_columns_for_left_trefoil():
    lt = left_trefoil()
    assert build_cone(lt, 1).columns(0) == [("A", 0)]
    assert build_cone(lt, -1).columns(0) == [("A", 0), ("B", -1), ("B", 0)]
    assert build_cone(lt, 1, slack=1).columns(0) == [("A", -1), ("A", 0), ("A", 1), ("B", 0),
                                                     ("B", 1)]


def test_cone_rejects_zero_and_negative_slack():
    with pytest.raises(SurgeryError):
        build_cone(left_trefoil(), 0)
    with pytest.raises(SurgeryError):
        build_cone(left_trefoil(), 1, slack=-1)


def test_cone_surgeries_on_left_trefoil():
    lt = left_trefoil()
    res1 = surgery_homology(lt, 1)
    assert res1.modules == {0: rel((0,), ((1, 1),))}
    assert not is_lspace_result(res1)
    assert surgery_homology(lt, 3).modules == {-1: rel(), 0: rel((0,), ((1, 1),)), 1: rel()}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, -1, -2, -5])
def test_unknot_surgeries_are_lens_spaces(n):
    res = surgery_homology(unknot_complex(), n)
    assert sorted(res.modules) == spinc_representatives(n)
    assert all(m == rel() for m in res.modules.values())


def test_poincare_sphere_is_an_lspace():
    assert surgery_homology(right_trefoil(), 1).modules == {0: rel()}
    assert surgery_homology(left_trefoil(), -1).modules == {0: rel()}


def test_minus_one_surgery_on_right_trefoil_has_one_reduced_class():
    m = surgery_homology(right_trefoil(), -1).modules[0]
    assert m.rank == 1 and [e for _, e in m.torsion] == [1]


def test_t34_five_surgery_is_an_lspace():
    assert is_lspace_result(surgery_homology(t34(), 5))


def test_granny_seven_surgery_both_methods():
    c = build(LSpaceKnot(TREFOIL))
    granny = tensor_product(c, c)
    cone = surgery_homology(granny, 7).modules
    assert cone == large_surgery_all(granny, 7)
    assert len(cone) == 7


def test_figure_eight_surgeries_are_not_lspaces():
    c = build(Alternating(FIGURE_EIGHT, 0))
    for n in (1, 2, -1, -3):
        assert not is_lspace_result(surgery_homology(c, n))


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_cone_agrees_with_large_surgery(rng):
    c = random_knot_complex(rng, 12)
    g = genus(c)
    n = max(1, 2 * g - 1) + rng.randint(0, 2)
    assert surgery_homology(c, n).modules == large_surgery_all(c, n)


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_window_slack_does_not_change_result(rng):
    c = random_knot_complex(rng, 12)
    n = rng.choice([-3, -2, -1, 1, 2, 3])
    assert surgery_homology(c, n, 0).modules == surgery_homology(c, n, 2).modules


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_cone_is_independent_of_flip_map_choice(rng):
    c = random_knot_complex(rng, 12)
    n = rng.choice([-2, -1, 1, 2])
    other = surgery_homology(c, n, pivot="random", rng=random.Random(rng.random()))
    assert other.modules == surgery_homology(c, n).modules


@settings(max_examples=15, deadline=None)
@given(st.randoms(use_true_random=False))
def test_cone_homology_matches_dense_oracle(rng):
    c = random_knot_complex(rng, 10)
    n = rng.choice([-2, -1, 1, 2, 3])
    cone = build_cone(c, n)
    for r, comp in cone.classes.items():
        m = homology_dvr(comp).module
        assert module_profile(m, grading_window(comp)) == dense_profile(comp)


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_orientation_reversal_keeps_hat_and_reduced_ranks(rng):
    c = random_knot_complex(rng, 12)
    n = rng.choice([1, 2, 3])
    mods = surgery_homology(c, n).modules.values()
    mirrored = surgery_homology(dualize(c), -n).modules.values()
    assert exponents(mods) == exponents(mirrored)
    hat = lambda ms: sorted(plus_and_hat_views(m).hat_dimension for m in ms)  # noqa: E731
    assert hat(mods) == hat(mirrored)


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_every_class_has_one_tower_and_odd_hat_dimension(rng):
    c = random_knot_complex(rng, 12)
    n = rng.choice([-4, -3, -1, 1, 2, 5])
    res = surgery_homology(c, n)
    assert len(res.classes) == abs(n)
    for m in res.modules.values():
        assert m.rank == 1
        assert plus_and_hat_views(m).hat_dimension % 2 == 1


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_large_surgery_on_lspace_knots(rng):
    c = staircase_from_alexander(random_lspace_poly(rng, 3))
    n = max(1, 2 * genus(c) - 1) + rng.randint(0, 2)
    assert is_lspace_result(surgery_homology(c, n))
