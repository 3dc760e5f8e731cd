from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from builders import (random_knot_complex, random_uv_complex, random_w_complex, scramble_uv)
from oracles import dense_f2_homology, dense_profile, grading_window, module_profile
from knotfloer.complexes import (BigradedComplex, Bigrading, dualize, is_isomorphic, mono,
                                 poly_add, tensor_product, unknot_complex, validate_complex)
from knotfloer.corpus import left_trefoil
from knotfloer.homology import (TruncationError, bigraded_homology, homology_dvr,
                                homology_f2)
from knotfloer.knots import (FIGURE_EIGHT, TREFOIL, LaurentPoly, euler_characteristic,
                             hfk_hat, staircase_from_alexander, thin_from_alexander_signature,
                             torus_knot_alexander)
from knotfloer.modules import (ABSOLUTE, RELATIVE, DvrModule, GradedVectorSpace,
                               GradingModeError, d_invariant, plus_and_hat_views)
from knotfloer.reduction import (add_maps, compose, differential_map, gaussian_eliminate,
                                 identity_map, maps_equal, ring_for)
from knotfloer.specialize import alexander_summand, specialize
from knotfloer.wcomplex import WComplex

W = lambda k: 1 << k  # noqa: E731


def entries(c) -> dict:
    return {(c.labels[s], c.labels[t]): p for (t, s), p in c.differential.items()}


def as_tables(c) -> tuple[dict, dict]:
    """Gradings and differential keyed by label, independent of generator order."""
    return dict(zip(c.labels, c.gradings)), entries(c)


# ---------------------------------------------------------------------------
# validation


def test_validate_left_trefoil_passes():
    assert validate_complex(left_trefoil())


def test_validate_single_generator_passes():
    assert validate_complex(unknot_complex())


def test_validate_detects_regrading():
    c = left_trefoil()
    bad = BigradedComplex(c.labels, (c.gradings[0], Bigrading(1, 2), c.gradings[2]),
                          c.differential)
    report = validate_complex(bad)
    assert not report
    assert not report.homogeneous
    assert not report.parity


def test_validate_detects_nonzero_square():
    c = BigradedComplex.build([("x", (0, 0)), ("y", (-1, -1)), ("z", (-2, -2))],
                              [("x", "y", mono()), ("y", "z", mono())])
    report = validate_complex(c)
    assert not report.square_zero


# ---------------------------------------------------------------------------
# tensor and dual


def test_tensor_unit():
    c = left_trefoil()
    assert is_isomorphic(tensor_product(unknot_complex(), c), c)


def test_tensor_granny_dims():
    t = staircase_from_alexander(TREFOIL)
    c = tensor_product(t, t)
    assert len(c) == 9 and validate_complex(c)
    by_s = GradedVectorSpace(dense_f2_homology(specialize(c, "UV0"))).reindex(lambda g: g.alexander)
    assert by_s.dims == {2: 1, 1: 2, 0: 3, -1: 2, -2: 1}
    assert euler_characteristic(c) == TREFOIL * TREFOIL


def test_tensor_with_shifted_unknot_shifts_gradings():
    c = left_trefoil()
    shifted = unknot_complex().shift(2, 0)
    assert is_isomorphic(tensor_product(c, shifted), c.shift(2, 0))


def test_dual_of_left_trefoil():
    d = dualize(left_trefoil())
    assert entries(d) == {(("*", "b"), ("*", "a")): mono(1, 0), (("*", "b"), ("*", "c")): mono(0, 1)}
    assert d.gradings == (Bigrading(0, -2), Bigrading(-1, -1), Bigrading(-2, 0))
    assert is_isomorphic(d, staircase_from_alexander(TREFOIL))


def test_dual_unknot():
    assert is_isomorphic(dualize(unknot_complex()), unknot_complex())


def test_double_dual_figure_eight():
    f8 = thin_from_alexander_signature(FIGURE_EIGHT, 0)
    assert dualize(dualize(f8)) == f8


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_tensor_commutative_and_associative(rng):
    a, b, c = (random_knot_complex(rng, 6) for _ in range(3))
    swapped = tensor_product(b, a).relabel(lambda l: (l[1], l[0]))
    assert as_tables(tensor_product(a, b)) == as_tables(swapped)
    assert is_isomorphic(tensor_product(a, b), tensor_product(b, a))
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c)).relabel(lambda l: ((l[0], l[1][0]), l[1][1]))
    assert left == right


def permuted(c: BigradedComplex, rng: random.Random) -> BigradedComplex:
    perm = list(range(len(c)))
    rng.shuffle(perm)
    where = {old: new for new, old in enumerate(perm)}
    diff = {(where[t], where[s]): p for (t, s), p in c.differential.items()}
    return BigradedComplex(tuple(("g", i) for i in range(len(c))),
                           tuple(c.gradings[old] for old in perm), diff)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_isomorphism_search_on_permuted_complexes(rng):
    # many identical boxes make the search highly symmetric
    boxes = thin_from_alexander_signature(LaurentPoly({2: 1, 1: -4, 0: 7, -1: -4, -2: 1}), 0)
    c = boxes if rng.random() < 0.5 else random_knot_complex(rng, 40)
    p = permuted(c, rng)
    assert is_isomorphic(c, p)
    if c.differential:
        (t, s), _ = next(iter(sorted(p.differential.items())))
        broken = dict(p.differential)
        broken[(t, s)] = poly_add(broken[(t, s)], mono(1, 1))
        assert not is_isomorphic(c, BigradedComplex(p.labels, p.gradings, broken))


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_dual_negates_gradings_and_is_involution(rng):
    c = random_knot_complex(rng, 30)
    d = dualize(c)
    assert validate_complex(d)
    assert d.gradings == tuple(Bigrading(-g.gr_u, -g.gr_v) for g in c.gradings)
    assert dualize(d) == c


# ---------------------------------------------------------------------------
# specialization and Alexander summands


def test_specialize_uv0():
    c = specialize(left_trefoil(), "UV0")
    assert len(c) == 3 and not c.differential


def test_specialize_v0():
    c = specialize(left_trefoil(), "V0")
    assert entries(c) == {("a", "b"): W(1)}
    assert c.gradings == (0, 1, 2)


def test_specialize_v1_generator():
    red = gaussian_eliminate(specialize(left_trefoil(), "V1"))
    assert len(red.reduced) == 1
    assert red.inclusion[0] == {0: 1, 2: W(1)}  # a + U c


def test_specialize_rejects_unknown_mode():
    with pytest.raises(ValueError):
        specialize(left_trefoil(), "W0")


def test_alexander_summand_zero():
    a = alexander_summand(left_trefoil(), 0)
    assert entries(a) == {("a", "b"): W(1), ("c", "b"): W(1)}
    # V a, b, U c in gr_u gradings 0, 1, 0
    assert a.gradings == (0, 1, 0)


def test_alexander_summand_minus_one():
    a = alexander_summand(left_trefoil(), -1)
    assert entries(a) == {("a", "b"): W(0), ("c", "b"): W(1)}
    assert a.gradings == (0, -1, -2)


def test_alexander_summand_t34():
    c = staircase_from_alexander(torus_knot_alexander(3, 4))
    a = alexander_summand(c, 0)
    assert a.gradings == tuple(g.gr_u - 2 * max(g.alexander, 0) for g in c.gradings)
    assert homology_dvr(a, mode=RELATIVE).module == DvrModule((0,), (), RELATIVE)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_localizations_are_single_towers(rng):
    c = random_knot_complex(rng, 30)
    for mode in ("V1", "U1"):
        m = homology_dvr(specialize(c, mode)).module
        assert m.rank == 1 and not m.torsion


# ---------------------------------------------------------------------------
# elimination


def _check_reduction(red):
    ring = ring_for(red.original)
    d, dr = differential_map(red.original), differential_map(red.reduced)
    p, i, h = red.projection, red.inclusion, red.homotopy
    assert maps_equal(compose(p, d, ring), compose(dr, p, ring), ring)
    assert maps_equal(compose(d, i, ring), compose(i, dr, ring), ring)
    assert maps_equal(compose(p, i, ring), identity_map(len(red.reduced), ring), ring)
    lhs = add_maps(compose(i, p, ring), identity_map(len(red.original), ring), ring)
    rhs = add_maps(compose(d, h, ring), compose(h, d, ring), ring)
    assert maps_equal(lhs, rhs, ring)


def test_eliminate_acyclic_pair():
    c = BigradedComplex.build([("x", (0, 0)), ("y", (-1, -1))], [("x", "y", mono())])
    red = gaussian_eliminate(c)
    assert len(red.reduced) == 0
    assert red.homotopy == {1: {0: frozenset({(0, 0)})}}
    _check_reduction(red)


def test_eliminate_a0_t34_to_one_generator():
    c = staircase_from_alexander(torus_knot_alexander(3, 4))
    red = gaussian_eliminate(alexander_summand(c, 0))
    assert len(red.reduced) == 1
    _check_reduction(red)


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_elimination_maps_are_homotopy_equivalences(rng):
    c = random_uv_complex(rng)
    _check_reduction(gaussian_eliminate(c))
    w, _ = random_w_complex(rng, 14)
    _check_reduction(gaussian_eliminate(w))
    _check_reduction(gaussian_eliminate(w, "random", rng))


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_elimination_preserves_f2_homology(rng):
    c = specialize(random_uv_complex(rng, 20), "UV0")
    red = gaussian_eliminate(c, "random", rng)
    assert homology_f2(red.reduced) == homology_f2(c)
    assert GradedVectorSpace(dense_f2_homology(c)) == homology_f2(c)


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_homology_dvr_matches_dense_oracle(rng):
    c, expected = random_w_complex(rng, 20)
    got = homology_dvr(c).module
    assert got == expected
    assert module_profile(got, grading_window(c)) == dense_profile(c)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_homology_dvr_pivot_order_independent(rng):
    c, _ = random_w_complex(rng, 20)
    reference = homology_dvr(c).module
    red = gaussian_eliminate(c, "random", rng)
    assert homology_dvr(red.reduced).module == reference


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_specializations_of_knot_complexes_match_dense_oracle(rng):
    c = random_knot_complex(rng, 20)
    for s in range(-2, 3):
        a = alexander_summand(c, s)
        m = homology_dvr(a).module
        assert module_profile(m, grading_window(a)) == dense_profile(a)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_euler_characteristic_invariant_under_elimination_and_pairs(rng):
    c = random_knot_complex(rng, 20)
    chi = euler_characteristic(c)
    # adding an acyclic pair and scrambling changes nothing
    pair = BigradedComplex.build([("p", (3, 1)), ("q", (2, 0))], [("p", "q", mono())])
    from knotfloer.complexes import direct_sum
    bigger = scramble_uv(scramble_uv(direct_sum(c, pair), rng), rng)
    assert euler_characteristic(bigger) == chi
    reduced = gaussian_eliminate(specialize(bigger, "UV0")).reduced
    chi2: dict = {}
    for g in reduced.gradings:
        chi2[g.alexander] = chi2.get(g.alexander, 0) + (-1) ** (g.gr_u % 2)
    assert LaurentPoly(chi2) == chi


# ---------------------------------------------------------------------------
# homology


def test_homology_f2_left_trefoil():
    h = homology_f2(specialize(left_trefoil(), "UV0"))
    assert h.dims == {Bigrading(0, 2): 1, Bigrading(1, 1): 1, Bigrading(2, 0): 1}


def test_homology_f2_zero_differential():
    c = BigradedComplex.build([("x", (0, 0)), ("y", (2, 0)), ("z", (2, 0))])
    assert homology_f2(c).dims == {Bigrading(0, 0): 1, Bigrading(2, 0): 2}


def test_homology_f2_granny_total():
    t = staircase_from_alexander(TREFOIL)
    assert homology_f2(specialize(tensor_product(t, t), "UV0")).total == 9


def test_homology_dvr_example_a0():
    res = homology_dvr(alexander_summand(left_trefoil(), 0), truncation=8, mode=RELATIVE)
    assert res.stable
    assert res.module.free_gradings == (0,) and res.module.torsion == ((1, 1),)


def test_homology_dvr_one_generator():
    c = WComplex(("x",), (0,), {})
    assert homology_dvr(c).module == DvrModule((0,))


def test_homology_dvr_example_a_minus_one():
    m = homology_dvr(alexander_summand(left_trefoil(), -1), mode=RELATIVE).module
    assert m.rank == 1 and not m.torsion


def test_homology_dvr_truncation_doubling_and_failure():
    # N = 2 and N + 4 = 6 disagree about W^5, so N doubles until they agree
    c = WComplex(("x", "y"), (0, 9), {(1, 0): W(5)})
    res = homology_dvr(c, truncation=2)
    assert res.module == DvrModule((), ((9, 5),))
    assert res.truncation > 2
    with pytest.raises(TruncationError):
        homology_dvr(c, truncation=2, max_truncation=3)


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_truncation_n_and_n_plus_4_agree(rng):
    c, _ = random_w_complex(rng, 20)
    res = homology_dvr(c)
    assert res.stable
    n = res.truncation
    from knotfloer.homology import _diagonalize
    assert _diagonalize(c.truncated(n), ABSOLUTE) == _diagonalize(c.truncated(n + 4), ABSOLUTE)


def test_bigraded_homology_left_trefoil():
    h = bigraded_homology(left_trefoil())
    assert h.generators == {(0, 0): [{"a": mono(0, 1), "c": mono(1, 0)}], (1, 1): [{"b": mono()}]}


# ---------------------------------------------------------------------------
# modules


def test_module_canonical_form_and_modes():
    a = DvrModule((3, 1), ((2, 1), (0, 2)))
    assert a.free_gradings == (1, 3) and a.torsion == ((0, 2), (2, 1))
    assert DvrModule((5,), ((6, 1),), RELATIVE) == DvrModule((0,), ((1, 1),), RELATIVE)
    with pytest.raises(GradingModeError):
        _ = DvrModule((0,)) == DvrModule((0,), (), RELATIVE)
    with pytest.raises(ValueError):
        DvrModule((0,), ((0, 0),))


def test_d_invariant_examples():
    assert d_invariant(DvrModule((0,), ((1, 1),), RELATIVE)) == 0
    assert d_invariant(DvrModule((0,))) == 0
    assert d_invariant(DvrModule((2,), ((1, 1),))) == 2
    with pytest.raises(ValueError):
        d_invariant(DvrModule((0, 2)))


def test_plus_and_hat_views():
    s3 = plus_and_hat_views(DvrModule((0,)))
    assert s3.tower_bottom == (2,) and s3.hat_dimension == 1 and s3.hat_gradings == (0,)
    ex = plus_and_hat_views(DvrModule((0,), ((1, 1),), RELATIVE))
    assert ex.hat_dimension == 3 and ex.hat_gradings is None
    k = 4
    many = plus_and_hat_views(DvrModule((0,), ((3, 2),) * k))
    assert many.hat_dimension == 1 + 2 * k
    assert many.plus_torsion == ((4, 2),) * k


def test_hat_dimension_matches_hfk_hat_through_hfk_minus():
    # HFK-hat is recovered from HFK-minus by the hat view (one generator per tower,
    # two per torsion summand), which checks both constructions at once
    from knotfloer.knots import hfk_minus
    for c in (left_trefoil(), thin_from_alexander_signature(FIGURE_EIGHT, 0),
              staircase_from_alexander(torus_knot_alexander(3, 4))):
        view = plus_and_hat_views(hfk_minus(c))
        by_m: dict = {}
        for (m, _), v in hfk_hat(c).dims.items():
            by_m[m] = by_m.get(m, 0) + v
        counted: dict = {}
        for g in view.hat_gradings:
            counted[g] = counted.get(g, 0) + 1
        assert counted == by_m


def test_seeded_random_compositions_are_valid():
    rng = random.Random(20)
    for _ in range(50):
        assert validate_complex(random_knot_complex(rng, 40))
