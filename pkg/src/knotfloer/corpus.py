"""Regression corpus: the worked examples the engine must reproduce exactly.

``knotfloer corpus`` runs every entry and prints one line per check.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Callable

from .complexes import (BigradedComplex, Bigrading, dualize, is_isomorphic, mono,
                        unknot_complex, validate_complex)
from .heegaard_h1 import IntersectionMatrix, h1_group, hf_dimension_check, stabilize
from .homology import bigraded_homology, homology_dvr, homology_f2
from .knots import (TREFOIL, LSpaceKnot, Mirror, Reverse, build,
                    euler_characteristic, hfk_hat, hfk_minus)
from .modules import ABSOLUTE, RELATIVE, DvrModule, d_invariant, plus_and_hat_views
from .oneone import (cfk_from_diagram, count_bigons, diagram_from_json, enumerate_generators,
                     validate_diagram)
from .reduction import gaussian_eliminate
from .specialize import alexander_summand, specialize
from .surgery import (b_summand, build_cone, is_lspace_result, large_surgery,
                      surgery_homology)


def left_trefoil() -> BigradedComplex:
    """The three-generator complex with da = Ub and dc = Vb."""
    return BigradedComplex.build([("a", (0, 2)), ("b", (1, 1)), ("c", (2, 0))],
                                 [("a", "b", mono(1, 0)), ("c", "b", mono(0, 1))])


def data_path(*parts: str):
    return resources.files("knotfloer").joinpath("data", *parts)


def load_diagram(name: str):
    return diagram_from_json(json.loads(data_path("diagrams", name).read_text()))


def _rel(free, tors=()) -> DvrModule:
    return DvrModule(free, tors, RELATIVE)


def _entries(c) -> dict:
    """Differential as {(source label, target label): coefficient} for readable comparisons."""
    return {(c.labels[s], c.labels[t]): p for (t, s), p in c.differential.items()}


def _checks() -> list[tuple[str, Callable[[], bool]]]:
    lt = left_trefoil()
    trefoil_d = load_diagram("trefoil.json")
    w = lambda k: 1 << k  # W^k as a bitmask

    def a_summand_m1():
        a = alexander_summand(lt, -1)
        return _entries(a) == {("a", "b"): w(0), ("c", "b"): w(1)}

    def v1_generator():
        red = gaussian_eliminate(specialize(lt, "V1"))
        return len(red.reduced) == 1 and red.inclusion[0] == {0: 1, 2: 2}

    def u1_generator():
        red = gaussian_eliminate(specialize(lt, "U1"))
        return len(red.reduced) == 1 and red.inclusion[0] == {2: 1, 0: 2}

    def b_iso():
        b0, bm1 = b_summand(lt, 0), b_summand(lt, -1)
        return (b0.differential == bm1.differential and b0.gradings == bm1.gradings
                and homology_dvr(b0).module.rank == 1)

    checks = [
        ("validate: left trefoil complex passes",
         lambda: bool(validate_complex(lt))),
        ("validate: regrading b to (1,2) fails",
         lambda: not validate_complex(BigradedComplex(lt.labels, (lt.gradings[0], Bigrading(1, 2),
                                                                  lt.gradings[2]), lt.differential))),
        ("dualize: right trefoil has d b* = U a* + V c*",
         lambda: _entries(dualize(lt)) == {(("*", "b"), ("*", "a")): mono(1, 0),
                                           (("*", "b"), ("*", "c")): mono(0, 1)}
         and dualize(lt).gradings == (Bigrading(0, -2), Bigrading(-1, -1), Bigrading(-2, 0))),
        ("specialize UV0: zero differential", lambda: not specialize(lt, "UV0").differential),
        ("specialize V0: d a = U b only", lambda: _entries(specialize(lt, "V0")) == {("a", "b"): w(1)}),
        ("specialize V1: tower generated by a + Uc", v1_generator),
        ("specialize U1: tower generated by c + Va", u1_generator),
        ("A_0: d(Va) = W b and d(Uc) = W b", lambda: _entries(alexander_summand(lt, 0))
         == {("a", "b"): w(1), ("c", "b"): w(1)}),
        ("A_-1: d a = Ub and d(U^2 c) = W Ub", a_summand_m1),
        ("homology_f2: dims at (0,2), (1,1), (2,0)",
         lambda: homology_f2(specialize(lt, "UV0")).dims == {Bigrading(0, 2): 1, Bigrading(1, 1): 1,
                                                           Bigrading(2, 0): 1}),
        ("A_0 homology: F[W]_(0) + F_(1)",
         lambda: homology_dvr(alexander_summand(lt, 0), mode=RELATIVE).module == _rel((0,), ((1, 1),))),
        ("A_-1 homology: F[W]",
         lambda: homology_dvr(alexander_summand(lt, -1), mode=RELATIVE).module == _rel((0,))),
        ("d-invariant of F[W]_(0) + F_(1) is 0",
         lambda: d_invariant(DvrModule((0,), ((1, 1),))) == 0),
        ("HF+ of S^3 has its tower at 2, hat dimension 1",
         lambda: plus_and_hat_views(DvrModule((0,))).tower_bottom == (2,)
         and plus_and_hat_views(DvrModule((0,))).hat_dimension == 1),
        ("mirror of the right trefoil is the left trefoil complex",
         lambda: is_isomorphic(build(Mirror(LSpaceKnot(TREFOIL))), lt)),
        ("reverse leaves the complex unchanged",
         lambda: build(Reverse(LSpaceKnot(TREFOIL))) == build(LSpaceKnot(TREFOIL))),
        ("HFK-hat of the left trefoil",
         lambda: hfk_hat(lt).dims == {(0, -1): 1, (1, 0): 1, (2, 1): 1}),
        ("HFK-minus of the left trefoil: F[U]_(2) + F_(1)",
         lambda: hfk_minus(lt) == DvrModule((2,), ((1, 1),), ABSOLUTE)),
        ("Euler characteristic t - 1 + t^-1", lambda: euler_characteristic(lt) == TREFOIL),
        ("trefoil diagram: valid with 3 generators",
         lambda: validate_diagram(trefoil_d).generator_count == 3
         and [g.label for g in enumerate_generators(trefoil_d)] == ["a", "b", "c"]),
        ("trefoil diagram: bigons a->b (1,0) and c->b (0,1)",
         lambda: sorted((b.from_gen, b.to_gen, b.n_w, b.n_z) for b in count_bigons(trefoil_d))
         == [("a", "b", 1, 0), ("c", "b", 0, 1)]),
        ("trefoil diagram: complex equals the left trefoil complex",
         lambda: cfk_from_diagram(trefoil_d) == lt),
        ("trefoil diagram: homology over F[U,V] generated by Va + Uc at (0,0) and b at (1,1)",
         lambda: bigraded_homology(cfk_from_diagram(trefoil_d)).generators
         == {(0, 0): [{"a": mono(0, 1), "c": mono(1, 0)}], (1, 1): [{"b": mono(0, 0)}]}),
        ("B_s: multiplication by V identifies B_-1 with B_0", b_iso),
        ("large surgery n=3, s=0: F[W] + F one grading higher",
         lambda: large_surgery(lt, 3, 0) == _rel((0,), ((1, 1),))),
        ("large surgery n=3, s=+-1: F[W]",
         lambda: large_surgery(lt, 3, 1) == _rel((0,)) and large_surgery(lt, 3, -1) == _rel((0,))),
        ("cone n=1: F[W]_(0) + F_(1)",
         lambda: surgery_homology(lt, 1).modules == {0: _rel((0,), ((1, 1),))}),
        ("cone n=3: [0] tower + F, [+-1] tower",
         lambda: surgery_homology(lt, 3).modules == {-1: _rel((0,)), 0: _rel((0,), ((1, 1),)),
                                                     1: _rel((0,))}),
        ("n=1 surgery on the left trefoil is not an L-space",
         lambda: not is_lspace_result(surgery_homology(lt, 1))),
        ("cone n=1 keeps column A_0 only", lambda: build_cone(lt, 1).columns(0) == [("A", 0)]),
        ("cone n=-1 keeps B_-1, A_0, B_0",
         lambda: build_cone(lt, -1).columns(0) == [("A", 0), ("B", -1), ("B", 0)]),
        ("H_1 of [[2]] is Z/2", lambda: h1_group(IntersectionMatrix(((2,),))).invariant_factors == (2,)),
        ("stabilizing [[2]] gives [[2,0],[0,1]]",
         lambda: stabilize(IntersectionMatrix(((2,),))).entries == ((2, 0), (0, 1))),
        ("hat dimensions (3) over |H_1| = 1: not an L-space",
         lambda: (lambda r: r.ok and r.hat_total == 3 and not r.l_space)(
             hf_dimension_check(IntersectionMatrix(((1,),)), [3]))),
        ("hat dimensions (3,1,1) over |H_1| = 3",
         lambda: (lambda r: r.ok and r.hat_total == 5 and not r.l_space)(
             hf_dimension_check(IntersectionMatrix(((3,),)), [3, 1, 1]))),
        ("unknot complex passes validation", lambda: bool(validate_complex(unknot_complex()))),
    ]
    return checks


def run_checks() -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in _checks():
        try:
            ok, detail = bool(fn()), ""
        except Exception as e:  # a crash is a failed check, reported with its message
            ok, detail = False, f"{type(e).__name__}: {e}"
        out.append((name, ok, detail))
    return out


def run_corpus(json_lines: bool = False) -> int:
    results = run_checks()
    for name, ok, detail in results:
        if json_lines:
            print(json.dumps({"check": name, "pass": ok, "detail": detail}))
        else:
            print(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    failed = sum(not ok for _, ok, _ in results)
    if not json_lines:
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if not failed else 4
