"""HF⁻ of integer surgeries: the large-surgery shortcut and the mapping cone.

All complexes here are over F[W] with W = UV.  For a knot complex C:

* ``A_s`` is the Alexander grading ``s`` part of C (``alexander_summand``);
* ``B_s`` is the grading ``s`` part of C[V^-1]; it is graded by gr_u and
  its canonical generators are ``V^(s - A(x)) x``;
* ``iota_V: A_s -> B_s`` is inclusion, and the flip edge
  ``A_s -> B_(s+n)`` is ``V^n phi iota_U`` where ``phi`` identifies the
  U-localized and V-localized complexes through their one-generator
  minimal models.

Multiplication by ``V^n`` sends the canonical generator ``V^(s - A(x)) x``
of ``B_s`` to that of ``B_(s+n)``, so on canonical generators it is the
identity and no negative exponents are needed.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .complexes import BigradedComplex
from .errors import DomainError, InternalInvariantError
from .homology import DvrResult, homology_dvr
from .knots import genus
from .modules import RELATIVE, DvrModule
from .reduction import (Reduction, _WRing, apply_map, compose, differential_map,
                        gaussian_eliminate, maps_equal)
from .specialize import LocalizedComplex, alexander_summand
from .wcomplex import WComplex, clmul, valuation


class SurgeryError(DomainError):
    """Invalid surgery request (for example n = 0)."""


def b_summand(c: BigradedComplex, s: int, check: bool = True) -> WComplex:
    """B_s: the Alexander grading ``s`` part of the V-localized complex."""
    b = LocalizedComplex(c, "V").summand(s)
    if check:
        m = homology_dvr(b).module
        if m.rank != 1 or m.torsion:
            raise DomainError(f"B_{s} has homology {m.describe()}; input is not a knot complex")
    return b


def u_localized_summand(c: BigradedComplex, s: int) -> WComplex:
    return LocalizedComplex(c, "U").summand(s)


def spinc_representatives(n: int) -> list[int]:
    """Class representatives s with -floor((|n|-1)/2) <= s <= floor(|n|/2)."""
    k = abs(n)
    return list(range(-((k - 1) // 2), k // 2 + 1))


def class_rep(s: int, n: int) -> int:
    reps = spinc_representatives(n)
    k = abs(n)
    for r in reps:
        if (s - r) % k == 0:
            return r
    raise AssertionError


def large_surgery(c: BigradedComplex, n: int, s: int,
                  truncation: Optional[int] = None) -> DvrModule:
    """HF⁻ of n-surgery in the class of ``s`` via the large-surgery isomorphism."""
    return large_surgery_result(c, n, s, truncation).module


def large_surgery_result(c: BigradedComplex, n: int, s: int,
                         truncation: Optional[int] = None) -> DvrResult:
    """As :func:`large_surgery`, keeping the truncation stability certificate."""
    g = genus(c)
    if n < 1 or n < 2 * g - 1:
        raise SurgeryError(f"large surgery needs n >= max(1, 2g - 1) = {max(1, 2 * g - 1)}, got {n}")
    if abs(s) > n // 2:
        raise SurgeryError(f"s = {s} outside [-{n // 2}, {n // 2}]")
    return homology_dvr(alexander_summand(c, s), truncation, RELATIVE)


# ---------------------------------------------------------------------------
# the flip map

@dataclass(frozen=True)
class FlipMap:
    """phi_s from the U-localized summand at ``s`` to B_s.

    ``matrix[i]`` maps canonical generator ``i`` of the source to a vector
    ``{j: W-polynomial}`` over canonical generators of the target.
    """

    source_summand: int
    source: WComplex
    target: WComplex
    matrix: dict
    witnesses: tuple[Reduction, Reduction]

    def is_chain_map(self) -> bool:
        ring = _WRing(None)
        d_src, d_tgt = differential_map(self.source), differential_map(self.target)
        return maps_equal(compose(self.matrix, d_src, ring), compose(d_tgt, self.matrix, ring), ring)

    def is_quasi_isomorphism(self) -> bool:
        """The tower generator is sent to the tower generator with coefficient 1."""
        ring = _WRing(None)
        red_u, red_v = self.witnesses
        image = apply_map(red_v.projection, apply_map(self.matrix, red_u.inclusion[0], ring), ring)
        return image == {0: 1}


def flip_map(c: BigradedComplex, s: int, pivot: str = "min_fill",
             rng: Optional[random.Random] = None) -> FlipMap:
    src = u_localized_summand(c, s)
    tgt = LocalizedComplex(c, "V").summand(s)
    red_u = gaussian_eliminate(src, pivot, rng)
    red_v = gaussian_eliminate(tgt, pivot, rng)
    for name, red in (("U", red_u), ("V", red_v)):
        if len(red.reduced) != 1:
            raise DomainError(
                f"{name}-localized summand at {s} has a {len(red.reduced)}-generator minimal "
                "model; input is not a knot complex")
    ring = _WRing(None)
    matrix = {}
    for i in range(len(src)):
        coeff = red_u.projection.get(i, {}).get(0)
        if coeff:
            matrix[i] = {j: ring.mul(coeff, q) for j, q in red_v.inclusion[0].items()}
    return FlipMap(s, src, tgt, matrix, (red_u, red_v))


# ---------------------------------------------------------------------------
# the truncated cone

def default_window(g: int, n: int) -> int:
    """Half-width b of the retained A-columns ``-b <= s <= b``."""
    if n > 0:
        return max(g - 1, (n - 1 + 1) // 2, 0)  # ceil((n - 1) / 2)
    return max(g - 1, 0)


@dataclass(frozen=True)
class ConeSystem:
    """Truncated mapping cone of D_n split by spin^c class.

    ``classes[r]`` is the cone complex of class ``r`` (gradings relative);
    its generators are labelled ``("A", s, x)`` or ``("B", s, x)``.
    """

    n: int
    a_window: tuple[int, ...]
    b_window: tuple[int, ...]
    classes: dict
    flips: dict = field(repr=False)

    def columns(self, r: int) -> list[tuple[str, int]]:
        return sorted({(lab[0], lab[1]) for lab in self.classes[r].labels})


def build_cone(c: BigradedComplex, n: int, slack: int = 0,
               pivot: str = "min_fill", rng: Optional[random.Random] = None) -> ConeSystem:
    """Assemble Cone(D_n) restricted to the retained columns.

    Columns outside the window form acyclic pieces (iota_V is an
    equivalence for s >= g, the flip edge for s <= -g) and are dropped.
    """
    if n == 0:
        raise SurgeryError("n = 0 surgery is not a rational homology sphere; not supported")
    if slack < 0:
        raise SurgeryError("window slack must be nonnegative")
    g = genus(c)
    b = default_window(g, n) + slack
    a_cols = list(range(-b, b + 1))
    b_cols = list(range(-b + n, b + 1))
    b_set = set(b_cols)
    alex = [c.alexander(i) for i in range(len(c))]
    A = {s: alexander_summand(c, s) for s in a_cols}
    B = {s: LocalizedComplex(c, "V").summand(s) for s in b_cols}
    flips = {s: flip_map(c, s, pivot, rng) for s in a_cols if s + n in b_set}

    reps = spinc_representatives(n)
    k = abs(n)
    classes = {}
    for r in reps:
        labels, grads, col_of = [], [], []
        index = {}
        for s in a_cols:
            if (s - r) % k == 0:
                for i, lab in enumerate(c.labels):
                    index[("A", s, i)] = len(labels)
                    labels.append(("A", s, lab))
                    grads.append(A[s].gradings[i])
                    col_of.append(("A", s))
        for s in b_cols:
            if (s - r) % k == 0:
                for i, lab in enumerate(c.labels):
                    index[("B", s, i)] = len(labels)
                    labels.append(("B", s, lab))
                    grads.append(B[s].gradings[i])
                    col_of.append(("B", s))
        diff: dict = {}

        def add(t, src, p):
            if p:
                diff[(t, src)] = diff.get((t, src), 0) ^ p

        for s in a_cols:
            if (s - r) % k:
                continue
            for (t, src), p in A[s].differential.items():
                add(index[("A", s, t)], index[("A", s, src)], p)
            for i in range(len(c)):
                if s in b_set:
                    add(index[("B", s, i)], index[("A", s, i)], 1 << max(alex[i] - s, 0))
                if s in flips:
                    iota_u = 1 << max(s - alex[i], 0)
                    for j, q in flips[s].matrix.get(i, {}).items():
                        add(index[("B", s + n, j)], index[("A", s, i)], clmul(iota_u, q))
        for s in b_cols:
            if (s - r) % k:
                continue
            for (t, src), p in B[s].differential.items():
                add(index[("B", s, t)], index[("B", s, src)], p)
        grads = _solve_offsets(labels, grads, col_of, diff)
        classes[r] = WComplex(tuple(labels), tuple(grads), diff, "W")
    return ConeSystem(n, tuple(a_cols), tuple(b_cols), classes, flips)


def _solve_offsets(labels, grads, col_of, diff) -> list[int]:
    """Shift each column so that every cone entry has degree -1."""
    cols = sorted(set(col_of))
    offset: dict = {}
    adj: dict = {col: [] for col in cols}
    for (t, s), p in diff.items():
        if p & (p - 1):
            raise InternalInvariantError("cone entry is not a monomial")
        k = valuation(p)
        # grads[t] + off[t] - 2k = grads[s] + off[s] - 1
        delta = grads[s] - 1 - grads[t] + 2 * k
        adj[col_of[s]].append((col_of[t], delta))
        adj[col_of[t]].append((col_of[s], -delta))
    for start in cols:
        if start in offset:
            continue
        offset[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, delta in adj[u]:
                want = offset[u] + delta
                if v not in offset:
                    offset[v] = want
                    queue.append(v)
                elif offset[v] != want:
                    raise InternalInvariantError("inconsistent gradings in the mapping cone")
    return [g + offset[col_of[i]] for i, g in enumerate(grads)]


@dataclass(frozen=True)
class SurgeryResult:
    n: int
    classes: dict  # representative -> DvrResult

    @property
    def modules(self) -> dict:
        return {r: res.module for r, res in self.classes.items()}


def surgery_homology(c: BigradedComplex, n: int, slack: int = 0,
                     truncation: Optional[int] = None, pivot: str = "min_fill",
                     rng: Optional[random.Random] = None) -> SurgeryResult:
    """HF⁻(S^3_n(K)) per spin^c class, relatively graded, from the mapping cone."""
    cone = build_cone(c, n, slack, pivot, rng)
    out = {}
    for r, comp in cone.classes.items():
        res = homology_dvr(comp, truncation, RELATIVE)
        if res.module.rank != 1:
            raise InternalInvariantError(
                f"class {r} of {n}-surgery has {res.module.rank} free summands")
        out[r] = res
    return SurgeryResult(n, out)


def large_surgery_all(c: BigradedComplex, n: int,
                      truncation: Optional[int] = None) -> dict:
    return {r: large_surgery(c, n, r, truncation) for r in spinc_representatives(n)}


def is_lspace_result(res) -> bool:
    mods = res.modules if isinstance(res, SurgeryResult) else res
    return all(m.is_torsion_free for m in mods.values())
