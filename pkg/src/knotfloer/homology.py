"""Homology computations: over F2, over F[W] (with truncation), and over F[U,V]."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from . import f2linalg
from .errors import InternalInvariantError
from .complexes import Bigrading, BigradedComplex, Monomial
from .modules import ABSOLUTE, RELATIVE, DvrModule, GradedVectorSpace
from .reduction import _WRing, gaussian_eliminate
from .wcomplex import WComplex, inverse_unit, valuation

DEFAULT_MAX_TRUNCATION = 1024


class TruncationError(InternalInvariantError):
    """Raised when the module structure does not stabilize in the allowed truncation range."""


def homology_f2(c) -> GradedVectorSpace:
    """Homology over F2 of a complex whose entries are constants.

    Accepts a ``BigradedComplex`` with entries in {0, 1} (as produced by the
    ``UV0`` specialization) or a ``WComplex`` read at W = 0.
    """
    by_grading: dict = defaultdict(list)
    for i, g in enumerate(c.gradings):
        by_grading[g].append(i)
    pos = {}
    for g, idx in by_grading.items():
        for k, i in enumerate(idx):
            pos[i] = k
    cols: dict[int, int] = defaultdict(int)
    for (t, s), p in c.differential.items():
        constant = (Monomial(0, 0) in p) if isinstance(c, BigradedComplex) else bool(p & 1)
        if constant:
            cols[s] |= 1 << pos[t]
    rank_out = {}
    for g, idx in by_grading.items():
        rank_out[g] = f2linalg.rank([cols[i] for i in idx])
    dims = {}
    for g, idx in by_grading.items():
        target = g.shift(1, 1) if isinstance(g, Bigrading) else g + 1
        # incoming boundaries come from the grading one above
        rank_in = rank_out.get(target, 0)
        dims[g] = len(idx) - rank_out[g] - rank_in
    return GradedVectorSpace(dims)


# ---------------------------------------------------------------------------
# modules over F[W]

@dataclass(frozen=True)
class DvrResult:
    module: DvrModule
    stable: bool
    truncation: int


def _diagonalize(c: WComplex, mode: str) -> DvrModule:
    """Module structure of the homology of ``c`` computed mod W^N."""
    n_trunc = c.truncation
    ring = _WRing(n_trunc)
    red = gaussian_eliminate(c).reduced
    cols: dict[int, dict[int, int]] = {i: {} for i in range(len(red))}
    rows: dict[int, dict[int, int]] = {i: {} for i in range(len(red))}
    for (t, s), p in red.differential.items():
        cols[s][t] = p
        rows[t][s] = p

    def set_entry(t, s, val):
        if val:
            cols[s][t] = val
            rows[t][s] = val
        else:
            cols[s].pop(t, None)
            rows[t].pop(s, None)

    def divide(p, k, uinv):
        # p = W^kp * unit with kp >= k; returns p / (W^k u)
        return ring.mul(p >> k, uinv)

    torsion = []
    alive = set(cols)
    while True:
        best = None
        for s in alive:
            for t, p in cols[s].items():
                v = valuation(p)
                if best is None or v < best[0]:
                    best = (v, s, t)
        if best is None:
            break
        k, x, y = best
        u = cols[x][y] >> k
        if n_trunc is not None:
            uinv = inverse_unit(u, n_trunc - k)
        elif u == 1:
            uinv = 1
        else:
            raise ValueError("non-monomial entry over the untruncated ring")
        # clear the column of x: y' = y + sum r_t t
        for t, p in list(cols[x].items()):
            if t == y:
                continue
            r = divide(p, k, uinv)
            # new column y' = col_y + r col_t ; row_t loses r * row_y
            for z, q in list(cols[t].items()):
                set_entry(z, y, ring.add(cols[y].get(z, 0), ring.mul(r, q)))
            for z, q in list(rows[y].items()):
                set_entry(t, z, ring.add(cols[z].get(t, 0), ring.mul(r, q)))
        # clear the row of y: z' = z + q_z x
        for z, p in list(rows[y].items()):
            if z == x:
                continue
            q = divide(p, k, uinv)
            for t, e in list(cols[x].items()):
                set_entry(t, z, ring.add(cols[z].get(t, 0), ring.mul(q, e)))
            for w, e in list(rows[z].items()):
                set_entry(x, w, ring.add(cols[w].get(x, 0), ring.mul(q, e)))
        torsion.append((red.gradings[y], k))
        for g in (x, y):
            for t in list(cols[g]):
                set_entry(t, g, 0)
            for s in list(rows[g]):
                set_entry(g, s, 0)
            alive.discard(g)
    free = [red.gradings[i] for i in alive]
    return DvrModule(tuple(free), tuple(torsion), mode)


def default_truncation(c: WComplex) -> int:
    return 2 * c.grading_span() + 8


def homology_dvr(c: WComplex, truncation: Optional[int] = None, mode: str = ABSOLUTE,
                 max_truncation: int = DEFAULT_MAX_TRUNCATION) -> DvrResult:
    """Homology of a one-variable complex as a graded F[[W]]-module.

    Works modulo W^N, starting from ``truncation`` (default
    ``2 * grading span + 8``), and certifies the answer by recomputing at
    N + 4.  On disagreement N is doubled, up to ``max_truncation``.
    """
    if mode not in (ABSOLUTE, RELATIVE):
        raise ValueError(f"unknown grading mode {mode!r}")
    n = truncation if truncation is not None else default_truncation(c)
    if n < 1:
        raise ValueError("truncation order must be positive")
    while True:
        first = _diagonalize(c.truncated(n), mode)
        second = _diagonalize(c.truncated(n + 4), mode)
        if first == second:
            return DvrResult(first, True, n)
        if 2 * n > max_truncation:
            raise TruncationError(
                f"module structure unstable between W^{n} and W^{n + 4}; raise the truncation cap")
        n *= 2


# ---------------------------------------------------------------------------
# homology over F[U, V] in a finite window of bigradings

@dataclass(frozen=True)
class BigradedHomology:
    """Graded pieces of the F[U,V]-homology near the generators.

    ``dims[(p, q)]`` is the F2-dimension in bigrading (p, q) and
    ``generators`` lists, per bigrading, representatives of a minimal
    generating set (as ``{label: (u_exp, v_exp)}`` cycles with monomial
    coefficients).
    """

    dims: dict
    generators: dict
    window: tuple[int, int, int, int]


def _chain_basis(c: BigradedComplex, p: int, q: int):
    out = []
    for i, g in enumerate(c.gradings):
        du, dv = g.gr_u - p, g.gr_v - q
        if du >= 0 and dv >= 0 and du % 2 == 0 and dv % 2 == 0:
            out.append((i, du // 2, dv // 2))
    return out


def bigraded_homology(c: BigradedComplex, depth: int = 4) -> BigradedHomology:
    """F2-dimensions and minimal generators of H_*(C) over F[U,V].

    Bigradings from the top generator grading down to ``2 * depth`` below
    the lowest one are examined.
    """
    pmax = max(g.gr_u for g in c.gradings)
    qmax = max(g.gr_v for g in c.gradings)
    pmin = min(g.gr_u for g in c.gradings) - 2 * depth
    qmin = min(g.gr_v for g in c.gradings) - 2 * depth
    cols = c.columns()

    def boundary_vec(basis_tgt_index, i, a, b):
        vec = 0
        for t, poly in cols[i].items():
            for (ua, vb) in poly:
                key = (t, a + ua, b + vb)
                if key in basis_tgt_index:
                    vec ^= 1 << basis_tgt_index[key]
        return vec

    cycles: dict = {}
    bounds: dict = {}
    bases: dict = {}
    for p in range(pmin - 1, pmax + 2):
        for q in range(qmin - 1, qmax + 2):
            bases[(p, q)] = _chain_basis(c, p, q)
    for (p, q), basis in bases.items():
        tgt = bases.get((p - 1, q - 1))
        if tgt is None:
            tgt = _chain_basis(c, p - 1, q - 1)
        tindex = {key: k for k, key in enumerate(tgt)}
        images = [boundary_vec(tindex, *key) for key in basis]
        cycles[(p, q)] = f2linalg.kernel(images, len(tgt))
        bounds[(p - 1, q - 1)] = [v for v in images if v]

    def remap(vec, src_basis, dst_index, du, dv):
        out = 0
        k = 0
        while vec:
            if vec & 1:
                i, a, b = src_basis[k]
                out ^= 1 << dst_index[(i, a + du, b + dv)]
            vec >>= 1
            k += 1
        return out

    dims, gens = {}, {}
    for p in range(pmin, pmax + 1):
        for q in range(qmin, qmax + 1):
            basis = bases[(p, q)]
            if not basis:
                continue
            z = cycles[(p, q)]
            b = bounds.get((p, q), [])
            d = f2linalg.rank(z) - f2linalg.rank(b)
            if not d:
                continue
            dims[(p, q)] = d
            index = {key: k for k, key in enumerate(basis)}
            sub = list(b)
            for (dp, dq, du, dv) in ((2, 0, 1, 0), (0, 2, 0, 1)):
                src = (p + dp, q + dq)
                if src in cycles:
                    sub += [remap(v, bases[src], index, du, dv) for v in cycles[src]]
            new = f2linalg.quotient_basis(z, sub)
            if new:
                reps = []
                for v in new:
                    rep = {}
                    k = 0
                    while v:
                        if v & 1:
                            i, a, bb = basis[k]
                            rep.setdefault(c.labels[i], set()).add((a, bb))
                        v >>= 1
                        k += 1
                    reps.append({lab: frozenset(m) for lab, m in rep.items()})
                gens[(p, q)] = reps
    return BigradedHomology(dims, gens, (pmin, pmax, qmin, qmax))
