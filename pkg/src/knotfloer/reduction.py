"""Cancellation of unit differential entries (Gaussian elimination).

Each cancellation of an arrow ``x -> y`` with unit coefficient ``u``
replaces the complex by the homotopy-equivalent one on the remaining
generators, with ``d'(z) = d(z) + d(x) u^-1 <d z, y>``.  The projection,
inclusion and homotopy realising the equivalence are composed along the
way so callers can transport cycles between the two complexes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from .complexes import ONE, ZERO, BigradedComplex, poly_add, poly_mul
from .wcomplex import WComplex, clmul, inverse_unit

Complex = Union[BigradedComplex, WComplex]
SparseMap = dict  # source index -> {target index: coefficient}


class _UVRing:
    zero = ZERO
    one = ONE

    @staticmethod
    def add(a, b):
        return poly_add(a, b)

    @staticmethod
    def mul(a, b):
        return poly_mul(a, b)

    @staticmethod
    def is_unit(a) -> bool:
        return a == ONE

    @staticmethod
    def inv(a):
        return ONE


class _WRing:
    zero = 0
    one = 1

    def __init__(self, n: Optional[int]):
        self.n = n
        self.mask = None if n is None else (1 << n) - 1

    @staticmethod
    def add(a, b):
        return a ^ b

    def mul(self, a, b):
        p = clmul(a, b)
        return p if self.mask is None else p & self.mask

    def is_unit(self, a) -> bool:
        # over the polynomial ring only 1 is invertible; mod W^N any odd element is
        return a == 1 if self.n is None else bool(a & 1)

    def inv(self, a):
        return 1 if a == 1 else inverse_unit(a, self.n)


def ring_for(c: Complex):
    return _UVRing() if isinstance(c, BigradedComplex) else _WRing(c.truncation)


@dataclass(frozen=True)
class Reduction:
    """A reduced complex with the maps exhibiting the homotopy equivalence.

    ``projection`` maps original generators to reduced ones, ``inclusion``
    maps reduced generators back, and ``homotopy`` (on the original
    complex) satisfies ``inclusion o projection + id = dH + Hd``.
    Indices refer to ``original.labels`` and ``reduced.labels``.
    """

    original: Complex
    reduced: Complex
    projection: SparseMap
    inclusion: SparseMap
    homotopy: SparseMap


def _add_to(vec: dict, key, val, ring) -> None:
    new = ring.add(vec.get(key, ring.zero), val)
    if new == ring.zero:
        vec.pop(key, None)
    else:
        vec[key] = new


def gaussian_eliminate(c: Complex, pivot: str = "min_fill",
                       rng: Optional[random.Random] = None) -> Reduction:
    """Cancel unit entries until none remain.

    ``pivot="min_fill"`` picks the unit entry with the fewest incident
    nonzero entries; ``pivot="random"`` uses ``rng`` (for testing that the
    result does not depend on pivot order).
    """
    ring = ring_for(c)
    n = len(c)
    cols: dict[int, dict[int, object]] = {i: {} for i in range(n)}
    rows: dict[int, dict[int, object]] = {i: {} for i in range(n)}
    for (t, s), p in c.differential.items():
        cols[s][t] = p
        rows[t][s] = p
    # proj[o] = image of original generator o in current basis
    proj: dict[int, dict[int, object]] = {i: {i: ring.one} for i in range(n)}
    # incl[r] = image of current generator r in the original complex
    incl: dict[int, dict[int, object]] = {i: {i: ring.one} for i in range(n)}
    homot: dict[int, dict[int, object]] = {i: {} for i in range(n)}
    # current generator -> originals whose projection mentions it
    proj_rev: dict[int, set[int]] = {i: {i} for i in range(n)}
    if rng is None:
        rng = random.Random(0)

    while True:
        units = [(s, t) for s, col in cols.items() for t, p in col.items() if ring.is_unit(p)]
        if not units:
            break
        if pivot == "random":
            x, y = rng.choice(sorted(units))
        else:
            x, y = min(units, key=lambda st: (len(cols[st[0]]) + len(rows[st[1]]), st))
        u = cols[x][y]
        uinv = ring.inv(u)
        a = {t: p for t, p in cols[x].items() if t != y}       # rest of d(x)
        b = {z: p for z, p in rows[y].items() if z != x}       # coefficients of y in d(z)

        # homotopy: H += incl_old . h . proj_old with h(y) = uinv x
        for o in list(proj_rev[y]):
            cy = proj[o].get(y)
            if cy is None:
                continue
            coeff = ring.mul(cy, uinv)
            for orig, q in incl[x].items():
                _add_to(homot[o], orig, ring.mul(coeff, q), ring)

        # inclusion: incl(z) += uinv b(z) incl(x)
        for z, bz in b.items():
            f = ring.mul(uinv, bz)
            for orig, q in incl[x].items():
                _add_to(incl[z], orig, ring.mul(f, q), ring)

        # projection: y |-> uinv * a, x |-> 0
        for o in list(proj_rev[y]) + list(proj_rev[x]):
            vec = proj[o]
            cy = vec.pop(y, None)
            vec.pop(x, None)
            if cy is not None:
                f = ring.mul(cy, uinv)
                for t, at in a.items():
                    before = t in vec
                    _add_to(vec, t, ring.mul(f, at), ring)
                    if t in vec and not before:
                        proj_rev[t].add(o)
        proj_rev.pop(x)
        proj_rev.pop(y)

        # differential: d'(z) gets a(t) uinv b(z) on t
        for z, bz in b.items():
            f = ring.mul(uinv, bz)
            for t, at in a.items():
                val = ring.add(cols[z].get(t, ring.zero), ring.mul(at, f))
                if val == ring.zero:
                    cols[z].pop(t, None)
                    rows[t].pop(z, None)
                else:
                    cols[z][t] = val
                    rows[t][z] = val
        for g in (x, y):
            for t in cols[g]:
                if t not in (x, y):
                    rows[t].pop(g, None)
            for s in rows[g]:
                if s not in (x, y):
                    cols[s].pop(g, None)
            del cols[g], rows[g]
            del incl[g]

    keep = sorted(cols)
    new_index = {old: i for i, old in enumerate(keep)}
    diff = {(new_index[t], new_index[s]): p for s in keep for t, p in cols[s].items()}
    labels = tuple(c.labels[i] for i in keep)
    gradings = tuple(c.gradings[i] for i in keep)
    if isinstance(c, BigradedComplex):
        reduced = BigradedComplex(labels, gradings, diff)
    else:
        reduced = WComplex(labels, gradings, diff, c.variable, c.truncation)
    projection = {o: {new_index[r]: q for r, q in vec.items()} for o, vec in proj.items() if vec}
    inclusion = {new_index[r]: dict(vec) for r, vec in incl.items()}
    homotopy = {o: dict(vec) for o, vec in homot.items() if vec}
    return Reduction(c, reduced, projection, inclusion, homotopy)


# ---------------------------------------------------------------------------
# sparse map utilities (used by tests and by the flip map)

def apply_map(m: SparseMap, vec: dict, ring) -> dict:
    out: dict = {}
    for s, cs in vec.items():
        for t, q in m.get(s, {}).items():
            _add_to(out, t, ring.mul(cs, q), ring)
    return out


def compose(f: SparseMap, g: SparseMap, ring) -> SparseMap:
    """Return f o g (apply g first)."""
    return {s: r for s, vec in g.items() if (r := apply_map(f, vec, ring))}


def differential_map(c: Complex) -> SparseMap:
    out: SparseMap = {}
    for (t, s), p in c.differential.items():
        out.setdefault(s, {})[t] = p
    return out


def maps_equal(f: SparseMap, g: SparseMap, ring) -> bool:
    keys = set(f) | set(g)
    for k in keys:
        a, b = f.get(k, {}), g.get(k, {})
        for t in set(a) | set(b):
            if a.get(t, ring.zero) != b.get(t, ring.zero):
                return False
    return True


def add_maps(f: SparseMap, g: SparseMap, ring) -> SparseMap:
    out: SparseMap = {k: dict(v) for k, v in f.items()}
    for k, vec in g.items():
        for t, q in vec.items():
            _add_to(out.setdefault(k, {}), t, q, ring)
    return {k: v for k, v in out.items() if v}


def identity_map(n: int, ring) -> SparseMap:
    return {i: {i: ring.one} for i in range(n)}
