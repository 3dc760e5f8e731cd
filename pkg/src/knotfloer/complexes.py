"""Bigraded chain complexes over F2[U, V].

Polynomials are stored as frozensets of ``(u_exp, v_exp)`` pairs; the
coefficient field is F2, so adding a monomial twice cancels it.  The
differential is a sparse mapping ``(target, source) -> PolyUV`` between
generator indices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, NamedTuple

from .errors import InternalInvariantError

Label = Hashable


class Monomial(NamedTuple):
    u_exp: int
    v_exp: int


PolyUV = frozenset  # frozenset[Monomial]

ONE: PolyUV = frozenset({Monomial(0, 0)})
ZERO: PolyUV = frozenset()


def mono(u: int = 0, v: int = 0) -> PolyUV:
    if u < 0 or v < 0:
        raise ValueError(f"negative exponent in U^{u} V^{v}")
    return frozenset({Monomial(u, v)})


def poly_add(p: PolyUV, q: PolyUV) -> PolyUV:
    return p ^ q


def poly_mul(p: PolyUV, q: PolyUV) -> PolyUV:
    out: set[Monomial] = set()
    for a in p:
        for b in q:
            m = Monomial(a[0] + b[0], a[1] + b[1])
            if m in out:
                out.remove(m)
            else:
                out.add(m)
    return frozenset(out)


def poly_str(p: PolyUV) -> str:
    if not p:
        return "0"
    terms = []
    for a, b in sorted(p):
        s = ""
        if a:
            s += "U" if a == 1 else f"U^{a}"
        if b:
            s += "V" if b == 1 else f"V^{b}"
        terms.append(s or "1")
    return " + ".join(terms)


class Bigrading(NamedTuple):
    gr_u: int
    gr_v: int

    @property
    def alexander(self) -> int:
        diff = self.gr_u - self.gr_v
        if diff % 2:
            raise ValueError(f"bigrading {tuple(self)} has half-integer Alexander grading")
        return diff // 2

    def shift(self, du: int, dv: int) -> "Bigrading":
        return Bigrading(self.gr_u + du, self.gr_v + dv)


@dataclass(frozen=True)
class BigradedComplex:
    """Free F2[U,V]-complex with bigraded generators.

    ``differential[(t, s)]`` is the coefficient of generator ``t`` in the
    boundary of generator ``s``.  Zero entries are never stored.
    """

    labels: tuple
    gradings: tuple
    differential: Mapping[tuple[int, int], PolyUV] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.labels) != len(self.gradings):
            raise ValueError("labels and gradings differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("generator labels must be distinct")
        object.__setattr__(
            self, "gradings", tuple(Bigrading(*g) for g in self.gradings)
        )
        clean = {}
        n = len(self.labels)
        for (t, s), p in dict(self.differential).items():
            if not (0 <= t < n and 0 <= s < n):
                raise IndexError(f"differential entry {(t, s)} out of range")
            p = frozenset(Monomial(*m) for m in p)
            if p:
                clean[(t, s)] = p
        object.__setattr__(self, "differential", clean)

    @classmethod
    def build(cls, gens: Iterable[tuple[Label, tuple[int, int]]],
              arrows: Iterable[tuple[Label, Label, PolyUV]] = ()) -> "BigradedComplex":
        """Build from ``(label, (gr_u, gr_v))`` pairs and ``(source, target, coeff)`` arrows."""
        gens = list(gens)
        labels = tuple(g[0] for g in gens)
        index = {lab: i for i, lab in enumerate(labels)}
        diff: dict[tuple[int, int], PolyUV] = defaultdict(frozenset)
        for src, tgt, coeff in arrows:
            key = (index[tgt], index[src])
            diff[key] = poly_add(diff[key], coeff)
        return cls(labels, tuple(g[1] for g in gens), dict(diff))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        return self.labels.index(label)

    def alexander(self, i: int) -> int:
        return self.gradings[i].alexander

    def boundary(self, label: Label) -> dict:
        """Boundary of one generator as ``{target_label: coefficient}``."""
        s = self.index(label)
        return {self.labels[t]: p for (t, src), p in self.differential.items() if src == s}

    def columns(self) -> list[dict[int, PolyUV]]:
        cols: list[dict[int, PolyUV]] = [dict() for _ in self.labels]
        for (t, s), p in self.differential.items():
            cols[s][t] = p
        return cols

    def relabel(self, mapping) -> "BigradedComplex":
        return BigradedComplex(tuple(mapping(l) for l in self.labels), self.gradings,
                               self.differential)

    def shift(self, du: int, dv: int) -> "BigradedComplex":
        return BigradedComplex(self.labels, tuple(g.shift(du, dv) for g in self.gradings),
                               self.differential)

    def describe(self) -> str:
        lines = []
        cols = self.columns()
        for i, lab in enumerate(self.labels):
            terms = [f"{poly_str(p)}*{self.labels[t]}" for t, p in sorted(cols[i].items())]
            g = self.gradings[i]
            lines.append(f"d({lab}) = {' + '.join(terms) or '0'}    gr=({g.gr_u},{g.gr_v})")
        return "\n".join(lines)


def unknot_complex(label: Label = "x") -> BigradedComplex:
    return BigradedComplex((label,), (Bigrading(0, 0),), {})


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidationReport:
    square_zero: bool
    homogeneous: bool
    parity: bool
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.square_zero and self.homogeneous and self.parity

    def __bool__(self) -> bool:
        return self.ok


def differential_squared(c: BigradedComplex) -> dict[tuple[int, int], PolyUV]:
    cols = c.columns()
    out: dict[tuple[int, int], PolyUV] = defaultdict(frozenset)
    for s, col in enumerate(cols):
        for mid, p in col.items():
            for t, q in cols[mid].items():
                out[(t, s)] = poly_add(out[(t, s)], poly_mul(q, p))
    return {k: v for k, v in out.items() if v}


def validate_complex(c: BigradedComplex) -> ValidationReport:
    problems = []
    sq = differential_squared(c)
    for (t, s), p in sorted(sq.items()):
        problems.append(f"d^2({c.labels[s]}) has {poly_str(p)}*{c.labels[t]}")
    homogeneous = True
    for (t, s), p in c.differential.items():
        gs, gt = c.gradings[s], c.gradings[t]
        for a, b in p:
            if gt.gr_u - 2 * a != gs.gr_u - 1 or gt.gr_v - 2 * b != gs.gr_v - 1:
                homogeneous = False
                problems.append(
                    f"term U^{a}V^{b}*{c.labels[t]} in d({c.labels[s]}) is not of bidegree (-1,-1)")
    parity = True
    for lab, g in zip(c.labels, c.gradings):
        if (g.gr_u - g.gr_v) % 2:
            parity = False
            problems.append(f"generator {lab} has gr_u - gr_v odd")
    return ValidationReport(not sq, homogeneous, parity, tuple(problems))


class InvalidComplexError(InternalInvariantError):
    """A constructed complex failed validation."""


def require_valid(c: BigradedComplex, what: str = "complex") -> BigradedComplex:
    report = validate_complex(c)
    if not report:
        raise InvalidComplexError(f"{what} failed validation: " + "; ".join(report.problems[:5]))
    return c


# ---------------------------------------------------------------------------
# constructions

def tensor_product(c1: BigradedComplex, c2: BigradedComplex) -> BigradedComplex:
    """Tensor product over F2[U,V]; generator labels are pairs."""
    n2 = len(c2)
    labels = tuple((a, b) for a in c1.labels for b in c2.labels)
    gradings = tuple(g1.shift(*g2) for g1 in c1.gradings for g2 in c2.gradings)
    diff: dict[tuple[int, int], PolyUV] = {}
    for (t, s), p in c1.differential.items():
        for j in range(n2):
            diff[(t * n2 + j, s * n2 + j)] = p
    for (t, s), p in c2.differential.items():
        for i in range(len(c1)):
            key = (i * n2 + t, i * n2 + s)
            diff[key] = poly_add(diff.get(key, ZERO), p)
    return BigradedComplex(labels, gradings, diff)


def _dual_label(label):
    if isinstance(label, tuple) and len(label) == 2 and label[0] == "*":
        return label[1]
    return ("*", label)


def dualize(c: BigradedComplex) -> BigradedComplex:
    """Hom over F2[U,V] into the ground ring: negate gradings, transpose."""
    labels = tuple(_dual_label(l) for l in c.labels)
    gradings = tuple(Bigrading(-g.gr_u, -g.gr_v) for g in c.gradings)
    diff = {(s, t): p for (t, s), p in c.differential.items()}
    return BigradedComplex(labels, gradings, diff)


def direct_sum(*cs: BigradedComplex) -> BigradedComplex:
    labels, gradings, diff, off = [], [], {}, 0
    for c in cs:
        labels.extend(c.labels)
        gradings.extend(c.gradings)
        for (t, s), p in c.differential.items():
            diff[(t + off, s + off)] = p
        off += len(c)
    return BigradedComplex(tuple(labels), tuple(gradings), diff)


def swap_uv(c: BigradedComplex) -> BigradedComplex:
    """Exchange the roles of U and V (and of the two gradings)."""
    return BigradedComplex(
        c.labels,
        tuple(Bigrading(g.gr_v, g.gr_u) for g in c.gradings),
        {k: frozenset(Monomial(b, a) for a, b in p) for k, p in c.differential.items()},
    )


def is_isomorphic(c1: BigradedComplex, c2: BigradedComplex) -> bool:
    """Decide whether two complexes agree up to relabeling of generators.

    Backtracking over grading-preserving bijections; fine for the small
    complexes this package deals with.
    """
    if len(c1) != len(c2) or sorted(c1.gradings) != sorted(c2.gradings):
        return False
    n = len(c1)
    cols1, cols2 = c1.columns(), c2.columns()
    rows1: list[dict[int, PolyUV]] = [dict() for _ in range(n)]
    rows2: list[dict[int, PolyUV]] = [dict() for _ in range(n)]
    for (t, s), p in c1.differential.items():
        rows1[t][s] = p
    for (t, s), p in c2.differential.items():
        rows2[t][s] = p

    def signature(cols, rows, i, gradings):
        return (gradings[i], tuple(sorted(tuple(sorted(p)) for p in cols[i].values())),
                tuple(sorted(tuple(sorted(p)) for p in rows[i].values())))

    sig1 = [signature(cols1, rows1, i, c1.gradings) for i in range(n)]
    sig2 = [signature(cols2, rows2, i, c2.gradings) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return False
    # breadth-first order, so each generator after the first of its component
    # has an already-mapped neighbour that pins down its candidates
    nbrs1 = [set(cols1[i]) | set(rows1[i]) for i in range(n)]
    nbrs2 = [set(cols2[j]) | set(rows2[j]) for j in range(n)]
    order, anchor, seen = [], {}, set()
    for root in sorted(range(n), key=lambda i: -len(nbrs1[i])):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            i = queue.pop(0)
            order.append(i)
            for k in sorted(nbrs1[i]):
                if k not in seen:
                    seen.add(k)
                    anchor[k] = i
                    queue.append(k)
    image: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int, j: int) -> bool:
        for t, p in cols1[i].items():
            if t in image and cols2[j].get(image[t]) != p:
                return False
        for s, p in rows1[i].items():
            if s in image and rows2[j].get(image[s]) != p:
                return False
        # entries into already-mapped generators must not appear spuriously
        mapped_back = {v: k for k, v in image.items()}
        for t, p in cols2[j].items():
            if t in mapped_back and cols1[i].get(mapped_back[t]) != p:
                return False
        for s, p in rows2[j].items():
            if s in mapped_back and rows1[i].get(mapped_back[s]) != p:
                return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        candidates = nbrs2[image[anchor[i]]] if i in anchor else range(n)
        for j in sorted(candidates):
            if j in used or sig2[j] != sig1[i] or not consistent(i, j):
                continue
            image[i] = j
            used.add(j)
            if search(k + 1):
                return True
            del image[i]
            used.discard(j)
        return False

    return search(0)
