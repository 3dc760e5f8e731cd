"""Knot Floer complexes of genus-1 doubly pointed Heegaard diagrams.

Conventions
-----------
The torus is the plane modulo Z^2.  Lifts of alpha are the horizontal
lines ``y = h`` (h integer).  One lift of beta is the periodic PL curve
through the listed vertices, invariant under translation by ``(m, n)``;
the other lifts are its horizontal integer translates.  All coordinates
are exact rationals.

A domain from generator x to generator y is bounded by the alpha arc
from x to y followed by the beta arc from y back to x; an index-one
disk is such a domain that is an embedded, counterclockwise polygon with
convex corners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .complexes import (BigradedComplex, Bigrading, differential_squared, mono, poly_add,
                        validate_complex)
from .errors import DomainError, InternalInvariantError
from .homology import homology_dvr
from .specialize import specialize

Point = tuple[Fraction, Fraction]


class DiagramError(DomainError):
    """The diagram violates a structural requirement."""


@dataclass(frozen=True)
class OneOneDiagram:
    """One beta lift (closed up by ``translation``) plus the two basepoints.

    ``beta`` lists the vertices of one period; its last vertex must equal
    the first plus ``translation``.  ``labels`` optionally names the
    generators in path order.
    """

    beta: tuple[Point, ...]
    translation: tuple[int, int]
    w: Point
    z: Point
    labels: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple((Fraction(x), Fraction(y)) for x, y in self.beta))
        object.__setattr__(self, "translation", tuple(int(t) for t in self.translation))
        object.__setattr__(self, "w", (Fraction(self.w[0]), Fraction(self.w[1])))
        object.__setattr__(self, "z", (Fraction(self.z[0]), Fraction(self.z[1])))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    def swap_basepoints(self) -> "OneOneDiagram":
        return OneOneDiagram(self.beta, self.translation, self.z, self.w, self.labels)

    def translated(self, dx: int, dy: int) -> "OneOneDiagram":
        """Same diagram with the chosen beta lift moved by a lattice vector."""
        return OneOneDiagram(tuple((x + dx, y + dy) for x, y in self.beta), self.translation,
                             self.w, self.z, self.labels)


@dataclass(frozen=True)
class Generator:
    index: int
    label: object
    point: Point           # crossing in the chosen period
    height: int            # the alpha line it lies on
    segment: int           # segment index within the period
    fraction: Fraction     # position along that segment
    upward: bool           # beta crosses alpha upward (in path direction)


@dataclass(frozen=True)
class Bigon:
    from_gen: object
    to_gen: object
    n_w: int
    n_z: int


@dataclass(frozen=True)
class DiagramReport:
    ok: bool
    generator_count: int
    problems: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# exact planar geometry

def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (_cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_meet(a: Point, b: Point, c: Point, d: Point) -> bool:
    d1, d2 = _cross(c, d, a), _cross(c, d, b)
    d3, d4 = _cross(a, b, c), _cross(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and \
            ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True
    return (_on_segment(a, c, d) or _on_segment(b, c, d)
            or _on_segment(c, a, b) or _on_segment(d, a, b))


def winding_number(poly: Sequence[Point], p: Point) -> int:
    """Winding number of the closed polygon ``poly`` around ``p`` (p not on it)."""
    wn = 0
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if a[1] <= p[1]:
            if b[1] > p[1] and _cross(a, b, p) > 0:
                wn += 1
        elif b[1] <= p[1] and _cross(a, b, p) < 0:
            wn -= 1
    return wn


def _signed_area2(poly: Sequence[Point]) -> Fraction:
    k = len(poly)
    return sum((poly[i][0] * poly[(i + 1) % k][1] - poly[(i + 1) % k][0] * poly[i][1]
                for i in range(k)), Fraction(0))


def _lattice_count(poly: Sequence[Point], pt: Point) -> int:
    """Sum of winding numbers of ``poly`` around all integer translates of ``pt``."""
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    total = 0
    for a in range(math.ceil(min(xs) - pt[0]), math.floor(max(xs) - pt[0]) + 1):
        for b in range(math.ceil(min(ys) - pt[1]), math.floor(max(ys) - pt[1]) + 1):
            total += winding_number(poly, (pt[0] + a, pt[1] + b))
    return total


def _angle(u, v) -> float:
    return math.atan2(float(u[0] * v[1] - u[1] * v[0]), float(u[0] * v[0] + u[1] * v[1]))


def _point_segment_distance(p: Point, a: Point, b: Point) -> float:
    px, py = float(p[0]), float(p[1])
    ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
    dx, dy = bx - ax, by - ay
    L = dx * dx + dy * dy
    t = 0.0 if L == 0 else max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / L))
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


# ---------------------------------------------------------------------------
# diagram structure

def _period(d: OneOneDiagram) -> list[tuple[Point, Point]]:
    pts = d.beta
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


def validate_diagram(d: OneOneDiagram) -> DiagramReport:
    problems: list[str] = []
    m, n = d.translation
    pts = d.beta
    if len(pts) < 2:
        return DiagramReport(False, 0, ("beta needs at least two vertices",))
    if pts[-1] != (pts[0][0] + m, pts[0][1] + n):
        problems.append("last beta vertex must equal the first plus the translation")
    if abs(n) != 1:
        problems.append(f"translation {d.translation} has |n| != 1: the diagram does not present S^3")
    for p in pts:
        if p[1].denominator == 1:
            problems.append(f"beta vertex {_fmt(p)} lies on an alpha line")
    segs = _period(d)
    for a, b in segs:
        if a == b:
            problems.append(f"repeated beta vertex {_fmt(a)}")
    for name, p in (("w", d.w), ("z", d.z)):
        if p[1].denominator == 1:
            problems.append(f"basepoint {name} lies on an alpha line")
    if problems:
        return DiagramReport(False, 0, tuple(problems))

    k = len(segs)
    for i, (a, b) in enumerate(segs):
        for j, (c, e) in enumerate(segs):
            for dx, dy in _translates_near((a, b), (c, e)):
                if (dx, dy) == (0, 0) and j <= i:
                    continue
                c2 = (c[0] + dx, c[1] + dy)
                e2 = (e[0] + dx, e[1] + dy)
                if not _segments_meet(a, b, c2, e2):
                    continue
                # neighbouring segments of the same lift share exactly one endpoint
                if (dx, dy) == (0, 0) and j == i + 1 and _shares_only_vertex(a, b, c2, e2, b):
                    continue
                if (dx, dy) == (m, n) and j == 0 and i == k - 1 and _shares_only_vertex(
                        a, b, c2, e2, b):
                    continue
                if (dx, dy) == (-m, -n) and i == 0 and j == k - 1 and _shares_only_vertex(
                        a, b, c2, e2, a):
                    continue
                problems.append(
                    f"beta segment {i} meets translate ({dx},{dy}) of segment {j}: "
                    "beta is not embedded in the torus")
    for name, p in (("w", d.w), ("z", d.z)):
        for a, b in segs:
            for dx, dy in _translates_near((a, b), (p, p)):
                if _on_segment((p[0] + dx, p[1] + dy), a, b):
                    problems.append(f"basepoint {name} lies on beta")
    if d.w[0] - d.z[0] == int(d.w[0] - d.z[0]) and d.w[1] - d.z[1] == int(d.w[1] - d.z[1]):
        problems.append("basepoints w and z coincide on the torus")
    gens = _crossings(d)
    if d.labels is not None and len(d.labels) != len(gens):
        problems.append(f"{len(d.labels)} labels given for {len(gens)} generators")
    return DiagramReport(not problems, len(gens), tuple(dict.fromkeys(problems)))


def _translates_near(s1, s2):
    """Lattice vectors v for which the bounding boxes of s1 and s2 + v overlap."""
    (a, b), (c, e) = s1, s2
    ranges = []
    for ax in (0, 1):
        lo1, hi1 = sorted((a[ax], b[ax]))
        lo2, hi2 = sorted((c[ax], e[ax]))
        ranges.append(range(math.ceil(lo1 - hi2), math.floor(hi1 - lo2) + 1))
    return [(dx, dy) for dx in ranges[0] for dy in ranges[1]]


def _shares_only_vertex(a, b, c, e, v) -> bool:
    """Segments ab and ce touch only at ``v`` and are not overlapping collinearly."""
    if _cross(a, b, c) == 0 and _cross(a, b, e) == 0:
        # collinear: allowed only if they do not fold back onto each other
        u = (b[0] - a[0], b[1] - a[1])
        w_ = (e[0] - c[0], e[1] - c[1])
        return u[0] * w_[0] + u[1] * w_[1] > 0
    return True


def _fmt(p: Point) -> str:
    return f"({p[0]}, {p[1]})"


def _crossings(d: OneOneDiagram) -> list[tuple[int, Fraction, int, Point, bool]]:
    out = []
    for r, (a, b) in enumerate(_period(d)):
        lo, hi = sorted((a[1], b[1]))
        hs = range(math.floor(lo) + 1, math.ceil(hi))
        up = b[1] > a[1]
        found = []
        for h in hs:
            f = (h - a[1]) / (b[1] - a[1])
            found.append((f, h, (a[0] + f * (b[0] - a[0]), Fraction(h)), up))
        found.sort()
        out += [(r, f, h, p, up) for f, h, p, up in found]
    return out


def require_valid_diagram(d: OneOneDiagram) -> None:
    rep = validate_diagram(d)
    if not rep:
        raise DiagramError("invalid (1,1) diagram: " + "; ".join(rep.problems))


def enumerate_generators(d: OneOneDiagram) -> list[Generator]:
    """Intersections of alpha and beta in path order."""
    require_valid_diagram(d)
    out = []
    for i, (r, f, h, p, up) in enumerate(_crossings(d)):
        label = d.labels[i] if d.labels is not None else i
        out.append(Generator(i, label, p, h, r, f, up))
    return out


# ---------------------------------------------------------------------------
# the universal cover

class _Cover:
    """The chosen beta lift, the alpha line y = 0, and one lift of each generator on both."""

    def __init__(self, d: OneOneDiagram, gens: list[Generator], lift: int = 0, line: int = 0):
        self.d = d
        self.k = len(d.beta) - 1
        self.m, self.n = d.translation
        self.gens = gens
        self.lift = lift
        # generator g meets the line y = line after moving j periods along the lift
        self.param = []
        self.point = []
        for g in gens:
            j = (line - g.height) * self.n
            self.param.append((j * self.k + g.segment, g.fraction))
            self.point.append((g.point[0] + j * self.m + lift, g.point[1] + j * self.n))

    def vertex(self, J: int) -> Point:
        j, r = divmod(J, self.k)
        p = self.d.beta[r]
        return (p[0] + j * self.m + self.lift, p[1] + j * self.n)

    def beta_arc(self, y: int, x: int) -> list[Point]:
        """Vertices of the beta arc from generator y to generator x (inclusive)."""
        (sy, _), (sx, _) = self.param[y], self.param[x]
        pts = [self.point[y]]
        if self.param[y] > self.param[x]:
            pts += [self.vertex(J) for J in range(sy, sx, -1)]
        else:
            pts += [self.vertex(J) for J in range(sy + 1, sx + 1)]
        pts.append(self.point[x])
        return pts

    def boundary(self, x: int, y: int) -> list[Point]:
        """Closed polygon: alpha from x to y, then beta from y to x (last vertex x dropped)."""
        return [self.point[x]] + self.beta_arc(y, x)[:-1]

    def beta_direction(self, g: int) -> Point:
        r = self.gens[g].segment
        a, b = self.d.beta[r], self.d.beta[r + 1]
        return (b[0] - a[0], b[1] - a[1])


def _euler_measure(cov: _Cover, x: int, y: int) -> Fraction:
    """Euler measure of the domain bounded by alpha x->y and beta y->x.

    Equals the turning of the beta arc divided by 2 pi, after straightening
    beta to be vertical where it meets alpha.
    """
    arc = cov.beta_arc(y, x)
    forward = cov.param[y] < cov.param[x]
    sy = 1 if cov.gens[y].upward == forward else -1
    sx = 1 if cov.gens[x].upward == forward else -1
    dirs = [(0, sy)]
    dirs += [(b[0] - a[0], b[1] - a[1]) for a, b in zip(arc, arc[1:]) if a != b]
    dirs.append((0, sx))
    total = sum(_angle(u, v) for u, v in zip(dirs, dirs[1:]))
    quarter = total / (math.pi / 2)
    q = round(quarter)
    if abs(q - quarter) > 1e-6:
        raise InternalInvariantError("beta turning is not a multiple of pi/2")
    return Fraction(q, 4)


def _corner_multiplicity(cov: _Cover, poly: list[Point], g: int) -> Fraction:
    """Average multiplicity of the four quadrants at generator g."""
    p = cov.point[g]
    k = len(poly)
    dist = math.inf
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        if a == p or b == p:
            continue
        dist = min(dist, _point_segment_distance(p, a, b))
    v = cov.beta_direction(g)
    norm = 1 + math.hypot(float(v[0]), float(v[1]))
    eta = Fraction(min(dist, 1.0) / (4 * norm)).limit_denominator(10 ** 9)
    if eta <= 0:
        raise InternalInvariantError("degenerate corner")
    while True:
        ok = True
        vals = []
        for sa in (1, -1):
            for sb in (1, -1):
                q = (p[0] + eta * (sa + sb * v[0]), p[1] + eta * sb * v[1])
                if any(_on_segment(q, poly[i], poly[(i + 1) % k]) for i in range(k)):
                    ok = False
                vals.append(winding_number(poly, q))
        if ok:
            return Fraction(sum(vals), 4)
        eta /= 2


@dataclass(frozen=True)
class _Domain:
    maslov: Fraction
    n_w: int
    n_z: int


def _domain(cov: _Cover, x: int, y: int) -> _Domain:
    poly = cov.boundary(x, y)
    e = _euler_measure(cov, x, y)
    mu = e + _corner_multiplicity(cov, poly, x) + _corner_multiplicity(cov, poly, y)
    return _Domain(mu, _lattice_count(poly, cov.d.w), _lattice_count(poly, cov.d.z))


def _is_bigon(cov: _Cover, x: int, y: int) -> bool:
    px, py = cov.point[x], cov.point[y]
    lo_t, hi_t = sorted((cov.param[x], cov.param[y]))
    lo_x, hi_x = sorted((px[0], py[0]))
    for g in range(len(cov.gens)):
        if g in (x, y):
            continue
        if lo_t < cov.param[g] < hi_t and lo_x < cov.point[g][0] < hi_x:
            return False  # beta arc returns to the alpha arc: boundary not simple
    poly = cov.boundary(x, y)
    if _signed_area2(poly) <= 0:
        return False
    # convex corners (counterclockwise polygon): left turns at x and at y
    prev_x = poly[-1]
    next_y = poly[2] if len(poly) > 2 else px
    return _cross(prev_x, px, py) > 0 and _cross(px, py, next_y) > 0


def _bigons_on_cover(cov: _Cover) -> list[tuple[int, int, int, int]]:
    out = []
    n = len(cov.gens)
    for x in range(n):
        for y in range(n):
            if x != y and _is_bigon(cov, x, y):
                dom = _domain(cov, x, y)
                if dom.maslov != 1:
                    raise InternalInvariantError(
                        f"embedded bigon {x}->{y} has Maslov index {dom.maslov}")
                out.append((x, y, dom.n_w, dom.n_z))
    return out


def count_bigons(d: OneOneDiagram, verify: bool = False) -> list[Bigon]:
    """All index-one embedded bigons, one per deck-transformation class.

    Every bigon can be translated so that its corners lie on the line
    y = 0 and on the chosen beta lift, where each generator has exactly one
    lift; the search is therefore finite.  With ``verify`` the count is
    repeated by brute force over a window of alpha and beta lifts.
    """
    gens = enumerate_generators(d)
    cov = _Cover(d, gens)
    found = _bigons_on_cover(cov)
    result = [Bigon(gens[x].label, gens[y].label, nw, nz) for x, y, nw, nz in found]
    if verify:
        window = len(gens) + abs(d.translation[0]) + 2
        for w in (window, 2 * window):
            other = count_bigons_windowed(d, w, 2)
            if sorted(map(_bigon_key, other)) != sorted(map(_bigon_key, result)):
                raise InternalInvariantError("bigon count depends on the search window")
    return result


def _bigon_key(b: Bigon):
    return (repr(b.from_gen), repr(b.to_gen), b.n_w, b.n_z)


def count_bigons_windowed(d: OneOneDiagram, lift_window: int, line_window: int) -> list[Bigon]:
    """Recount over beta lifts ``|i| <= lift_window`` and alpha lines ``|h| <= line_window``.

    Bigons found at different positions are identified when they join the
    same generators with the same multiplicities, so the output is
    comparable with :func:`count_bigons`.
    """
    gens = enumerate_generators(d)
    seen = {}
    for i in range(-lift_window, lift_window + 1):
        for h in range(-line_window, line_window + 1):
            for found in _bigons_on_cover(_Cover(d, gens, i, h)):
                seen[found] = True
    return [Bigon(gens[x].label, gens[y].label, nw, nz) for (x, y, nw, nz) in seen]


# ---------------------------------------------------------------------------
# the complex

def _relative_gradings(cov: _Cover) -> list[tuple[int, int]]:
    out = [(0, 0)]
    for g in range(1, len(cov.gens)):
        dom = _domain(cov, 0, g)
        du = dom.maslov - 2 * dom.n_w
        dv = dom.maslov - 2 * dom.n_z
        if du.denominator != 1 or dv.denominator != 1:
            raise InternalInvariantError("non-integral relative grading")
        out.append((-int(du), -int(dv)))
    return out


def cfk_from_diagram(d: OneOneDiagram, verify: bool = False) -> BigradedComplex:
    """CFK over F[U,V] of a genus-1 doubly pointed diagram, absolutely graded."""
    gens = enumerate_generators(d)
    cov = _Cover(d, gens)
    bigons = _bigons_on_cover(cov)
    if verify:
        count_bigons(d, verify=True)
    grads = _relative_gradings(cov)
    diff: dict = {}
    for x, y, nw, nz in bigons:
        diff[(y, x)] = poly_add(diff.get((y, x), frozenset()), mono(nw, nz))
    labels = tuple(g.label for g in gens)
    c = BigradedComplex(labels, tuple(Bigrading(*g) for g in grads), diff)
    if differential_squared(c):
        raise InternalInvariantError("d^2 != 0 on the diagram complex: bigon counting bug")
    report = validate_complex(c)
    if not report.homogeneous:
        raise InternalInvariantError(
            "bigons inconsistent with domain gradings: " + "; ".join(report.problems[:3]))
    shifts = []
    for mode in ("V1", "U1"):
        mod = homology_dvr(specialize(c, mode)).module
        if mod.rank != 1 or mod.torsion:
            raise DiagramError(
                f"{mode} specialization has homology {mod.describe()}, not a single tower: "
                "the diagram does not present a knot in S^3")
        shifts.append(-mod.free_gradings[0])
    c = c.shift(*shifts)
    report = validate_complex(c)
    if not report:
        raise DiagramError("diagram complex fails validation: " + "; ".join(report.problems[:3]))
    return c


# ---------------------------------------------------------------------------
# JSON form

def _parse_rational(v, where: str) -> Fraction:
    from .errors import SchemaError
    if isinstance(v, bool):
        raise SchemaError(f"{where}: expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        num, _, den = s.partition("/")
        try:
            if not num.lstrip("-").isdigit() or (den and not den.isdigit()):
                raise ValueError
            f = Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{where}: {v!r} is not an exact rational 'p/q'") from None
        return f
    raise SchemaError(f"{where}: {v!r} must be an integer or a string 'p/q' (decimals are rejected)")


def _format_rational(f: Fraction):
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def diagram_from_json(doc: dict) -> OneOneDiagram:
    from .errors import SchemaError
    if not isinstance(doc, dict):
        raise SchemaError("diagram must be a JSON object")
    for key in ("beta", "translation", "w", "z"):
        if key not in doc:
            raise SchemaError(f"diagram is missing {key!r}")

    def point(v, where):
        if not isinstance(v, list) or len(v) != 2:
            raise SchemaError(f"{where}: expected [x, y]")
        return (_parse_rational(v[0], where), _parse_rational(v[1], where))

    if not isinstance(doc["beta"], list):
        raise SchemaError("beta: expected a list of points")
    beta = tuple(point(p, f"beta[{i}]") for i, p in enumerate(doc["beta"]))
    tr = doc["translation"]
    if (not isinstance(tr, list) or len(tr) != 2
            or not all(isinstance(t, int) and not isinstance(t, bool) for t in tr)):
        raise SchemaError("translation: expected two integers")
    labels = doc.get("labels")
    if labels is not None and not (isinstance(labels, list)
                                   and all(isinstance(l, (str, int)) for l in labels)):
        raise SchemaError("labels: expected a list of strings")
    return OneOneDiagram(beta, tuple(tr), point(doc["w"], "w"), point(doc["z"], "z"),
                         tuple(labels) if labels is not None else None)


def diagram_to_json(d: OneOneDiagram) -> dict:
    out = {
        "beta": [[_format_rational(x), _format_rational(y)] for x, y in d.beta],
        "translation": list(d.translation),
        "w": [_format_rational(c) for c in d.w],
        "z": [_format_rational(c) for c in d.z],
    }
    if d.labels is not None:
        out["labels"] = list(d.labels)
    return out
