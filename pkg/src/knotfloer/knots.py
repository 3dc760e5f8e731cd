"""Knot complexes from knot-level data, and the invariants read off from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .complexes import (BigradedComplex, direct_sum, dualize, mono, require_valid,
                        tensor_product, unknot_complex)
from .errors import DomainError
from .homology import homology_dvr, homology_f2
from .modules import DvrModule, GradedVectorSpace
from .specialize import specialize


# ---------------------------------------------------------------------------
# Laurent polynomials

@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in t, stored as ``{exponent: coefficient}``."""

    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(e): int(c) for e, c in dict(self.coeffs).items() if c}
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "LaurentPoly":
        out: dict[int, int] = {}
        for e, c in pairs:
            out[int(e)] = out.get(int(e), 0) + int(c)
        return cls(out)

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    def pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self.coeffs.items()]

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __getitem__(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def inverted(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def is_symmetric(self) -> bool:
        return self == self.inverted()

    def is_alexander_normalized(self) -> bool:
        return self.is_symmetric() and self.at_one() == 1

    @property
    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs.items():
            mono_ = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono_ and abs(c) == 1:
                body = mono_
            else:
                body = f"{abs(c)}{mono_}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])


# ---------------------------------------------------------------------------
# knot specifications

@dataclass(frozen=True)
class LSpaceKnot:
    delta: LaurentPoly


@dataclass(frozen=True)
class Alternating:
    delta: LaurentPoly
    signature: int


@dataclass(frozen=True)
class ConnectedSum:
    summands: tuple


@dataclass(frozen=True)
class Mirror:
    of: "KnotSpec"


@dataclass(frozen=True)
class Reverse:
    of: "KnotSpec"


@dataclass(frozen=True)
class OneOne:
    diagram: object  # OneOneDiagram


KnotSpec = Union[LSpaceKnot, Alternating, ConnectedSum, Mirror, Reverse, OneOne]


class KnotDataError(DomainError):
    """Knot-level input does not describe a knot of the requested family."""


# ---------------------------------------------------------------------------
# constructors

def staircase_from_alexander(delta: LaurentPoly) -> BigradedComplex:
    """Staircase complex of an L-space knot with Alexander polynomial ``delta``.

    Generators x_0..x_n sit at the exponents a_0 > ... > a_n of ``delta``;
    for odd i, d x_i = U^(a_{i-1} - a_i) x_{i-1} + V^(a_i - a_{i+1}) x_{i+1}.
    """
    terms = list(delta.coeffs.items())  # decreasing exponents
    if not terms:
        raise KnotDataError("zero polynomial is not an Alexander polynomial")
    n = len(terms) - 1
    for i, (_, c) in enumerate(terms):
        if c != (-1) ** i:
            raise KnotDataError(
                f"not an L-space knot polynomial: coefficients must be +1, -1, +1, ... (got {delta})")
    if n % 2:
        raise KnotDataError(f"not an L-space knot polynomial: even number of terms in {delta}")
    a = [e for e, _ in terms]
    b = [None] + [a[i - 1] - a[i] for i in range(1, n + 1)]
    gu = [0] * (n + 1)
    for i in range(1, n + 1):
        gu[i] = gu[i - 1] - 2 * b[i] + 1 if i % 2 else gu[i - 1] - 1
    gv = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        gv[i] = gv[i + 1] - 2 * b[i + 1] + 1 if i % 2 else gv[i + 1] - 1
    for i in range(n + 1):
        if gu[i] - gv[i] != 2 * a[i]:
            raise KnotDataError(f"not an L-space knot polynomial: {delta} is not symmetric")
    gens = [(f"x{i}", (gu[i], gv[i])) for i in range(n + 1)]
    arrows = []
    for i in range(1, n, 2):
        arrows.append((f"x{i}", f"x{i - 1}", mono(b[i], 0)))
        arrows.append((f"x{i}", f"x{i + 1}", mono(0, b[i + 1])))
    return require_valid(BigradedComplex.build(gens, arrows), "staircase")


def _box(tag, s0: int, m0: int) -> BigradedComplex:
    p, q = m0, m0 - 2 * s0
    gens = [((tag, 1), (p, q)), ((tag, 2), (p + 1, q - 1)),
            ((tag, 3), (p - 1, q + 1)), ((tag, 4), (p, q))]
    arrows = [((tag, 1), (tag, 2), mono(1, 0)), ((tag, 1), (tag, 3), mono(0, 1)),
              ((tag, 2), (tag, 4), mono(0, 1)), ((tag, 3), (tag, 4), mono(1, 0))]
    return BigradedComplex.build(gens, arrows)


def _torus_2_staircase(tau: int) -> BigradedComplex:
    """Staircase with unit steps and top Alexander grading ``tau`` (> 0)."""
    return staircase_from_alexander(
        LaurentPoly({tau - i: (-1) ** i for i in range(2 * tau + 1)}))


def thin_from_alexander_signature(delta: LaurentPoly, sigma: int) -> BigradedComplex:
    """A thin complex with Alexander polynomial ``delta`` supported on m = s + sigma/2.

    The complex is one unit-step staircase (or its dual) carrying the
    tower, plus square-shaped acyclic-at-U=V=1 "box" summands placed
    greedily from the top Alexander grading down.
    """
    if sigma % 2:
        raise KnotDataError("signature must be even")
    if not delta.is_alexander_normalized():
        raise KnotDataError(f"{delta} is not a symmetrized Alexander polynomial with value 1 at t=1")
    shift = sigma // 2
    for s, a in delta.coeffs.items():
        if a * (-1) ** (s + shift) < 0:
            raise KnotDataError(
                f"coefficient of t^{s} in {delta} has the wrong sign for signature {sigma}")
    tau = -shift
    if tau > 0:
        stair = _torus_2_staircase(tau)
    elif tau < 0:
        stair = dualize(_torus_2_staircase(-tau))
    else:
        stair = unknot_complex("x0")
    stair = stair.relabel(lambda l: ("x", l))
    residual = {s: abs(a) for s, a in delta.coeffs.items()}
    for g in stair.gradings:
        s = g.alexander
        residual[s] = residual.get(s, 0) - 1
    pieces = [stair]
    box_count = 0
    for s in sorted(residual, reverse=True):
        k = residual.get(s, 0)
        if k < 0:
            raise KnotDataError(f"(delta, sigma) = ({delta}, {sigma}) implies negative box count")
        if k == 0:
            continue
        center = s - 1
        for _ in range(k):
            pieces.append(_box(("box", box_count), center, center + shift))
            box_count += 1
        residual[s] = 0
        residual[center] = residual.get(center, 0) - 2 * k
        residual[center - 1] = residual.get(center - 1, 0) - k
    if any(residual.values()):
        raise KnotDataError(f"(delta, sigma) = ({delta}, {sigma}) is not realized by a thin complex")
    out = pieces[0]
    for p in pieces[1:]:
        out = direct_sum(out, p)
    return require_valid(out, "thin complex")


def build(spec: KnotSpec) -> BigradedComplex:
    if isinstance(spec, LSpaceKnot):
        return staircase_from_alexander(spec.delta)
    if isinstance(spec, Alternating):
        return thin_from_alexander_signature(spec.delta, spec.signature)
    if isinstance(spec, ConnectedSum):
        if not spec.summands:
            return unknot_complex()
        out = build(spec.summands[0])
        for k in spec.summands[1:]:
            out = tensor_product(out, build(k))
        return require_valid(out, "connected sum")
    if isinstance(spec, Mirror):
        return dualize(build(spec.of))
    if isinstance(spec, Reverse):
        return build(spec.of)
    if isinstance(spec, OneOne):
        from .oneone import cfk_from_diagram
        return cfk_from_diagram(spec.diagram)
    raise TypeError(f"not a knot specification: {spec!r}")


def spec_alexander(spec: KnotSpec) -> LaurentPoly:
    """Alexander polynomial read from the specification alone (leaf data multiplied)."""
    if isinstance(spec, (LSpaceKnot, Alternating)):
        return spec.delta
    if isinstance(spec, ConnectedSum):
        out = LaurentPoly.one()
        for k in spec.summands:
            out = out * spec_alexander(k)
        return out
    if isinstance(spec, Mirror):
        return spec_alexander(spec.of).inverted()
    if isinstance(spec, Reverse):
        return spec_alexander(spec.of)
    raise KnotDataError("Alexander polynomial of a diagram is only available from its complex")


# ---------------------------------------------------------------------------
# invariants

def hfk_hat(c: BigradedComplex) -> GradedVectorSpace:
    """ĤFK indexed by (m, s) = (gr_u, Alexander grading)."""
    h = homology_f2(specialize(c, "UV0"))
    return h.reindex(lambda g: (g.gr_u, g.alexander))


def hfk_minus(c: BigradedComplex, truncation: Optional[int] = None) -> DvrModule:
    """HFK⁻ as a graded F[U]-module (grading gr_u)."""
    m = homology_dvr(specialize(c, "V0"), truncation).module
    if m.rank != 1:
        raise KnotDataError(f"HFK^- has {m.rank} free summands; input is not a knot complex")
    return m


def genus(c: BigradedComplex) -> int:
    h = hfk_hat(c)
    return max(s for (_, s) in h.dims)


def is_fibered(c: BigradedComplex) -> bool:
    h = hfk_hat(c)
    g = genus(c)
    return sum(v for (m, s), v in h.dims.items() if s == g) == 1


def euler_characteristic(c: BigradedComplex) -> LaurentPoly:
    out: dict[int, int] = {}
    for (m, s), v in hfk_hat(c).dims.items():
        out[s] = out.get(s, 0) + (-1) ** (m % 2) * v
    return LaurentPoly(out)


TREFOIL = LaurentPoly({1: 1, 0: -1, -1: 1})
FIGURE_EIGHT = LaurentPoly({1: -1, 0: 3, -1: -1})


def _poly_divide(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials given as coefficient lists (lowest degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division is not exact")
    return out


def torus_knot_alexander(p: int, q: int) -> LaurentPoly:
    """Symmetrized Alexander polynomial of the (p, q) torus knot, p, q > 1 coprime."""
    def binom(k):  # t^k - 1
        return [-1] + [0] * (k - 1) + [1]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    coeffs = _poly_divide(mul(binom(p * q), binom(1)), mul(binom(p), binom(q)))
    shift = (p - 1) * (q - 1) // 2
    return LaurentPoly({e - shift: c for e, c in enumerate(coeffs)})
