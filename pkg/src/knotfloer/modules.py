"""Graded vector spaces and graded modules over a one-variable ring.

A finitely generated graded module over F[W] (or F[[W]]) with deg W = -2
is a sum of free summands F[W]_(d) and torsion summands F[W]/(W^n)_(c),
where the subscript is the grading of the summand's generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

ABSOLUTE = "absolute"
RELATIVE = "relative"


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite-dimensional graded vector space; ``dims`` omits zero entries."""

    dims: Mapping[Hashable, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.dims).items():
            if v < 0:
                raise ValueError(f"negative dimension at {k}")
            if v:
                clean[k] = int(v)
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def __getitem__(self, key) -> int:
        return self.dims.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, GradedVectorSpace):
            return NotImplemented
        return self.dims == other.dims

    def __hash__(self):
        return hash(tuple(self.dims.items()))

    def reindex(self, f) -> "GradedVectorSpace":
        out: dict = {}
        for k, v in self.dims.items():
            nk = f(k)
            out[nk] = out.get(nk, 0) + v
        return GradedVectorSpace(out)


class GradingModeError(ValueError):
    """Absolute and relative gradings were mixed."""


@dataclass(frozen=True, eq=False)
class DvrModule:
    """Isomorphism class of a graded F[W]-module.

    ``torsion`` holds pairs ``(c, n)``: a copy of F[W]/(W^n) generated in
    grading ``c``.  In relative mode gradings are meaningful only up to a
    common shift; modules with one free summand are normalized to put it
    at grading 0.
    """

    free_gradings: tuple[int, ...] = ()
    torsion: tuple[tuple[int, int], ...] = ()
    grading_mode: str = ABSOLUTE

    def __post_init__(self):
        if self.grading_mode not in (ABSOLUTE, RELATIVE):
            raise ValueError(f"unknown grading mode {self.grading_mode!r}")
        tors = tuple(sorted((int(c), int(n)) for c, n in self.torsion))
        if any(n < 1 for _, n in tors):
            raise ValueError("torsion exponents must be positive")
        free = tuple(sorted(int(d) for d in self.free_gradings))
        if self.grading_mode == RELATIVE and len(free) == 1 and free[0] != 0:
            shift = free[0]
            free = (0,)
            tors = tuple(sorted((c - shift, n) for c, n in tors))
        object.__setattr__(self, "free_gradings", free)
        object.__setattr__(self, "torsion", tors)

    def _key(self):
        return (self.free_gradings, self.torsion)

    def __eq__(self, other):
        if not isinstance(other, DvrModule):
            return NotImplemented
        if self.grading_mode != other.grading_mode:
            raise GradingModeError("cannot compare absolute and relative modules")
        return self._key() == other._key()

    def __hash__(self):
        return hash((self._key(), self.grading_mode))

    @property
    def rank(self) -> int:
        return len(self.free_gradings)

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def as_relative(self) -> "DvrModule":
        return DvrModule(self.free_gradings, self.torsion, RELATIVE)

    def shifted(self, d: int) -> "DvrModule":
        return DvrModule(tuple(g + d for g in self.free_gradings),
                         tuple((c + d, n) for c, n in self.torsion), self.grading_mode)

    def rank_of_power(self, g: int, j: int) -> int:
        """Rank of multiplication by W^j from grading ``g`` to ``g - 2j``."""
        r = 0
        for d in self.free_gradings:
            if g <= d and (d - g) % 2 == 0:
                r += 1
        for c, n in self.torsion:
            if c >= g > c - 2 * n and (c - g) % 2 == 0 and g - 2 * j > c - 2 * n:
                r += 1
        return r

    def describe(self, var: str = "W") -> str:
        parts = [f"F[{var}]_({d})" for d in self.free_gradings]
        parts += [f"F[{var}]/({var}^{n})_({c})" if n > 1 else f"F_({c})" for c, n in self.torsion]
        tag = "" if self.grading_mode == ABSOLUTE else " [relative]"
        return (" + ".join(parts) or "0") + tag

    @classmethod
    def direct_sum(cls, modules: Iterable["DvrModule"]) -> "DvrModule":
        modules = list(modules)
        modes = {m.grading_mode for m in modules}
        if len(modes) > 1:
            raise GradingModeError("cannot sum modules of different grading modes")
        free = tuple(d for m in modules for d in m.free_gradings)
        tors = tuple(t for m in modules for t in m.torsion)
        return cls(free, tors, modes.pop() if modes else ABSOLUTE)


def d_invariant(m: DvrModule) -> int:
    """Grading of the generator of the unique free summand."""
    if m.rank != 1:
        raise ValueError(f"expected exactly one free summand, found {m.rank}")
    return m.free_gradings[0]


@dataclass(frozen=True)
class PlusHatViews:
    tower_bottom: tuple[int, ...]
    plus_torsion: tuple[tuple[int, int], ...]
    hat_dimension: int
    hat_gradings: tuple[int, ...] | None
    grading_mode: str


def plus_and_hat_views(m: DvrModule) -> PlusHatViews:
    """Plus-flavor description and hat-flavor dimension derived from the minus module.

    A tower F[W]_(d) becomes a T^+ whose bottom sits at d + 2 and a torsion
    summand generated at ``c`` reappears with top grading ``c + 1``.  The
    hat flavor has one generator per tower and two per torsion summand
    (at ``c`` and ``c - 2n + 1``).
    """
    bottoms = tuple(d + 2 for d in m.free_gradings)
    tors = tuple((c + 1, n) for c, n in m.torsion)
    dim = m.rank + 2 * len(m.torsion)
    grads = None
    if m.grading_mode == ABSOLUTE:
        g = list(m.free_gradings)
        for c, n in m.torsion:
            g += [c, c - 2 * n + 1]
        grads = tuple(sorted(g))
    return PlusHatViews(bottoms, tors, dim, grads, m.grading_mode)
