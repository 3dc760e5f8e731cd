"""Quotients and localizations of a knot complex.

Modes
-----
``UV0``      set U = V = 0; bigraded complex over F2
``V0``/``U0``  set one variable to 0; complex over the other, graded by its grading
``V1``/``U1``  set one variable to 1; complex over the other variable
``invertV``/``invertU``  localize; split by Alexander grading into F[W]-complexes

Localized summands never use negative exponents: each generator ``x`` is
represented in Alexander grading ``s`` by its minimal monomial multiple.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import BigradedComplex, ONE
from .wcomplex import WComplex

MODES = ("V0", "U0", "UV0", "V1", "U1", "invertV", "invertU")


def _one_variable(c: BigradedComplex, keep: str, kill_other: bool) -> WComplex:
    """Specialize the other variable to 0 (``kill_other``) or to 1."""
    diff = {}
    for key, p in c.differential.items():
        acc = 0
        for a, b in p:
            mine, other = (a, b) if keep == "U" else (b, a)
            if kill_other and other:
                continue
            acc ^= 1 << mine
        if acc:
            diff[key] = acc
    grads = tuple(g.gr_u if keep == "U" else g.gr_v for g in c.gradings)
    return WComplex(c.labels, grads, diff, keep)


def _uv0(c: BigradedComplex) -> BigradedComplex:
    diff = {k: ONE for k, p in c.differential.items() if (0, 0) in p}
    return BigradedComplex(c.labels, c.gradings, diff)


@dataclass(frozen=True)
class LocalizedComplex:
    """Localization at V (``inverted="V"``) or at U, organized by Alexander grading.

    ``summand(s)`` is the F[W]-complex in Alexander grading ``s``: for
    V-localization the generator ``V^(s - A(x)) x`` with grading gr_u(x),
    for U-localization ``U^(A(x) - s) x`` with grading gr_v(x) + 2s.
    """

    complex: BigradedComplex
    inverted: str

    def summand(self, s: int) -> WComplex:
        c = self.complex
        diff = {}
        for key, p in c.differential.items():
            acc = 0
            for a, b in p:
                acc ^= 1 << (a if self.inverted == "V" else b)
            if acc:
                diff[key] = acc
        if self.inverted == "V":
            grads = tuple(g.gr_u for g in c.gradings)
        else:
            grads = tuple(g.gr_v + 2 * s for g in c.gradings)
        return WComplex(c.labels, grads, diff, "W")

    def canonical_monomial(self, i: int, s: int) -> tuple[int, int]:
        """Exponents (of U, of V) of generator ``i``'s representative at ``s``; one may be negative."""
        a = self.complex.alexander(i)
        return (0, s - a) if self.inverted == "V" else (a - s, 0)


def specialize(c: BigradedComplex, mode: str):
    if mode == "UV0":
        return _uv0(c)
    if mode == "V0":
        return _one_variable(c, "U", True)
    if mode == "U0":
        return _one_variable(c, "V", True)
    if mode == "V1":
        return _one_variable(c, "U", False)
    if mode == "U1":
        return _one_variable(c, "V", False)
    if mode == "invertV":
        return LocalizedComplex(c, "V")
    if mode == "invertU":
        return LocalizedComplex(c, "U")
    raise ValueError(f"unknown specialization mode {mode!r}; expected one of {MODES}")


def canonical_exponents(c: BigradedComplex, i: int, s: int) -> tuple[int, int]:
    """(U, V) exponents of the minimal multiple of generator ``i`` in Alexander grading ``s``."""
    a = c.alexander(i)
    return max(a - s, 0), max(s - a, 0)


def alexander_summand(c: BigradedComplex, s: int) -> WComplex:
    """The subcomplex A_s of Alexander grading ``s`` as a complex over F[W], W = UV.

    Generator ``i`` stands for ``U^p V^q x_i`` with (p, q) minimal; its
    grading is gr_u(x_i) - 2p.
    """
    canon = [canonical_exponents(c, i, s) for i in range(len(c))]
    diff = {}
    for (t, src), poly in c.differential.items():
        ps, qs = canon[src]
        pt, qt = canon[t]
        acc = 0
        for a, b in poly:
            k = ps + a - pt
            if k != qs + b - qt or k < 0:
                raise ValueError("differential does not preserve Alexander grading")
            acc ^= 1 << k
        if acc:
            diff[(t, src)] = acc
    grads = tuple(g.gr_u - 2 * canon[i][0] for i, g in enumerate(c.gradings))
    return WComplex(c.labels, grads, diff, "W")
