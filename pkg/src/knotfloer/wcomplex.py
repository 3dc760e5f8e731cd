"""Complexes over a one-variable ring F2[W] or F2[W]/(W^N).

A polynomial in W is encoded as a Python int whose bit ``k`` is the
coefficient of ``W^k``.  The variable always has degree -2 and the
differential degree -1, whether the variable is called U, V or W.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional


def clmul(a: int, b: int) -> int:
    """Carry-less product, i.e. multiplication in F2[W]."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def valuation(p: int) -> int:
    """Largest k with W^k dividing p (p nonzero)."""
    return (p & -p).bit_length() - 1


def monomial(k: int) -> int:
    return 1 << k


def truncate(p: int, n: Optional[int]) -> int:
    return p if n is None else p & ((1 << n) - 1)


def inverse_unit(u: int, n: int) -> int:
    """Inverse of a unit ``1 + W p(W)`` modulo W^n by the geometric series."""
    if not u & 1:
        raise ZeroDivisionError("not a unit")
    mask = (1 << n) - 1
    t = (u ^ 1) & mask  # W p(W)
    out, power = 1, 1
    while True:
        power = clmul(power, t) & mask
        if not power:
            return out
        out ^= power


def wpoly_str(p: int, var: str = "W") -> str:
    if not p:
        return "0"
    terms = []
    k = 0
    while p:
        if p & 1:
            terms.append("1" if k == 0 else (var if k == 1 else f"{var}^{k}"))
        p >>= 1
        k += 1
    return " + ".join(terms)


@dataclass(frozen=True)
class WComplex:
    """Free graded complex over F2[W] (optionally truncated mod W^N).

    ``differential[(t, s)]`` is the coefficient of generator ``t`` in the
    boundary of generator ``s``.
    """

    labels: tuple
    gradings: tuple
    differential: Mapping[tuple[int, int], int] = field(default_factory=dict)
    variable: str = "W"
    truncation: Optional[int] = None

    def __post_init__(self):
        if len(self.labels) != len(self.gradings):
            raise ValueError("labels and gradings differ in length")
        object.__setattr__(self, "gradings", tuple(int(g) for g in self.gradings))
        n = len(self.labels)
        clean = {}
        for (t, s), p in dict(self.differential).items():
            if not (0 <= t < n and 0 <= s < n):
                raise IndexError(f"differential entry {(t, s)} out of range")
            p = truncate(p, self.truncation)
            if p:
                clean[(t, s)] = p
        object.__setattr__(self, "differential", clean)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)

    def columns(self) -> list[dict[int, int]]:
        cols: list[dict[int, int]] = [dict() for _ in self.labels]
        for (t, s), p in self.differential.items():
            cols[s][t] = p
        return cols

    def truncated(self, n: Optional[int]) -> "WComplex":
        return WComplex(self.labels, self.gradings, self.differential, self.variable, n)

    def shift(self, d: int) -> "WComplex":
        return WComplex(self.labels, tuple(g + d for g in self.gradings), self.differential,
                        self.variable, self.truncation)

    def grading_span(self) -> int:
        return max(self.gradings) - min(self.gradings) if self.gradings else 0

    def describe(self) -> str:
        cols = self.columns()
        lines = []
        for i, lab in enumerate(self.labels):
            terms = [f"({wpoly_str(p, self.variable)})*{self.labels[t]}"
                     for t, p in sorted(cols[i].items())]
            lines.append(f"d({lab}) = {' + '.join(terms) or '0'}    gr={self.gradings[i]}")
        return "\n".join(lines)


def wcomplex_problems(c: WComplex) -> list[str]:
    """Square-zero and degree checks; empty list means valid."""
    problems = []
    cols = c.columns()
    sq: dict[tuple[int, int], int] = {}
    for s, col in enumerate(cols):
        for mid, p in col.items():
            for t, q in cols[mid].items():
                sq[(t, s)] = sq.get((t, s), 0) ^ clmul(p, q)
    for (t, s), p in sq.items():
        if truncate(p, c.truncation):
            problems.append(f"d^2({c.labels[s]}) hits {c.labels[t]}")
    for (t, s), p in c.differential.items():
        k = 0
        while p:
            if p & 1 and c.gradings[t] - 2 * k != c.gradings[s] - 1:
                problems.append(
                    f"term {c.variable}^{k}*{c.labels[t]} in d({c.labels[s]}) has wrong degree")
            p >>= 1
            k += 1
    return problems


def direct_sum_w(*cs: WComplex) -> WComplex:
    labels, gradings, diff, off = [], [], {}, 0
    for c in cs:
        labels.extend(c.labels)
        gradings.extend(c.gradings)
        for (t, s), p in c.differential.items():
            diff[(t + off, s + off)] = p
        off += len(c)
    var = cs[0].variable if cs else "W"
    return WComplex(tuple(labels), tuple(gradings), diff, var)
