"""First homology from Heegaard intersection data.

For a genus-g diagram with attaching curves alpha_i and beta_j, the
matrix of algebraic intersection numbers ``M[i][j] = #(alpha_i . beta_j)``
presents H_1 of the three-manifold.  H_1 is computed here from the Smith
normal form of M over Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .errors import SchemaError

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IntersectionMatrix:
    """Square integer matrix of algebraic intersection numbers (possibly 0x0)."""

    entries: Matrix = ()

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.entries)
        g = len(rows)
        if any(len(r) != g for r in rows):
            raise SchemaError(f"intersection matrix must be square, got row lengths "
                              f"{[len(r) for r in rows]} for {g} rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntersectionMatrix":
        # a lone empty row means genus 0
        if len(rows) == 1 and len(rows[0]) == 0:
            rows = ()
        return cls(tuple(tuple(r) for r in rows))

    @property
    def genus(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_i >= 2 and d_i | d_(i+1)."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in facs):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(facs, facs[1:])):
            raise ValueError(f"invariant factors {facs} do not form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "invariant_factors", facs)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        """Group order; 0 stands for infinite."""
        return prod(self.invariant_factors) if self.is_finite else 0

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form (nonnegative, divisibility chain)."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = a[t][t]
            # clear column t, then row t; any remainder gives a smaller pivot
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            nz += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for r in a:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def h1_group(m: IntersectionMatrix) -> AbelianGroup:
    """Cokernel of the intersection matrix."""
    g = m.genus
    diag = smith_diagonal(m.entries) if g else []
    return AbelianGroup(tuple(d for d in diag if d != 1), g - len(diag))


def stabilize(m: IntersectionMatrix) -> IntersectionMatrix:
    """Add a handle whose new curves meet once: append a row and column with a 1 in the corner."""
    g = m.genus
    rows = [list(r) + [0] for r in m.entries]
    rows.append([0] * g + [1])
    return IntersectionMatrix(tuple(tuple(r) for r in rows))


def determinant(m: IntersectionMatrix) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = m.rows()
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class DimensionCheck:
    ok: bool
    h1_order: int
    hat_total: int
    l_space: bool
    problems: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def hf_dimension_check(m: IntersectionMatrix, hat_dims: Sequence[int]) -> DimensionCheck:
    """Compare hat-flavor dimensions per spin^c class with |H_1|.

    The total dimension is at least |H_1|, with equality exactly when every
    class has dimension one.  There is one class per element of H_1 and
    each class has odd dimension.
    """
    grp = h1_group(m)
    problems = []
    if not grp.is_finite:
        problems.append(f"H_1 = {grp.describe()} is infinite")
        return DimensionCheck(False, 0, sum(hat_dims), False, tuple(problems))
    order = grp.order
    total = sum(hat_dims)
    l_space = all(d == 1 for d in hat_dims)
    if len(hat_dims) != order:
        problems.append(f"{len(hat_dims)} spin^c classes but |H_1| = {order}")
    if any(d % 2 == 0 for d in hat_dims):
        problems.append("a class has even hat dimension")
    if total < order:
        problems.append(f"total hat dimension {total} < |H_1| = {order}")
    if (total == order) != l_space:
        problems.append("equality with |H_1| disagrees with the per-class L-space test")
    return DimensionCheck(not problems, order, total, l_space and not problems, tuple(problems))
