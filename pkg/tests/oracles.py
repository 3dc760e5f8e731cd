"""Independent brute-force oracles.

Everything here uses dense 0/1 lists and plain loops, sharing no linear
algebra with the package.  A graded F[W]-complex with polynomial
coefficients has finite-dimensional graded pieces: in grading g the
vector space is spanned by W^k x with gr(x) - 2k = g and k >= 0.
"""

from __future__ import annotations

from knotfloer.modules import DvrModule


def f2_rank(rows: list[list[int]]) -> int:
    """Rank over F2, each row packed into an int and reduced against a leading-bit basis."""
    basis: dict[int, int] = {}
    for r in rows:
        v = 0
        for k, x in enumerate(r):
            if x:
                v |= 1 << k
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def f2_kernel(matrix_cols: list[list[int]], nrows: int) -> list[list[int]]:
    """Basis of {x : sum_j x_j col_j = 0}, each vector over the column index."""
    n = len(matrix_cols)
    # augmented rows: [col_j | e_j], reduce the column part
    aug = [list(col) + [1 if k == j else 0 for k in range(n)] for j, col in enumerate(matrix_cols)]
    rank = 0
    for c in range(nrows):
        piv = next((i for i in range(rank, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        for i in range(n):
            if i != rank and aug[i][c]:
                aug[i] = [a ^ b for a, b in zip(aug[i], aug[rank])]
        rank += 1
    return [row[nrows:] for row in aug[rank:]]


def _bits(p: int) -> list[int]:
    out, k = [], 0
    while p:
        if p & 1:
            out.append(k)
        p >>= 1
        k += 1
    return out


class DenseW:
    """Dense graded pieces of an untruncated one-variable complex."""

    def __init__(self, c):
        self.c = c
        self._cache: dict = {}
        self.cols = {}
        for (t, s), p in c.differential.items():
            self.cols.setdefault(s, []).append((t, p))

    def basis(self, g: int) -> list[tuple[int, int]]:
        return self._memo(("E", g), lambda: self._basis(g))

    def _basis(self, g: int) -> list[tuple[int, int]]:
        out = []
        for i, gi in enumerate(self.c.gradings):
            if gi >= g and (gi - g) % 2 == 0:
                out.append((i, (gi - g) // 2))
        return out

    def boundary_columns(self, g: int) -> tuple[list[list[int]], list]:
        src, tgt = self.basis(g), self.basis(g - 1)
        index = {b: k for k, b in enumerate(tgt)}
        cols = []
        for i, k in src:
            col = [0] * len(tgt)
            for t, p in self.cols.get(i, []):
                for e in _bits(p):
                    key = (t, k + e)
                    assert key in index, "complex is not homogeneous"
                    col[index[key]] ^= 1
            cols.append(col)
        return cols, tgt

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def cycles(self, g: int) -> list[list[int]]:
        def compute():
            cols, tgt = self.boundary_columns(g)
            return f2_kernel(cols, len(tgt))
        return self._memo(("Z", g), compute)

    def boundaries(self, g: int) -> list[list[int]]:
        return self._memo(("B", g), lambda: self.boundary_columns(g + 1)[0])

    def boundary_rank(self, g: int) -> int:
        return self._memo(("rB", g), lambda: f2_rank(self.boundaries(g)))

    def homology_dim(self, g: int) -> int:
        return len(self.cycles(g)) - self.boundary_rank(g)

    def power_rank(self, g: int, j: int) -> int:
        """Rank of W^j: H_g -> H_(g - 2j)."""
        src = self.basis(g)
        tgt = self.basis(g - 2 * j)
        index = {b: k for k, b in enumerate(tgt)}
        images = []
        for z in self.cycles(g):
            v = [0] * len(tgt)
            for coeff, (i, k) in zip(z, src):
                if coeff:
                    v[index[(i, k + j)]] ^= 1
            images.append(v)
        if not images:
            return 0
        b = self.boundaries(g - 2 * j)
        return f2_rank(b + images) - self.boundary_rank(g - 2 * j)


def grading_window(c, depth: int = 6) -> tuple[int, int]:
    if not c.gradings:
        return (0, 0)
    return (min(c.gradings) - 2 * depth, max(c.gradings) + 1)


def dense_profile(c, jmax: int = 6, depth: int = 6) -> dict:
    """{(g, j): rank of W^j on H_g} over a window; j = 0 gives dimensions."""
    d = DenseW(c)
    lo, hi = grading_window(c, depth)
    return {(g, j): d.power_rank(g, j) for g in range(lo, hi + 1) for j in range(jmax + 1)}


def module_profile(m: DvrModule, window: tuple[int, int], jmax: int = 6) -> dict:
    lo, hi = window
    return {(g, j): m.rank_of_power(g, j) for g in range(lo, hi + 1) for j in range(jmax + 1)}


def dense_f2_homology(c) -> dict:
    """F2 homology of a complex whose entries are constants, keyed by generator grading."""
    from collections import defaultdict
    by_grading = defaultdict(list)
    for i, g in enumerate(c.gradings):
        by_grading[g].append(i)
    entries = {k for k, p in c.differential.items() if p}
    out = {}
    for g, idx in by_grading.items():
        # d from grading g lands in a single grading; find it from any entry
        targets = sorted({t for (t, s) in entries if s in idx})
        cols = [[1 if (t, s) in entries else 0 for t in targets] for s in idx]
        z = len(idx) - f2_rank(cols)
        sources = sorted({s for (t, s) in entries if t in idx})
        b = f2_rank([[1 if (t, s) in entries else 0 for t in idx] for s in sources])
        if z - b:
            out[g] = z - b
    return out


def smith_invariants_sympy(rows) -> list[int]:
    """Nonzero Smith diagonal via sympy (used only as an oracle)."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form
    m = Matrix(rows)
    s = smith_normal_form(m, domain=ZZ)
    return [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]


def sympy_torus_alexander(p: int, q: int):
    """Symmetrized (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)) computed by sympy."""
    import sympy
    from knotfloer.knots import LaurentPoly
    t = sympy.symbols("t")
    num = sympy.expand((t ** (p * q) - 1) * (t - 1))
    den = sympy.expand((t ** p - 1) * (t ** q - 1))
    quo, rem = sympy.div(num, den, t)
    assert rem == 0
    coeffs = sympy.Poly(quo, t).as_dict()
    half = max(k[0] for k in coeffs) // 2
    return LaurentPoly({k[0] - half: int(v) for k, v in coeffs.items()})
