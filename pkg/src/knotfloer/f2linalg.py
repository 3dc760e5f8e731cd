"""Small dense linear algebra over F2 with rows packed into Python ints."""

from __future__ import annotations

from typing import Sequence


def row_reduce(rows: Sequence[int]) -> list[int]:
    """Return a basis of the row span in echelon form (distinct leading bits)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            if lead in basis:
                r ^= basis[lead]
            else:
                basis[lead] = r
                break
    return list(basis.values())


def rank(rows: Sequence[int]) -> int:
    return len(row_reduce(rows))


def reduce_against(v: int, echelon: dict[int, int]) -> int:
    while v:
        lead = v.bit_length() - 1
        if lead not in echelon:
            return v
        v ^= echelon[lead]
    return 0


def echelon_dict(rows: Sequence[int]) -> dict[int, int]:
    return {r.bit_length() - 1: r for r in row_reduce(rows)}


def kernel(columns: Sequence[int], n_rows: int) -> list[int]:
    """Kernel of the matrix whose j-th column is the bitmask ``columns[j]``.

    Returned vectors are bitmasks over column indices.
    """
    del n_rows
    # track combinations: pair (image, combination)
    pivots: dict[int, tuple[int, int]] = {}
    out = []
    for j, col in enumerate(columns):
        img, comb = col, 1 << j
        while img:
            lead = img.bit_length() - 1
            if lead in pivots:
                pimg, pcomb = pivots[lead]
                img ^= pimg
                comb ^= pcomb
            else:
                pivots[lead] = (img, comb)
                break
        if not img:
            out.append(comb)
    return out


def quotient_basis(space: Sequence[int], sub: Sequence[int]) -> list[int]:
    """Vectors of ``space`` completing a basis of ``sub`` to one of span(sub + space)."""
    ech = echelon_dict(sub)
    out = []
    for v in space:
        r = reduce_against(v, ech)
        if r:
            ech[r.bit_length() - 1] = r
            out.append(v)
    return out
