"""Exact integer matrix rank via fraction-free elimination.

Rank questions here hinge on unit-sized distinctions, so floating point is
off the table.  The fast path runs Bareiss elimination in int64 with a
conservative magnitude guard; anything that could overflow falls back to
the same elimination on Python integers, which is exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

IntMatrix = Union[np.ndarray, Sequence[Sequence[int]]]

# Bareiss multiplies two current entries per update; keeping them below
# 2**30 bounds the update by 2**61, safely inside int64.
_GUARD = 1 << 30


@dataclass(frozen=True)
class RankResult:
    rank: int
    method: str  # "int64" or "bigint"


def _as_int64(matrix: IntMatrix) -> np.ndarray:
    arr = np.asarray(matrix)
    if arr.ndim != 2:
        raise ValueError("rank is defined for 2-d matrices")
    if arr.dtype == object or not np.issubdtype(arr.dtype, np.integer):
        out = np.empty(arr.shape, dtype=np.int64)
        for i, row in enumerate(arr):
            for j, x in enumerate(row):
                xi = int(x)
                if abs(xi) >= _GUARD:
                    raise OverflowError
                out[i, j] = xi
        return out
    return arr.astype(np.int64)


def _bareiss_rank_int64(m: np.ndarray) -> int:
    """Fraction-free elimination in int64; raises OverflowError near the guard."""
    m = m.copy()
    nrows, ncols = m.shape
    prev = np.int64(1)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivots = np.nonzero(m[r:, c])[0]
        if pivots.size == 0:
            continue
        i = r + int(pivots[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        if r + 1 < nrows:
            if int(np.abs(m[r:]).max()) >= _GUARD:
                raise OverflowError
            piv = m[r, c]
            below = m[r + 1:]
            m[r + 1:] = (below * piv - np.outer(below[:, c], m[r])) // prev
            prev = piv
        r += 1
    return r


def _bareiss_rank_bigint(matrix: IntMatrix) -> int:
    rows = [[int(x) for x in row] for row in matrix]
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        i = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if i is None:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        pivot_row = rows[r]
        for i in range(r + 1, nrows):
            cur = rows[i]
            f = cur[c]
            rows[i] = [(x * piv - f * y) // prev for x, y in zip(cur, pivot_row)]
        prev = piv
        r += 1
    return r


def rank_exact(matrix: IntMatrix) -> RankResult:
    """Exact rank of an integer matrix over the rationals."""
    try:
        arr = _as_int64(matrix)
    except OverflowError:
        return RankResult(_bareiss_rank_bigint(matrix), "bigint")
    if arr.size == 0:
        return RankResult(0, "int64")
    try:
        return RankResult(_bareiss_rank_int64(arr), "int64")
    except OverflowError:
        return RankResult(_bareiss_rank_bigint(matrix), "bigint")


def rank_mod(matrix: IntMatrix, p: int) -> int:
    """Rank over GF(p); a randomized cross-check, not the exact answer."""
    m = np.asarray([[int(x) % p for x in row] for row in matrix], dtype=np.int64)
    if m.size == 0:
        return 0
    nrows, ncols = m.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivots = np.nonzero(m[r:, c])[0]
        if pivots.size == 0:
            continue
        i = r + int(pivots[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = m[r + 1:]
        m[r + 1:] = (below - np.outer(below[:, c], m[r])) % p
        r += 1
    return r


def one_in_rowspace(matrix: IntMatrix) -> bool:
    """Whether the all-ones vector is a rational combination of the rows.

    Decided exactly: appending the all-ones row leaves the rank unchanged
    iff it already lies in the row space.
    """
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(arr, arr.T):
        raise ValueError("expected a symmetric matrix")
    base = rank_exact(arr).rank
    stacked = np.vstack([np.asarray(arr, dtype=object), np.ones((1, arr.shape[1]), dtype=object)])
    return rank_exact(stacked).rank == base
