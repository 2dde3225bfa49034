"""Isomorph-free generation of reduced sign matrices.

Matrices are generated row by row with every row nondecreasing inside the
column blocks cut out by the rows above it, so each candidate has its
columns sorted lexicographically for its own row order.  Keeping only the
candidates whose arrangement is the canonical one (minimal over row
permutations) yields exactly one representative per equivalence class
under row/column permutations.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

from .matrices import CapacityError, SignMatrix, is_canonical_arrangement

MAX_ROWS = 4
MAX_COLS = 15

FirstRowShape = tuple[int, int, int]  # (minus count, zero count, plus count)


def first_row_shapes(k: int, min_weight: int, max_weight: int, max_cols: int
                     ) -> list[FirstRowShape]:
    """All sorted first rows, as (minus, zero, plus) block sizes.

    Zero columns of the first row must be covered by the k-1 rows below it,
    which caps the zero block.
    """
    shapes = []
    zero_cap = (k - 1) * max_weight
    for w in range(min_weight, max_weight + 1):
        for nplus in range(w + 1):
            nminus = w - nplus
            for nzero in range(0, min(zero_cap, max_cols - w) + 1):
                shapes.append((nminus, nzero, nplus))
    return shapes


def enumerate_reduced_matrices(k: int, min_weight: int = 2,
                               max_weight: Optional[int] = None,
                               max_cols: int = MAX_COLS,
                               first_row: Optional[FirstRowShape] = None,
                               ) -> Iterator[SignMatrix]:
    """One representative per class of reduced k-row sign matrices.

    Yields every class with entries in {-1,0,1}, all row weights in
    [min_weight, max_weight], no zero column and at most max_cols columns.
    `first_row` restricts the stream to the classes whose canonical first
    row has the given block shape (used to partition work).
    """
    if not 1 <= k <= MAX_ROWS:
        raise CapacityError(f"row count {k} outside [1, {MAX_ROWS}]")
    if max_cols > MAX_COLS:
        raise CapacityError(f"column cap {max_cols} exceeds {MAX_COLS}")
    if max_weight is None:
        max_weight = max_cols
    max_weight = min(max_weight, max_cols)
    if min_weight < 1 or max_weight < min_weight:
        return

    shapes = [first_row] if first_row is not None else \
        first_row_shapes(k, min_weight, max_weight, max_cols)
    for nminus, nzero, nplus in shapes:
        row = (-1,) * nminus + (0,) * nzero + (1,) * nplus
        if k == 1:
            if nzero == 0:
                yield SignMatrix((row,), len(row))
            continue
        blocks = [(sz, virgin) for sz, virgin in
                  ((nminus, False), (nzero, True), (nplus, False)) if sz]
        yield from _extend((row,), blocks, k - 1, min_weight, max_weight)


def _extend(rows: tuple[tuple[int, ...], ...], blocks: list[tuple[int, bool]],
            rows_left: int, min_weight: int, max_weight: int) -> Iterator[SignMatrix]:
    is_last = rows_left == 1
    ncols = sum(sz for sz, _ in blocks)
    for entries, new_blocks in _block_rows(blocks, min_weight, max_weight, is_last):
        new_rows = rows + (entries,)
        if is_last:
            if len(set(new_rows)) != len(new_rows):
                continue
            if is_canonical_arrangement(new_rows, ncols):
                yield SignMatrix(new_rows, ncols)
            continue
        virgin_after = sum(sz for sz, virgin in new_blocks if virgin)
        if virgin_after > (rows_left - 1) * max_weight:
            continue
        yield from _extend(new_rows, new_blocks, rows_left - 1, min_weight, max_weight)


def _block_rows(blocks: Sequence[tuple[int, bool]], min_weight: int, max_weight: int,
                is_last: bool) -> Iterator[tuple[tuple[int, ...], list[tuple[int, bool]]]]:
    """All nondecreasing-within-block rows with an admissible weight.

    Each block of size m takes a segment (-1)*a 0*b 1*c with a+b+c = m; a
    virgin block (all-zero column prefix) must be fully covered on the last
    row.
    """
    n = len(blocks)
    suffix_cap = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_cap[i] = suffix_cap[i + 1] + blocks[i][0]

    segments: list[tuple[int, int, int]] = [(0, 0, 0)] * n

    def rec(i: int, wt: int) -> Iterator[tuple[tuple[int, ...], list[tuple[int, bool]]]]:
        if i == n:
            if wt >= min_weight:
                entries = []
                new_blocks = []
                for (sz, virgin), (a, b, c) in zip(blocks, segments):
                    entries.extend((-1,) * a + (0,) * b + (1,) * c)
                    if a:
                        new_blocks.append((a, False))
                    if b:
                        new_blocks.append((b, virgin))
                    if c:
                        new_blocks.append((c, False))
                yield tuple(entries), new_blocks
            return
        size, virgin = blocks[i]
        for a in range(size + 1):
            if wt + a > max_weight:
                break
            for c in range(size - a + 1):
                b = size - a - c
                if virgin and is_last and b:
                    continue
                w = wt + a + c
                if w > max_weight:
                    break
                if w + suffix_cap[i + 1] < min_weight:
                    continue
                segments[i] = (a, b, c)
                yield from rec(i + 1, w)

    yield from rec(0, 0)
