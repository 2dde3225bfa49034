"""Sign matrices and the subset-selection count omega.

The central object is a small integer matrix A with k rows and l columns.
For a (0,1)-vector b of length l, the product b A^T is a vector of k row
inner products; omega(A) is the set of all b for which every inner product
lands in {0,1}.  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

MASK_CAP = 30
MAX_ENTRY = 1 << 20


class CapacityError(Exception):
    """Requested computation exceeds the supported size limits."""


@dataclass(frozen=True)
class BitVector:
    """A (0,1)-vector of fixed length, packed into an int (bit i = component i+1)."""

    length: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.length <= MASK_CAP:
            raise CapacityError(f"bit vector length {self.length} outside [0, {MASK_CAP}]")
        if self.bits >> self.length:
            raise ValueError("bits set beyond the vector length")

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    def components(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.length))

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))


def weight(v: Iterable[int]) -> int:
    """Number of non-zero components of a vector."""
    return sum(1 for x in v if x != 0)


@dataclass(frozen=True)
class SignMatrix:
    """Integer matrix with small entries, stored as a tuple of row tuples.

    `ncols` is explicit so that matrices with zero rows (legal after
    normalization) still know their width.  Per-row +1/-1 position masks are
    derived lazily and only valid when every entry lies in {-1,0,1}.
    """

    entries: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 0 or self.ncols > MASK_CAP:
            raise CapacityError(f"column count {self.ncols} outside [0, {MASK_CAP}]")
        for row in self.entries:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")
            for x in row:
                if abs(x) > MAX_ENTRY:
                    raise ValueError(f"entry {x} exceeds the supported magnitude {MAX_ENTRY}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "SignMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not entries:
                raise ValueError("cannot infer the column count of an empty matrix")
            ncols = len(entries[0])
        return cls(entries, ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        return tuple(weight(row) for row in self.entries)

    @cached_property
    def is_sign_matrix(self) -> bool:
        return all(abs(x) <= 1 for row in self.entries for x in row)

    @cached_property
    def plus_masks(self) -> tuple[int, ...]:
        if not self.is_sign_matrix:
            raise ValueError("position masks are only defined for entries in {-1,0,1}")
        return tuple(_positions_mask(row, 1) for row in self.entries)

    @cached_property
    def minus_masks(self) -> tuple[int, ...]:
        if not self.is_sign_matrix:
            raise ValueError("position masks are only defined for entries in {-1,0,1}")
        return tuple(_positions_mask(row, -1) for row in self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def __str__(self) -> str:
        return format_matrix(self)


def _positions_mask(row: Sequence[int], value: int) -> int:
    mask = 0
    for j, x in enumerate(row):
        if x == value:
            mask |= 1 << j
    return mask


@dataclass(frozen=True)
class OmegaResult:
    """Count of accepted selection vectors, with the vectors themselves on request."""

    count: int
    members: Optional[tuple[BitVector, ...]] = None


@dataclass(frozen=True)
class ShortCircuit:
    """Certificate that a single row already caps the count at 2**(l-1)."""

    row_index: int
    bound: int


@dataclass(frozen=True)
class NormalizeOutcome:
    """Either a reduced matrix (possibly with no rows) or a short-circuit certificate."""

    reduced: Optional[SignMatrix] = None
    short_circuit: Optional[ShortCircuit] = None

    def __post_init__(self):
        if (self.reduced is None) == (self.short_circuit is None):
            raise ValueError("exactly one of reduced/short_circuit must be set")


def star(a: SignMatrix) -> tuple[SignMatrix, int]:
    """Drop all-zero columns (order preserved); returns (A*, number removed).

    The count identity is |omega(A)| = 2**j * |omega(A*)|.
    """
    keep = [j for j in range(a.ncols) if any(row[j] != 0 for row in a.entries)]
    j = a.ncols - len(keep)
    rows = tuple(tuple(row[c] for c in keep) for row in a.entries)
    return SignMatrix(rows, len(keep)), j


def is_reduced(a: SignMatrix) -> bool:
    """True iff every row has weight >= 2 and no two rows are identical."""
    if any(w < 2 for w in a.weights):
        return False
    return len(set(a.entries)) == a.nrows


def normalize_to_reduced(a: SignMatrix) -> NormalizeOutcome:
    """Strip rows that never constrain the count, or certify a 2**(l-1) cap.

    Duplicate rows and weight-0 rows are dropped; a weight-1 row whose
    non-zero entry is 1 accepts every selection vector and is dropped too.
    A weight-1 row with any other non-zero entry accepts exactly half of all
    vectors, which short-circuits further analysis.
    """
    seen: set[tuple[int, ...]] = set()
    kept: list[tuple[int, ...]] = []
    for i, row in enumerate(a.entries):
        w = a.weights[i]
        if w == 1:
            nz = next(x for x in row if x != 0)
            if nz != 1:
                return NormalizeOutcome(short_circuit=ShortCircuit(i, 1 << (a.ncols - 1)))
            continue
        if w == 0 or row in seen:
            continue
        seen.add(row)
        kept.append(row)
    return NormalizeOutcome(reduced=SignMatrix(tuple(kept), a.ncols))


def _prefix_dots(row: Sequence[int], nbits: int) -> np.ndarray:
    """Inner products of `row[:nbits]` against every mask of nbits bits.

    Built by doubling: appending column j maps dots -> [dots, dots + row[j]],
    so index m holds the exact sum over the set bits of m.
    """
    dots = np.zeros(1, dtype=np.int64)
    for j in range(nbits):
        dots = np.concatenate([dots, dots + row[j]])
    return dots


def omega_enumerate(a: SignMatrix, collect_members: bool = False) -> OmegaResult:
    """Exact enumeration of omega(A) over all 2**l selection vectors.

    This is the oracle path: every inner product is assembled by direct
    integer addition of entries, valid for any integer entries.  Members,
    when collected, come out in lexicographic order of their component
    tuples (the order their rendered strings sort in).
    """
    l = a.ncols
    if l > MASK_CAP:
        raise CapacityError(f"enumeration over 2**{l} vectors exceeds MASK_CAP={MASK_CAP}")
    rows = a.entries
    if not rows:
        count = 1 << l
        if collect_members:
            members = tuple(sorted((BitVector(l, m) for m in range(count)),
                                   key=lambda bv: bv.components()))
            return OmegaResult(count, members)
        return OmegaResult(count)

    low = min(l, _CHUNK_BITS)
    low_dots = [_prefix_dots(row, low) for row in rows]
    count = 0
    accepted_masks: list[int] = []
    for high in range(1 << (l - low)):
        ok = np.ones(1 << low, dtype=bool)
        for r, row in enumerate(rows):
            shift = sum(row[low + j] for j in range(l - low) if (high >> j) & 1)
            ok &= (low_dots[r] >= -shift) & (low_dots[r] <= 1 - shift)
        count += int(ok.sum())
        if collect_members:
            base = high << low
            accepted_masks.extend(base | int(m) for m in np.nonzero(ok)[0])
    if not collect_members:
        return OmegaResult(count)
    members = sorted((BitVector(l, m) for m in accepted_masks), key=lambda bv: bv.components())
    return OmegaResult(count, tuple(members))


def _popcount_array(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x)


_CHUNK_BITS = 20


def omega_count_fast(a: SignMatrix) -> int:
    """Bit-parallel count of omega(A) for matrices with entries in {-1,0,1}.

    Each row inner product is popcount(b & plus) - popcount(b & minus);
    b is accepted when every row product is 0 or 1.  Always agrees with
    omega_enumerate.
    """
    if not a.is_sign_matrix:
        raise ValueError("fast path requires entries in {-1,0,1}; use omega_enumerate")
    l = a.ncols
    if l > MASK_CAP:
        raise CapacityError(f"enumeration over 2**{l} vectors exceeds MASK_CAP={MASK_CAP}")
    if not a.entries:
        return 1 << l
    plus = a.plus_masks
    minus = a.minus_masks
    if l <= 16:
        return _count_masks_numpy(plus, minus, l)
    total = 0
    size = 1 << l
    chunk = 1 << _CHUNK_BITS
    for start in range(0, size, chunk):
        stop = min(start + chunk, size)
        b = np.arange(start, stop, dtype=np.uint32)
        ok = np.ones(stop - start, dtype=bool)
        for p, m in zip(plus, minus):
            ip = _popcount_array(b & np.uint32(p)).astype(np.int16)
            ip -= _popcount_array(b & np.uint32(m)).astype(np.int16)
            ok &= (ip >= 0) & (ip <= 1)
        total += int(ok.sum())
    return total


_B_CACHE: dict[int, np.ndarray] = {}


def _all_masks(l: int) -> np.ndarray:
    arr = _B_CACHE.get(l)
    if arr is None:
        arr = np.arange(1 << l, dtype=np.uint32)
        _B_CACHE[l] = arr
    return arr


def _count_masks_numpy(plus: Sequence[int], minus: Sequence[int], l: int) -> int:
    b = _all_masks(l)
    ok = np.ones(1 << l, dtype=bool)
    for p, m in zip(plus, minus):
        ip = _popcount_array(b & np.uint32(p)).astype(np.int16)
        ip -= _popcount_array(b & np.uint32(m)).astype(np.int16)
        ok &= (ip >= 0) & (ip <= 1)
    return int(ok.sum())


def omega_counts_batch(mask_rows: Sequence[tuple[tuple[int, int], ...]], l: int) -> list[int]:
    """Counts for many sign matrices with the same column count at once.

    `mask_rows[i]` lists (plus_mask, minus_mask) per row of matrix i.  All
    matrices in a batch share l, so the 2**l selection vectors are scanned
    once per row with the matrices stacked along an axis.
    """
    if l > MASK_CAP:
        raise CapacityError(f"enumeration over 2**{l} vectors exceeds MASK_CAP={MASK_CAP}")
    if not mask_rows:
        return []
    k = len(mask_rows[0])
    if any(len(mr) != k for mr in mask_rows):
        raise ValueError("batch requires a uniform row count")
    b = _all_masks(l)
    out: list[int] = []
    # Cap the scratch arrays at ~2**22 bytes per row-slice.
    group = max(1, (1 << 22) >> l)
    for start in range(0, len(mask_rows), group):
        sub = mask_rows[start : start + group]
        ok = np.ones((len(sub), 1 << l), dtype=bool)
        for r in range(k):
            p = np.array([mr[r][0] for mr in sub], dtype=np.uint32)[:, None]
            m = np.array([mr[r][1] for mr in sub], dtype=np.uint32)[:, None]
            ip = _popcount_array(b & p).astype(np.int16)
            ip -= _popcount_array(b & m).astype(np.int16)
            ok &= (ip >= 0) & (ip <= 1)
        out.extend(int(c) for c in ok.sum(axis=1))
    return out


def _column_sorted(entries: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    cols = sorted(tuple(row[j] for row in entries) for j in range(ncols))
    return tuple(tuple(col[i] for col in cols) for i in range(len(entries)))


def canonical_form(a: SignMatrix) -> bytes:
    """Canonical key of A under row and column permutations.

    The key encodes the lexicographically smallest row-major entry sequence
    over all row orders, with columns sorted (top-down lexicographically)
    for each row order; two matrices get equal keys iff one can be permuted
    into the other.  Cost grows with k!, fine at the small row counts used
    here.
    """
    k, l = a.nrows, a.ncols
    best: Optional[tuple[tuple[int, ...], ...]] = None
    for perm in itertools.permutations(range(k)):
        rows = [a.entries[i] for i in perm]
        cand = _column_sorted(rows, l)
        if best is None or cand < best:
            best = cand
    flat = bytes(x + 1 for row in (best or ()) for x in row)
    return b"%d,%d:" % (k, l) + flat


def is_canonical_arrangement(entries: tuple[tuple[int, ...], ...], ncols: int) -> bool:
    """True iff `entries` already is the canonical row/column arrangement.

    Assumes the columns of `entries` are already sorted for its own row
    order, which holds for matrices built row-block-sorted.
    """
    for perm in itertools.permutations(range(len(entries))):
        cand = _column_sorted([entries[i] for i in perm], ncols)
        if cand < entries:
            return False
    return True


def equivalent(a: SignMatrix, b: SignMatrix) -> bool:
    """True iff the matrices have the same shape and are permutations of each other."""
    if a.nrows != b.nrows or a.ncols != b.ncols:
        return False
    return canonical_form(a) == canonical_form(b)


def format_matrix(a: SignMatrix) -> str:
    lines = [f"{a.nrows} {a.ncols}"]
    lines.extend(" ".join(str(x) for x in row) for row in a.entries)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> SignMatrix:
    """Parse the matrix text format: a "k l" header line, then k rows.

    Blank lines and '#' comments are ignored.
    """
    tokens: list[list[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens.append(line.split())
    if not tokens:
        raise ValueError("empty matrix text")
    header = tokens[0]
    if len(header) != 2:
        raise ValueError(f"expected a 'k l' header line, got {' '.join(header)!r}")
    k, l = int(header[0]), int(header[1])
    if len(tokens) - 1 != k:
        raise ValueError(f"expected {k} rows, found {len(tokens) - 1}")
    rows = []
    for line in tokens[1:]:
        if len(line) != l:
            raise ValueError(f"expected {l} entries per row, got {len(line)}")
        rows.append(tuple(int(x) for x in line))
    return SignMatrix(tuple(rows), l)
