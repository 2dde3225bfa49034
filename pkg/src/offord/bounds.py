"""Closed-form count bounds and the extremal matrix templates.

For a reduced k x l matrix the selection count |omega(A)| is at most
(2**k+1) * 2**(l-k-1) when k <= l-1 and 2**(l-1) otherwise.  Equality in
the first regime happens exactly for four template families (A1..A4 below,
up to permutations and removal of zero columns).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Optional

from .matrices import SignMatrix, canonical_form, is_reduced, star


@dataclass(frozen=True)
class BoundSpec:
    rows: int
    cols: int
    value: int


def lo_bound(k: int, l: int) -> BoundSpec:
    """Maximum of |omega(A)| over reduced k x l matrices."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    if k <= l - 1:
        value = ((1 << k) + 1) << (l - k - 1)
    else:
        value = 1 << (l - 1)
    return BoundSpec(k, l, value)


def vector_bound(l: int, ones: int) -> int:
    """Exact |omega(v)| for a (+1/-1)-vector of length l with `ones` ones."""
    if not 0 <= ones <= l:
        raise ValueError("ones must lie in [0, l]")
    return comb(l + 1, ones)


class EqualityClass(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    NONE = "none"


@dataclass(frozen=True)
class EqualityMatch:
    """Matched template family with its parameters (absent for NONE)."""

    kind: EqualityClass
    signs: Optional[tuple[int, ...]] = None
    shift: Optional[int] = None  # the b of A1 (0 or -1) or the c of A2 (0 or 1)

    def __post_init__(self):
        has_params = self.signs is not None or self.shift is not None
        if (self.kind is EqualityClass.NONE) == has_params:
            raise ValueError("parameters are carried exactly when a class matched")


NO_MATCH = EqualityMatch(EqualityClass.NONE)


def template_a1(k: int, b: int) -> SignMatrix:
    """k x (k+2): two leading all-ones columns, a negated unit diagonal, tail b."""
    if b not in (0, -1):
        raise ValueError("b must be 0 or -1")
    rows = []
    for i in range(k - 1):
        row = [1, 1] + [0] * k
        row[2 + i] = -1
        rows.append(tuple(row))
    rows.append(tuple([1, 1] + [0] * (k - 1) + [b]))
    return SignMatrix(tuple(rows), k + 2)


def template_a2(k: int, signs: tuple[int, ...], c: int) -> SignMatrix:
    """k x (k+2): opposite-sign leading pair per row, unit diagonal, tail c."""
    if c not in (0, 1):
        raise ValueError("c must be 0 or 1")
    if len(signs) != k - 1 or any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be k-1 values in {+1,-1}")
    rows = []
    for i, s in enumerate(signs):
        row = [s, -s] + [0] * k
        row[2 + i] = 1
        rows.append(tuple(row))
    rows.append(tuple([1, -1] + [0] * (k - 1) + [c]))
    return SignMatrix(tuple(rows), k + 2)


def template_a3(k: int) -> SignMatrix:
    """k x (k+1): all-ones leading column next to a negated unit diagonal."""
    rows = []
    for i in range(k):
        row = [1] + [0] * k
        row[1 + i] = -1
        rows.append(tuple(row))
    return SignMatrix(tuple(rows), k + 1)


def template_a4(k: int, signs: tuple[int, ...]) -> SignMatrix:
    """k x (k+1): signed leading column next to a unit diagonal."""
    if len(signs) != k or any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be k values in {+1,-1}")
    rows = []
    for i, s in enumerate(signs):
        row = [s] + [0] * k
        row[1 + i] = 1
        rows.append(tuple(row))
    return SignMatrix(tuple(rows), k + 1)


def overlap_diagonal_matrix(k: int, left: tuple[int, ...], diag: tuple[int, ...],
                            tail: int) -> SignMatrix:
    """k x (k+2) shape with two shared nonzero columns and a signed diagonal.

    `left` gives the 2k entries of the two leading columns row by row,
    `diag` the k-1 diagonal signs, `tail` the last entry of the last row
    (one of 0, +1, -1).  The k = 2 instances are the four-column shapes
    whose equality analysis needs special casing.
    """
    if len(left) != 2 * k or any(s not in (1, -1) for s in left):
        raise ValueError("left must be 2k values in {+1,-1}")
    if len(diag) != k - 1 or any(s not in (1, -1) for s in diag):
        raise ValueError("diag must be k-1 values in {+1,-1}")
    if tail not in (0, 1, -1):
        raise ValueError("tail must be in {0,1,-1}")
    rows = []
    for i in range(k - 1):
        row = [left[2 * i], left[2 * i + 1]] + [0] * k
        row[2 + i] = diag[i]
        rows.append(tuple(row))
    rows.append(tuple([left[2 * k - 2], left[2 * k - 1]] + [0] * (k - 1) + [tail]))
    return SignMatrix(tuple(rows), k + 2)


@lru_cache(maxsize=None)
def _template_star_index(k: int) -> dict[bytes, EqualityMatch]:
    """Canonical keys of every template parameterization, after zero-column removal.

    A template with a zero tail entry carries a zero column, so matching is
    done on its starred form; insertion order makes the degenerate one-row
    collisions (k = 1) resolve to A3/A4.
    """
    index: dict[bytes, EqualityMatch] = {}

    def add(matrix: SignMatrix, match: EqualityMatch) -> None:
        key = canonical_form(star(matrix)[0])
        index.setdefault(key, match)

    add(template_a3(k), EqualityMatch(EqualityClass.A3, signs=()))
    for signs in product((1, -1), repeat=k):
        add(template_a4(k, signs), EqualityMatch(EqualityClass.A4, signs=signs))
    for b in (0, -1):
        add(template_a1(k, b), EqualityMatch(EqualityClass.A1, shift=b))
    for signs in product((1, -1), repeat=k - 1):
        for c in (0, 1):
            add(template_a2(k, signs, c), EqualityMatch(EqualityClass.A2, signs=signs, shift=c))
    return index


def classify_equality(a: SignMatrix) -> EqualityMatch:
    """Match A* against the bound-achieving templates for A's shape.

    Only the regime 1 <= k <= l-1 is characterized; anything else maps to
    NONE.  Matching is up to row/column permutations of the starred forms.
    """
    if not is_reduced(a):
        raise ValueError("classification requires a reduced matrix")
    k, l = a.nrows, a.ncols
    if k < 1 or k >= l:
        return NO_MATCH
    core, _ = star(a)
    return _template_star_index(k).get(canonical_form(core), NO_MATCH)


@lru_cache(maxsize=None)
def exclusion_star_keys(k: int) -> frozenset[bytes]:
    """Starred canonical keys of every overlap-diagonal parameterization.

    These are the (k+2)-column shapes whose counts exceed the generic
    bounds of the exhaustive small-matrix checks and are excluded there.
    """
    keys = set()
    for left in product((1, -1), repeat=2 * k):
        for diag in product((1, -1), repeat=k - 1):
            for tail in (0, 1, -1):
                m = overlap_diagonal_matrix(k, left, diag, tail)
                keys.add(canonical_form(star(m)[0]))
    return frozenset(keys)


@dataclass(frozen=True)
class CostEstimate:
    """Work estimate for the two-row max-weight-7 exhaustive check."""

    row_choices: int
    inner_products: int
    breakdown: tuple[tuple[tuple[int, int, int], tuple[int, int]], ...]


def estimate_cost_t7() -> CostEstimate:
    """Evaluate the second-row choice count and total inner products exactly.

    The first row is pinned to weight 7 with four 1 entries; i, j, r count
    the nonzeros the second row places under the -1 block, the zero block
    and the +1 block, each block nondecreasing.
    """
    breakdown = []
    choices = 0
    products = 0
    for i in range(0, 4):
        for j in range(0, min(6, 7 - i) + 1):
            for r in range(0, min(4, 7 - i - j) + 1):
                term = (i + 1) * (j + 1) * (r + 1)
                prod_term = 2 * term * (1 << (j + 7))
                breakdown.append(((i, j, r), (term, prod_term)))
                choices += term
                products += prod_term
    return CostEstimate(choices, products, tuple(breakdown))
