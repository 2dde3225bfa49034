"""Extremal graph families and the stacked column-template embedding test.

The families are built from the l x 2**l matrix whose columns run through
all (0,1)-vectors of length l in binary counting order: the incidence
family B_l, its reduced variant Bprime_l (zero column dropped), and the
doubled family D_l stacking the matrix over its complement.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .graphs import BipartiteGraph
from .matrices import CapacityError

BUILD_CAP = 12

FAMILIES = ("B", "Bprime", "D")
ORDER_FAMILIES = ("kotlov_lovasz_m", "bipartite_rank", "cobipartite_corank")


def boolean_columns(l: int) -> tuple[tuple[int, ...], ...]:
    """The l x 2**l matrix of all (0,1)-columns, subsets in binary counting order."""
    return tuple(tuple((c >> i) & 1 for c in range(1 << l)) for i in range(l))


def build_extremal(family: str, l: int) -> BipartiteGraph:
    """One of the extremal bipartite constructions.

    B: all (0,1)-columns (has an isolated column vertex at the zero column);
    Bprime: B with the zero column removed; D: columns stacked over their
    complements, 2l x 2**l.
    """
    if not 1 <= l <= BUILD_CAP:
        raise CapacityError(f"l={l} outside [1, {BUILD_CAP}]")
    base = boolean_columns(l)
    if family == "B":
        return BipartiteGraph(base, 1 << l)
    if family == "Bprime":
        return BipartiteGraph(tuple(row[1:] for row in base), (1 << l) - 1)
    if family == "D":
        return BipartiteGraph(base + tuple(tuple(1 - x for x in row) for row in base), 1 << l)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def extremal_order(family: str, r: int) -> int:
    """Closed-form maximum order for the given invariant value r."""
    if family == "kotlov_lovasz_m":
        if r < 2:
            raise ValueError("defined for r >= 2")
        if r % 2 == 0:
            return (1 << (r // 2 + 1)) - 2
        return 5 * (1 << ((r - 3) // 2)) - 2
    if family == "bipartite_rank":
        if r < 2:
            raise ValueError("defined for r >= 2")
        if r % 2:
            raise ValueError("bipartite ranks are even")
        return (1 << (r // 2)) + r // 2 - 1
    if family == "cobipartite_corank":
        if r < 3:
            raise ValueError("defined for r >= 3")
        if r % 2 == 0:
            return (1 << (r // 2 - 1)) + r - 2
        return (1 << ((r - 1) // 2)) + (r - 1) // 2
    raise ValueError(f"unknown family {family!r}; expected one of {ORDER_FAMILIES}")


def stacked_template(l: int) -> tuple[tuple[int, ...], ...]:
    """The (2l-1) x 2**(l-1) row template: all coordinates, all-ones, all complements."""
    if l < 2:
        raise ValueError("template needs l >= 2")
    base = boolean_columns(l - 1)
    ones = tuple([1] * (1 << (l - 1)))
    return base + (ones,) + tuple(tuple(1 - x for x in row) for row in base)


def exceptional_basis(x: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """The 15 x 6 exceptional-column-basis shape for a weight 2 or 3 vector x.

    Rows: identity, x, all-ones, complement of the identity, complement of x.
    """
    if len(x) != 6 or any(v not in (0, 1) for v in x):
        raise ValueError("x must be a (0,1)-vector of length 6")
    if sum(x) not in (2, 3):
        raise ValueError("x must have weight 2 or 3")
    eye = tuple(tuple(1 if i == j else 0 for j in range(6)) for i in range(6))
    ones = tuple([1] * 6)
    comp_eye = tuple(tuple(1 - v for v in row) for row in eye)
    comp_x = tuple(1 - v for v in x)
    return eye + (tuple(x),) + (ones,) + comp_eye + (comp_x,)


def _check_embedding_preconditions(b: BipartiteGraph) -> None:
    rows = b.matrix
    seen: dict[tuple[int, ...], int] = {}
    for i, row in enumerate(rows):
        if not any(row):
            raise ValueError(f"zero row at index {i}")
        if row in seen:
            raise ValueError(f"identical rows at indices {seen[row]} and {i}")
        seen[row] = i
    seen_cols: dict[tuple[int, ...], int] = {}
    for j in range(b.q):
        col = tuple(row[j] for row in rows)
        if col in seen_cols:
            raise ValueError(f"identical columns at indices {seen_cols[col]} and {j}")
        seen_cols[col] = j


def embeds_in_template(b: BipartiteGraph, l: int) -> bool:
    """Whether b's matrix is a submatrix of the stacked row template for l.

    Row slots are a coordinate, the complement of a coordinate, or the
    all-ones row; columns then inject into distinct (0,1)-vectors of length
    l-1.  Decided by backtracking over row slots; complementary row pairs
    share a coordinate, everything else opens a fresh one.
    """
    if l < 2:
        raise ValueError("template needs l >= 2")
    _check_embedding_preconditions(b)
    rows = b.matrix
    if b.q > 1 << (l - 1):
        return False

    ones_row = tuple([1] * b.q)
    comp = {row: tuple(1 - x for x in row) for row in rows}
    coords_available = l - 1

    def place(i: int, used: int, ones_used: bool, paired: set[int]) -> bool:
        if used > coords_available:
            return False
        if i == len(rows):
            return True
        if i in paired:
            return place(i + 1, used, ones_used, paired)
        row = rows[i]
        if row == ones_row and not ones_used:
            if place(i + 1, used, True, paired):
                return True
        partner = None
        for j in range(i + 1, len(rows)):
            if rows[j] == comp[row]:
                partner = j
                break
        if partner is not None:
            if place(i + 1, used + 1, ones_used, paired | {partner}):
                return True
        return place(i + 1, used + 1, ones_used, paired)

    return place(0, 0, False, set())
