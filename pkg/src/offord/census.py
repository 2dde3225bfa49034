"""Extremal censuses over bipartite adjacency matrices and coreduced graphs.

The rank-r searches never enumerate raw 0/1 matrices.  A rank-l candidate
is determined by the patterns its columns leave on l independent rows
(nonzero (0,1)-vectors of length l) together with a spanning set of "row
functionals": the (0,1)-valued linear forms on those patterns.  Both sides
live inside sets of size at most 2**l, so the whole candidate space is
tiny even though the matrices reach 15 rows.  Graph-level canonical keys
deduplicate candidates across parametrizations and transposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from .constructions import extremal_order
from .graphs import (
    BipartiteGraph,
    Graph,
    canonical_graph6,
    complement,
    graph6_decode,
    graph_corank,
    graph_rank,
    is_bipartite,
    is_cobipartite,
    is_coreduced_graph,
    is_reduced_graph,
)
from .linalg import rank_exact
from .matrices import CapacityError


@dataclass(frozen=True)
class CensusRecord:
    canonical_key: str  # canonical graph6 string
    order: int
    rank: int
    corank: int
    reduced: bool
    coreduced: bool
    bipartite: bool
    cobipartite: bool
    extremal: bool = False


@dataclass(frozen=True)
class CensusResult:
    max_order: int
    extremal: tuple[CensusRecord, ...]
    records: tuple[CensusRecord, ...]


def record_for_graph(g: Graph, extremal: bool = False) -> CensusRecord:
    return CensusRecord(
        canonical_key=canonical_graph6(g),
        order=g.n,
        rank=graph_rank(g),
        corank=graph_corank(g),
        reduced=is_reduced_graph(g),
        coreduced=is_coreduced_graph(g),
        bipartite=is_bipartite(g),
        cobipartite=is_cobipartite(g),
        extremal=extremal,
    )


# --- exact helpers on tiny integer matrices ---------------------------------

def _det(mat: list[tuple[int, ...]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = 0
    for j in range(n):
        if mat[0][j]:
            minor = [tuple(row[:j] + row[j + 1:]) for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * _det(minor)
    return total


def _adjugate(mat: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """adj with mat @ adj == det * I."""
    n = len(mat)
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [tuple(r[:i] + r[i + 1:]) for rr, r in enumerate(mat) if rr != j]
            row.append((-1) ** (i + j) * _det(minor))
        adj.append(tuple(row))
    return adj


def _echelon_add(ech: list[list[int]], vec: Iterable[int]) -> bool:
    """Fraction-free elimination step; True iff vec extended the span."""
    v = list(vec)
    for row in ech:
        lead = next(i for i, x in enumerate(row) if x)
        if v[lead]:
            p, f = row[lead], v[lead]
            v = [x * p - y * f for x, y in zip(v, row)]
    if any(v):
        ech.append(v)
        return True
    return False


def _rank_of_vectors(vectors: list[tuple[int, ...]]) -> int:
    ech: list[list[int]] = []
    for v in vectors:
        _echelon_add(ech, v)
    return len(ech)


# --- rank-l candidate matrices ----------------------------------------------

def _mask_to_vec(mask: int, l: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(l))


def _pattern_classes(l: int) -> list[tuple[int, ...]]:
    """Spanning sets of nonzero column patterns, one per coordinate-permutation class."""
    npat = (1 << l) - 1
    perms = list(itertools.permutations(range(l)))
    applied = {}
    for p in range(1, npat + 1):
        applied[p] = [sum(((p >> i) & 1) << perm[i] for i in range(l)) for perm in perms]
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    for smask in range(1, 1 << npat):
        patterns = [p for p in range(1, npat + 1) if (smask >> (p - 1)) & 1]
        canon = min(tuple(sorted(applied[p][t] for p in patterns)) for t in range(len(perms)))
        if canon in seen:
            continue
        seen.add(canon)
        vecs = [_mask_to_vec(p, l) for p in patterns]
        if _rank_of_vectors(vecs) == l:
            out.append(tuple(patterns))
    return out


def _functionals(patterns: tuple[int, ...], l: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (0,1)-valued linear forms on the patterns.

    Returns (values over the patterns, scaled coefficient vector); the
    scaled coefficients are exact up to a common denominator, enough for
    rank tracking.
    """
    vecs = [_mask_to_vec(p, l) for p in patterns]
    ech: list[list[int]] = []
    basis: list[tuple[int, ...]] = []
    for v in vecs:
        if len(basis) < l and _echelon_add(ech, v):
            basis.append(v)
    det = _det(basis)
    adj = _adjugate(basis)
    # w_a[j] = sum_i a[i] * adj[i][j]; the form with basis values t takes
    # value (w_a . t) / det on pattern a.
    w = [tuple(sum(a[i] * adj[i][j] for i in range(l)) for j in range(l)) for a in vecs]
    out = []
    for t in itertools.product((0, 1), repeat=l):
        values = []
        for wa in w:
            num = sum(x * y for x, y in zip(wa, t))
            if num == 0:
                values.append(0)
            elif num == det:
                values.append(1)
            else:
                values = None
                break
        if values is not None:
            cvec = tuple(sum(adj[i][j] * t[j] for j in range(l)) for i in range(l))
            out.append((tuple(values), cvec))
    return out


def candidate_matrices(l: int, allow_zero_column: bool) -> Iterator[BipartiteGraph]:
    """Every 0/1 matrix of rank l with distinct nonzero rows and distinct
    nonzero columns, streamed up to coordinate symmetry (duplicates across
    parametrizations remain; deduplicate by graph key downstream).  With
    `allow_zero_column` each candidate is also emitted with one zero column
    appended.
    """
    for patterns in _pattern_classes(l):
        funcs = [f for f in _functionals(patterns, l) if any(f[0])]
        q = len(patterns)
        chosen: list[tuple[int, ...]] = []

        def grow(start: int, ech: list[list[int]]) -> Iterator[BipartiteGraph]:
            for i in range(start, len(funcs)):
                values, cvec = funcs[i]
                ech2 = [row[:] for row in ech]
                gained = _echelon_add(ech2, cvec)
                chosen.append(values)
                if len(ech2) == l:
                    rows = tuple(chosen)
                    yield BipartiteGraph(rows, q)
                    if allow_zero_column:
                        yield BipartiteGraph(tuple(r + (0,) for r in rows), q + 1)
                yield from grow(i + 1, ech2)
                chosen.pop()

        yield from grow(0, [])


def _matrix_normal_form(rows: tuple[tuple[int, ...], ...]) -> tuple:
    q = len(rows[0]) if rows else 0
    cols = sorted(tuple(r[j] for r in rows) for j in range(q))
    return tuple(sorted(tuple(c[i] for c in cols) for i in range(len(rows))))


def _cheap_key(b: BipartiteGraph) -> tuple:
    return min(_matrix_normal_form(b.matrix), _matrix_normal_form(b.transpose().matrix))


# --- the two rank/corank censuses --------------------------------------------

_BIPARTITE_BASE = (2, 4, 6)
_BIPARTITE_EXTENDED = (2, 4, 6, 8)


def bipartite_rank_census(r: int, extended: bool = False) -> CensusResult:
    """Max order of reduced bipartite graphs of rank r, with the extremal graphs.

    Candidates are the rank-r/2 bipartite adjacency matrices with distinct
    nonzero rows and columns; graphs are deduplicated by canonical key
    (which covers row/column permutations and transposition at once).
    """
    allowed = _BIPARTITE_EXTENDED if extended else _BIPARTITE_BASE
    if r not in allowed:
        raise CapacityError(f"bipartite census supports r in {allowed}")
    l = r // 2
    graphs: dict[str, Graph] = {}
    seen_matrices: set[tuple] = set()
    for b in candidate_matrices(l, allow_zero_column=False):
        cheap = _cheap_key(b)
        if cheap in seen_matrices:
            continue
        seen_matrices.add(cheap)
        g = b.to_graph()
        key = canonical_graph6(g)
        graphs.setdefault(key, g)
    return _finish_census(graphs, invariant="rank", value=r)


def cobipartite_corank_census(r: int) -> CensusResult:
    """Max order of coreduced cobipartite graphs of corank r, with extremal graphs."""
    if not 3 <= r <= 8:
        raise CapacityError("cobipartite census supports 3 <= r <= 8")
    if r % 2 == 0:
        ranks = [r // 2]
    else:
        ranks = [(r - 1) // 2, (r + 1) // 2]
    graphs: dict[str, Graph] = {}
    seen_matrices: set[tuple] = set()
    for l in ranks:
        for b in candidate_matrices(l, allow_zero_column=True):
            cheap = _cheap_key(b)
            if cheap in seen_matrices:
                continue
            seen_matrices.add(cheap)
            comp = complement(b.to_graph())
            if not is_coreduced_graph(comp):
                continue
            if graph_corank(comp) != r:
                continue
            key = canonical_graph6(comp)
            graphs.setdefault(key, comp)
    return _finish_census(graphs, invariant="corank", value=r)


def _finish_census(graphs: dict[str, Graph], invariant: str, value: int) -> CensusResult:
    records = []
    max_order = max((g.n for g in graphs.values()), default=0)
    for key in sorted(graphs):
        g = graphs[key]
        rec = record_for_graph(g, extremal=g.n == max_order)
        if invariant == "rank" and rec.rank != value:
            raise AssertionError(f"census candidate has rank {rec.rank}, expected {value}")
        if invariant == "corank" and rec.corank != value:
            raise AssertionError(f"census candidate has corank {rec.corank}, expected {value}")
        records.append(rec)
    extremal = tuple(rec for rec in records if rec.extremal)
    return CensusResult(max_order, extremal, tuple(records))


# --- blunt all-graphs machinery ----------------------------------------------

def all_graphs_upto(max_order: int) -> dict[int, list[Graph]]:
    """One representative per isomorphism class for every order <= max_order.

    Vertex-by-vertex extension with canonical-key deduplication; blunt but
    complete, used for seeds and as the census cross-check oracle.
    """
    from .graphs import canonical_key

    by_order: dict[int, list[Graph]] = {0: [Graph(())]}
    level = {(): Graph(())}
    for n in range(1, max_order + 1):
        nxt: dict[tuple[int, ...], Graph] = {}
        for g in level.values():
            for mask in range(1 << g.n):
                masks = [m | (((mask >> v) & 1) << g.n) for v, m in enumerate(g.neighbors)]
                masks.append(mask)
                g2 = Graph(tuple(masks))
                nxt.setdefault(canonical_key(g2), g2)
        level = nxt
        by_order[n] = list(level.values())
    return by_order


def filter_census_oracle(max_order: int, want_cobipartite: bool = True
                         ) -> dict[int, dict[str, CensusRecord]]:
    """Corank -> {canonical key -> record} over all graphs of order <= max_order.

    The blunt cross-check: enumerate everything, filter coreduced (and
    cobipartite when asked), group by corank.
    """
    out: dict[int, dict[str, CensusRecord]] = {}
    for n, graphs in all_graphs_upto(max_order).items():
        if n == 0:
            continue
        for g in graphs:
            if not is_coreduced_graph(g):
                continue
            if want_cobipartite and not is_cobipartite(g):
                continue
            rec = record_for_graph(g)
            out.setdefault(rec.corank, {})[rec.canonical_key] = rec
    return out


# --- corank-preserving extension census ---------------------------------------

def extend_census(r: int) -> Iterator[CensusRecord]:
    """Stream coreduced graphs of corank r grown from order-r seeds.

    Seeds are the coreduced graphs with order and corank both r; each
    frontier graph is extended by one vertex with every possible
    neighborhood, keeping cotwin-free extensions of unchanged corank.
    Completeness rests on a hereditary property that is only cross-checked
    against the blunt oracle at small orders.
    """
    if not 3 <= r <= 6:
        raise CapacityError("extension census supports 3 <= r <= 6")
    from .graphs import canonical_key

    seeds: dict[tuple[int, ...], Graph] = {}
    for g in all_graphs_upto(r)[r]:
        if is_coreduced_graph(g) and graph_corank(g) == r:
            seeds.setdefault(canonical_key(g), g)
    emitted: set[tuple[int, ...]] = set()
    frontier = seeds
    while frontier:
        for key in sorted(frontier):
            if key not in emitted:
                emitted.add(key)
                yield record_for_graph(frontier[key])
        nxt: dict[tuple[int, ...], Graph] = {}
        for g in frontier.values():
            n = g.n
            for mask in range(1 << n):
                masks = [m | (((mask >> v) & 1) << n) for v, m in enumerate(g.neighbors)]
                masks.append(mask)
                # Only pairs involving the new vertex can become cotwins.
                new_closed = mask | (1 << n)
                if any((masks[v] | (1 << v)) == new_closed for v in range(n)):
                    continue
                g2 = Graph(tuple(masks))
                if graph_corank(g2) != r:
                    continue
                key = canonical_key(g2)
                if key in emitted or key in nxt:
                    continue
                nxt[key] = g2
        frontier = nxt


# --- persistence ---------------------------------------------------------------

class CensusFormatError(ValueError):
    pass


class CensusIntegrityError(ValueError):
    pass


_FLAG_LETTERS = (("reduced", "r"), ("coreduced", "c"), ("bipartite", "b"),
                 ("cobipartite", "k"), ("extremal", "e"))


def _flags_to_text(rec: CensusRecord) -> str:
    text = "".join(letter for field, letter in _FLAG_LETTERS if getattr(rec, field))
    return text or "-"


def save_census(records: Iterable[CensusRecord], path: Union[str, Path]) -> None:
    """graph6<TAB>order<TAB>rank<TAB>corank<TAB>flags, sorted by canonical key."""
    lines = []
    for rec in sorted(records, key=lambda r: r.canonical_key):
        lines.append(f"{rec.canonical_key}\t{rec.order}\t{rec.rank}\t{rec.corank}\t{_flags_to_text(rec)}")
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def load_census(path: Union[str, Path]) -> list[CensusRecord]:
    """Load and re-verify census records; every line is recomputed from its graph."""
    records = []
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) != 5:
            raise CensusFormatError(f"line {lineno}: expected 5 tab-separated fields")
        key, order_s, rank_s, corank_s, flags = parts
        try:
            g = graph6_decode(key)
            order, rank, corank = int(order_s), int(rank_s), int(corank_s)
        except ValueError as exc:
            raise CensusFormatError(f"line {lineno}: {exc}") from exc
        extremal = "e" in flags and flags != "-"
        rec = record_for_graph(g, extremal=extremal)
        if canonical_graph6(g) != key:
            raise CensusIntegrityError(f"line {lineno}: graph6 key is not canonical")
        stated = (order, rank, corank, flags)
        actual = (rec.order, rec.rank, rec.corank, _flags_to_text(rec))
        if stated != actual:
            raise CensusIntegrityError(
                f"line {lineno}: stated {stated} but recomputed {actual}")
        records.append(rec)
    return records
