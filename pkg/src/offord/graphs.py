"""Simple graphs as bitmask adjacency rows, with exact rank plumbing.

Includes the twin/cotwin predicates, bipartite handling, the graph6 codec
and a canonical labeling via iterative neighborhood refinement with
backtracking on ties (small orders only, which is all the censuses need).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .linalg import rank_exact


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; neighbors[v] is the bitmask of v's neighborhood."""

    neighbors: tuple[int, ...]

    def __post_init__(self):
        n = len(self.neighbors)
        for v, mask in enumerate(self.neighbors):
            if mask >> n:
                raise ValueError("neighbor bits beyond the vertex range")
            if (mask >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in _bits(mask):
                if not (self.neighbors[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @property
    def n(self) -> int:
        return len(self.neighbors)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        masks = [0] * n
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad edge ({u},{v}) for order {n}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(tuple(masks))

    @classmethod
    def from_adjacency(cls, matrix: Sequence[Sequence[int]]) -> "Graph":
        n = len(matrix)
        masks = []
        for i in range(n):
            mask = 0
            for j in range(n):
                if matrix[i][j]:
                    mask |= 1 << j
            masks.append(mask)
        return cls(tuple(masks))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v, mask in enumerate(self.neighbors):
            for u in _bits(mask):
                if u > v:
                    out.append((v, u))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        n = self.n
        a = np.zeros((n, n), dtype=np.int64)
        for v, mask in enumerate(self.neighbors):
            for u in _bits(mask):
                a[v, u] = 1
        return a

    def degree(self, v: int) -> int:
        return _popcount(self.neighbors[v])

    def relabeled(self, order: Sequence[int]) -> "Graph":
        """Graph with new vertex i := old vertex order[i]."""
        pos = {old: new for new, old in enumerate(order)}
        masks = []
        for old in order:
            mask = 0
            for u in _bits(self.neighbors[old]):
                mask |= 1 << pos[u]
            masks.append(mask)
        return Graph(tuple(masks))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(x: int) -> int:
    return x.bit_count()


def graph_rank(g: Graph) -> int:
    return rank_exact(g.adjacency_matrix()).rank


def graph_corank(g: Graph) -> int:
    a = g.adjacency_matrix()
    return rank_exact(a + np.eye(g.n, dtype=np.int64)).rank


def twins(g: Graph, u: int, v: int) -> bool:
    """Same open neighborhoods."""
    if u == v:
        raise ValueError("twin test needs two distinct vertices")
    return g.neighbors[u] == g.neighbors[v]


def cotwins(g: Graph, u: int, v: int) -> bool:
    """Same closed neighborhoods."""
    if u == v:
        raise ValueError("cotwin test needs two distinct vertices")
    return g.neighbors[u] | (1 << u) == g.neighbors[v] | (1 << v)


def has_twins(g: Graph) -> bool:
    return len(set(g.neighbors)) < g.n


def has_cotwins(g: Graph) -> bool:
    closed = {mask | (1 << v) for v, mask in enumerate(g.neighbors)}
    return len(closed) < g.n


def is_reduced_graph(g: Graph) -> bool:
    """No isolated vertices and no two vertices with equal open neighborhoods."""
    return all(g.neighbors) and not has_twins(g)


def is_coreduced_graph(g: Graph) -> bool:
    """No two vertices with equal closed neighborhoods."""
    return not has_cotwins(g)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(tuple(full & ~(mask | (1 << v)) for v, mask in enumerate(g.neighbors)))


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in _bits(g.neighbors[v]):
                if color[u] < 0:
                    color[u] = color[v] ^ 1
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def is_cobipartite(g: Graph) -> bool:
    return is_bipartite(complement(g))


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph stored as its p x q part-to-part adjacency matrix."""

    matrix: tuple[tuple[int, ...], ...]
    q: int

    def __post_init__(self):
        for row in self.matrix:
            if len(row) != self.q:
                raise ValueError("ragged rows")
            if any(x not in (0, 1) for x in row):
                raise ValueError("entries must be 0 or 1")

    @property
    def p(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], q: Optional[int] = None) -> "BipartiteGraph":
        matrix = tuple(tuple(int(x) for x in row) for row in rows)
        if q is None:
            if not matrix:
                raise ValueError("cannot infer part size of an empty matrix")
            q = len(matrix[0])
        return cls(matrix, q)

    def to_graph(self) -> Graph:
        """Block realization: vertices 0..p-1 on the row side, p..p+q-1 on the column side."""
        p, q = self.p, self.q
        masks = [0] * (p + q)
        for i, row in enumerate(self.matrix):
            for j, x in enumerate(row):
                if x:
                    masks[i] |= 1 << (p + j)
                    masks[p + j] |= 1 << i
        return Graph(tuple(masks))

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph(tuple(tuple(row[i] for row in self.matrix)
                                    for i in range(self.q)), self.p)


# --- canonical labeling ----------------------------------------------------

def _refine(neighbors: tuple[int, ...], colors: list[int]) -> list[int]:
    """Stable neighborhood refinement; colors are ranks, order is iso-invariant."""
    n = len(neighbors)
    while True:
        sig = []
        for v in range(n):
            counts: dict[int, int] = {}
            for u in _bits(neighbors[v]):
                cu = colors[u]
                counts[cu] = counts.get(cu, 0) + 1
            sig.append((colors[v], tuple(sorted(counts.items()))))
        ranking = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranking[s] for s in sig]
        if new == colors:
            return new
        colors = new


def _first_split_cell(colors: list[int]) -> Optional[list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    candidates = [vs for vs in cells.values() if len(vs) > 1]
    if not candidates:
        return None
    return min(candidates, key=lambda vs: (len(vs), colors[vs[0]]))


def canonical_order(g: Graph) -> tuple[int, ...]:
    """A vertex order whose relabeled adjacency is minimal; isomorphism-invariant."""
    n = g.n
    if n == 0:
        return ()
    best_key: Optional[tuple[int, ...]] = None
    best_order: Optional[tuple[int, ...]] = None

    def leaf(colors: list[int]) -> None:
        nonlocal best_key, best_order
        order = tuple(sorted(range(n), key=lambda v: colors[v]))
        key = tuple(g.relabeled(order).neighbors)
        if best_key is None or key < best_key:
            best_key, best_order = key, order

    def search(colors: list[int]) -> None:
        colors = _refine(g.neighbors, colors)
        cell = _first_split_cell(colors)
        if cell is None:
            leaf(colors)
            return
        for v in cell:
            branched = [2 * c for c in colors]
            branched[v] -= 1
            search(branched)

    search([0] * n)
    assert best_order is not None
    return best_order


def canonical_key(g: Graph) -> tuple[int, ...]:
    return tuple(g.relabeled(canonical_order(g)).neighbors)


def canonical_graph6(g: Graph) -> str:
    return graph6_encode(g.relabeled(canonical_order(g)))


# --- graph6 codec -----------------------------------------------------------

def graph6_encode(g: Graph) -> str:
    """Encode per the published graph6 byte format (upper triangle, column-major)."""
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(63 + ((n >> shift) & 63)) for shift in (12, 6, 0))
    else:
        raise ValueError("graph too large for this encoder")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append((g.neighbors[i] >> j) & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for t in range(0, len(bits), 6):
        val = 0
        for b in bits[t : t + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return head + "".join(chars)


def graph6_decode(text: str) -> Graph:
    s = text.strip()
    if not s:
        raise ValueError("empty graph6 string")
    if s.startswith("~~"):
        raise ValueError("8-byte graph6 orders are not supported")
    if s.startswith("~"):
        if len(s) < 4:
            raise ValueError("truncated graph6 header")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n < 0:
        raise ValueError("bad graph6 header")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)} != expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ValueError(f"bad graph6 byte {ch!r}")
        bits.extend(((val >> shift) & 1 for shift in (5, 4, 3, 2, 1, 0)))
    masks = [0] * n
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            t += 1
    return Graph(tuple(masks))


# --- file formats -----------------------------------------------------------

def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [[u, v] for u, v in g.edges()]})


def graph_from_json(text: str) -> Graph:
    data = json.loads(text)
    return Graph.from_edges(int(data["n"]), [(int(u), int(v)) for u, v in data["edges"]])


def parse_bipartite(text: str) -> BipartiteGraph:
    """Parse the bipartite matrix format: "bipartite p q" then p rows of q entries."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    if not lines or lines[0][:1] != ["bipartite"]:
        raise ValueError('expected a "bipartite p q" header')
    if len(lines[0]) != 3:
        raise ValueError('header must be "bipartite p q"')
    p, q = int(lines[0][1]), int(lines[0][2])
    if len(lines) - 1 != p:
        raise ValueError(f"expected {p} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        if len(line) != q:
            raise ValueError(f"expected {q} entries per row, got {len(line)}")
        rows.append(tuple(int(x) for x in line))
    return BipartiteGraph(tuple(rows), q)


def format_bipartite(b: BipartiteGraph) -> str:
    lines = [f"bipartite {b.p} {b.q}"]
    lines.extend(" ".join(str(x) for x in row) for row in b.matrix)
    return "\n".join(lines) + "\n"


def read_graph_text(text: str) -> Graph:
    """Sniff a graph from JSON, the bipartite matrix format, or graph6."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_json(stripped)
    if stripped.startswith("bipartite"):
        return parse_bipartite(text).to_graph()
    return graph6_decode(stripped.splitlines()[0])
