"""Finite simple undirected graphs on the vertex set ``0..n-1``.

Everything here is a pure function of immutable ``Graph`` values. Vertex
renumbering after a deletion or contraction is an order-preserving
compaction, so outputs are reproducible.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceededError

MINOR_CAP = 8
CANON_CAP = 8
CLIQUE_CAP = 24


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graphs need at least one vertex")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
        return cls(n, frozenset((int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a bitmask."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.n) if self.adj[v] >> u & 1]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, vertices: Iterable[int]) -> Graph:
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return Graph(
            len(keep),
            frozenset((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def delete_vertex(self, v: int) -> Graph:
        return self.induced(u for u in range(self.n) if u != v)

    def delete_edge(self, u: int, v: int) -> Graph:
        return Graph(self.n, self.edges - {(min(u, v), max(u, v))})

    def contract_edge(self, u: int, v: int) -> Graph:
        """Merge the endpoints into the smaller one; loops and parallels vanish."""
        a, b = min(u, v), max(u, v)
        if (a, b) not in self.edges:
            raise ValueError(f"({u}, {v}) is not an edge")
        merged = set()
        for x, y in self.edges:
            x = a if x == b else x
            y = a if y == b else y
            if x != y:
                merged.add((min(x, y), max(x, y)))
        shift = lambda w: w - 1 if w > b else w  # noqa: E731
        return Graph(self.n - 1, frozenset((shift(x), shift(y)) for x, y in merged))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# -- generators --------------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``P_3`` has two edges)."""
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, frozenset({(i, (i + 1) % n) for i in range(n)}))


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def wheel(rim: int) -> Graph:
    """Hub 0 joined to a cycle on ``rim`` vertices."""
    rim_edges = {(1 + i, 1 + (i + 1) % rim) for i in range(rim)}
    return Graph(rim + 1, frozenset(rim_edges | {(0, i) for i in range(1, rim + 1)}))


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labeled graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def nonisomorphic_graphs(n: int, connected: bool = False) -> list[Graph]:
    """One representative per isomorphism class, in first-seen order."""
    seen: dict[bytes, Graph] = {}
    for g in all_graphs(n):
        if connected and not is_connected(g):
            continue
        seen.setdefault(canonical_form(g), g)
    return list(seen.values())


# -- products ------------------------------------------------------------------

def join(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    edges = set(g1.edges)
    edges.update((u + off, v + off) for u, v in g2.edges)
    edges.update((u, v + off) for u in range(g1.n) for v in range(g2.n))
    return Graph(g1.n + g2.n, frozenset(edges))


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    if not gs:
        raise ValueError("disjoint_union of an empty list")
    edges = set()
    off = 0
    for g in gs:
        edges.update((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, frozenset(edges))


def inflate(g: Graph, k: int) -> Graph:
    """Replace every vertex by a k-clique and every edge by a complete bipartite join.

    Copy ``i`` of vertex ``v`` gets index ``v*k + i``.
    """
    if k < 1:
        raise ValueError("inflation factor must be positive")
    edges = set()
    for v in range(g.n):
        edges.update((v * k + i, v * k + j) for i, j in itertools.combinations(range(k), 2))
    for u, v in g.edges:
        edges.update((u * k + i, v * k + j) for i in range(k) for j in range(k))
    return Graph(g.n * k, frozenset(edges))


# -- connectivity ---------------------------------------------------------------

def _component_masks(g: Graph) -> list[int]:
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            rest = frontier
            while rest:
                low = rest & -rest
                nxt |= g.adj[low.bit_length() - 1]
                rest ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def _mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def connected_components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Components in order of their smallest vertex.

    Each entry is the induced component and the tuple mapping its vertices
    back to vertices of ``g``.
    """
    out = []
    for mask in _component_masks(g):
        verts = tuple(_mask_vertices(mask))
        out.append((g.induced(verts), verts))
    return out


def is_connected(g: Graph) -> bool:
    return len(_component_masks(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.m == g.n - 1 and is_connected(g)


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(_component_masks(g))


# -- minors ---------------------------------------------------------------------

def one_step_minors(g: Graph) -> list[Graph]:
    """All single vertex deletions, edge deletions and edge contractions, not deduplicated."""
    out = []
    if g.n >= 2:
        out.extend(g.delete_vertex(v) for v in range(g.n))
    for u, v in g.sorted_edges():
        out.append(g.delete_edge(u, v))
        out.append(g.contract_edge(u, v))
    return out


def _connected_mask(g: Graph, mask: int) -> bool:
    start = mask & -mask
    comp = frontier = start
    while frontier:
        nxt = 0
        rest = frontier
        while rest:
            low = rest & -rest
            nxt |= g.adj[low.bit_length() - 1]
            rest ^= low
        frontier = nxt & mask & ~comp
        comp |= frontier
    return comp == mask


def is_minor(h: Graph, g: Graph, cap: int = MINOR_CAP) -> bool:
    """Whether ``h`` is isomorphic to a minor of ``g``.

    Searches over assignments of the vertices of ``g`` to branch sets (or to
    "deleted"), then checks each branch set is connected and every edge of
    ``h`` has a witness edge between the corresponding branch sets.
    """
    if h.n > cap:
        raise CapExceededError("is_minor pattern", h.n, cap)
    if h.n > g.n or h.m > g.m:
        return False
    hn, gn = h.n, g.n
    h_edges = h.sorted_edges()
    branch = [0] * hn

    def complete_assignment() -> bool:
        if not all(_connected_mask(g, b) for b in branch):
            return False
        for a, b in h_edges:
            ba, bb = branch[a], branch[b]
            if not any(g.adj[v] & bb for v in _mask_vertices(ba)):
                return False
        return True

    def assign(v: int, empty_sets: int) -> bool:
        if gn - v < empty_sets:
            return False
        if v == gn:
            return complete_assignment()
        if assign(v + 1, empty_sets):
            return True
        for j in range(hn):
            was_empty = branch[j] == 0
            branch[j] |= 1 << v
            found = assign(v + 1, empty_sets - was_empty)
            branch[j] &= ~(1 << v)
            if found:
                return True
        return False

    return assign(0, hn)


# -- cliques --------------------------------------------------------------------

def clique_number(g: Graph, cap: int = CLIQUE_CAP) -> int:
    """Maximum clique size by branch and bound on bitmask candidate sets."""
    if g.n > cap:
        raise CapExceededError("clique_number", g.n, cap)
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(size + 1, cand & g.adj[v])

    expand(0, (1 << g.n) - 1)
    return best


def maximal_cliques(g: Graph) -> list[int]:
    """Maximal cliques as bitmasks (Bron-Kerbosch with pivoting)."""
    out: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot = max(_mask_vertices(p | x), key=lambda u: (p & g.adj[u]).bit_count())
        for v in _mask_vertices(p & ~g.adj[pivot]):
            bit = 1 << v
            bk(r | bit, p & g.adj[v], x & g.adj[v])
            p &= ~bit
            x |= bit

    bk(0, (1 << g.n) - 1, 0)
    return sorted(out)


# -- isomorphism ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


@lru_cache(maxsize=1 << 16)
def _canonical_code(n: int, edges: frozenset) -> bytes:
    g = Graph(n, edges)
    a = g.adjacency_matrix()
    perms = _permutations(n)
    mats = a[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    padded = np.zeros((len(perms), 64), dtype=np.uint8)
    padded[:, : n * n] = mats
    keys = np.packbits(padded, axis=1).view(">u8").ravel()
    best = mats[int(np.argmin(keys))]
    return bytes(b"01"[bit] for bit in best)


def canonical_form(g: Graph, cap: int = CANON_CAP) -> bytes:
    """Lexicographically least row-major adjacency bit string over all vertex orders."""
    if g.n > min(cap, CANON_CAP):
        raise CapExceededError("canonical_form", g.n, min(cap, CANON_CAP))
    return _canonical_code(g.n, g.edges)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g) == canonical_form(h)


def tree_canonical_form(g: Graph) -> str:
    """AHU encoding of an unrooted tree, rooted at its center(s).

    Not capped: trees are the one family large enough to need isomorphism
    checks beyond the permutation search.
    """
    if not is_tree(g):
        raise ValueError("tree_canonical_form needs a tree")
    if g.n == 1:
        return "()"
    degree = [g.degree(v) for v in range(g.n)]
    layer = [v for v in range(g.n) if degree[v] == 1]
    remaining = g.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in g.neighbors(v):
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        layer = nxt

    def encode(v: int, parent: int) -> str:
        return "(" + "".join(sorted(encode(u, v) for u in g.neighbors(v) if u != parent)) + ")"

    return min(encode(c, -1) for c in layer)


def bfs_order(g: Graph, root: int = 0) -> list[int]:
    order, seen, queue = [], {root}, deque([root])
    while queue:
        v = queue.popleft()
        order.append(v)
        for u in g.neighbors(v):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return order


# -- serialization --------------------------------------------------------------

def to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_graph_lines(lines: list[str]) -> tuple[Graph, int]:
    """Parse a graph from pre-stripped lines; returns it and the lines consumed."""
    if not lines:
        raise ValueError("missing 'n m' header")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad header {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    if len(lines) < m + 1:
        raise ValueError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for line in lines[1 : m + 1]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    g = Graph.from_edges(n, edges)
    if g.m != m:
        raise ValueError("duplicate edges in graph text")
    return g, m + 1


def from_text(text: str) -> Graph:
    lines = _content_lines(text)
    g, used = parse_graph_lines(lines)
    if used != len(lines):
        raise ValueError("trailing content after edge list")
    return g


# -- adjacency matrix byte encoding ----------------------------------------------

def encode_matrix(g: Graph) -> bytes:
    """Row-major adjacency matrix, one ASCII '0'/'1' byte per entry."""
    a = g.adjacency_matrix().ravel()
    return bytes(b"01"[bit] for bit in a)


def decode_matrix(x: bytes) -> Graph | None:
    """Inverse of :func:`encode_matrix`; ``None`` for anything that is not a graph matrix."""
    size = len(x)
    n = int(round(size ** 0.5))
    if size == 0 or n * n != size or any(c not in (48, 49) for c in x):
        return None
    edges = set()
    for i in range(n):
        if x[i * n + i] != 48:
            return None
        for j in range(i + 1, n):
            if x[i * n + j] != x[j * n + i]:
                return None
            if x[i * n + j] == 49:
                edges.add((i, j))
    return Graph(n, frozenset(edges))
