"""Exact pathwidth by dynamic programming over vertex subsets.

Pathwidth equals vertex separation number. For a set ``S`` of already
placed vertices let ``boundary(S)`` be the vertices of ``S`` with a
neighbour outside ``S``; then

    f(S) = max(|boundary(S)|, min over v in S of f(S - v)),   pw = f(V).

The table has ``2**n`` one-byte entries, so the default cap of 24 vertices
needs about 16 MB.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

from .decomp import PathDecomposition, from_vertex_order, validate, width
from .errors import CapExceededError
from .graph import Graph, join, one_step_minors

SOLVER_CAP = 24


@dataclass(frozen=True)
class PwResult:
    value: int
    witness: PathDecomposition


@njit(cache=True)
def _separation_table(adj, n):
    size = 1 << n
    f = np.empty(size, np.uint8)
    f[0] = 0
    for s in range(1, size):
        outside = ~s
        boundary = 0
        best = 255
        for u in range(n):
            bit = 1 << u
            if s & bit:
                if adj[u] & outside:
                    boundary += 1
                prev = f[s ^ bit]
                if prev < best:
                    best = prev
        f[s] = boundary if boundary > best else best
    return f


@njit(cache=True)
def _separation_at_most(adj, n, k):
    # depth-first search over placed-vertex sets whose boundary stays <= k
    size = 1 << n
    full = size - 1
    seen = np.zeros(size, np.uint8)
    stack = np.empty(size, np.int32)
    top = 0
    stack[0] = 0
    seen[0] = 1
    top = 1
    while top > 0:
        top -= 1
        s = stack[top]
        if s == full:
            return True
        for v in range(n):
            bit = 1 << v
            if s & bit:
                continue
            t = s | bit
            if seen[t]:
                continue
            seen[t] = 1
            outside = ~t
            boundary = 0
            for u in range(n):
                if (t >> u) & 1 and adj[u] & outside:
                    boundary += 1
            if boundary <= k:
                stack[top] = t
                top += 1
    return False


def _adj_array(g: Graph) -> np.ndarray:
    return np.array(g.adj, dtype=np.int64)


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceededError("pathwidth solver", g.n, cap)


@lru_cache(maxsize=4096)
def _solve(n: int, edges: frozenset) -> PwResult:
    g = Graph(n, edges)
    f = _separation_table(_adj_array(g), n)
    s = (1 << n) - 1
    value = int(f[s])
    reversed_order = []
    while s:
        for v in range(n):
            bit = 1 << v
            if s & bit and f[s ^ bit] <= f[s]:
                reversed_order.append(v)
                s ^= bit
                break
    witness = from_vertex_order(g, reversed_order[::-1])
    assert width(witness) == value and validate(witness, g)
    return PwResult(value, witness)


def pathwidth(g: Graph, cap: int = SOLVER_CAP) -> PwResult:
    """Exact pathwidth of ``g`` with a witness decomposition of that width."""
    _check_cap(g, cap)
    return _solve(g.n, g.edges)


def pathwidth_le(g: Graph, k: int, cap: int = SOLVER_CAP) -> bool:
    """Whether ``pw(g) <= k``, exploring only states whose boundary fits in ``k``."""
    _check_cap(g, cap)
    if k < 0:
        return False
    if k >= g.n - 1:
        return True
    return bool(_separation_at_most(_adj_array(g), g.n, k))


def join_pathwidth_check(g1: Graph, g2: Graph, cap: int = SOLVER_CAP) -> bool:
    """Check ``pw(g1 (x) g2) == min(pw(g1) + |V(g2)|, pw(g2) + |V(g1)|)``."""
    _check_cap(Graph(g1.n + g2.n, frozenset()), cap)
    lhs = pathwidth(join(g1, g2), cap).value
    rhs = min(pathwidth(g1).value + g2.n, pathwidth(g2).value + g1.n)
    return lhs == rhs


def is_minor_minimal_obstruction(g: Graph, k: int, cap: int = SOLVER_CAP) -> bool:
    """``pw(g) == k+1`` and every one-step minor has pathwidth at most ``k``.

    One-step minors suffice because pathwidth is minor-monotone.
    """
    if pathwidth(g, cap).value != k + 1:
        return False
    return all(pathwidth_le(h, k, cap) for h in one_step_minors(g))
