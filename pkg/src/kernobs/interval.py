"""Pathwidth through interval supergraphs, independent of the subset DP.

``pw(G)`` is the least ``omega(H) - 1`` over interval graphs ``H`` on the
same vertices containing ``G``. Interval recognition uses the consecutive
arrangement of maximal cliques: a graph is interval iff its maximal cliques
can be ordered so that the cliques containing any vertex are consecutive.
"""
from __future__ import annotations

import itertools

from .errors import CapExceededError
from .graph import Graph, clique_number, maximal_cliques

INTERVAL_CAP = 6


def is_interval(g: Graph) -> bool:
    cliques = maximal_cliques(g)
    used = [False] * len(cliques)

    def extend(last: int, closed: int, placed: int) -> bool:
        # closed: vertices that appeared and then dropped out; they may not return
        if placed == len(cliques):
            return True
        for i, c in enumerate(cliques):
            if used[i] or c & closed:
                continue
            used[i] = True
            ok = extend(c, closed | (last & ~c), placed + 1)
            used[i] = False
            if ok:
                return True
        return False

    return extend(0, 0, 0)


def interval_supergraphs(g: Graph):
    missing = [p for p in itertools.combinations(range(g.n), 2) if p not in g.edges]
    for mask in range(1 << len(missing)):
        extra = {p for i, p in enumerate(missing) if mask >> i & 1}
        yield Graph(g.n, g.edges | extra)


def pathwidth_via_interval(g: Graph, cap: int = INTERVAL_CAP) -> int:
    if g.n > cap:
        raise CapExceededError("interval supergraph enumeration", g.n, cap)
    best = g.n - 1
    for h in interval_supergraphs(g):
        w = clique_number(h) - 1
        if w < best and is_interval(h):
            best = w
    return best
