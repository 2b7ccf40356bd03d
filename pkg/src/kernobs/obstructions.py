"""Complete ternary trees with pendant leaves, the obstruction family for pathwidth.

Vertices are numbered breadth-first from the root (vertex 0). In the
obstruction graph the pendant leaves come after every vertex of the
underlying ternary tree, in the same order as the tree leaves they hang
from.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError
from .graph import Graph, disjoint_union, is_tree, one_step_minors
from .pathwidth import SOLVER_CAP, pathwidth, pathwidth_le

HEIGHT_CAP = 6


@dataclass(frozen=True)
class LabeledObstruction:
    graph: Graph
    height: int
    root: int
    leaves: tuple[int, ...]
    parents: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.leaves)


def tree_size(i: int) -> int:
    return (3 ** (i + 1) - 1) // 2


def _check_height(i: int, cap: int) -> None:
    if i < 0:
        raise ValueError("height must be non-negative")
    if i > cap:
        raise CapExceededError("ternary tree height", i, cap)


def ternary_tree(i: int, cap: int = HEIGHT_CAP) -> Graph:
    """Complete ternary tree of height ``i``; children of ``v`` are ``3v+1..3v+3``."""
    _check_height(i, cap)
    n = tree_size(i)
    return Graph(n, frozenset((v, 3 * v + c) for v in range(n) for c in (1, 2, 3) if 3 * v + c < n))


def ternary_tree_obstruction(i: int, cap: int = HEIGHT_CAP) -> LabeledObstruction:
    tree = ternary_tree(i, cap)
    n = tree.n
    parents = tuple(range(n - 3 ** i, n))
    leaves = tuple(n + j for j in range(3 ** i))
    edges = tree.edges | frozenset(zip(parents, leaves))
    return LabeledObstruction(Graph(n + 3 ** i, edges), i, 0, leaves, parents)


def compose_obstructions(g1: Graph, g2: Graph, g3: Graph, a1: int, a2: int, a3: int) -> Graph:
    """Disjoint union of three trees plus a new last vertex adjacent to ``a1``, ``a2``, ``a3``.

    Three acyclic connected obstructions for pathwidth ``k`` compose into an
    obstruction for pathwidth ``k + 1``.
    """
    parts = (g1, g2, g3)
    for g, a in zip(parts, (a1, a2, a3)):
        if not is_tree(g):
            raise ValueError("compose_obstructions needs connected acyclic graphs")
        if not 0 <= a < g.n:
            raise ValueError(f"attachment vertex {a} not in graph of {g.n} vertices")
    union = disjoint_union(parts)
    apex = union.n
    offsets = (0, g1.n, g1.n + g2.n)
    spokes = {(off + a, apex) for off, a in zip(offsets, (a1, a2, a3))}
    return Graph(apex + 1, union.edges | spokes)


@dataclass
class ObstructionReport:
    height: int
    vertices: int
    pathwidth: int
    minors_checked: int
    minors_within: int

    @property
    def ok(self) -> bool:
        return self.pathwidth == self.height + 1 and self.minors_checked == self.minors_within

    def as_dict(self) -> dict:
        return {
            "height": self.height,
            "vertices": self.vertices,
            "pathwidth": self.pathwidth,
            "one_step_minors": self.minors_checked,
            "minors_with_pathwidth_le_height": self.minors_within,
            "minor_minimal_obstruction": self.ok,
        }


def verify_ternary_obstruction(i: int, cap: int = SOLVER_CAP) -> ObstructionReport:
    """Full check (not early-exit) that the height-``i`` graph is a minor-minimal obstruction."""
    g = ternary_tree_obstruction(i).graph
    value = pathwidth(g, cap).value
    minors = one_step_minors(g)
    within = sum(pathwidth_le(h, i, cap) for h in minors)
    return ObstructionReport(i, g.n, value, len(minors), within)
