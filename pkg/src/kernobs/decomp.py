"""Path decompositions and the transforms used to build and inspect them.

A decomposition is an ordered tuple of bags. Validity against a host graph
is a separate predicate: the same bag sequence can be checked against
several graphs, and the splicing code builds intermediate sequences that are
not yet valid for anything.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidDecompositionError
from .graph import Graph, _content_lines, inflate


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        if not self.bags:
            raise ValueError("a path decomposition has at least one bag")
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @classmethod
    def of(cls, *bags: Iterable[int]) -> PathDecomposition:
        return cls(tuple(frozenset(b) for b in bags))

    def __len__(self) -> int:
        return len(self.bags)

    def __iter__(self):
        return iter(self.bags)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.bags[i]

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags)

    def normalized(self) -> PathDecomposition:
        """Drop empty bags (keeps one empty bag if nothing else is left)."""
        kept = tuple(b for b in self.bags if b)
        return PathDecomposition(kept or (frozenset(),))

    def compact(self) -> PathDecomposition:
        """Drop empty bags and merge runs of identical adjacent bags."""
        out: list[frozenset[int]] = []
        for b in self.normalized().bags:
            if not out or out[-1] != b:
                out.append(b)
        return PathDecomposition(tuple(out))

    def __repr__(self) -> str:
        return "PathDecomposition(" + ", ".join(str(sorted(b)) for b in self.bags) + ")"


def width(p: PathDecomposition) -> int:
    return max(len(b) for b in p.bags) - 1


def _check_range(p: PathDecomposition, g: Graph) -> None:
    for i, bag in enumerate(p.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise InvalidDecompositionError(f"bag {i} holds vertex {v}, host has {g.n} vertices")


def violations(p: PathDecomposition, g: Graph) -> list[str]:
    """Human-readable list of broken conditions; empty iff ``p`` is valid for ``g``."""
    _check_range(p, g)
    problems = []
    missing = set(range(g.n)) - p.vertices()
    if missing:
        problems.append(f"vertices not covered: {sorted(missing)}")
    for u, v in g.sorted_edges():
        if not any(u in b and v in b for b in p.bags):
            problems.append(f"edge ({u}, {v}) not realized")
    for v in range(g.n):
        idx = [i for i, b in enumerate(p.bags) if v in b]
        if idx and idx[-1] - idx[0] + 1 != len(idx):
            problems.append(f"bags of vertex {v} not consecutive: {idx}")
    return problems


def validate(p: PathDecomposition, g: Graph) -> bool:
    return not violations(p, g)


def require_valid(p: PathDecomposition, g: Graph, what: str = "decomposition") -> None:
    problems = violations(p, g)
    if problems:
        raise InvalidDecompositionError(f"invalid {what}: " + "; ".join(problems[:3]))


def find_bag_containing(p: PathDecomposition, s: Iterable[int]) -> int | None:
    s = frozenset(s)
    for i, bag in enumerate(p.bags):
        if s <= bag:
            return i
    return None


def intervals(p: PathDecomposition) -> dict[int, tuple[int, int]]:
    """First and last bag index of every vertex that occurs in ``p``."""
    span: dict[int, tuple[int, int]] = {}
    for i, bag in enumerate(p.bags):
        for v in bag:
            lo, _ = span.get(v, (i, i))
            span[v] = (lo, i)
    return span


def from_intervals(span: dict[int, tuple[int, int]], length: int) -> PathDecomposition:
    bags = [set() for _ in range(length)]
    for v, (lo, hi) in span.items():
        for i in range(lo, hi + 1):
            bags[i].add(v)
    return PathDecomposition(tuple(frozenset(b) for b in bags))


def from_vertex_order(g: Graph, order: Sequence[int]) -> PathDecomposition:
    """Standard vertex-separation layout to path decomposition conversion.

    Bag ``i`` holds ``order[i]`` plus every earlier vertex that still has a
    neighbour at position ``i`` or later.
    """
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    last_need = [max([pos[u] for u in g.neighbors(v)] + [pos[v]]) for v in range(g.n)]
    bags = []
    for i, v in enumerate(order):
        bags.append(frozenset([v] + [u for u in order[:i] if last_need[u] >= i]))
    return PathDecomposition(tuple(bags))


# -- inflation ----------------------------------------------------------------

def lift_inflation(p: PathDecomposition, g: Graph, k: int) -> PathDecomposition:
    """Replace every vertex by its ``k`` copies (copy ``i`` of ``v`` is ``v*k + i``)."""
    if k < 1:
        raise ValueError("inflation factor must be positive")
    require_valid(p, g)
    return PathDecomposition(
        tuple(frozenset(v * k + i for v in bag for i in range(k)) for bag in p.bags)
    )


def normalize_inflation(p: PathDecomposition, g: Graph, k: int) -> PathDecomposition:
    """Keep, in every bag, only the copy groups that lie in it completely.

    The bag count is kept through the rewrite and empty bags are dropped at
    the end.
    """
    require_valid(p, inflate(g, k), "decomposition of the inflated graph")
    bags = []
    for bag in p.bags:
        full = [v for v in range(g.n) if all(v * k + i in bag for i in range(k))]
        bags.append(frozenset(v * k + i for v in full for i in range(k)))
    return PathDecomposition(tuple(bags)).normalized()


def is_inflation_normalized(p: PathDecomposition, k: int) -> bool:
    for bag in p.bags:
        for x in bag:
            v = x // k
            if any(v * k + i not in bag for i in range(k)):
                return False
    return True


def project_inflation(p_norm: PathDecomposition, g: Graph, k: int) -> PathDecomposition:
    """Keep only the first copy of every vertex of a normalized decomposition."""
    if not is_inflation_normalized(p_norm, k):
        raise InvalidDecompositionError("input is not all-or-none per copy group")
    if k == 1:
        return p_norm
    out = PathDecomposition(tuple(frozenset(x // k for x in bag) for bag in p_norm.bags))
    require_valid(out, g, "projected decomposition")
    return out


# -- splicing -------------------------------------------------------------------

def splice(
    host: PathDecomposition,
    at: int,
    remove: Iterable[int],
    inner: PathDecomposition | Sequence[Iterable[int]],
) -> PathDecomposition:
    """Delete ``remove`` everywhere, then thread ``inner`` through copies of bag ``at``.

    Bag ``at`` (minus ``remove``) is repeated once per inner bag and the
    ``i``-th inner bag is added to the ``i``-th repetition. The caller is
    responsible for ``inner`` using vertex indices disjoint from the host's.
    Empty bags left by the deletion are dropped.
    """
    if not 0 <= at < len(host.bags):
        raise IndexError(f"bag index {at} out of range for {len(host.bags)} bags")
    remove = frozenset(remove)
    inner_bags = [frozenset(b) for b in (inner.bags if isinstance(inner, PathDecomposition) else inner)]
    if not inner_bags:
        inner_bags = [frozenset()]
    stripped = [b - remove for b in host.bags]
    base = stripped[at]
    spliced = stripped[:at] + [base | ib for ib in inner_bags] + stripped[at + 1 :]
    return PathDecomposition(tuple(spliced)).normalized()


# -- serialization --------------------------------------------------------------

def to_text(p: PathDecomposition) -> str:
    """One bag per line, vertices space-separated; an empty bag is written as ``-``."""
    return "".join((" ".join(str(v) for v in sorted(bag)) or "-") + "\n" for bag in p.bags)


def _parse_bag(line: str) -> frozenset[int]:
    return frozenset() if line == "-" else frozenset(int(t) for t in line.split())


def parse_bag_lines(lines: Sequence[str]) -> PathDecomposition:
    if not lines:
        raise ValueError("no bags")
    return PathDecomposition(tuple(_parse_bag(line) for line in lines))


def from_text(text: str) -> PathDecomposition:
    return parse_bag_lines(_content_lines(text))
