"""Pathwidth Improvement and its OR-cross-composition into k-Pathwidth.

An improvement instance ``(G, k, P)`` carries a decomposition ``P`` of width
``k - 1`` and asks whether ``pw(G) <= k - 2``. ``cross_compose`` embeds
``t = 3**s`` such instances into the ``k``-fold inflation of the height-``s``
ternary obstruction, replacing the copy clique of each pendant leaf by one
input graph. The result has pathwidth at most ``k(s + 2) - 2`` exactly when
some input is a yes-instance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import decomp
from .decomp import (
    PathDecomposition,
    find_bag_containing,
    lift_inflation,
    require_valid,
    splice,
    validate,
    width,
)
from .errors import InvalidDecompositionError, MalformedInstanceError
from .graph import Graph, _content_lines, complete, empty, join, parse_graph_lines
from . import graph as graphs
from .obstructions import LabeledObstruction, ternary_tree_obstruction, tree_size
from .pathwidth import SOLVER_CAP, pathwidth, pathwidth_le


@dataclass(frozen=True)
class PwImprovementInstance:
    g: Graph
    k: int
    p: PathDecomposition

    def __post_init__(self):
        if not 2 <= self.k <= self.g.n:
            raise MalformedInstanceError(f"need 2 <= k <= |V(G)|, got k={self.k}, n={self.g.n}")
        try:
            ok = validate(self.p, self.g)
        except InvalidDecompositionError as exc:
            raise MalformedInstanceError(str(exc)) from None
        if not ok:
            raise MalformedInstanceError("decomposition does not validate against the graph")
        if width(self.p) != self.k - 1:
            raise MalformedInstanceError(f"decomposition has width {width(self.p)}, expected {self.k - 1}")

    def answer(self, cap: int = SOLVER_CAP) -> bool:
        return pathwidth_le(self.g, self.k - 2, cap)


# constant-size yes-instance: two isolated vertices in one bag, pw 0 <= k - 2
TRIVIAL_YES = PwImprovementInstance(empty(2), 2, PathDecomposition.of({0, 1}))

# constant-size no-instance of k-Pathwidth emitted for malformed inputs
MALFORMED_OUTPUT: tuple[Graph, int] = (complete(4), 2)


def instance_to_text(inst: PwImprovementInstance) -> str:
    return graphs.to_text(inst.g) + f"k {inst.k}\n" + decomp.to_text(inst.p)


def parse_instance(text: str | bytes) -> PwImprovementInstance:
    """Parse an instance file; raises ``MalformedInstanceError`` on anything off."""
    try:
        if isinstance(text, bytes):
            text = text.decode("ascii")
        lines = _content_lines(text)
        g, used = parse_graph_lines(lines)
        head = lines[used].split() if used < len(lines) else []
        if len(head) != 2 or head[0] != "k":
            raise ValueError("expected a 'k <int>' line after the edge list")
        k = int(head[1])
        p = decomp.parse_bag_lines(lines[used + 1 :])
    except (ValueError, UnicodeDecodeError) as exc:
        raise MalformedInstanceError(str(exc)) from None
    return PwImprovementInstance(g, k, p)


def try_parse_instance(raw: bytes) -> PwImprovementInstance | None:
    try:
        return parse_instance(raw)
    except MalformedInstanceError:
        return None


def equivalent(a: bytes, b: bytes) -> bool:
    """Polynomial equivalence: malformed strings form one class, the rest are split by ``k``."""
    ia, ib = try_parse_instance(a), try_parse_instance(b)
    if ia is None or ib is None:
        return ia is None and ib is None
    return ia.k == ib.k


# -- NP-hardness reduction from k-Pathwidth ------------------------------------

def reduce_pathwidth_to_improvement(g: Graph, k: int) -> PwImprovementInstance:
    """Map ``(G, k)`` to an equivalent improvement instance.

    For ``k >= n - 1`` the answer is always yes and ``TRIVIAL_YES`` is
    returned. Otherwise ``G`` is joined with ``n - k - 1`` isolated vertices
    and the decomposition has one bag per added vertex.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n = g.n
    if k >= n - 1:
        return TRIVIAL_YES
    extra = n - k - 1
    g2 = join(g, empty(extra))
    base = frozenset(range(n))
    p2 = PathDecomposition(tuple(base | {n + j} for j in range(extra)))
    return PwImprovementInstance(g2, n + 1, p2)


# -- cross-composition ----------------------------------------------------------

def pad_to_power_of_three(inputs: Sequence[PwImprovementInstance]) -> list[PwImprovementInstance]:
    if not inputs:
        raise ValueError("nothing to pad")
    if len({inst.k for inst in inputs}) != 1:
        raise ValueError("inputs are not equivalent: they ask for different bounds")
    t = 3
    while t < len(inputs):
        t *= 3
    return [inputs[i % len(inputs)] for i in range(t)]


def _log3(t: int) -> int | None:
    s = 0
    while t > 1 and t % 3 == 0:
        t //= 3
        s += 1
    return s if t == 1 else None


@dataclass(frozen=True)
class ComposedInstance:
    g_prime: Graph
    k_prime: int
    k: int
    s: int
    obstruction: LabeledObstruction
    input_ranges: tuple[tuple[int, int], ...]
    inputs: tuple[PwImprovementInstance, ...] = field(repr=False)

    def copies(self, v: int) -> list[int]:
        """Indices in ``g_prime`` of the copies of surviving obstruction vertex ``v``."""
        return [v * self.k + j for j in range(self.k)]

    def provenance(self) -> dict:
        return {
            "t": len(self.inputs),
            "s": self.s,
            "k": self.k,
            "k_prime": self.k_prime,
            "obstruction_block": [0, tree_size(self.s) * self.k],
            "input_ranges": [list(r) for r in self.input_ranges],
            "attach_parents": list(self.obstruction.parents),
        }


def cross_compose(inputs: Sequence[PwImprovementInstance]) -> ComposedInstance:
    t = len(inputs)
    s = _log3(t)
    if s is None or s < 1:
        raise ValueError(f"need a power of three >= 3 inputs, got {t}; pad first")
    ks = {inst.k for inst in inputs}
    if len(ks) != 1:
        raise ValueError("inputs are not equivalent: they ask for different bounds")
    k = ks.pop()
    obs = ternary_tree_obstruction(s)
    base_n = tree_size(s) * k
    # the pendant leaves come last in the obstruction, so the surviving copies
    # are exactly the first base_n vertices of the inflation
    edges = set(graphs.inflate(obs.graph, k).induced(range(base_n)).edges)
    ranges = []
    offset = base_n
    for inst, y in zip(inputs, obs.parents):
        edges.update((u + offset, v + offset) for u, v in inst.g.edges)
        edges.update((y * k + j, offset + u) for j in range(k) for u in range(inst.g.n))
        ranges.append((offset, offset + inst.g.n))
        offset += inst.g.n
    g_prime = Graph(offset, frozenset(edges))
    return ComposedInstance(g_prime, k * (s + 2) - 2, k, s, obs, tuple(ranges), tuple(inputs))


def compose_raw(blobs: Sequence[bytes]) -> tuple[Graph, int, ComposedInstance | None]:
    """Cross-compose serialized instances, padding as needed.

    A class of malformed strings yields the fixed no-instance ``(K_4, 2)``.
    """
    if not blobs:
        raise ValueError("no inputs")
    parsed = [try_parse_instance(b) for b in blobs]
    if all(p is None for p in parsed):
        g, kp = MALFORMED_OUTPUT
        return g, kp, None
    if any(p is None for p in parsed):
        raise ValueError("inputs are not equivalent: some are malformed")
    c = cross_compose(pad_to_power_of_three(parsed))
    return c.g_prime, c.k_prime, c


def witness_decomposition(c: ComposedInstance, i_star: int, p_star: PathDecomposition) -> PathDecomposition:
    """Decomposition of ``g_prime`` of width at most ``k_prime``, built from a yes-witness.

    Starts from an optimal decomposition of the obstruction minus leaf
    ``x^{i*}``, inflated by ``k``; splices every other input's own
    decomposition in place of its leaf's copies; finally threads ``p_star``
    through a bag holding all copies of the parent of ``x^{i*}``.
    """
    k, obs = c.k, c.obstruction
    target = c.inputs[i_star]
    require_valid(p_star, target.g, "p_star")
    if width(p_star) > k - 2:
        raise InvalidDecompositionError(f"p_star has width {width(p_star)} > k - 2 = {k - 2}")

    x_star = obs.leaves[i_star]
    reduced = obs.graph.delete_vertex(x_star)
    to_obs = [h if h < x_star else h + 1 for h in range(reduced.n)]
    lifted = lift_inflation(pathwidth(reduced).witness, reduced, k)

    n_tree = tree_size(c.s)
    scratch = c.g_prime.n  # leaf copies live above every real vertex until spliced out

    def place(x: int) -> int:
        v, j = to_obs[x // k], x % k
        if v < n_tree:
            return v * k + j
        return scratch + (v - n_tree) * k + j

    host = PathDecomposition(tuple(frozenset(place(x) for x in bag) for bag in lifted.bags))

    for i, inst in enumerate(c.inputs):
        if i == i_star:
            continue
        leaf_copies = {scratch + i * k + j for j in range(k)}
        parent_copies = set(c.copies(obs.parents[i]))
        at = find_bag_containing(host, leaf_copies | parent_copies)
        assert at is not None, "a clique must sit inside some bag"
        off = c.input_ranges[i][0]
        host = splice(host, at, leaf_copies, [{off + v for v in bag} for bag in inst.p.bags])

    at = find_bag_containing(host, c.copies(obs.parents[i_star]))
    assert at is not None
    off = c.input_ranges[i_star][0]
    host = splice(host, at, (), [{off + v for v in bag} for bag in p_star.bags])
    require_valid(host, c.g_prime, "composed witness")
    return host


@dataclass
class OrReport:
    input_answers: list[bool]
    composed_answer: bool
    k_prime: int
    composed_pathwidth: int | None = None
    witness_width: int | None = None
    witness_valid: bool | None = None

    @property
    def agrees(self) -> bool:
        ok = self.composed_answer == any(self.input_answers)
        if self.witness_valid is not None:
            ok = ok and self.witness_valid and self.witness_width <= self.k_prime
        return ok

    def as_dict(self) -> dict:
        return {
            "input_answers": self.input_answers,
            "or_of_inputs": any(self.input_answers),
            "composed_answer": self.composed_answer,
            "k_prime": self.k_prime,
            "composed_pathwidth": self.composed_pathwidth,
            "witness_width": self.witness_width,
            "witness_valid": self.witness_valid,
            "agrees": self.agrees,
        }


def verify_or_semantics(
    c: ComposedInstance,
    inputs: Sequence[PwImprovementInstance] | None = None,
    exact: bool = False,
    with_witness: bool = True,
    cap: int = SOLVER_CAP,
) -> OrReport:
    """Compare the solver's verdict on ``g_prime`` with the OR of the input verdicts."""
    inputs = c.inputs if inputs is None else tuple(inputs)
    answers = [inst.answer(cap) for inst in inputs]
    if exact:
        value = pathwidth(c.g_prime, cap).value
        composed = value <= c.k_prime
    else:
        value = None
        composed = pathwidth_le(c.g_prime, c.k_prime, cap)
    report = OrReport(answers, composed, c.k_prime, value)
    if with_witness and any(answers):
        i_star = answers.index(True)
        w = witness_decomposition(c, i_star, pathwidth(inputs[i_star].g, cap).witness)
        report.witness_width = width(w)
        report.witness_valid = validate(w, c.g_prime)
    return report


def demo_inputs(pattern: Sequence[bool]) -> list[PwImprovementInstance]:
    """``P_3`` for a yes entry, ``K_3`` for a no entry, each with the one-bag decomposition."""
    one_bag = PathDecomposition.of(range(3))
    return [PwImprovementInstance(graphs.path(3) if yes else complete(3), 3, one_bag) for yes in pattern]
