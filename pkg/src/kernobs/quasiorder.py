"""Parameterized instances, kernel-derived quasi-orders and obstruction sets.

A kernelization ``K`` induces a quasi-order: ``a`` precedes ``b`` iff
``a == b`` or ``a`` is what ``b`` becomes after applying ``K`` for as long
as it strictly shrinks the instance. The no-instances of size at most the
kernel bound that are minimal under this order form an obstruction set, and
membership is decided by checking that no obstruction precedes the input.

Two concrete problems are wired in: k-Pathwidth (with the exact solver as
decider) and 3-Coloring parameterized by the maximum component size, whose
quasi-order restricts an adjacency matrix to one connected component.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .errors import CapExceededError, EnumerationBudgetError, KernelViolation
from .graph import (
    Graph,
    _component_masks,
    _mask_vertices,
    all_graphs,
    complete,
    decode_matrix,
    encode_matrix,
)
from .pathwidth import pathwidth_le


@dataclass(frozen=True, order=True)
class ParamInstance:
    x: bytes
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("parameter must be a natural number")

    @property
    def size(self) -> int:
        return len(self.x) + self.k

    @classmethod
    def of_graph(cls, g: Graph, k: int) -> ParamInstance:
        return cls(encode_matrix(g), k)

    def graph(self) -> Graph | None:
        return decode_matrix(self.x)


MembershipOracle = Callable[[ParamInstance], bool]
SizeBound = Callable[[int], int]
Order = Callable[[ParamInstance, ParamInstance], bool]
InstanceSource = ParamInstance | Callable[[int], ParamInstance]


@dataclass
class Kernelization:
    """A reduction rule plus its declared size bound ``f``.

    Every call checks ``|K(x, k)| <= f(k)``; when ``oracle`` is set it also
    checks that the answer is preserved.
    """

    reduce: Callable[[ParamInstance], ParamInstance]
    bound: SizeBound
    oracle: MembershipOracle | None = None

    def __call__(self, inst: ParamInstance) -> ParamInstance:
        out = self.reduce(inst)
        if out.size > self.bound(inst.k):
            raise KernelViolation(f"output size {out.size} exceeds bound {self.bound(inst.k)} at k={inst.k}")
        if self.oracle is not None and self.oracle(out) != self.oracle(inst):
            raise KernelViolation(f"kernel changed the answer on {inst}")
        return out


def kernel_trajectory(inst: ParamInstance, kernel: Kernelization) -> list[ParamInstance]:
    """The instance followed by each strictly smaller kernel image, up to the fixpoint."""
    steps = [inst]
    while True:
        nxt = kernel(steps[-1])
        if nxt.size >= steps[-1].size:
            return steps
        steps.append(nxt)


def kernel_fixpoint(inst: ParamInstance, kernel: Kernelization) -> ParamInstance:
    return kernel_trajectory(inst, kernel)[-1]


def kernel_order_precedes(a: ParamInstance, b: ParamInstance, kernel: Kernelization) -> bool:
    return a == b or a == kernel_fixpoint(b, kernel)


def _resolve(src: InstanceSource, k: int) -> ParamInstance:
    return src(k) if callable(src) else src


def trivial_kernel_from_decider(
    oracle: MembershipOracle,
    f: SizeBound,
    yes_c: InstanceSource,
    no_c: InstanceSource,
) -> Kernelization:
    """Small instances pass through; larger ones are decided and replaced by a canonical answer.

    ``yes_c``/``no_c`` are fixed instances or functions of ``k``.
    """
    checked: dict[int, tuple[ParamInstance, ParamInstance]] = {}

    def canonical(k: int) -> tuple[ParamInstance, ParamInstance]:
        if k not in checked:
            yes, no = _resolve(yes_c, k), _resolve(no_c, k)
            if not oracle(yes) or oracle(no):
                raise ValueError(f"canonical instances misclassified at k={k}")
            if max(yes.size, no.size) > f(k):
                raise ValueError(f"canonical instances exceed the bound at k={k}")
            checked[k] = (yes, no)
        return checked[k]

    def reduce(inst: ParamInstance) -> ParamInstance:
        if inst.size <= f(inst.k):
            return inst
        yes, no = canonical(inst.k)
        return yes if oracle(inst) else no

    return Kernelization(reduce, f)


# -- obstruction sets -----------------------------------------------------------

# largest f(k) the exhaustive obstruction search accepts; (k+2)^2 + k at k = 3
OBSTRUCTION_SIZE_CAP = 28


@dataclass(frozen=True)
class ObstructionSet:
    k: int
    elements: tuple[ParamInstance, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, inst: ParamInstance) -> bool:
        return inst in self.elements


def compute_obstruction_set(
    k: int,
    order: Order,
    f: SizeBound,
    oracle: MembershipOracle,
    enum: Callable[[int, int], Iterable[ParamInstance]],
    budget: int = 200_000,
    size_cap: int = OBSTRUCTION_SIZE_CAP,
) -> ObstructionSet:
    """Minimal no-instances among everything ``enum(k, f(k))`` produces.

    ``enum`` must cover every instance with parameter ``k`` and size at most
    ``f(k)`` that the caller intends to decide; ``budget`` caps how many
    instances are pulled from it.
    """
    bound = f(k)
    if bound > size_cap:
        raise CapExceededError("obstruction search size bound", bound, size_cap)
    candidates = []
    for count, inst in enumerate(enum(k, bound), 1):
        if count > budget:
            raise EnumerationBudgetError(f"more than {budget} instances of size <= {bound}")
        if inst.size <= bound and not oracle(inst):
            candidates.append(inst)
    candidates = sorted(set(candidates))
    minimal = [
        c for c in candidates if not any(d != c and order(d, c) for d in candidates)
    ]
    return ObstructionSet(k, tuple(minimal))


def decide_via_obstructions(inst: ParamInstance, obs: ObstructionSet, order: Order) -> bool:
    return not any(order(o, inst) for o in obs.elements)


def matrix_instances(k: int, bound: int) -> Iterator[ParamInstance]:
    """Every adjacency-matrix encoding with parameter ``k`` and size at most ``bound``."""
    n = 1
    while n * n + k <= bound:
        for g in all_graphs(n):
            yield ParamInstance.of_graph(g, k)
        n += 1


# -- k-Pathwidth as a toy problem ---------------------------------------------------

def pathwidth_oracle(inst: ParamInstance) -> bool:
    g = inst.graph()
    return g is not None and pathwidth_le(g, inst.k)


def pathwidth_kernel_bound(k: int) -> int:
    """Room for the encoding of ``K_{k+2}``, the smallest graph of pathwidth ``k+1``."""
    return (k + 2) ** 2 + k


def pathwidth_kernel(check: bool = False) -> Kernelization:
    kernel = trivial_kernel_from_decider(
        pathwidth_oracle,
        pathwidth_kernel_bound,
        lambda k: ParamInstance.of_graph(complete(1), k),
        lambda k: ParamInstance.of_graph(complete(k + 2), k),
    )
    if check:
        kernel.oracle = pathwidth_oracle
    return kernel


# -- 3-Coloring parameterized by component size ---------------------------------------

COLORING_CAP = 20

# the constant-size no-instance that precedes every malformed instance
X_N = ParamInstance(encode_matrix(complete(4)), 4)


def is_three_colorable(g: Graph, cap: int = COLORING_CAP) -> bool:
    """Backtracking 3-coloring, one connected component at a time."""
    for comp in _component_masks(g):
        verts = _mask_vertices(comp)
        if len(verts) > cap:
            raise CapExceededError("3-coloring component", len(verts), cap)
        color = {}

        def paint(i: int) -> bool:
            if i == len(verts):
                return True
            v = verts[i]
            taken = {color[u] for u in verts[:i] if g.adj[v] >> u & 1}
            # symmetry: the first vertex takes colour 0, the second at most 1
            for c in range(min(3, i + 1)):
                if c not in taken:
                    color[v] = c
                    if paint(i + 1):
                        return True
            color.pop(v, None)
            return False

        if not paint(0):
            return False
    return True


@lru_cache(maxsize=1 << 14)
def threecol_graph(inst: ParamInstance) -> Graph | None:
    """The encoded graph if the instance is well-formed (every component has at most ``k`` vertices)."""
    g = inst.graph()
    if g is None:
        return None
    if any(m.bit_count() > inst.k for m in _component_masks(g)):
        return None
    return g


def threecol_oracle(inst: ParamInstance) -> bool:
    g = threecol_graph(inst)
    return g is not None and is_three_colorable(g)


def threecol_bound(k: int) -> int:
    return k * k + k


def threecol_obstruction_bound(k: int) -> int:
    """Size bound for the obstruction search: room for ``X_N`` even when ``k^2 + k`` is smaller."""
    return max(threecol_bound(k), X_N.size)


def restrict_matrix(x: bytes, n: int, verts: list[int]) -> bytes:
    return bytes(x[i * n + j] for i in verts for j in verts)


@lru_cache(maxsize=1 << 14)
def _component_restrictions(inst: ParamInstance) -> frozenset[bytes]:
    g = threecol_graph(inst)
    return frozenset(restrict_matrix(inst.x, g.n, _mask_vertices(m)) for m in _component_masks(g))


def threecol_precedes(a: ParamInstance, b: ParamInstance) -> bool:
    if a == b:
        return True
    if threecol_graph(b) is None:
        return a == X_N
    if a.k != b.k or len(a.x) > len(b.x) or threecol_graph(a) is None:
        return False
    return a.x in _component_restrictions(b)


def threecol_obstruction(inst: ParamInstance) -> ParamInstance:
    """A no-instance of size at most ``k^2 + k`` (or constant size) preceding ``inst``."""
    g = threecol_graph(inst)
    if g is None:
        return X_N
    for m in _component_masks(g):
        verts = _mask_vertices(m)
        if not is_three_colorable(g.induced(verts)):
            return ParamInstance(restrict_matrix(inst.x, g.n, verts), inst.k)
    raise ValueError("instance is a yes-instance; nothing obstructs it")


def threecol_instances(k: int, bound: int) -> Iterator[ParamInstance]:
    """Well-formed matrix instances plus ``X_N``.

    Malformed strings are left out: each one is strictly preceded by ``X_N``,
    so none of them can be a minimal no-instance.
    """
    yield X_N
    for inst in matrix_instances(k, bound):
        if threecol_graph(inst) is not None:
            yield inst


def read_instance(text: str) -> ParamInstance:
    """Instance file: a ``k <int>`` line, then the matrix rows (concatenated row-major)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("k "):
        raise ValueError("instance file must start with 'k <int>'")
    k = int(lines[0].split()[1])
    return ParamInstance("".join(lines[1:]).replace(" ", "").encode("ascii"), k)


def write_instance(inst: ParamInstance) -> str:
    g = inst.graph()
    if g is None:
        return f"k {inst.k}\n{inst.x.decode('ascii', 'replace')}\n"
    rows = (inst.x[i * g.n : (i + 1) * g.n].decode("ascii") for i in range(g.n))
    return f"k {inst.k}\n" + "".join(r + "\n" for r in rows)
