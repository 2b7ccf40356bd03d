"""Efficiently generated quasi-orders on matrix-encoded graphs, and coNP-kernels from them.

A nondeterministic generator is modelled by its set of outputs over all
computation paths. The minor, subgraph and induced-subgraph orders are
generated by closing the input under the matching one-step operations;
each closure is memoised per isomorphism class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

from .errors import CapExceededError
from .graph import Graph, canonical_form, clique_number, decode_matrix, encode_matrix
from .obstructions import ternary_tree_obstruction
from .quasiorder import MembershipOracle, ParamInstance, SizeBound

GENERATOR_CAP = 6
RAW_CAP = 5

Mode = Literal["canonical", "raw"]
Enumerator = Callable[[ParamInstance], frozenset]

_OPS = {
    "minor": ("vertex", "edge", "contract"),
    "subgraph": ("vertex", "edge"),
    "induced": ("vertex",),
}


def _one_step(g: Graph, ops: tuple[str, ...]) -> list[Graph]:
    out = []
    if "vertex" in ops and g.n >= 2:
        out.extend(g.delete_vertex(v) for v in range(g.n))
    for u, v in g.sorted_edges():
        if "edge" in ops:
            out.append(g.delete_edge(u, v))
        if "contract" in ops:
            out.append(g.contract_edge(u, v))
    return out


@lru_cache(maxsize=None)
def _closure(code: bytes, order: str) -> frozenset[bytes]:
    g = decode_matrix(code)
    found = {code}
    for h in _one_step(g, _OPS[order]):
        found |= _closure(canonical_form(h), order)
    return frozenset(found)


def _all_encodings(code: bytes) -> set[bytes]:
    g = decode_matrix(code)
    return {encode_matrix(g.relabel(p)) for p in itertools.permutations(range(g.n))}


def enumerate_order(
    inst: ParamInstance,
    order: str = "minor",
    mode: Mode = "canonical",
    cap: int = GENERATOR_CAP,
) -> frozenset[ParamInstance]:
    """Every instance preceding ``inst`` under ``order`` (``minor``, ``subgraph`` or ``induced``).

    Canonical mode yields one encoding per isomorphism class; raw mode yields
    every vertex-order encoding. The input itself is always included, and a
    malformed input yields only itself.
    """
    if order not in _OPS:
        raise ValueError(f"unknown order {order!r}")
    g = inst.graph()
    if g is None:
        return frozenset({inst})
    if g.n > cap:
        raise CapExceededError(f"{order} order generator", g.n, cap)
    codes = _closure(canonical_form(g), order)
    if mode == "raw":
        if g.n > RAW_CAP:
            raise CapExceededError("raw-mode encodings", g.n, RAW_CAP)
        codes = frozenset().union(*(_all_encodings(c) for c in codes))
    elif mode != "canonical":
        raise ValueError(f"unknown mode {mode!r}")
    return frozenset(ParamInstance(c, inst.k) for c in codes) | {inst}


def enumerate_minor_order(inst: ParamInstance, mode: Mode = "canonical", cap: int = GENERATOR_CAP):
    return enumerate_order(inst, "minor", mode, cap)


def enumerate_subgraph_order(inst: ParamInstance, mode: Mode = "canonical", cap: int = GENERATOR_CAP):
    return enumerate_order(inst, "subgraph", mode, cap)


def enumerate_induced_subgraph_order(inst: ParamInstance, mode: Mode = "canonical", cap: int = GENERATOR_CAP):
    return enumerate_order(inst, "induced", mode, cap)


# -- coNP-kernels ---------------------------------------------------------------

# emitted on every path when the problem has no yes-instances at all
ALWAYS_NO = ParamInstance(b"", 1)


@dataclass(frozen=True)
class ConpKernelOutput:
    outputs: frozenset[ParamInstance]
    bound: int


def conp_kernel(
    inst: ParamInstance,
    enumerator: Enumerator,
    p: SizeBound,
    yes_c: ParamInstance | None,
) -> ConpKernelOutput:
    """Outputs of all paths: small generated elements, and ``yes_c`` for every large one.

    ``yes_c=None`` declares a problem without yes-instances; then every path
    outputs ``ALWAYS_NO``.
    """
    if yes_c is None:
        return ConpKernelOutput(frozenset({ALWAYS_NO}), ALWAYS_NO.size)
    limit = p(inst.k)
    outputs = set()
    for out in enumerator(inst):
        outputs.add(out if out.size <= limit else yes_c)
    return ConpKernelOutput(frozenset(outputs), max(limit, yes_c.size))


def verify_conp_kernel(inst: ParamInstance, out: ConpKernelOutput, oracle: MembershipOracle) -> bool:
    """Yes-inputs must yield only yes-outputs, no-inputs at least one no-output, all within the bound."""
    if any(o.size > out.bound for o in out.outputs):
        return False
    if oracle(inst):
        return all(oracle(o) for o in out.outputs)
    return any(not oracle(o) for o in out.outputs)


# -- the two experiments ----------------------------------------------------------

def clique_oracle(inst: ParamInstance) -> bool:
    """``omega(G) <= k``."""
    g = inst.graph()
    return g is not None and clique_number(g) <= inst.k


def clique_bound(k: int) -> int:
    return (k + 1) ** 2 + k


def pathwidth_obstruction_bound(k: int) -> int:
    """Encoding size of the ternary obstruction of height ``k``; exponential in ``k``."""
    n = ternary_tree_obstruction(k).graph.n
    return n * n + k


def yes_constant(k: int) -> ParamInstance:
    return ParamInstance(b"0", k)
