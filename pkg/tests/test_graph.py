import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kernobs import graph as gr
from kernobs.errors import CapExceededError
from kernobs.graph import Graph

from conftest import graphs

SMALL = [g for n in range(1, 5) for g in gr.nonisomorphic_graphs(n)]


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def minor_closure(g: Graph) -> set[bytes]:
    """Canonical codes of all minors, by repeated one-step operations."""
    seen, todo = set(), [g]
    while todo:
        h = todo.pop()
        code = gr.canonical_form(h)
        if code in seen:
            continue
        seen.add(code)
        todo.extend(gr.one_step_minors(h))
    return seen


class TestConstruction:
    def test_rejects_empty_graph(self):
        with pytest.raises(ValueError):
            Graph(0, frozenset())

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 2)])

    def test_edges_are_normalised(self):
        assert Graph.from_edges(3, [(2, 0), (0, 2)]).edges == {(0, 2)}

    def test_generators(self):
        assert gr.complete(4).m == 6
        assert gr.path(4).sorted_edges() == [(0, 1), (1, 2), (2, 3)]
        assert gr.cycle(5).m == 5
        assert gr.star(3).degree(0) == 3
        assert gr.wheel(5).n == 6 and gr.wheel(5).m == 10

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
    def test_isomorphism_class_counts(self, n, count):
        assert len(gr.nonisomorphic_graphs(n)) == count

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)])
    def test_connected_class_counts(self, n, count):
        assert len(gr.nonisomorphic_graphs(n, connected=True)) == count

    def test_all_graphs_is_labeled(self):
        assert sum(1 for _ in gr.all_graphs(4)) == 2 ** 6


class TestProducts:
    def test_join_examples(self):
        assert gr.join(gr.complete(1), gr.complete(1)) == gr.complete(2)
        assert gr.join(gr.complete(2), gr.complete(2)) == gr.complete(4)

    @pytest.mark.parametrize("a, b", list(itertools.product(SMALL, repeat=2)))
    def test_join_edge_count(self, a, b):
        assert gr.join(a, b).m == a.m + b.m + a.n * b.n

    @pytest.mark.parametrize("a, b", list(itertools.product([g for g in SMALL if g.n <= 3], repeat=2)))
    def test_join_symmetric_up_to_isomorphism(self, a, b):
        assert gr.is_isomorphic(gr.join(a, b), gr.join(b, a))

    def test_disjoint_union_examples(self):
        assert gr.disjoint_union([gr.complete(2)]) == gr.complete(2)
        assert gr.disjoint_union([gr.complete(1)] * 3) == gr.empty(3)
        with pytest.raises(ValueError):
            gr.disjoint_union([])

    @pytest.mark.parametrize("a, b", list(itertools.product(SMALL, repeat=2)))
    def test_disjoint_union_components_add(self, a, b):
        u = gr.disjoint_union([a, b])
        assert len(gr.connected_components(u)) == len(gr.connected_components(a)) + len(gr.connected_components(b))

    def test_inflate_examples(self):
        assert gr.inflate(gr.complete(1), 3) == gr.complete(3)
        assert gr.inflate(gr.complete(2), 2) == gr.complete(4)
        with pytest.raises(ValueError):
            gr.inflate(gr.complete(2), 0)

    @pytest.mark.parametrize("g", SMALL)
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_inflate_edge_count(self, g, k):
        assert gr.inflate(g, k).m == k * k * g.m + g.n * k * (k - 1) // 2

    @pytest.mark.parametrize("g", [g for n in range(1, 6) for g in gr.nonisomorphic_graphs(n)])
    def test_inflate_by_one_is_identity(self, g):
        assert gr.is_isomorphic(gr.inflate(g, 1), g)

    def test_inflate_copy_numbering(self):
        g = gr.inflate(gr.path(2), 2)
        # vertex v has copies 2v and 2v+1
        assert g.has_edge(0, 1) and g.has_edge(2, 3) and g.has_edge(1, 2)


class TestConnectivity:
    def test_examples(self):
        assert len(gr.connected_components(gr.complete(3))) == 1
        assert len(gr.connected_components(gr.empty(3))) == 3

    @given(graphs(max_n=7))
    def test_matches_networkx(self, g):
        ours = sorted(sorted(vmap) for _, vmap in gr.connected_components(g))
        theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
        assert ours == theirs
        assert sum(h.n for h, _ in gr.connected_components(g)) == g.n

    def test_trees(self):
        assert gr.is_tree(gr.path(4)) and not gr.is_tree(gr.cycle(4))
        assert gr.is_forest(gr.empty(3)) and not gr.is_tree(gr.empty(3))


class TestMinors:
    def test_one_step_minors_of_edge(self):
        codes = {gr.canonical_form(h) for h in gr.one_step_minors(gr.complete(2))}
        assert gr.canonical_form(gr.complete(1)) in codes
        assert gr.canonical_form(gr.empty(2)) in codes

    def test_contraction_of_triangle(self):
        for u, v in gr.complete(3).edges:
            assert gr.complete(3).contract_edge(u, v) == gr.complete(2)

    def test_contraction_compacts_in_order(self):
        g = gr.path(4).contract_edge(1, 2)
        assert g == gr.path(3)

    @pytest.mark.parametrize("g", [g for g in SMALL if g.n >= 2])
    def test_one_step_minor_count(self, g):
        assert len(gr.one_step_minors(g)) == g.n + 2 * g.m

    def test_single_vertex_has_no_one_step_minors(self):
        assert gr.one_step_minors(gr.complete(1)) == []

    @pytest.mark.parametrize("g", SMALL)
    def test_k1_is_minor_of_everything(self, g):
        assert gr.is_minor(gr.complete(1), g)

    @pytest.mark.parametrize("t", [t for n in range(1, 7) for t in gr.nonisomorphic_graphs(n, True) if gr.is_tree(t)])
    def test_trees_have_no_triangle_minor(self, t):
        assert not gr.is_minor(gr.complete(3), t)

    def test_k4_minor_of_inflated_edge(self):
        assert gr.is_minor(gr.complete(4), gr.inflate(gr.complete(2), 2))

    def test_k4_minor_of_wheel_not_of_cycle(self):
        assert gr.is_minor(gr.complete(4), gr.wheel(5))
        assert not gr.is_minor(gr.complete(4), gr.cycle(6))

    @pytest.mark.parametrize("g", SMALL)
    def test_matches_one_step_closure(self, g):
        closure = minor_closure(g)
        for h in SMALL:
            assert gr.is_minor(h, g) == (gr.canonical_form(h) in closure)

    def test_reflexive_and_transitive(self):
        rel = {(a, b): gr.is_minor(SMALL[a], SMALL[b]) for a in range(len(SMALL)) for b in range(len(SMALL))}
        idx = range(len(SMALL))
        assert all(rel[a, a] for a in idx)
        assert all(rel[a, c] for a in idx for b in idx for c in idx if rel[a, b] and rel[b, c])

    def test_cap(self):
        with pytest.raises(CapExceededError):
            gr.is_minor(gr.path(9), gr.complete(9))


class TestCliques:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_complete(self, n):
        assert gr.clique_number(gr.complete(n)) == n

    @given(graphs(max_n=8))
    def test_matches_networkx(self, g):
        assert gr.clique_number(g) == max(len(c) for c in nx.find_cliques(to_nx(g)))

    @pytest.mark.parametrize("g", SMALL)
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_inflation_scales_clique_number(self, g, k):
        assert gr.clique_number(gr.inflate(g, k)) == k * gr.clique_number(g)

    @given(graphs(max_n=7))
    def test_maximal_cliques_match_networkx(self, g):
        ours = sorted(sorted(gr._mask_vertices(m)) for m in gr.maximal_cliques(g))
        assert ours == sorted(sorted(c) for c in nx.find_cliques(to_nx(g)))


class TestIsomorphism:
    @pytest.mark.parametrize("g", [g for n in range(1, 6) for g in gr.nonisomorphic_graphs(n)])
    def test_canonical_form_invariant_under_all_permutations(self, g):
        code = gr.canonical_form(g)
        assert all(gr.canonical_form(g.relabel(p)) == code for p in itertools.permutations(range(g.n)))

    @given(graphs(max_n=6), graphs(max_n=6))
    def test_agrees_with_networkx(self, a, b):
        assert gr.is_isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))

    def test_classes_are_distinct(self):
        codes = [gr.canonical_form(g) for n in range(1, 6) for g in gr.nonisomorphic_graphs(n)]
        assert len(set(codes)) == len(codes)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            gr.canonical_form(gr.path(9))

    @given(st.integers(2, 12), st.randoms(use_true_random=False))
    def test_tree_canonical_form(self, n, rnd):
        edges = [(rnd.randrange(v), v) for v in range(1, n)]
        t = Graph.from_edges(n, edges)
        perm = list(range(n))
        rnd.shuffle(perm)
        assert gr.tree_canonical_form(t) == gr.tree_canonical_form(t.relabel(perm))

    def test_tree_canonical_form_separates(self):
        assert gr.tree_canonical_form(gr.path(4)) != gr.tree_canonical_form(gr.star(3))


class TestSerialization:
    @given(graphs(max_n=7))
    def test_text_round_trip(self, g):
        assert gr.from_text(gr.to_text(g)) == g

    def test_text_comments_and_errors(self):
        assert gr.from_text("# a path\n3 2\n0 1\n\n1 2  # last\n") == gr.path(3)
        for bad in ["", "3\n", "3 2\n0 1\n", "2 1\n0 0\n", "2 2\n0 1\n1 0\n", "2 1\n0 1\n5 6\n"]:
            with pytest.raises(ValueError):
                gr.from_text(bad)

    @given(graphs(max_n=7))
    def test_matrix_round_trip(self, g):
        x = gr.encode_matrix(g)
        assert len(x) == g.n * g.n
        assert gr.decode_matrix(x) == g

    @pytest.mark.parametrize("x", [b"", b"01", b"0110x", b"0100", b"1000", b"012" + b"0" * 6, b"0110" + b"0"])
    def test_malformed_matrices(self, x):
        assert gr.decode_matrix(x) is None
