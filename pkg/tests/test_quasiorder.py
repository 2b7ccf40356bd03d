import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kernobs import graph as gr
from kernobs import quasiorder as qo
from kernobs.errors import CapExceededError, EnumerationBudgetError, KernelViolation
from kernobs.quasiorder import ParamInstance as PI

from conftest import graphs

POOL = [PI.of_graph(g, k) for k in range(4) for n in range(1, 5) for g in gr.all_graphs(n)]


def colorable_bruteforce(g, colors=3):
    return any(
        all(c[u] != c[v] for u, v in g.edges) for c in itertools.product(range(colors), repeat=g.n)
    )


def pw_precedes(kernel):
    return lambda a, b: qo.kernel_order_precedes(a, b, kernel)


class TestParamInstance:
    def test_size_and_graph(self):
        inst = PI.of_graph(gr.complete(2), 3)
        assert inst.size == 4 + 3 and inst.graph() == gr.complete(2)
        assert PI(b"xyz", 0).graph() is None

    def test_negative_parameter(self):
        with pytest.raises(ValueError):
            PI(b"0", -1)

    def test_file_round_trip(self):
        inst = PI.of_graph(gr.path(3), 2)
        assert qo.write_instance(inst) == "k 2\n010\n101\n010\n"
        assert qo.read_instance(qo.write_instance(inst)) == inst
        assert qo.read_instance(qo.write_instance(PI(b"abc", 1))) == PI(b"abc", 1)
        with pytest.raises(ValueError):
            qo.read_instance("010\n")


class TestKernel:
    def test_fixpoint_unchanged(self):
        kernel = qo.pathwidth_kernel(check=True)
        small = PI.of_graph(gr.path(3), 1)
        assert qo.kernel_fixpoint(small, kernel) == small

    def test_large_instances_collapse_in_one_step(self):
        kernel = qo.pathwidth_kernel(check=True)
        big_yes = PI.of_graph(gr.path(6), 1)
        big_no = PI.of_graph(gr.cycle(6), 1)
        assert qo.kernel_trajectory(big_yes, kernel) == [big_yes, PI.of_graph(gr.complete(1), 1)]
        assert qo.kernel_trajectory(big_no, kernel) == [big_no, PI.of_graph(gr.complete(3), 1)]

    def test_iterations_bounded_by_size(self):
        kernel = qo.pathwidth_kernel(check=True)
        for inst in POOL:
            assert len(qo.kernel_trajectory(inst, kernel)) - 1 <= inst.size

    def test_equivalence_on_pool(self):
        kernel = qo.pathwidth_kernel(check=True)
        for inst in POOL:
            assert qo.pathwidth_oracle(kernel(inst)) == qo.pathwidth_oracle(inst)

    def test_violations_are_caught(self):
        grow = qo.Kernelization(lambda i: PI(i.x * 2, i.k), lambda k: 5)
        with pytest.raises(KernelViolation):
            grow(PI.of_graph(gr.complete(2), 0))
        liar = qo.Kernelization(lambda i: PI(b"0", i.k), lambda k: 100, oracle=qo.pathwidth_oracle)
        with pytest.raises(KernelViolation):
            liar(PI.of_graph(gr.complete(3), 0))

    def test_misclassified_canonical_instances(self):
        kernel = qo.trivial_kernel_from_decider(
            qo.pathwidth_oracle, lambda k: 1, PI.of_graph(gr.complete(3), 0), PI.of_graph(gr.complete(1), 0)
        )
        with pytest.raises(ValueError):
            kernel(PI.of_graph(gr.complete(3), 0))

    def test_oversized_canonical_instances(self):
        kernel = qo.trivial_kernel_from_decider(
            qo.pathwidth_oracle, lambda k: 2, PI.of_graph(gr.complete(1), 0), PI.of_graph(gr.complete(2), 0)
        )
        with pytest.raises(ValueError):
            kernel(PI.of_graph(gr.path(3), 0))


class TestKernelOrder:
    def test_reflexive(self):
        order = pw_precedes(qo.pathwidth_kernel())
        assert all(order(a, a) for a in POOL)

    def test_transitive_and_lower_ideal(self):
        kernel = qo.pathwidth_kernel()
        order = pw_precedes(kernel)
        below = {b: [a for a in POOL if order(a, b)] for b in POOL}
        for c in POOL:
            for b in below[c]:
                assert all(order(a, c) for a in below[b])
        for b in POOL:
            if qo.pathwidth_oracle(b):
                assert all(qo.pathwidth_oracle(a) for a in below[b])

    @pytest.mark.parametrize("k", range(4))
    def test_obstruction_set_is_the_clique(self, k):
        order = pw_precedes(qo.pathwidth_kernel())
        obs = qo.compute_obstruction_set(k, order, qo.pathwidth_kernel_bound, qo.pathwidth_oracle, qo.matrix_instances)
        assert obs.elements == (PI.of_graph(gr.complete(k + 2), k),)

    @pytest.mark.parametrize("k", range(4))
    def test_decider_agrees_with_oracle(self, k):
        order = pw_precedes(qo.pathwidth_kernel())
        obs = qo.compute_obstruction_set(k, order, qo.pathwidth_kernel_bound, qo.pathwidth_oracle, qo.matrix_instances)
        for a in POOL:
            if a.k == k:
                assert qo.decide_via_obstructions(a, obs, order) == qo.pathwidth_oracle(a)

    def test_empty_obstruction_set(self):
        obs = qo.compute_obstruction_set(0, lambda a, b: a == b, lambda k: 9, lambda i: True, qo.matrix_instances)
        assert len(obs) == 0
        assert qo.decide_via_obstructions(PI(b"junk", 0), obs, lambda a, b: a == b)

    def test_budget(self):
        with pytest.raises(EnumerationBudgetError):
            qo.compute_obstruction_set(0, lambda a, b: a == b, lambda k: 16, lambda i: True, qo.matrix_instances,
                                       budget=10)

    def test_size_cap(self):
        with pytest.raises(CapExceededError):
            qo.compute_obstruction_set(6, qo.threecol_precedes, qo.threecol_bound, qo.threecol_oracle,
                                       qo.threecol_instances)

    def test_no_instance_strictly_above_obstruction(self):
        order = pw_precedes(qo.pathwidth_kernel())
        obs = qo.compute_obstruction_set(0, order, qo.pathwidth_kernel_bound, qo.pathwidth_oracle, qo.matrix_instances)
        above = PI.of_graph(gr.cycle(5), 0)
        assert not qo.decide_via_obstructions(above, obs, order)
        assert order(obs.elements[0], above) and above not in obs


class TestThreeColoring:
    def test_examples(self):
        assert qo.is_three_colorable(gr.complete(3))
        assert not qo.is_three_colorable(gr.complete(4))
        assert not qo.is_three_colorable(gr.wheel(5))
        assert qo.is_three_colorable(gr.wheel(6))

    @pytest.mark.parametrize("g", [g for n in range(1, 7) for g in gr.nonisomorphic_graphs(n)])
    def test_bipartite_graphs_are_colorable(self, g):
        if colorable_bruteforce(g, 2):
            assert qo.is_three_colorable(g)

    @pytest.mark.parametrize("g", [g for n in range(1, 6) for g in gr.nonisomorphic_graphs(n)])
    def test_matches_bruteforce(self, g):
        assert qo.is_three_colorable(g) == colorable_bruteforce(g)

    @given(graphs(max_n=6))
    def test_matches_bruteforce_on_labeled_graphs(self, g):
        assert qo.is_three_colorable(g) == colorable_bruteforce(g)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            qo.is_three_colorable(gr.path(21))

    def test_component_restriction_precedes(self):
        two_triangles = PI.of_graph(gr.disjoint_union([gr.complete(3), gr.complete(3)]), 3)
        assert qo.threecol_precedes(PI.of_graph(gr.complete(3), 3), two_triangles)
        assert not qo.threecol_precedes(PI.of_graph(gr.complete(3), 4), two_triangles)
        assert not qo.threecol_precedes(PI.of_graph(gr.path(3), 3), two_triangles)

    def test_restriction_is_not_up_to_isomorphism(self):
        # component {0, 2} of this graph restricts to the matrix of K_2, not of the path it came from
        g = gr.Graph.from_edges(3, [(0, 2)])
        b = PI.of_graph(g, 3)
        assert qo.threecol_precedes(PI.of_graph(gr.complete(2), 3), b)
        assert qo.threecol_precedes(PI.of_graph(gr.complete(1), 3), b)

    def test_identity(self):
        for x in (b"", b"junk", gr.encode_matrix(gr.complete(5))):
            assert qo.threecol_precedes(PI(x, 2), PI(x, 2))

    def test_malformed_is_preceded_by_constant_no_instance(self):
        b = PI.of_graph(gr.complete(5), 3)
        assert qo.threecol_graph(b) is None
        assert qo.threecol_precedes(qo.X_N, b)
        assert qo.X_N == PI(gr.encode_matrix(gr.complete(4)), 4)
        assert not qo.threecol_precedes(PI.of_graph(gr.complete(1), 3), b)

    def test_obstruction_examples(self):
        assert qo.threecol_obstruction(PI(b"junk", 2)) == qo.X_N
        k4_k3 = PI.of_graph(gr.disjoint_union([gr.complete(4), gr.complete(3)]), 4)
        o = qo.threecol_obstruction(k4_k3)
        assert o == PI.of_graph(gr.complete(4), 4) and len(o.x) == 16
        w5 = PI.of_graph(gr.wheel(5), 6)
        assert qo.threecol_obstruction(w5) == w5
        with pytest.raises(ValueError):
            qo.threecol_obstruction(PI.of_graph(gr.complete(3), 3))

    def test_obstruction_set_contains_k4(self):
        obs = qo.compute_obstruction_set(4, qo.threecol_precedes, qo.threecol_bound, qo.threecol_oracle,
                                         qo.threecol_instances)
        assert PI.of_graph(gr.complete(4), 4) in obs
        assert not any(a != b and qo.threecol_precedes(a, b) for a in obs.elements for b in obs.elements)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_decider_agrees_with_oracle(self, k):
        obs = qo.compute_obstruction_set(k, qo.threecol_precedes, qo.threecol_obstruction_bound,
                                         qo.threecol_oracle, qo.threecol_instances)
        pool = [PI.of_graph(g, k) for n in range(1, 6) for g in gr.nonisomorphic_graphs(n)]
        pool += [PI(b"junk", k), PI(b"", k)]
        for a in pool:
            assert qo.decide_via_obstructions(a, obs, qo.threecol_precedes) == qo.threecol_oracle(a)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_obstructions_exist_and_are_small(self, k):
        for n in range(1, 6):
            for g in gr.all_graphs(n):
                inst = PI.of_graph(g, k)
                if qo.threecol_oracle(inst):
                    continue
                o = qo.threecol_obstruction(inst)
                assert qo.threecol_precedes(o, inst) and not qo.threecol_oracle(o)
                assert o == qo.X_N or o.size <= k * k + k
