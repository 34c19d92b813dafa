import numpy as np
import pytest
from sklearn.metrics import normalized_mutual_info_score

from antmod import (Graph, NoEdgesError, Partition, from_edge_list,
                    gen_clique_pairs, gen_clique_ring, local_f, modularity,
                    modularity_naive, nmi, partition_density,
                    resolution_report, singleton_partition,
                    weak_community_check)
from .test_graph import random_graph


def random_partition(rng, g):
    return Partition.from_labels(g, rng.integers(0, max(1, g.n // 2),
                                                 size=g.n))


class TestModularity:
    def test_single_community_is_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            g = random_graph(rng)
            p = Partition.from_labels(g, np.zeros(g.n, dtype=int))
            assert modularity(g, p) == pytest.approx(0.0, abs=1e-12)
            assert modularity_naive(g, p) == pytest.approx(0.0, abs=1e-12)

    def test_triangle_singletons(self):
        g, _ = from_edge_list(["a b", "b c", "c a"])
        p = singleton_partition(g)
        assert modularity_naive(g, p) == pytest.approx(-1.0 / 3, abs=1e-12)
        assert modularity(g, p) == pytest.approx(-1.0 / 3, abs=1e-12)

    def test_clique_pairs_reference_values(self):
        inst = gen_clique_pairs()
        assert modularity_naive(inst.graph, inst.truth) == pytest.approx(
            0.5416, abs=5e-4)
        merged = inst.truth.label.copy()
        merged[merged == 3] = 2
        pm = Partition.from_labels(inst.graph, merged)
        assert modularity(inst.graph, pm) == pytest.approx(0.5426, abs=5e-4)

    def test_clique_ring_reference_values(self):
        inst = gen_clique_ring(30, 5)
        assert modularity(inst.graph, inst.truth) == pytest.approx(
            0.87576, abs=1e-4)
        pairs = Partition.from_labels(inst.graph, inst.truth.label // 2)
        assert modularity(inst.graph, pairs) == pytest.approx(0.88788,
                                                              abs=1e-4)

    def test_no_edges_rejected(self):
        g = Graph.from_weighted_edges(3, [], [], [])
        with pytest.raises(NoEdgesError):
            modularity(g, singleton_partition(g))
        with pytest.raises(NoEdgesError):
            modularity_naive(g, singleton_partition(g))

    def test_oracle_equivalence(self):
        rng = np.random.default_rng(101)
        for _ in range(50):
            g = random_graph(rng, n_max=60)
            p = random_partition(rng, g)
            assert modularity(g, p) == pytest.approx(
                modularity_naive(g, p), abs=1e-12)

    def test_label_permutation_invariance(self):
        rng = np.random.default_rng(17)
        g = random_graph(rng)
        labels = rng.integers(0, 4, size=g.n)
        perm = rng.permutation(4)
        p1 = Partition.from_labels(g, labels)
        p2 = Partition.from_labels(g, perm[labels])
        assert modularity(g, p1) == pytest.approx(modularity(g, p2),
                                                  abs=1e-12)
        assert partition_density(g, p1) == pytest.approx(
            partition_density(g, p2), abs=1e-12)


class TestLocalF:
    def test_triangle_one_community(self):
        g, _ = from_edge_list(["a b", "b c", "c a"])
        p = Partition.from_labels(g, [0, 0, 0])
        for i in range(3):
            assert local_f(g, p, i, 0) == pytest.approx(0.0, abs=1e-12)

    def test_triangle_singleton_own_label(self):
        g, _ = from_edge_list(["a b", "b c", "c a"])
        p = singleton_partition(g)
        for i in range(3):
            assert local_f(g, p, i, i) == pytest.approx(-2.0 / 3, abs=1e-12)

    def test_sum_identity(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            g = random_graph(rng, n_max=30)
            if g.total_weight_2m <= 0:
                continue
            p = random_partition(rng, g)
            total = sum(local_f(g, p, i, int(p.label[i])) for i in range(g.n))
            assert total / g.total_weight_2m == pytest.approx(
                modularity_naive(g, p), abs=1e-12)

    def test_monotone_link_single_relabel(self):
        # a one-vertex relabel changes Q by exactly 2*(f' - f)/2m
        rng = np.random.default_rng(29)
        for _ in range(40):
            g = random_graph(rng, n_max=30)
            p = random_partition(rng, g)
            i = int(rng.integers(g.n))
            old = int(p.label[i])
            new = int(rng.integers(p.internal.size))
            if p.counts[new] == 0:
                continue
            f_old = local_f(g, p, i, old)
            f_new = local_f(g, p, i, new)
            q_before = modularity(g, p)
            p.move(g, i, new)
            q_after = modularity(g, p)
            assert q_after - q_before == pytest.approx(
                2.0 * (f_new - f_old) / g.total_weight_2m, abs=1e-12)

    def test_invalid_ids_rejected(self):
        g, _ = from_edge_list(["a b"])
        p = singleton_partition(g)
        with pytest.raises(ValueError):
            local_f(g, p, 5, 0)
        with pytest.raises(ValueError):
            local_f(g, p, 0, 99)


class TestNmi:
    def test_identical_partitions(self):
        a = np.array([0, 0, 1, 1, 2])
        assert nmi(a, a) == 1.0

    def test_label_permutation(self):
        a = np.array([0, 0, 1, 1, 2, 2])
        b = np.array([5, 5, 3, 3, 9, 9])
        assert nmi(a, b) == 1.0

    def test_one_sided_zero_entropy(self):
        a = np.repeat(np.arange(4), 32)
        b = np.zeros(128, dtype=int)
        assert nmi(a, b) == 0.0

    def test_both_single_community(self):
        assert nmi(np.zeros(10, dtype=int), np.zeros(10, dtype=int)) == 1.0

    def test_symmetry_and_range(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            n = int(rng.integers(2, 60))
            a = rng.integers(0, 5, size=n)
            b = rng.integers(0, 5, size=n)
            v = nmi(a, b)
            assert 0.0 <= v <= 1.0
            assert v == pytest.approx(nmi(b, a), abs=1e-12)

    def test_against_sklearn(self):
        rng = np.random.default_rng(37)
        for _ in range(25):
            n = int(rng.integers(3, 80))
            a = rng.integers(0, 6, size=n)
            b = rng.integers(0, 6, size=n)
            ours = nmi(a, b)
            ref = normalized_mutual_info_score(a, b,
                                               average_method="arithmetic")
            assert ours == pytest.approx(ref, abs=1e-9)

    def test_mismatched_sets_rejected(self):
        with pytest.raises(ValueError):
            nmi(np.zeros(3, dtype=int), np.zeros(4, dtype=int))


class TestPartitionDensity:
    def test_clique_ring_truth_is_one(self):
        inst = gen_clique_ring(30, 5)
        assert partition_density(inst.graph, inst.truth) == pytest.approx(
            1.0, abs=1e-12)

    def test_singletons_are_zero(self):
        g, _ = from_edge_list(["a b", "b c", "c a"])
        assert partition_density(g, singleton_partition(g)) == 0.0

    def test_tree_community_is_zero(self):
        g, _ = from_edge_list(["a b", "b c", "c d", "d e"])
        p = Partition.from_labels(g, np.zeros(5, dtype=int))
        assert partition_density(g, p) == 0.0


class TestWeakCommunity:
    def test_ring_clique_is_weak_community(self):
        inst = gen_clique_ring(30, 5)
        assert weak_community_check(inst.graph, inst.truth, 0) is True

    def test_single_vertex_of_degree_three_fails(self):
        g, _ = from_edge_list(["c a", "c b", "c d"])
        p = singleton_partition(g)
        assert weak_community_check(g, p, 0) is False

    def test_path_pair(self):
        g, _ = from_edge_list(["a b", "b c"])
        p = Partition.from_labels(g, [0, 0, 1])
        assert weak_community_check(g, p, 0) is True

    def test_invalid_community(self):
        g, _ = from_edge_list(["a b"])
        p = singleton_partition(g)
        with pytest.raises(ValueError):
            weak_community_check(g, p, 7)


class TestResolutionReport:
    def test_clique_ring_truth(self):
        inst = gen_clique_ring(30, 5)
        rep = resolution_report(inst.graph, inst.truth)
        assert rep.C == 30
        assert rep.C1 == 30 and rep.P1 == 1.0
        assert rep.C3 == 30 and rep.P3 == 1.0
        assert rep.D == pytest.approx(1.0, abs=1e-12)

    def test_clique_ring_single_community(self):
        inst = gen_clique_ring(30, 5)
        p = Partition.from_labels(inst.graph,
                                  np.zeros(inst.graph.n, dtype=int))
        rep = resolution_report(inst.graph, p)
        assert rep.C == 1
        assert rep.C1 == 0 and rep.C2 == 0
        assert rep.P3 == 1.0

    def test_clique_pairs_truth(self):
        inst = gen_clique_pairs()
        rep = resolution_report(inst.graph, inst.truth)
        assert rep.C == 4
        assert rep.Q == pytest.approx(0.5416, abs=5e-4)
        # K5 internal weight 10 < sqrt(202); K20 internal 190 > sqrt(808)
        assert rep.C1 == 2 and rep.C2 == 0
        assert rep.C3 == 4 and rep.P3 == 1.0
        assert rep.D == pytest.approx(1.0, abs=1e-12)

    def test_fraction_invariants(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            g = random_graph(rng)
            if g.total_weight_2m <= 0:
                continue
            rep = resolution_report(g, random_partition(rng, g))
            assert rep.P1 == rep.C1 / rep.C
            assert rep.P2 == rep.C2 / rep.C
            assert rep.P3 == rep.C3 / rep.C
            assert rep.C1 + rep.C2 <= rep.C
            for frac in (rep.P1, rep.P2, rep.P3):
                assert 0.0 <= frac <= 1.0

    def test_as_dict_column_names(self):
        inst = gen_clique_ring(10, 5)
        d = resolution_report(inst.graph, inst.truth).as_dict()
        assert list(d) == ["C", "Q", "C1", "P1", "C2", "P2", "C3", "P3", "D"]
