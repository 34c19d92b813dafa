"""Seeded benchmark networks with planted ground truth: Bernoulli planted
partitions (GN-style) and rings of cliques used for resolution-limit tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, Partition

__all__ = [
    "BenchmarkInstance",
    "gen_gn",
    "gen_clique_ring",
    "gen_clique_pairs",
]


@dataclass(frozen=True)
class BenchmarkInstance:
    """A generated graph, its planted partition, and the echoed parameters."""

    graph: Graph
    truth: Partition
    params: dict


def _instance(n: int, us, vs, truth_labels, params: dict) -> BenchmarkInstance:
    g = Graph.from_weighted_edges(n, us, vs, np.ones(len(us)))
    return BenchmarkInstance(g, Partition.from_labels(g, truth_labels), params)


def gen_gn(groups: int, group_size: int, z_in: float, z_out: float,
           seed: int = 0) -> BenchmarkInstance:
    """Planted-partition benchmark with independent Bernoulli edges.

    Vertices split into ``groups`` blocks of ``group_size``. Intra-block
    pairs connect with probability z_in/(group_size-1) and inter-block pairs
    with z_out/((groups-1)*group_size), so expected intra- and inter-degrees
    are z_in and z_out. The classic accuracy setting is 4 groups of 32 with
    z_in + z_out = 16; the scaling setting is K groups of 100 with z_in=10,
    z_out=6.
    """
    if groups < 2:
        raise ValueError("groups must be >= 2")
    if group_size < 2:
        raise ValueError("group_size must be >= 2")
    p_in = z_in / (group_size - 1)
    p_out = z_out / ((groups - 1) * group_size)
    if not 0.0 <= p_in <= 1.0:
        raise ValueError(f"intra-group probability {p_in:.4g} outside [0, 1]")
    if not 0.0 <= p_out <= 1.0:
        raise ValueError(f"inter-group probability {p_out:.4g} outside [0, 1]")
    rng = np.random.default_rng(seed)
    n = groups * group_size
    us: list[np.ndarray] = []
    vs: list[np.ndarray] = []
    # binomial count + uniform subset == independent Bernoulli per pair
    tri_u, tri_v = np.triu_indices(group_size, k=1)
    for gi in range(groups):
        cnt = rng.binomial(tri_u.size, p_in)
        pick = rng.choice(tri_u.size, size=cnt, replace=False)
        us.append(tri_u[pick] + gi * group_size)
        vs.append(tri_v[pick] + gi * group_size)
    pair_count = group_size * group_size
    for a in range(groups):
        for b in range(a + 1, groups):
            cnt = rng.binomial(pair_count, p_out)
            pick = rng.choice(pair_count, size=cnt, replace=False)
            us.append(a * group_size + pick // group_size)
            vs.append(b * group_size + pick % group_size)
    u = np.concatenate(us) if us else np.empty(0, dtype=np.int64)
    v = np.concatenate(vs) if vs else np.empty(0, dtype=np.int64)
    truth = np.repeat(np.arange(groups), group_size)
    params = {"kind": "gn", "groups": groups, "group_size": group_size,
              "z_in": z_in, "z_out": z_out, "seed": int(seed)}
    return _instance(n, u, v, truth, params)


def gen_clique_ring(num_cliques: int, clique_size: int) -> BenchmarkInstance:
    """Ring of identical cliques joined by single unit edges.

    Clique t's vertex 0 connects to clique (t+1 mod num_cliques)'s vertex 1.
    Deterministic; the planted truth is one community per clique.
    """
    if num_cliques < 3:
        raise ValueError("num_cliques must be >= 3")
    if clique_size < 3:
        raise ValueError("clique_size must be >= 3")
    us: list[int] = []
    vs: list[int] = []
    for t in range(num_cliques):
        base = t * clique_size
        for i in range(clique_size):
            for j in range(i + 1, clique_size):
                us.append(base + i)
                vs.append(base + j)
        us.append(base)
        vs.append(((t + 1) % num_cliques) * clique_size + 1)
    n = num_cliques * clique_size
    truth = np.repeat(np.arange(num_cliques), clique_size)
    params = {"kind": "clique-ring", "num_cliques": num_cliques,
              "clique_size": clique_size}
    return _instance(n, us, vs, truth, params)


def gen_clique_pairs() -> BenchmarkInstance:
    """Fixed 50-vertex ring of four cliques [K20, K20, K5, K5].

    Adjacent cliques are joined by single unit edges, with the two 5-cliques
    adjacent to each other: the ordering for which the natural 4-clique
    partition scores Q = 0.5416 while merging the two small cliques scores
    0.5426. The planted truth is the 4 cliques.
    """
    sizes = [20, 20, 5, 5]
    offsets = np.cumsum([0] + sizes)
    us: list[int] = []
    vs: list[int] = []
    for t, size in enumerate(sizes):
        base = offsets[t]
        for i in range(size):
            for j in range(i + 1, size):
                us.append(base + i)
                vs.append(base + j)
    for t in range(4):
        us.append(int(offsets[t]))
        vs.append(int(offsets[(t + 1) % 4]) + 1)
    truth = np.repeat(np.arange(4), sizes)
    params = {"kind": "clique-pairs", "sizes": sizes}
    return _instance(int(offsets[-1]), us, vs, truth, params)
