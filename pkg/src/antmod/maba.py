"""Multi-layer detection (MABA): run the single-layer colony, collapse each
community into one vertex, and repeat on the coarse graph while modularity
keeps improving. Every level is kept, so the result doubles as a multi-scale
hierarchy; the best partition is the level with maximal Q."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, Partition, compact_labels, singleton_partition
from .metrics import modularity
from .saba import SabaConfig, run_saba

__all__ = [
    "CoarsenMap",
    "Level",
    "Hierarchy",
    "coarsen",
    "project_partition",
    "run_maba",
    "best_partition",
    "derive_level_seed",
]

# fine-vertex -> coarse-vertex surjection; fibers are the communities
CoarsenMap = np.ndarray


def coarsen(g: Graph, p: Partition) -> tuple[Graph, CoarsenMap]:
    """Collapse each non-empty community of p into one coarse vertex.

    Weights of fine edges crossing two communities sum into the coarse edge
    between them; intra-community weights (fine self-loops included) sum
    into the coarse vertex's self-loop. With self-loops counted twice in
    vertex strengths, the coarse graph has exactly the fine total weight and
    the same modularity for corresponding partitions.
    """
    cmap, c = compact_labels(p.label)
    half = g.row <= g.indices
    cu = cmap[g.row[half]]
    cv = cmap[g.indices[half]]
    return Graph.from_weighted_edges(c, cu, cv, g.weights[half]), cmap


def project_partition(g: Graph, map_chain: list[CoarsenMap],
                      coarse_p: Partition) -> Partition:
    """Pull a coarse partition back to the original vertex set.

    ``map_chain`` lists the coarsening maps from finest to coarsest; an
    empty chain is the identity. Each original vertex inherits the community
    of its image under the composed maps.
    """
    comp: np.ndarray | None = None
    for cm in map_chain:
        cm = np.asarray(cm)
        if comp is None:
            comp = cm
            continue
        if comp.size and int(comp.max()) >= cm.size:
            raise ValueError("dimension mismatch: coarsen maps do not compose")
        comp = cm[comp]
    labels = coarse_p.label
    if comp is not None:
        if comp.size and int(comp.max()) >= labels.size:
            raise ValueError(
                "dimension mismatch: partition does not cover the coarsest level")
        labels = labels[comp]
    if labels.size != g.n:
        raise ValueError(
            f"dimension mismatch: projected labels cover {labels.size} "
            f"vertices, graph has {g.n}")
    return Partition.from_labels(g, labels)


@dataclass
class Level:
    """One layer of the hierarchy: the (coarse) graph at this level, the
    partition found on it, its projection to the original vertices, its
    modularity, and the Q trace of the run that produced it."""

    graph: Graph
    partition: Partition
    projected: Partition
    q: float
    q_trace: list[float]


@dataclass
class Hierarchy:
    """All levels produced by a multi-layer run, finest first."""

    levels: list[Level]
    best_level: int

    def summary(self) -> list[dict]:
        return [
            {"level": i, "num_communities": lvl.partition.num_communities,
             "Q": lvl.q, "best": i == self.best_level}
            for i, lvl in enumerate(self.levels)
        ]


def derive_level_seed(master_seed: int, level: int) -> int:
    """Deterministic per-level seed so whole runs reproduce from one seed."""
    ss = np.random.SeedSequence([int(master_seed) & (2**64 - 1), int(level)])
    return int(ss.generate_state(1, np.uint64)[0])


def _derive_restart_seed(master_seed: int, restart: int) -> int:
    # distinct salt keeps restart streams disjoint from per-level streams
    ss = np.random.SeedSequence([int(master_seed) & (2**64 - 1), 7919,
                                 int(restart)])
    return int(ss.generate_state(1, np.uint64)[0])


def run_maba(g: Graph, cfg: SabaConfig, restarts: int = 1) -> Hierarchy:
    """Alternate single-layer runs with community coarsening.

    Level 0 runs on g from the singleton partition; each further level runs
    on the coarsened graph of the previous result, again from singletons and
    from a fresh initial temperature. The loop stops at the first level
    whose Q fails to strictly exceed the previous one; that level is kept in
    the hierarchy but never selected as best.

    With ``restarts > 1``, that whole procedure runs ``restarts`` times from
    seeds derived deterministically from ``cfg.seed`` and the hierarchy with
    the highest best-level Q is returned (first such on exact ties). The
    single-iteration Q-plateau stopping rule occasionally freezes a level
    one improving move short; restarts smooth that out.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if restarts == 1:
        return _run_maba_once(g, cfg)
    best: Hierarchy | None = None
    for r in range(restarts):
        h = _run_maba_once(g, cfg.with_seed(_derive_restart_seed(cfg.seed, r)))
        if best is None or h.levels[h.best_level].q > best.levels[best.best_level].q:
            best = h
    return best


def _run_maba_once(g: Graph, cfg: SabaConfig) -> Hierarchy:
    levels: list[Level] = []
    maps: list[CoarsenMap] = []
    current = g
    prev_q: float | None = None
    level = 0
    while True:
        cfg_l = cfg.with_seed(derive_level_seed(cfg.seed, level))
        part, trace = run_saba(current, singleton_partition(current), cfg_l)
        q = modularity(current, part)
        projected = project_partition(g, maps, part)
        levels.append(Level(graph=current, partition=part,
                            projected=projected, q=q, q_trace=trace))
        if prev_q is not None and q <= prev_q:
            break
        prev_q = q
        coarse, cmap = coarsen(current, part)
        maps.append(cmap)
        current = coarse
        level += 1
    best = int(np.argmax([lvl.q for lvl in levels]))
    return Hierarchy(levels=levels, best_level=best)


def best_partition(h: Hierarchy) -> Partition:
    """Projected partition of the maximal-Q level."""
    if not h.levels:
        raise ValueError("empty hierarchy")
    return h.levels[h.best_level].projected
