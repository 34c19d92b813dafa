"""Weighted undirected graphs with self-loops, and vertex partitions with
incrementally maintained community aggregates."""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "EdgeListParseError",
    "NoEdgesError",
    "Graph",
    "Partition",
    "from_edge_list",
    "singleton_partition",
    "relabel_compact",
    "compact_labels",
    "format_edge_list",
    "format_partition",
    "read_partition",
]


class EdgeListParseError(ValueError):
    """Malformed edge-list or partition-file input."""


class NoEdgesError(ValueError):
    """The operation needs a graph with positive total edge weight."""


class Graph:
    """Immutable undirected graph in CSR form.

    Each undirected edge {i, j} with i != j appears in both endpoint rows; a
    self-loop on i appears once in row i. A self-loop of weight w contributes
    2*w to its vertex strength, so ``strength[i] = sum_{j != i} w_ij + 2*w_ii``
    and ``total_weight_2m == strength.sum()``. This is the convention under
    which collapsing communities into single vertices preserves modularity.
    """

    __slots__ = ("n", "indptr", "indices", "weights", "row", "loop_weight",
                 "strength", "proper_degree", "total_weight_2m")

    def __init__(self, n, indptr, indices, weights):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        # row[k] = source vertex of CSR entry k; used by whole-graph scans
        self.row = np.repeat(np.arange(self.n, dtype=np.int64),
                             np.diff(self.indptr))
        loops = self.indices == self.row
        self.loop_weight = np.bincount(self.row[loops],
                                       weights=self.weights[loops],
                                       minlength=self.n)
        self.strength = np.bincount(self.row, weights=self.weights,
                                    minlength=self.n) + self.loop_weight
        self.proper_degree = (np.diff(self.indptr)
                              - np.bincount(self.row[loops], minlength=self.n))
        self.total_weight_2m = float(self.strength.sum())

    @classmethod
    def from_weighted_edges(cls, n: int, u, v, w) -> "Graph":
        """Build a graph from (u, v, weight) records with ids in [0, n).

        Duplicate records of the same unordered pair are summed; u == v
        becomes a self-loop. Weights must be finite and non-negative.
        """
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        w = np.asarray(w, dtype=np.float64).ravel()
        if not (u.size == v.size == w.size):
            raise ValueError("u, v, w must have equal length")
        if u.size:
            if u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n:
                raise ValueError("vertex id out of range")
            if not np.isfinite(w).all() or w.min() < 0:
                raise ValueError("edge weights must be finite and >= 0")
        a = np.minimum(u, v)
        b = np.maximum(u, v)
        key = a * np.int64(max(n, 1)) + b
        uniq, inv = np.unique(key, return_inverse=True)
        wsum = np.bincount(inv, weights=w, minlength=uniq.size)
        ea = uniq // max(n, 1)
        eb = uniq % max(n, 1)
        nonloop = ea != eb
        src = np.concatenate([ea, eb[nonloop]])
        dst = np.concatenate([eb, ea[nonloop]])
        ww = np.concatenate([wsum, wsum[nonloop]])
        order = np.lexsort((dst, src))
        src, dst, ww = src[order], dst[order], ww[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst, ww)

    def neighbors(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency row of vertex i as (neighbor ids, weights) views."""
        s, e = self.indptr[i], self.indptr[i + 1]
        return self.indices[s:e], self.weights[s:e]


class Partition:
    """Vertex labelling plus per-community aggregates kept in sync.

    ``internal[c]`` is the total weight of edges with both endpoints in c
    (self-loops counted once at their stored weight), ``comm_strength[c]``
    the sum of member strengths, ``counts[c]`` the member count. Label ids
    index these arrays and need not be compact while an algorithm mutates
    the partition; compact with :func:`relabel_compact` when done.
    """

    __slots__ = ("label", "internal", "comm_strength", "counts")

    def __init__(self, label, internal, comm_strength, counts):
        self.label = np.asarray(label, dtype=np.int64)
        self.internal = np.asarray(internal, dtype=np.float64)
        self.comm_strength = np.asarray(comm_strength, dtype=np.float64)
        self.counts = np.asarray(counts, dtype=np.int64)

    @classmethod
    def from_labels(cls, g: Graph, labels) -> "Partition":
        """Compute aggregates for an arbitrary labelling of g's vertices."""
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != (g.n,):
            raise ValueError(f"labels must have length {g.n}")
        if labels.size and labels.min() < 0:
            raise ValueError("labels must be non-negative")
        universe = int(labels.max()) + 1 if labels.size else 0
        counts = np.bincount(labels, minlength=universe)
        comm_strength = np.bincount(labels, weights=g.strength,
                                    minlength=universe)
        half = g.row <= g.indices  # each edge once, self-loops once
        same = labels[g.row] == labels[g.indices]
        msk = half & same
        internal = np.bincount(labels[g.row[msk]], weights=g.weights[msk],
                               minlength=universe)
        return cls(labels, internal, comm_strength, counts)

    @property
    def n(self) -> int:
        return self.label.size

    @property
    def num_communities(self) -> int:
        return int(np.count_nonzero(self.counts))

    def copy(self) -> "Partition":
        return Partition(self.label.copy(), self.internal.copy(),
                         self.comm_strength.copy(), self.counts.copy())

    def move(self, g: Graph, i: int, new_label: int) -> None:
        """Relabel vertex i, updating all aggregates incrementally."""
        old = self.label[i]
        if old == new_label:
            return
        nbr, w = g.neighbors(i)
        lab = self.label[nbr]
        proper = nbr != i
        l_old = w[proper & (lab == old)].sum()
        l_new = w[proper & (lab == new_label)].sum()
        lw = g.loop_weight[i]
        k = g.strength[i]
        self.internal[old] -= l_old + lw
        self.internal[new_label] += l_new + lw
        self.comm_strength[old] -= k
        self.comm_strength[new_label] += k
        self.counts[old] -= 1
        self.counts[new_label] += 1
        self.label[i] = new_label


def compact_labels(labels) -> tuple[np.ndarray, int]:
    """Renumber labels to 0..C-1 in first-appearance order."""
    labels = np.asarray(labels, dtype=np.int64)
    uniq, first, inv = np.unique(labels, return_index=True,
                                 return_inverse=True)
    rank = np.empty(uniq.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size,
                                                       dtype=np.int64)
    return rank[inv], uniq.size


def singleton_partition(g: Graph) -> Partition:
    """Every vertex its own community; the detection starting point."""
    labels = np.arange(g.n, dtype=np.int64)
    return Partition(labels, g.loop_weight.copy(), g.strength.copy(),
                     np.ones(g.n, dtype=np.int64))


def relabel_compact(p: Partition) -> Partition:
    """Renumber community ids to 0..C-1 (first-appearance order), carrying
    the aggregates over unchanged."""
    uniq, first, inv = np.unique(p.label, return_index=True,
                                 return_inverse=True)
    c = uniq.size
    rank = np.empty(c, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(c, dtype=np.int64)
    internal = np.empty(c, dtype=np.float64)
    comm_strength = np.empty(c, dtype=np.float64)
    counts = np.empty(c, dtype=np.int64)
    internal[rank] = p.internal[uniq]
    comm_strength[rank] = p.comm_strength[uniq]
    counts[rank] = p.counts[uniq]
    return Partition(rank[inv], internal, comm_strength, counts)


def from_edge_list(lines, weighted: bool = True) -> tuple[Graph, dict[str, int]]:
    """Parse text records "u v" or "u v w" into a densely indexed graph.

    Vertices are arbitrary string tokens, re-indexed in first-appearance
    order. Blank lines and lines starting with '#' or '%' are skipped.
    Duplicate pairs have their weights summed; "u u" records become
    self-loops; records without a weight get weight 1. With
    ``weighted=False`` a trailing weight token is ignored and every edge
    gets weight 1.

    Returns
    -------
    (Graph, dict)
        The graph and the token -> vertex-id mapping for round-tripping.

    Raises
    ------
    EdgeListParseError
        On a malformed record (with its line number) or empty input.
    """
    ids: dict[str, int] = {}
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []
    for lineno, raw in enumerate(lines, 1):
        s = raw.strip()
        if not s or s[0] in "#%":
            continue
        parts = s.split()
        if len(parts) == 2:
            w = 1.0
        elif len(parts) == 3:
            if weighted:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise EdgeListParseError(
                        f"line {lineno}: unparseable weight {parts[2]!r}"
                    ) from None
                if not math.isfinite(w) or w < 0:
                    raise EdgeListParseError(
                        f"line {lineno}: weight must be finite and >= 0, "
                        f"got {parts[2]!r}")
            else:
                w = 1.0
        else:
            raise EdgeListParseError(
                f"line {lineno}: expected 'u v' or 'u v w', "
                f"got {len(parts)} tokens")
        u, v = parts[0], parts[1]
        ui = ids.setdefault(u, len(ids))
        vi = ids.setdefault(v, len(ids))
        us.append(ui)
        vs.append(vi)
        ws.append(w)
    if not ids:
        raise EdgeListParseError("empty graph")
    return Graph.from_weighted_edges(len(ids), us, vs, ws), ids


def format_edge_list(g: Graph, names: list[str]) -> list[str]:
    """Render g as edge-list lines; the weight column appears only when some
    weight differs from 1."""
    half = g.row <= g.indices
    src, dst, w = g.row[half], g.indices[half], g.weights[half]
    if np.all(w == 1.0):
        return [f"{names[a]} {names[b]}" for a, b in zip(src, dst)]
    return [f"{names[a]} {names[b]} {wt:.12g}"
            for a, b, wt in zip(src, dst, w)]


def format_partition(labels, names: list[str]) -> list[str]:
    """Render "token community_id" lines, one per vertex."""
    return [f"{names[i]} {int(c)}" for i, c in enumerate(labels)]


def read_partition(lines) -> dict[str, int]:
    """Parse "token community_id" lines into a token -> community dict."""
    out: dict[str, int] = {}
    for lineno, raw in enumerate(lines, 1):
        s = raw.strip()
        if not s or s[0] in "#%":
            continue
        parts = s.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"line {lineno}: expected 'token community_id'")
        try:
            c = int(parts[1])
        except ValueError:
            raise EdgeListParseError(
                f"line {lineno}: community id {parts[1]!r} is not an integer"
            ) from None
        if c < 0:
            raise EdgeListParseError(
                f"line {lineno}: community id must be non-negative")
        if parts[0] in out:
            raise EdgeListParseError(
                f"line {lineno}: duplicate vertex {parts[0]!r}")
        out[parts[0]] = c
    if not out:
        raise EdgeListParseError("empty partition file")
    return out
