"""Graph collections: storage, validation, sampling from a graphon, JSONL I/O.

A collection holds M undirected simple graphs with disjoint node sets and
heterogeneous sizes. Each graph is stored as a node count plus an edge list
of unordered pairs (i, j), i < j, 0-based.

Reproducibility contract: graph ``m`` of a collection sampled with seed ``s``
is drawn from ``numpy.random.default_rng([s, m])``, i.e. the sub-stream is
derived from (seed, graph index) through numpy's SeedSequence mixing. The
same (seed, m) always yields the same graph, and distinct graphs use
statistically independent streams, so determinism holds no matter which
thread draws which graph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .graphons import Graphon, graphon_eval

__all__ = [
    "Graph",
    "GraphCollection",
    "LatentAssignment",
    "graph_rng",
    "sample_collection",
    "save_collection",
    "load_collection",
]

_EMPTY_EDGES = np.empty((0, 2), dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Graph:
    """One undirected simple graph: ``n`` nodes, edges as an (E, 2) array, i < j."""

    n: int
    edges: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph must have at least one node")
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            if np.any(e[:, 0] >= e[:, 1]):
                raise ValueError("edges must satisfy i < j (no self-loops)")
            if np.any(e < 0) or np.any(e >= self.n):
                raise ValueError("edge endpoints must lie in [0, n)")
            keys = e[:, 0] * self.n + e[:, 1]
            if np.unique(keys).size != keys.size:
                raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", e)

    @property
    def edge_count(self) -> int:
        return self.edges.shape[0]

    def degrees(self) -> np.ndarray:
        """Raw degree of every node."""
        return np.bincount(self.edges.ravel(), minlength=self.n).astype(np.int64)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        if self.edges.size:
            a[self.edges[:, 0], self.edges[:, 1]] = 1.0
            a[self.edges[:, 1], self.edges[:, 0]] = 1.0
        return a


@dataclass(frozen=True, eq=False)
class GraphCollection:
    graphs: tuple[Graph, ...]

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        if not self.graphs:
            raise ValueError("collection must contain at least one graph")

    @property
    def num_graphs(self) -> int:
        """M, the number of graphs."""
        return len(self.graphs)

    @property
    def total_nodes(self) -> int:
        """N = sum of graph sizes."""
        return sum(g.n for g in self.graphs)

    @property
    def total_dyads(self) -> int:
        """S = sum of squared graph sizes (observed entries of the merged matrix)."""
        return sum(g.n * g.n for g in self.graphs)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(g.n for g in self.graphs)


# LatentAssignment: per graph, the latent positions U in [0,1] (known for
# synthetic collections, retained for evaluation).
LatentAssignment = tuple


def graph_rng(seed: int, m: int) -> np.random.Generator:
    """The documented sub-stream for graph ``m`` under collection seed ``seed``."""
    return np.random.default_rng([int(seed), int(m)])


def _sample_graph(spec: Graphon, n: int, rng: np.random.Generator) -> tuple[Graph, np.ndarray]:
    latent = rng.uniform(size=n)
    if n == 1:
        return Graph(1, _EMPTY_EDGES), latent
    iu, ju = np.triu_indices(n, k=1)
    probs = np.asarray(graphon_eval(spec, latent[iu], latent[ju]))
    hit = rng.random(iu.size) < probs
    edges = np.column_stack([iu[hit], ju[hit]]).astype(np.int64)
    return Graph(n, edges), latent


def sample_collection(
    spec: Graphon, sizes, seed: int
) -> tuple[GraphCollection, LatentAssignment]:
    """Sample one graph per entry of ``sizes`` from the graphon.

    For each graph: latent positions are i.i.d. Uniform[0,1]; each pair
    i < j is an edge independently with probability W(U_i, U_j).
    Returns the collection together with the true latent positions.
    """
    sizes = [int(n) for n in sizes]
    if any(n < 1 for n in sizes):
        raise ValueError("all graph sizes must be >= 1")
    graphs, latents = [], []
    for m, n in enumerate(sizes):
        g, u = _sample_graph(spec, n, graph_rng(seed, m))
        graphs.append(g)
        latents.append(u)
    return GraphCollection(tuple(graphs)), tuple(latents)


def save_collection(
    collection: GraphCollection,
    path,
    latent: LatentAssignment | None = None,
    graphon_id: int | None = None,
    seed: int | None = None,
) -> None:
    """Write the collection as JSON Lines, one graph object per line.

    With ``latent`` given, a provenance sidecar ``<path>.sidecar.json`` is
    written holding the true latent positions (plus graphon id and seed).
    Output bytes are a pure function of the arguments.
    """
    with open(path, "w") as fh:
        for m, g in enumerate(collection.graphs):
            rec = {"id": m, "n": g.n, "edges": g.edges.tolist()}
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
    if latent is not None:
        sidecar = {
            "latent": [np.asarray(u).tolist() for u in latent],
            "graphon_id": graphon_id,
            "seed": seed,
        }
        with open(str(path) + ".sidecar.json", "w") as fh:
            json.dump(sidecar, fh, separators=(",", ":"))
            fh.write("\n")


def load_collection(path) -> tuple[GraphCollection, LatentAssignment | None, dict]:
    """Read a JSONL collection; returns (collection, latent or None, sidecar dict)."""
    graphs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                graphs.append(Graph(int(rec["n"]), np.asarray(rec["edges"], dtype=np.int64).reshape(-1, 2)))
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}: malformed collection record on line {lineno}: {exc}") from exc
    collection = GraphCollection(tuple(graphs))
    latent = None
    sidecar: dict = {}
    try:
        with open(str(path) + ".sidecar.json") as fh:
            sidecar = json.load(fh)
        latent = tuple(np.asarray(u, dtype=float) for u in sidecar.get("latent", []))
        if len(latent) != collection.num_graphs:
            raise ValueError(f"{path}: sidecar latent count does not match collection")
    except FileNotFoundError:
        pass
    return collection, latent, sidecar
