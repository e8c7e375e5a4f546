"""Classical per-graph graphon estimators and their pooled multi-graph versions.

Two single-graph methods are provided: a degree-sorted histogram with TV
smoothing, and spectral truncation of the adjacency matrix (keep eigenpairs
above a universal threshold, clip the reconstruction). The multi-graph
protocol degree-sorts each per-graph estimate, resamples all of them to a
common grid, and averages with equal weight per graph.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .collection import Graph, GraphCollection
from .estimates import StepEstimate, resample_grid
from .tv import TvParams, tv_smooth

__all__ = [
    "jacobi_eigh",
    "sas_single",
    "usvt_single",
    "PooledEstimate",
    "pool_estimates",
    "estimate_sas_pool",
    "estimate_usvt_pool",
]

DEFAULT_SAS_LAMBDA = 0.05


def jacobi_eigh(a: np.ndarray, tol: float = 1e-10, max_sweeps: int = 100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors) with a ~ V @ diag(w) @ V.T.
    Sweeps rotate every upper-triangle pair; convergence is declared when
    the off-diagonal Frobenius norm drops below ``tol``.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, atol=0.0, rtol=0.0, equal_nan=False):
        raise ValueError("matrix must be symmetric")
    a = a.copy()
    v = np.eye(n)
    if n == 1:
        return np.diag(a).copy(), v

    def off_norm(m):
        # summed directly over off-diagonal entries; subtracting the diagonal
        # from the total would cancel catastrophically near convergence
        od = m.copy()
        np.fill_diagonal(od, 0.0)
        return float(np.linalg.norm(od))

    for _ in range(max_sweeps):
        if off_norm(a) <= tol:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                phi = 0.5 * math.atan2(2.0 * apq, a[q, q] - a[p, p])
                c, s = math.cos(phi), math.sin(phi)
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    if off_norm(a) <= tol:
        return np.diag(a).copy(), v
    raise ArithmeticError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(n={n}, off-diagonal norm {off_norm(a):.3e}, tol {tol:.1e})"
    )


def sas_single(
    graph: Graph,
    h: int | None = None,
    lam: float = DEFAULT_SAS_LAMBDA,
    smooth: bool = True,
) -> np.ndarray:
    """Single-graph degree-sorted histogram with TV smoothing.

    Nodes are sorted by normalized degree (stable, index tie-break) and
    partitioned into consecutive bins of ``h`` nodes (the last bin may be
    smaller). Block values average the adjacency entries between the two
    bins excluding self-pairs; the block matrix is then TV-smoothed.
    Default bin width is ceil(ln n). ``h >= n`` collapses to the global
    edge density.
    """
    if graph.n < 2:
        raise ValueError("single-graph histogram needs at least 2 nodes")
    n = graph.n
    if h is None:
        h = max(1, math.ceil(math.log(n)))
    h = int(h)
    if h < 1:
        raise ValueError("bin width must be >= 1")
    order = np.argsort(graph.degrees() / (n - 1), kind="stable")
    a = graph.adjacency()[np.ix_(order, order)]
    nb = max(1, math.ceil(n / h))
    bounds = [min(b * h, n) for b in range(nb + 1)]
    bounds[-1] = n
    blocks = np.zeros((nb, nb))
    for s in range(nb):
        rs = slice(bounds[s], bounds[s + 1])
        ns = bounds[s + 1] - bounds[s]
        for t in range(s, nb):
            ct = slice(bounds[t], bounds[t + 1])
            nt = bounds[t + 1] - bounds[t]
            total = float(a[rs, ct].sum())
            pairs = ns * nt - (ns if s == t else 0)
            blocks[s, t] = blocks[t, s] = total / max(1, pairs)
    if smooth:
        blocks = tv_smooth(blocks, TvParams(lam=lam))
    return blocks


def usvt_single(graph: Graph, tau: float | None = None, n_ref: int | None = None) -> np.ndarray:
    """Spectral-threshold probability matrix for one graph.

    Eigenpairs of the adjacency with |eigenvalue| >= tau are retained and
    the reconstruction is clipped to [0, 1]. Default threshold is
    0.2 sqrt(n) with the graph's own size; pass ``n_ref`` to use a
    collection-level reference size instead.
    """
    if graph.n < 2:
        raise ValueError("spectral estimate needs at least 2 nodes")
    if tau is None:
        tau = 0.2 * math.sqrt(n_ref if n_ref is not None else graph.n)
    if tau <= 0:
        raise ValueError("threshold must be positive")
    w, v = jacobi_eigh(graph.adjacency())
    keep = np.abs(w) >= tau
    recon = (v[:, keep] * w[keep]) @ v[:, keep].T
    recon = 0.5 * (recon + recon.T)
    return np.clip(recon, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class PooledEstimate:
    grid: np.ndarray = field(repr=False)
    per_graph: tuple | None = None

    @property
    def resolution(self) -> int:
        return self.grid.shape[0]


def pool_estimates(per_graph, resolution: int, keep_inputs: bool = False) -> PooledEstimate:
    """Average per-graph step estimates on a common grid.

    Each input is degree-sorted (rows and columns ordered by ascending row
    mean), resampled to resolution x resolution piecewise-constantly, and
    the results are averaged with equal weight per graph.
    """
    mats = [np.asarray(e, dtype=float) for e in per_graph]
    if not mats:
        raise ValueError("need at least one per-graph estimate")
    acc = np.zeros((resolution, resolution))
    for e in mats:
        order = np.argsort(e.mean(axis=1), kind="stable")
        acc += resample_grid(e[np.ix_(order, order)], resolution)
    return PooledEstimate(acc / len(mats), tuple(mats) if keep_inputs else None)


def _poolable_graphs(collection: GraphCollection) -> list[Graph]:
    graphs = [g for g in collection.graphs if g.n >= 2]
    if not graphs:
        raise ValueError("no graph with >= 2 nodes to estimate from")
    return graphs


def estimate_sas_pool(
    collection: GraphCollection,
    h: int | None = None,
    lam: float = DEFAULT_SAS_LAMBDA,
    resolution: int | None = None,
) -> StepEstimate:
    """Pooled degree-sorted histogram baseline over the whole collection.

    Bin width defaults to ceil(ln n_max) shared by every graph. Size-1
    graphs carry no dyad information and are skipped. The common grid
    defaults to the finest per-graph estimate.
    """
    t0 = time.perf_counter()
    graphs = _poolable_graphs(collection)
    n_max = max(g.n for g in graphs)
    if h is None:
        h = max(1, math.ceil(math.log(n_max)))
    ests = [sas_single(g, h=h, lam=lam) for g in graphs]
    if resolution is None:
        resolution = max(e.shape[0] for e in ests)
    pooled = pool_estimates(ests, resolution)
    elapsed = time.perf_counter() - t0
    return StepEstimate(
        values=pooled.grid,
        method="sas-pool",
        n_total=collection.total_nodes,
        n_graphs=collection.num_graphs,
        dyad_count=collection.total_dyads,
        params={"h": int(h), "lambda": lam, "resolution": int(resolution),
                "skipped_singletons": collection.num_graphs - len(graphs)},
        elapsed_seconds=elapsed,
    )


def estimate_usvt_pool(
    collection: GraphCollection,
    tau: float | None = None,
    use_nmax: bool = False,
    resolution: int | None = None,
) -> StepEstimate:
    """Pooled spectral-threshold baseline over the whole collection.

    By default each graph is thresholded at 0.2 sqrt(n) with its own size;
    ``use_nmax`` switches to the largest size in the collection.
    """
    t0 = time.perf_counter()
    graphs = _poolable_graphs(collection)
    n_max = max(g.n for g in graphs)
    ests = [usvt_single(g, tau=tau, n_ref=n_max if use_nmax else None) for g in graphs]
    if resolution is None:
        resolution = max(e.shape[0] for e in ests)
    pooled = pool_estimates(ests, resolution)
    elapsed = time.perf_counter() - t0
    return StepEstimate(
        values=pooled.grid,
        method="usvt-pool",
        n_total=collection.total_nodes,
        n_graphs=collection.num_graphs,
        dyad_count=collection.total_dyads,
        params={"tau": tau, "use_nmax": use_nmax, "resolution": int(resolution),
                "skipped_singletons": collection.num_graphs - len(graphs)},
        elapsed_seconds=elapsed,
    )
