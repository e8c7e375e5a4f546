"""Step-function estimates of a graphon and their on-disk format.

A step estimate is a k x k symmetric matrix of block edge probabilities on
the uniform k-partition of [0,1]^2. On disk it is a plain CSV of k rows of
full-precision decimals, plus a JSON metadata sidecar ``<path>.meta.json``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = ["StepEstimate", "resample_grid", "save_estimate", "load_estimate"]


@dataclass(frozen=True, eq=False)
class StepEstimate:
    """Block edge-probability estimate with provenance metadata."""

    values: np.ndarray = field(repr=False)
    method: str
    n_total: int
    n_graphs: int
    dyad_count: int
    params: dict = field(default_factory=dict)
    elapsed_seconds: float = 0.0
    empty_blocks: int = 0
    seed: int | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] < 1:
            raise ValueError("estimate values must be a square matrix")
        if not np.array_equal(v, v.T):
            raise ValueError("estimate values must be symmetric")
        if np.any(v < 0.0) or np.any(v > 1.0):
            raise ValueError("estimate values must lie in [0, 1]")
        object.__setattr__(self, "values", v)

    @property
    def k(self) -> int:
        return self.values.shape[0]


def resample_grid(values: np.ndarray, resolution: int) -> np.ndarray:
    """Piecewise-constant resampling of a square step grid to resolution x resolution.

    Target cell (a, b) takes the source value at the target cell's midpoint,
    treating the source as a step function on equal-width cells.
    """
    values = np.asarray(values, dtype=float)
    k = values.shape[0]
    mids = (np.arange(resolution) + 0.5) / resolution
    src = np.minimum((mids * k).astype(np.int64), k - 1)
    return values[np.ix_(src, src)]


def save_estimate(est: StepEstimate, path) -> None:
    with open(path, "w") as fh:
        for row in est.values:
            fh.write(",".join(repr(float(x)) for x in row) + "\n")
    meta = {
        "k": est.k,
        "N": est.n_total,
        "M": est.n_graphs,
        "S": est.dyad_count,
        "method": est.method,
        "params": est.params,
        "seed": est.seed,
        "elapsed_seconds": est.elapsed_seconds,
        "empty_blocks": est.empty_blocks,
    }
    with open(str(path) + ".meta.json", "w") as fh:
        json.dump(meta, fh, separators=(",", ":"))
        fh.write("\n")


def load_estimate(path) -> StepEstimate:
    values = np.loadtxt(path, delimiter=",", ndmin=2)
    try:
        with open(str(path) + ".meta.json") as fh:
            meta = json.load(fh)
    except FileNotFoundError:
        meta = {}
    return StepEstimate(
        values=values,
        method=meta.get("method", "unknown"),
        n_total=meta.get("N", 0),
        n_graphs=meta.get("M", 0),
        dyad_count=meta.get("S", 0),
        params=meta.get("params", {}),
        elapsed_seconds=meta.get("elapsed_seconds", 0.0),
        empty_blocks=meta.get("empty_blocks", 0),
        seed=meta.get("seed"),
    )
