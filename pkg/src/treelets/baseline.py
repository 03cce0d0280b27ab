"""Flat-clustering baseline and column normalization used in comparisons."""

from __future__ import annotations

import warnings

import numpy as np

from .hierarchy import ClusterLabels
from .kernels import Dataset
from .rng import SplitMix64


def _squared_distances(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    # (n, k) matrix of squared euclidean distances
    return ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def _plusplus_seeding(x: np.ndarray, k: int, rng: SplitMix64) -> np.ndarray:
    n = x.shape[0]
    chosen = [rng.below(n)]
    d2 = ((x - x[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(k - 1):
        total = float(d2.sum())
        if total <= 0.0:
            idx = rng.below(n)  # all mass on existing centers: fall back to uniform
        else:
            r = rng.uniform() * total
            idx = int(np.searchsorted(np.cumsum(d2), r, side="right"))
            idx = min(idx, n - 1)
        chosen.append(idx)
        d2 = np.minimum(d2, ((x - x[idx]) ** 2).sum(axis=1))
    return x[chosen].copy()


def kmeans(
    data: Dataset,
    k: int,
    seed: int = 0,
    max_iters: int = 300,
    objective_trace: list | None = None,
) -> ClusterLabels:
    """Lloyd iterations from ++-style seeding on the package PRNG.

    Assignment ties go to the lowest centroid index; a cluster that empties
    is re-seeded to the point farthest from its current centroid.  Missing
    values are refused, not imputed.
    """
    if not data.fully_present:
        raise ValueError("kmeans requires complete data")
    n = data.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")

    x = data.values
    rng = SplitMix64(seed)
    centers = _plusplus_seeding(x, k, rng)

    labels = None
    for _ in range(max_iters):
        d2 = _squared_distances(x, centers)
        new_labels = d2.argmin(axis=1)

        # steal the farthest points for clusters that came up empty
        assigned_d2 = d2[np.arange(n), new_labels].copy()
        counts = np.bincount(new_labels, minlength=k)
        for empty in np.nonzero(counts == 0)[0]:
            far = int(assigned_d2.argmax())
            new_labels[far] = empty
            assigned_d2[far] = -1.0

        if objective_trace is not None:
            objective_trace.append(float(d2[np.arange(n), new_labels].sum()))
        if labels is not None and np.array_equal(labels, new_labels):
            break
        labels = new_labels
        for c in range(k):
            centers[c] = x[labels == c].mean(axis=0)

    return ClusterLabels(assignments=labels, n_clusters=k)


def zscore_normalize(data: Dataset) -> Dataset:
    """Center and scale each column to mean 0, standard deviation 1.

    Statistics use only the present entries of a column and the population
    (1/n) standard deviation.  Columns without at least two present values
    of nonzero variance come out as all zeros, with a warning.
    """
    values = np.zeros_like(data.values)
    present = data.present.copy()
    for j in range(data.p):
        mask = present[:, j]
        col = data.values[mask, j]
        if len(col) < 2:
            warnings.warn(f"column {j} has fewer than 2 present values; emitting zeros")
            continue
        mean = col.mean()
        sd = np.sqrt(((col - mean) ** 2).mean())
        if sd == 0.0:
            warnings.warn(f"column {j} has zero variance; emitting zeros")
            continue
        values[mask, j] = (col - mean) / sd
    return Dataset(values, present)
