"""Seeded 2-D benchmark shapes: circles, moons, blobs and friends, uniform.

Deterministic construction: base positions are evenly spaced along each
shape (so zero-noise points satisfy the shape equations exactly) and noise
is one Box-Muller pair per point, drawn in point order from the package
PRNG.  These are qualitative reimplementations of the classic toy shapes,
not bit-clones of any other toolkit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .hierarchy import ClusterLabels
from .kernels import Dataset
from .rng import SplitMix64

# spaced so the components stay separated even under the aniso shear, whose
# small singular direction is roughly the main diagonal
_DEFAULT_BLOB_CENTERS = ((-7.0, 4.0), (0.0, -6.0), (7.0, 5.0))


@dataclass(frozen=True)
class Circles:
    """Concentric circles of radius 1 and `factor`, points split evenly."""

    factor: float = 0.5
    noise: float = 0.05

    def __post_init__(self):
        if not 0.0 < self.factor < 1.0:
            raise ValueError("factor must be in (0, 1)")
        if self.noise < 0:
            raise ValueError("noise must be >= 0")


@dataclass(frozen=True)
class Moons:
    """Two interleaving half-circle arcs."""

    noise: float = 0.05

    def __post_init__(self):
        if self.noise < 0:
            raise ValueError("noise must be >= 0")


@dataclass(frozen=True)
class Blobs:
    """Isotropic Gaussian blobs around fixed centers."""

    centers: tuple = _DEFAULT_BLOB_CENTERS
    stds: tuple = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if len(self.centers) != len(self.stds) or not self.centers:
            raise ValueError("need one std per center")
        if any(s < 0 for s in self.stds):
            raise ValueError("stds must be >= 0")


@dataclass(frozen=True)
class Aniso:
    """Blobs sheared by a fixed 2x2 linear map."""

    transform: tuple = ((0.6, -0.6), (-0.4, 0.8))


@dataclass(frozen=True)
class Varied:
    """Blobs with per-component spreads."""

    stds: tuple = (1.0, 2.5, 0.5)


@dataclass(frozen=True)
class Uniform:
    """I.i.d. uniform points on the unit square; a single no-structure class."""


ShapeKind = Union[Circles, Moons, Blobs, Aniso, Varied, Uniform]


def _component_sizes(n: int, k: int) -> list[int]:
    if n < k:
        raise ValueError(f"n={n} too small for {k} components")
    base = n // k
    return [base + (1 if i < n % k else 0) for i in range(k)]


def _noisy(points: np.ndarray, noise: float, rng: SplitMix64) -> np.ndarray:
    g = np.array(rng.normals(2 * len(points))).reshape(-1, 2)
    return points + noise * g


def generate(shape: ShapeKind, n: int, seed: int) -> tuple[Dataset, ClusterLabels]:
    """Sample n labeled 2-D points of the given shape, deterministically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = SplitMix64(seed)

    if isinstance(shape, Circles):
        sizes = _component_sizes(n, 2)
        rings = []
        for radius, size in zip((1.0, shape.factor), sizes):
            theta = 2.0 * np.pi * np.arange(size) / size
            rings.append(radius * np.column_stack([np.cos(theta), np.sin(theta)]))
        points = _noisy(np.vstack(rings), shape.noise, rng)
        labels = np.repeat([0, 1], sizes)

    elif isinstance(shape, Moons):
        sizes = _component_sizes(n, 2)
        theta_up = np.linspace(0.0, np.pi, sizes[0])
        upper = np.column_stack([np.cos(theta_up), np.sin(theta_up)])
        theta_lo = np.linspace(0.0, np.pi, sizes[1])
        lower = np.column_stack([1.0 - np.cos(theta_lo), 0.5 - np.sin(theta_lo)])
        points = _noisy(np.vstack([upper, lower]), shape.noise, rng)
        labels = np.repeat([0, 1], sizes)

    elif isinstance(shape, (Blobs, Aniso, Varied)):
        if isinstance(shape, Blobs):
            centers, stds, transform = shape.centers, shape.stds, None
        elif isinstance(shape, Aniso):
            centers, stds, transform = _DEFAULT_BLOB_CENTERS, (1.0, 1.0, 1.0), shape.transform
        else:
            centers, stds, transform = _DEFAULT_BLOB_CENTERS, shape.stds, None
        sizes = _component_sizes(n, len(centers))
        chunks = []
        for center, std, size in zip(centers, stds, sizes):
            g = np.array(rng.normals(2 * size)).reshape(-1, 2)
            chunks.append(np.asarray(center) + std * g)
        points = np.vstack(chunks)
        if transform is not None:
            points = points @ np.asarray(transform)
        labels = np.repeat(np.arange(len(centers)), sizes)

    elif isinstance(shape, Uniform):
        points = np.array([[rng.uniform(), rng.uniform()] for _ in range(n)])
        labels = np.zeros(n, dtype=np.int64)

    else:
        raise TypeError(f"unknown shape {shape!r}")

    n_components = int(labels.max()) + 1
    return Dataset(points), ClusterLabels(assignments=labels, n_clusters=n_components)
