"""End-to-end clustering pipeline: sample, Gram, decompose, cut, extend.

When the sample covers the whole dataset the cut labels are the answer;
otherwise remaining points are labeled by majority vote of their nearest
sampled neighbors under the kernel-induced distance.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_STOP_TOL, TreeletDecomposition, decompose
from .hierarchy import ClusterLabels, Dendrogram, cut, merge_tree
from .kernels import Graph, KernelSpec, eval_kernel, gram, kernel_row, kernel_self
from .rng import SplitMix64


@dataclass(frozen=True)
class KtConfig:
    kernel: KernelSpec
    sample_size: int
    n_clusters: int
    lam: float = 0.0
    knn_k: int = 5
    seed: int = 0
    stop_tol: float = DEFAULT_STOP_TOL

    def __post_init__(self):
        if self.sample_size < 2:
            raise ValueError("sample_size must be >= 2")
        if self.n_clusters < 1:
            raise ValueError("n_clusters must be >= 1")
        if self.knn_k < 1 or self.knn_k % 2 == 0:
            raise ValueError("knn_k must be a positive odd number")
        if self.lam < 0:
            raise ValueError("lam must be >= 0")


@dataclass(frozen=True)
class KtResult:
    labels: ClusterLabels
    tree: Dendrogram
    sample: tuple[int, ...]
    sample_labels: ClusterLabels
    decomposition: TreeletDecomposition = field(repr=False)


def sample_indices(n: int, n_sample: int, seed: int) -> list[int]:
    """n_sample distinct indices, uniform without replacement, seed-determined."""
    if n_sample > n:
        raise ValueError(f"cannot sample {n_sample} of {n} observations")
    return SplitMix64(seed).sample_without_replacement(n, n_sample)


def kernel_distance(spec: KernelSpec, x1, x2) -> float:
    """Feature-space distance from kernel values alone.

    d^2 = K(x1,x1) + K(x2,x2) - 2 K(x1,x2), clamped at zero against
    round-off before the square root.
    """
    d2 = eval_kernel(spec, x1, x1) + eval_kernel(spec, x2, x2) - 2.0 * eval_kernel(spec, x1, x2)
    return float(np.sqrt(max(0.0, d2)))


def knn_extend(
    spec: KernelSpec,
    data,
    sample: np.ndarray,
    sample_labels: np.ndarray,
    queries: np.ndarray,
    knn_k: int,
    threads: int = 1,
) -> np.ndarray:
    """Label each query by majority vote of its knn_k nearest sampled points.

    Distance ties prefer the smaller sample position, vote ties the smaller
    cluster id, so the result is deterministic and thread-count independent.
    """
    sample = np.asarray(sample, dtype=np.int64)
    queries = np.asarray(queries, dtype=np.int64)
    sample_labels = np.asarray(sample_labels, dtype=np.int64)
    if len(sample) == 0:
        raise ValueError("sample must be non-empty")
    if knn_k > len(sample):
        raise ValueError("knn_k cannot exceed the sample size")

    self_sample = np.array([kernel_self(spec, data, int(i)) for i in sample])
    n_labels = int(sample_labels.max()) + 1
    positions = np.arange(len(sample))
    out = np.empty(len(queries), dtype=np.int64)

    def label_one(qi: int) -> int:
        q = int(queries[qi])
        row = kernel_row(spec, data, sample, q)
        d = np.sqrt(np.maximum(0.0, kernel_self(spec, data, q) + self_sample - 2.0 * row))
        order = np.lexsort((positions, d))
        votes = np.bincount(sample_labels[order[:knn_k]], minlength=n_labels)
        return int(votes.argmax())

    if threads <= 1 or len(queries) < 2:
        for qi in range(len(queries)):
            out[qi] = label_one(qi)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for qi, lab in enumerate(pool.map(label_one, range(len(queries)))):
                out[qi] = lab
    return out


def fit_predict(
    data,
    config: KtConfig,
    threads: int = 1,
    timings: dict | None = None,
    extender=None,
) -> KtResult:
    """Run the whole pipeline and return everything needed to audit it.

    `extender` is the out-of-sample labeling strategy and defaults to
    knn_extend; any callable with the same signature (an SVM-based one,
    say) can be swapped in.
    """
    n = data.n_vertices if isinstance(data, Graph) else data.n
    if config.sample_size > n:
        raise ValueError(f"sample_size {config.sample_size} exceeds dataset size {n}")

    def mark(name, start):
        if timings is not None:
            timings[name] = time.perf_counter() - start

    t0 = time.perf_counter()
    t = time.perf_counter()
    # ascending order makes tree leaf i the i-th smallest sampled row, so a
    # full-sample tree lines up with the dataset and external references
    sample = sorted(sample_indices(n, config.sample_size, config.seed))
    mark("sample", t)

    t = time.perf_counter()
    a0 = gram(config.kernel, data, sample)
    mark("gram", t)

    t = time.perf_counter()
    decomp = decompose(a0, lam=config.lam, stop_tol=config.stop_tol)
    mark("decompose", t)

    t = time.perf_counter()
    tree = merge_tree(decomp)
    sample_labels = cut(tree, config.n_clusters)
    mark("cut", t)

    t = time.perf_counter()
    if extender is None:
        extender = knn_extend
    full = np.empty(n, dtype=np.int64)
    full[np.asarray(sample)] = sample_labels.assignments
    if config.sample_size < n:
        in_sample = np.zeros(n, dtype=bool)
        in_sample[np.asarray(sample)] = True
        queries = np.nonzero(~in_sample)[0]
        full[queries] = extender(
            config.kernel,
            data,
            np.asarray(sample),
            sample_labels.assignments,
            queries,
            config.knn_k,
            threads=threads,
        )
    mark("extend", t)
    mark("total", t0)

    return KtResult(
        labels=ClusterLabels(assignments=full, n_clusters=config.n_clusters),
        tree=tree,
        sample=tuple(sample),
        sample_labels=sample_labels,
        decomposition=decomp,
    )
