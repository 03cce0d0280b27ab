"""File ingestion and result emission.

CSV cells matching a missing token become masked-out entries; everything
else must parse as a finite number.  Edge lists are whitespace-separated
vertex id pairs, one per line; '#'-prefixed comment lines are skipped.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .hierarchy import ClusterLabels
from .kernels import (
    Dataset,
    Graph,
    GraphKernel,
    KernelSpec,
    LinearKernel,
    MissingRbfKernel,
    PolynomialKernel,
    RbfKernel,
)
from .metrics import RocCurve

DEFAULT_MISSING_TOKENS = frozenset({"", "NA", "NaN"})

# guard against typo'd huge vertex ids blowing up the dense representation
MAX_VERTEX_ID = 1 << 20


def _csv_rows(path) -> list[list[str]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return [row for row in csv.reader(fh)]


def read_csv_numeric(path, has_header: bool = False, missing_tokens=DEFAULT_MISSING_TOKENS) -> Dataset:
    """Parse a rectangular numeric CSV with explicit missing-value tokens."""
    rows = _csv_rows(path)
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    offset = 2 if has_header else 1
    width = len(rows[0])
    values = np.zeros((len(rows), width))
    present = np.zeros((len(rows), width), dtype=bool)
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: row {r + offset} has {len(row)} cells, expected {width}")
        for c, cell in enumerate(row):
            token = cell.strip()
            if token in missing_tokens:
                continue
            try:
                x = float(token)
            except ValueError:
                raise ValueError(
                    f"{path}: row {r + offset} column {c + 1}: cannot parse {cell!r}"
                ) from None
            if not np.isfinite(x):
                raise ValueError(f"{path}: row {r + offset} column {c + 1}: non-finite value")
            values[r, c] = x
            present[r, c] = True
        if not present[r].any():
            raise ValueError(f"{path}: row {r + offset} has no observed values")
    return Dataset(values, present)


def write_csv_numeric(path, data: Dataset, header=None, missing_token: str = "") -> None:
    """Emit a Dataset as CSV; floats use repr so a read round-trips exactly."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if header is not None:
            fh.write(",".join(header) + "\n")
        for r in range(data.n):
            cells = [
                repr(float(data.values[r, c])) if data.present[r, c] else missing_token
                for c in range(data.p)
            ]
            fh.write(",".join(cells) + "\n")


def _parse_edge_lines(path) -> tuple[list, int]:
    edges = []
    max_id = -1
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ValueError(f"{path}: line {lineno}: malformed edge {line!r}")
            u, v = int(parts[0]), int(parts[1])
            if u == v:
                raise ValueError(f"{path}: line {lineno}: self-loop at vertex {u}")
            if max(u, v) > MAX_VERTEX_ID:
                raise ValueError(f"{path}: line {lineno}: vertex id {max(u, v)} too large")
            edges.append((u, v))
            max_id = max(max_id, u, v)
    return edges, max_id


def read_edge_list(path) -> Graph:
    """Undirected graph from 'u v' lines; ids become vertices 0..max_id."""
    edges, max_id = _parse_edge_lines(path)
    return Graph(max_id + 1, edges)


def read_edge_list_remapped(path) -> tuple[Graph, dict]:
    """Like read_edge_list but for sparse id spaces.

    Ids are renumbered densely in sorted order; the returned table maps
    original id -> vertex index.
    """
    edges, _ = _parse_edge_lines(path)
    seen = sorted({u for u, v in edges} | {v for u, v in edges})
    table = {orig: i for i, orig in enumerate(seen)}
    return Graph(len(seen), [(table[u], table[v]) for u, v in edges]), table


def read_class_labels(path, has_header: bool = False) -> np.ndarray:
    """Reference class per row from a CSV.

    Uses the column named 'label' when a header provides one, otherwise the
    last column.  Values stay categorical; no numeric parse is attempted.
    """
    rows = _csv_rows(path)
    if not rows:
        raise ValueError(f"{path}: empty reference file")
    col = -1
    if has_header:
        header = [h.strip() for h in rows[0]]
        if "label" in header:
            col = header.index("label")
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return np.array([row[col].strip() for row in rows])


def kernel_to_dict(spec: KernelSpec) -> dict:
    if isinstance(spec, RbfKernel):
        return {"kind": "rbf", "sigma": spec.sigma}
    if isinstance(spec, LinearKernel):
        return {"kind": "linear"}
    if isinstance(spec, PolynomialKernel):
        return {"kind": "polynomial", "alpha": spec.alpha, "c0": spec.c0, "degree": spec.degree}
    if isinstance(spec, MissingRbfKernel):
        return {"kind": "missing-rbf", "gamma": spec.gamma}
    if isinstance(spec, GraphKernel):
        return {"kind": "graph", "diag": spec.diag}
    raise TypeError(f"unknown kernel spec {spec!r}")


def kernel_from_dict(payload: dict) -> KernelSpec:
    kind = payload["kind"]
    if kind == "rbf":
        return RbfKernel(sigma=payload["sigma"])
    if kind == "linear":
        return LinearKernel()
    if kind == "polynomial":
        return PolynomialKernel(alpha=payload["alpha"], c0=payload["c0"], degree=payload["degree"])
    if kind == "missing-rbf":
        return MissingRbfKernel(gamma=payload["gamma"])
    if kind == "graph":
        return GraphKernel(diag=payload["diag"])
    raise ValueError(f"unknown kernel kind {kind!r}")


def write_labels_json(path, labels: ClusterLabels, seed: int, kernel: KernelSpec | None) -> None:
    payload = {
        "n": labels.n,
        "n_clusters": labels.n_clusters,
        "labels": [int(x) for x in labels.assignments],
        "seed": seed,
        "kernel": kernel_to_dict(kernel) if kernel is not None else None,
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n", encoding="utf-8")


def read_labels_json(path) -> ClusterLabels:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return ClusterLabels(
        assignments=np.array(payload["labels"], dtype=np.int64),
        n_clusters=int(payload["n_clusters"]),
    )


def write_roc_csv(path, curve: RocCurve) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("fpr,tpr\n")
        for fpr, tpr in curve.points:
            fh.write(f"{fpr:.10g},{tpr:.10g}\n")


def read_roc_csv(path) -> RocCurve:
    rows = _csv_rows(path)
    if not rows or rows[0] != ["fpr", "tpr"]:
        raise ValueError(f"{path}: expected 'fpr,tpr' header")
    return RocCurve(points=tuple((float(f), float(t)) for f, t in rows[1:]))
