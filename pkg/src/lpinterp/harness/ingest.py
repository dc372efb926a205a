"""CSV ingestion for real labeled data (features + one label column).

Features are standardized to mean 0, variance 1 (recorded in Dataset.meta);
constant columns are dropped with a warning since standardization would
divide by zero.  Two-valued label columns are remapped to {-1, +1} by
lexicographic order of their string form.  The returned Dataset carries no
ground truth, so truth-based metrics are unavailable downstream.
"""

from __future__ import annotations

import csv
import warnings

import numpy as np

from ..datagen import Dataset
from ..errors import SchemaError

__all__ = ["ingest_csv"]


def ingest_csv(path: str, label_column: str) -> Dataset:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header:
            raise SchemaError("empty CSV")
        try:
            label_idx = header.index(label_column)
        except ValueError:
            raise SchemaError(f"label column {label_column!r} not in header") from None
        feat_idx = [j for j in range(len(header)) if j != label_idx]
        feats, labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise SchemaError(f"line {lineno}: expected {len(header)} cells")
            try:
                feats.append([float(row[j]) for j in feat_idx])
            except ValueError:
                raise SchemaError(f"line {lineno}: non-numeric feature cell") from None
            labels.append(row[label_idx].strip())
    if not feats:
        raise SchemaError("no data rows")

    X = np.asarray(feats, dtype=float)
    classes = sorted(set(labels))
    if len(classes) == 1:
        raise SchemaError("label column has a single class")
    if len(classes) != 2:
        raise SchemaError(f"label column must be two-valued, got {len(classes)} classes")
    if set(classes) == {"-1", "1"} or set(classes) == {"-1.0", "1.0"}:
        y = np.array([float(v) for v in labels])
        y = np.where(y > 0, 1.0, -1.0)
        mapping = {classes[0]: -1.0, classes[1]: 1.0}
    else:
        mapping = {classes[0]: -1.0, classes[1]: 1.0}
        y = np.array([mapping[v] for v in labels])

    means = X.mean(axis=0)
    stds = X.std(axis=0)
    keep = stds > 0
    dropped = [header[feat_idx[j]] for j in range(X.shape[1]) if not keep[j]]
    if dropped:
        warnings.warn(f"dropping constant feature columns: {dropped}")
    X = (X[:, keep] - means[keep]) / stds[keep]
    meta = dict(
        standardized=True,
        feature_means=means[keep].tolist(),
        feature_stds=stds[keep].tolist(),
        dropped_columns=dropped,
        label_mapping={k: v for k, v in mapping.items()},
        feature_names=[header[feat_idx[j]] for j in range(len(feat_idx)) if keep[j]],
    )
    return Dataset(X=X, y=y, truth=None, spec=None, meta=meta)
