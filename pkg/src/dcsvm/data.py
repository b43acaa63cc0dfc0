"""Dataset containers, file loading, reproducible splits, and scaling.

Two text formats are supported: the sparse LIBSVM format
(``<label> <index>:<value> ...`` with 1-based ascending indices) and
plain numeric CSV with an optional header row.  Feature matrices are
stored dense; class labels are arbitrary integers (possibly
non-contiguous, e.g. {1,2,3,5,6,7}) and are preserved as-is in every
report.  Contiguous 0..k-1 indices exist only inside algorithms.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    CardinalityError,
    DimensionError,
    ParseError,
    SplitError,
    ValidationError,
)


class LabeledDataset:
    """Immutable dense feature matrix with integer class labels.

    Parameters
    ----------
    X : array-like, shape (n, d)
        Feature rows; must be finite.
    y : array-like, shape (n,)
        Integer class label per row.
    """

    def __init__(self, X, y):
        X = np.array(X, dtype=np.float64)
        y = np.array(y, dtype=np.int64)
        if X.ndim != 2:
            raise DimensionError(f"X must be 2-dimensional, got shape {X.shape}")
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise DimensionError(
                f"y must be 1-dimensional with one label per row: {X.shape} vs {y.shape}"
            )
        if X.shape[0] < 1:
            raise CardinalityError("dataset has no samples")
        if X.shape[1] < 1:
            raise DimensionError("dataset has no features")
        if not np.isfinite(X).all():
            raise ValidationError("features contain non-finite values")
        X.setflags(write=False)
        y.setflags(write=False)
        self.X = X
        self.y = y
        self._classes = tuple(int(c) for c in np.unique(y))

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def classes(self) -> tuple[int, ...]:
        """External class labels, sorted ascending."""
        return self._classes

    @property
    def k(self) -> int:
        return len(self._classes)

    @property
    def label_index(self) -> dict[int, int]:
        """Bijection external label -> contiguous index 0..k-1."""
        return {c: i for i, c in enumerate(self._classes)}

    def __len__(self) -> int:
        return self.n

    def class_counts(self) -> dict[int, int]:
        return {c: int(np.sum(self.y == c)) for c in self._classes}

    def partitions(self) -> dict[int, np.ndarray]:
        """Per-class views of the feature rows, keyed by external label."""
        return {c: self.X[self.y == c] for c in self._classes}

    def subset_classes(self, labels) -> "LabeledDataset":
        """Rows whose label is in `labels`, in original order."""
        labels = set(int(l) for l in labels)
        unknown = labels - set(self._classes)
        if unknown:
            raise ValidationError(f"labels not present in dataset: {sorted(unknown)}")
        mask = np.isin(self.y, sorted(labels))
        return LabeledDataset(self.X[mask], self.y[mask])


@dataclass(frozen=True)
class SplitSpec:
    """How to split a dataset into train and test parts."""

    train_fraction: float
    seed: int
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValidationError(
                f"train_fraction must lie strictly between 0 and 1, got {self.train_fraction}"
            )


def _as_int_label(value: float, path, line_no: int) -> int:
    if value != int(value):
        raise ParseError(f"label {value!r} is not an integer", path, line_no)
    return int(value)


def _load_libsvm(path: Path) -> LabeledDataset:
    records = []
    d = 0
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                label_val = float(tokens[0])
            except ValueError:
                raise ParseError(f"invalid label token {tokens[0]!r}", path, line_no)
            label = _as_int_label(label_val, path, line_no)
            entries = []
            prev_idx = 0
            for tok in tokens[1:]:
                idx_s, sep, val_s = tok.partition(":")
                if not sep:
                    raise ParseError(f"expected index:value, got {tok!r}", path, line_no)
                try:
                    idx = int(idx_s)
                    val = float(val_s)
                except ValueError:
                    raise ParseError(f"invalid feature token {tok!r}", path, line_no)
                if idx < 1:
                    raise ParseError(f"feature index {idx} must be >= 1", path, line_no)
                if idx <= prev_idx:
                    raise ParseError(
                        f"feature indices must be strictly ascending, got {idx} after {prev_idx}",
                        path,
                        line_no,
                    )
                prev_idx = idx
                entries.append((idx, val))
            d = max(d, prev_idx)
            records.append((label, entries))
    if not records:
        raise CardinalityError(f"{path}: file contains no samples")
    if d == 0:
        raise DimensionError(f"{path}: no feature values found")
    X = np.zeros((len(records), d), dtype=np.float64)
    y = np.empty(len(records), dtype=np.int64)
    for row, (label, entries) in enumerate(records):
        y[row] = label
        for idx, val in entries:
            X[row, idx - 1] = val
    return LabeledDataset(X, y)


def _load_csv(path: Path, label_column) -> LabeledDataset:
    rows = []
    width = None
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        first = True
        for line_no, record in enumerate(reader, start=1):
            if not record or all(cell.strip() == "" for cell in record):
                continue
            if first:
                first = False
                try:
                    [float(cell) for cell in record]
                except ValueError:
                    continue  # header row
            try:
                values = [float(cell) for cell in record]
            except ValueError as exc:
                raise ParseError(f"non-numeric field ({exc})", path, line_no)
            if width is None:
                width = len(values)
                if width < 2:
                    raise DimensionError(
                        f"{path}: rows need at least one feature and a label"
                    )
            elif len(values) != width:
                raise DimensionError(
                    f"{path}:{line_no}: row has {len(values)} columns, expected {width}"
                )
            rows.append((line_no, values))
    if not rows:
        raise CardinalityError(f"{path}: file contains no samples")
    col = -1 if label_column is None else int(label_column)
    ncols = len(rows[0][1])
    if not -ncols <= col < ncols:
        raise ValidationError(f"label_column {col} out of range for {ncols} columns")
    col = col % ncols
    X = np.empty((len(rows), ncols - 1), dtype=np.float64)
    y = np.empty(len(rows), dtype=np.int64)
    feat_cols = [c for c in range(ncols) if c != col]
    for row, (line_no, values) in enumerate(rows):
        y[row] = _as_int_label(values[col], path, line_no)
        X[row] = [values[c] for c in feat_cols]
    return LabeledDataset(X, y)


def load_dataset(path, fmt: str | None = None, label_column: int | None = None) -> LabeledDataset:
    """Load a dataset from a LIBSVM or CSV text file.

    Parameters
    ----------
    path : str or Path
    fmt : {"libsvm", "csv"}, optional
        Inferred from the file suffix when omitted (.csv -> csv,
        anything else -> libsvm).
    label_column : int, optional
        CSV only; which column holds the label (default: last).

    Raises
    ------
    ParseError, DimensionError, CardinalityError, ValidationError
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such data file: {path}")
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "libsvm"
    if fmt == "libsvm":
        ds = _load_libsvm(path)
    elif fmt == "csv":
        ds = _load_csv(path, label_column)
    else:
        raise ValidationError(f"unknown dataset format {fmt!r}; valid: libsvm, csv")
    if ds.k < 2:
        raise CardinalityError(f"{path}: dataset has {ds.k} class(es); need at least 2")
    return ds


def save_libsvm(ds: LabeledDataset, path) -> None:
    """Write a dataset in LIBSVM format.

    Zero features are omitted (they reload as 0.0) and values are
    written with repr, so a load/save/load round trip reproduces the
    dataset exactly.
    """
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for row in range(ds.n):
            parts = [str(int(ds.y[row]))]
            xs = ds.X[row]
            for idx in np.flatnonzero(xs != 0.0):
                parts.append(f"{idx + 1}:{float(xs[idx])!r}")
            fh.write(" ".join(parts) + "\n")


def stratified_split(ds: LabeledDataset, spec: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Deterministically split a dataset per `spec`.

    Stratified mode keeps per-class proportions within one sample of
    train_fraction and guarantees at least one training and one test
    sample per class.  The same (dataset, spec) always produces the
    same split; trial protocols vary the seed.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.stratified:
        train_parts = []
        test_parts = []
        for c in ds.classes:
            idx = np.flatnonzero(ds.y == c)
            if idx.size < 2:
                raise SplitError(
                    f"class {c} has only {idx.size} sample(s); stratified split needs 2"
                )
            perm = idx[rng.permutation(idx.size)]
            n_train = int(round(spec.train_fraction * idx.size))
            n_train = min(max(n_train, 1), idx.size - 1)
            train_parts.append(perm[:n_train])
            test_parts.append(perm[n_train:])
        train_idx = np.sort(np.concatenate(train_parts))
        test_idx = np.sort(np.concatenate(test_parts))
    else:
        perm = rng.permutation(ds.n)
        n_train = int(round(spec.train_fraction * ds.n))
        n_train = min(max(n_train, 1), ds.n - 1)
        train_idx = np.sort(perm[:n_train])
        test_idx = np.sort(perm[n_train:])
    return (
        LabeledDataset(ds.X[train_idx], ds.y[train_idx]),
        LabeledDataset(ds.X[test_idx], ds.y[test_idx]),
    )


@dataclass(frozen=True)
class FeatureScale:
    """Per-feature min/max learned on training data."""

    lo: np.ndarray
    hi: np.ndarray


def fit_feature_scale(ds: LabeledDataset) -> FeatureScale:
    lo = ds.X.min(axis=0).copy()
    hi = ds.X.max(axis=0).copy()
    lo.setflags(write=False)
    hi.setflags(write=False)
    return FeatureScale(lo, hi)


def apply_feature_scale(ds: LabeledDataset, scale: FeatureScale) -> LabeledDataset:
    """Map features to [0, 1] using train-time bounds.

    Constant features map to 0; test values outside the train range
    land outside [0, 1], which is intentional.
    """
    span = scale.hi - scale.lo
    safe = np.where(span > 0.0, span, 1.0)
    X = (ds.X - scale.lo) / safe
    X[:, span == 0.0] = 0.0
    return LabeledDataset(X, ds.y)


def scale_features(X: np.ndarray, scale: FeatureScale) -> np.ndarray:
    """Scale a raw feature array (no labels) with train-time bounds."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    span = scale.hi - scale.lo
    safe = np.where(span > 0.0, span, 1.0)
    out = (X - scale.lo) / safe
    out[:, span == 0.0] = 0.0
    return out
