"""All-predictions likelihood table and its quality metrics.

For every pair classifier svm_(i,j) and every class l, the table holds
the fraction of class-l training samples that the classifier labels i
(toward_i); toward_j is 1 - toward_i by construction.  The indicator
chi(theta, x) = 1 iff x > theta (strictly) drives three per-row
metrics:

  purity   P = sum_l [chi(C(l,i)) + chi(C(l,j))] - k   (undecided classes)
  balance  B = min(k - sum_l chi(C(l,j)), k - sum_l chi(C(l,i)))
  score    S = (C(i,i) + C(j,j)) / 2

plus a table-wide separation percentage: the fraction of cells whose
dominant side is at least 1 - theta.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import ValidationError
from .svm import BinarySvmModel, decision_values


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta < 1.0:
        raise ValidationError(f"theta must lie in [0, 1), got {theta}")
    return theta


def chi(theta: float, x: float) -> int:
    """Decision indicator: 1 iff x exceeds theta strictly."""
    theta = _check_theta(theta)
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"chi expects a fraction in [0, 1], got {x}")
    return 1 if x > theta else 0


class AllPredictionsTable:
    """Likelihoods of every pair classifier against every class.

    Rows are all unordered class pairs (i, j) with i < j over the
    active labels; columns are the active labels, ascending.  Only
    toward_i values are stored; toward_j is derived as 1 - toward_i.
    """

    def __init__(self, labels, rows, toward_i):
        labels = tuple(int(l) for l in labels)
        rows = tuple((int(a), int(b)) for a, b in rows)
        ti = np.array(toward_i, dtype=np.float64)
        if list(labels) != sorted(set(labels)):
            raise ValidationError("labels must be sorted and unique")
        if len(labels) < 2:
            raise ValidationError("a table needs at least 2 classes")
        expected = tuple(combinations(labels, 2))
        if rows != expected:
            raise ValidationError(
                "rows must cover exactly all class pairs in ascending order"
            )
        if ti.shape != (len(rows), len(labels)):
            raise ValidationError(
                f"toward_i must have shape {(len(rows), len(labels))}, got {ti.shape}"
            )
        if not ((ti >= 0.0) & (ti <= 1.0)).all():
            raise ValidationError("likelihoods must lie in [0, 1]")
        ti.setflags(write=False)
        self.labels = labels
        self.rows = rows
        self.toward_i = ti
        self._row_pos = {pair: r for r, pair in enumerate(rows)}
        self._col_pos = {l: c for c, l in enumerate(labels)}

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row_values(self, pair) -> np.ndarray:
        """toward_i for one classifier row, over all active classes."""
        pair = (int(pair[0]), int(pair[1]))
        if pair not in self._row_pos:
            raise ValidationError(f"no row for pair {pair}")
        return self.toward_i[self._row_pos[pair]]

    def cell(self, pair, label) -> tuple[float, float]:
        """(toward_i, toward_j) of classifier `pair` on class `label`."""
        values = self.row_values(pair)
        label = int(label)
        if label not in self._col_pos:
            raise ValidationError(f"no column for class {label}")
        ti = float(values[self._col_pos[label]])
        return ti, 1.0 - ti

    def restrict(self, labels) -> "AllPredictionsTable":
        """Sub-table over `labels`: keeps rows whose both classes survive."""
        labels = tuple(sorted(int(l) for l in labels))
        missing = set(labels) - set(self.labels)
        if missing:
            raise ValidationError(f"labels not in table: {sorted(missing)}")
        keep_rows = [r for r, (a, b) in enumerate(self.rows) if a in labels and b in labels]
        keep_cols = [self._col_pos[l] for l in labels]
        return AllPredictionsTable(
            labels,
            [self.rows[r] for r in keep_rows],
            self.toward_i[np.ix_(keep_rows, keep_cols)],
        )


def compute_likelihoods(model: BinarySvmModel, samples) -> tuple[float, float]:
    """Fraction of `samples` the model labels i, and the complement.

    Positive decision values count toward i (the model's pair[0]).
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=np.float64))
    if samples.shape[0] == 0:
        raise ValidationError("cannot compute likelihoods on an empty sample set")
    toward_i = float(np.count_nonzero(decision_values(model, samples) > 0.0)) / samples.shape[0]
    return toward_i, 1.0 - toward_i


def build_all_predictions_table(
    models: dict[tuple[int, int], BinarySvmModel],
    partitions: dict[int, np.ndarray],
) -> AllPredictionsTable:
    """Evaluate every pair model on every class partition.

    `partitions` maps external label -> feature rows of that class
    (normally the training split's per-class views).  `models` must
    contain every pair over the partition labels; extra entries are
    ignored so a shared classifier dict can serve sub-tables.
    """
    labels = tuple(sorted(int(l) for l in partitions))
    if len(labels) < 2:
        raise ValidationError("a table needs at least 2 classes")
    for l in labels:
        if np.atleast_2d(partitions[l]).shape[0] == 0:
            raise ValidationError(f"class {l} has no samples to measure likelihoods on")
    rows = tuple(combinations(labels, 2))
    missing = [pair for pair in rows if pair not in models]
    if missing:
        raise ValidationError(f"missing pair model(s): {missing}")
    ti = np.empty((len(rows), len(labels)), dtype=np.float64)
    for r, pair in enumerate(rows):
        model = models[pair]
        for c, l in enumerate(labels):
            ti[r, c] = compute_likelihoods(model, partitions[l])[0]
    return AllPredictionsTable(labels, rows, ti)


def purity_index(table: AllPredictionsTable, pair, theta: float) -> int:
    """Number of classes the row leaves undecided at theta."""
    theta = _check_theta(theta)
    ti = table.row_values(pair)
    hits = np.count_nonzero(ti > theta) + np.count_nonzero((1.0 - ti) > theta)
    return int(hits - table.k)


def balance_index(table: AllPredictionsTable, pair, theta: float) -> int:
    """Size of the smaller side of the row's decided-class split."""
    theta = _check_theta(theta)
    ti = table.row_values(pair)
    side_i = table.k - np.count_nonzero((1.0 - ti) > theta)
    side_j = table.k - np.count_nonzero(ti > theta)
    return int(min(side_i, side_j))


def score(table: AllPredictionsTable, pair) -> float:
    """Own-class accuracy of the row: (C(i,i) + C(j,j)) / 2."""
    i, j = pair
    return (table.cell(pair, i)[0] + table.cell(pair, j)[1]) / 2.0


def undecided_classes(table: AllPredictionsTable, pair, theta: float) -> tuple[int, ...]:
    """Classes whose samples land on both sides of the row at theta."""
    theta = _check_theta(theta)
    ti = table.row_values(pair)
    mask = (ti > theta) & ((1.0 - ti) > theta)
    return tuple(l for l, m in zip(table.labels, mask) if m)


def separated_cell_count(table: AllPredictionsTable, theta: float) -> int:
    """Cells whose dominant side reaches 1 - theta."""
    theta = _check_theta(theta)
    mx = np.maximum(table.toward_i, 1.0 - table.toward_i)
    return int(np.count_nonzero(mx >= 1.0 - theta))


def separation_percentage(table: AllPredictionsTable, theta: float) -> float:
    """Fraction of all k(k-1)/2 * k cells counted by separated_cell_count."""
    return separated_cell_count(table, theta) / float(table.toward_i.size)


def format_table(table: AllPredictionsTable) -> str:
    """Render the table with one "p/q" percentage cell per class."""
    header = [""] + [str(l) for l in table.labels]
    body = []
    for pair in table.rows:
        cells = [f"svm_{{{pair[0]},{pair[1]}}}"]
        for l in table.labels:
            ti, tj = table.cell(pair, l)
            cells.append(f"{100.0 * ti:.1f}/{100.0 * tj:.1f}")
        body.append(cells)
    widths = [max(len(row[c]) for row in [header] + body) for c in range(len(header))]
    lines = []
    for row in [header] + body:
        lines.append("  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


def format_metrics(table: AllPredictionsTable, theta: float) -> str:
    """Render per-row purity, balance, and score at theta."""
    theta = _check_theta(theta)
    header = ["#", "svm", "P", "B", "S"]
    body = []
    for r, pair in enumerate(table.rows, start=1):
        body.append(
            [
                str(r),
                f"svm_{{{pair[0]},{pair[1]}}}",
                str(purity_index(table, pair, theta)),
                str(balance_index(table, pair, theta)),
                f"{100.0 * score(table, pair):.1f}%",
            ]
        )
    widths = [max(len(row[c]) for row in [header] + body) for c in range(len(header))]
    lines = []
    for row in [header] + body:
        lines.append("  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)).rstrip())
    return "\n".join(lines)
