"""Benchmark harness: repeated stratified trials comparing methods.

Each trial re-splits the dataset with seed + trial_index, trains the
pair classifiers once, and shares them between the tree method,
one-vs-one, and DAG so the comparison is paired; one-vs-rest trains
its own models.  Reported numbers are means over trials.  Timings are
wall clock and hardware-dependent: informational only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from .baselines import dag_visit, ovo_model_from, ovo_predict, ovr_predict, train_ovr
from .data import (
    LabeledDataset,
    SplitSpec,
    apply_feature_scale,
    fit_feature_scale,
    load_dataset,
    stratified_split,
)
from .errors import ValidationError
from .kernels import KernelSpec
from .svm import SvmHyperParams, train_pair_classifiers
from .table import _check_theta, build_all_predictions_table, separation_percentage
from .tree import build_dcsvm, classify

VALID_METHODS = ("dcsvm", "ovo", "dag", "ovr")


@dataclass(frozen=True)
class TrialConfig:
    """Everything a benchmark run needs.

    Per-trial splits use SplitSpec(split.train_fraction, seed + trial,
    split.stratified); `seed` is the master seed and split.seed is not
    consulted.
    """

    data: str
    methods: tuple[str, ...] = ("dcsvm", "ovo", "dag")
    thetas: tuple[float, ...] = (0.01,)
    trials: int = 10
    split: SplitSpec = field(default_factory=lambda: SplitSpec(0.8, seed=0))
    kernel: KernelSpec = field(default_factory=KernelSpec)
    hp: SvmHyperParams = field(default_factory=SvmHyperParams)
    strategy: str = "balanced"
    seed: int = 0
    scale: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError(f"trials must be >= 1, got {self.trials}")
        bad = [m for m in self.methods if m not in VALID_METHODS]
        if bad:
            raise ValidationError(
                f"unknown method(s) {bad}; valid: {', '.join(VALID_METHODS)}"
            )
        if not self.methods:
            raise ValidationError("at least one method is required")
        if not self.thetas:
            raise ValidationError("at least one theta is required")
        for t in self.thetas:
            _check_theta(t)


@dataclass
class ReportRow:
    """One method (and theta, for the tree method) averaged over trials."""

    dataset: str
    method: str
    theta: float | None
    accuracy: float
    avg_steps: float
    avg_svs: float
    train_s: float
    predict_s: float
    separation: float | None = None


class _Acc:
    """Mean accumulator for one report row."""

    def __init__(self):
        self.accuracy = []
        self.steps = []
        self.svs = []
        self.train_s = []
        self.predict_s = []
        self.separation = []

    def mean_row(self, dataset, method, theta, with_separation):
        def mean(xs):
            return sum(xs) / len(xs)

        return ReportRow(
            dataset=dataset,
            method=method,
            theta=theta,
            accuracy=mean(self.accuracy),
            avg_steps=mean(self.steps),
            avg_svs=mean(self.svs),
            train_s=mean(self.train_s),
            predict_s=mean(self.predict_s),
            separation=mean(self.separation) if with_separation else None,
        )


def _evaluate(cfg: TrialConfig, ds: LabeledDataset, name: str, with_separation: bool):
    acc: dict[tuple[str, float | None], _Acc] = {}

    def bucket(method, theta=None):
        return acc.setdefault((method, theta), _Acc())

    pair_methods = [m for m in cfg.methods if m in ("dcsvm", "ovo", "dag")]
    for trial in range(cfg.trials):
        sp = SplitSpec(cfg.split.train_fraction, cfg.seed + trial, cfg.split.stratified)
        train, test = stratified_split(ds, sp)
        if cfg.scale:
            scale = fit_feature_scale(train)
            train = apply_feature_scale(train, scale)
            test = apply_feature_scale(test, scale)
        k = train.k

        classifiers = None
        table = None
        shared_train_s = 0.0
        if pair_methods:
            t0 = time.perf_counter()
            classifiers = train_pair_classifiers(
                train, kernel=cfg.kernel, hp=cfg.hp, seed=cfg.seed
            )
            table = build_all_predictions_table(classifiers, train.partitions())
            shared_train_s = time.perf_counter() - t0
            total_svs = sum(m.n_support for m in classifiers.values())
            n_pairs = len(classifiers)

        for method in cfg.methods:
            if method == "dcsvm":
                for theta in cfg.thetas:
                    t0 = time.perf_counter()
                    model = build_dcsvm(classifiers, table, theta, cfg.strategy)
                    tree_s = time.perf_counter() - t0
                    correct = 0
                    steps_sum = 0
                    svs_sum = 0
                    t0 = time.perf_counter()
                    for row in range(test.n):
                        label, steps, svs = classify(model, test.X[row])
                        correct += int(label == test.y[row])
                        steps_sum += steps
                        svs_sum += svs
                    predict_s = time.perf_counter() - t0
                    b = bucket(method, theta)
                    b.accuracy.append(correct / test.n)
                    b.steps.append(steps_sum / test.n)
                    b.svs.append(svs_sum / test.n)
                    b.train_s.append(shared_train_s + tree_s)
                    b.predict_s.append(predict_s)
                    if with_separation:
                        b.separation.append(separation_percentage(table, theta))
            elif method == "ovo":
                ovo = ovo_model_from(train.classes, classifiers)
                correct = 0
                t0 = time.perf_counter()
                for row in range(test.n):
                    label, _ = ovo_predict(ovo, test.X[row])
                    correct += int(label == test.y[row])
                predict_s = time.perf_counter() - t0
                b = bucket(method)
                b.accuracy.append(correct / test.n)
                b.steps.append(float(n_pairs))
                b.svs.append(float(total_svs))
                b.train_s.append(shared_train_s)
                b.predict_s.append(predict_s)
            elif method == "dag":
                ovo = ovo_model_from(train.classes, classifiers)
                correct = 0
                svs_sum = 0
                steps_sum = 0
                t0 = time.perf_counter()
                for row in range(test.n):
                    label, evaluated = dag_visit(ovo, test.X[row])
                    correct += int(label == test.y[row])
                    steps_sum += len(evaluated)
                    svs_sum += sum(classifiers[p].n_support for p in evaluated)
                predict_s = time.perf_counter() - t0
                b = bucket(method)
                b.accuracy.append(correct / test.n)
                b.steps.append(steps_sum / test.n)
                b.svs.append(svs_sum / test.n)
                b.train_s.append(shared_train_s)
                b.predict_s.append(predict_s)
            else:  # ovr
                t0 = time.perf_counter()
                ovr = train_ovr(train, kernel=cfg.kernel, hp=cfg.hp, seed=cfg.seed)
                ovr_train_s = time.perf_counter() - t0
                ovr_total = sum(m.n_support for m in ovr.classifiers.values())
                correct = 0
                t0 = time.perf_counter()
                for row in range(test.n):
                    label = ovr_predict(ovr, test.X[row])
                    correct += int(label == test.y[row])
                predict_s = time.perf_counter() - t0
                b = bucket(method)
                b.accuracy.append(correct / test.n)
                b.steps.append(float(k))
                b.svs.append(float(ovr_total))
                b.train_s.append(ovr_train_s)
                b.predict_s.append(predict_s)

    rows = []
    for method in cfg.methods:
        if method == "dcsvm":
            for theta in cfg.thetas:
                rows.append(acc[(method, theta)].mean_row(name, method, theta, with_separation))
        else:
            rows.append(acc[(method, None)].mean_row(name, method, None, False))
    return rows


def run_trials(cfg: TrialConfig, dataset: LabeledDataset | None = None) -> list[ReportRow]:
    """Run the configured trials; returns one row per method (x theta)."""
    ds = dataset if dataset is not None else load_dataset(cfg.data)
    name = Path(cfg.data).stem if cfg.data else "dataset"
    return _evaluate(cfg, ds, name, with_separation=False)


def threshold_sweep(
    cfg: TrialConfig,
    thetas: tuple[float, ...] | None = None,
    dataset: LabeledDataset | None = None,
) -> list[ReportRow]:
    """Tree-method rows across a theta grid, with training-table separation."""
    thetas = tuple(thetas) if thetas is not None else cfg.thetas
    if len(thetas) < 2:
        raise ValidationError("a sweep needs at least 2 theta values")
    sweep_cfg = replace(cfg, methods=("dcsvm",), thetas=thetas)
    ds = dataset if dataset is not None else load_dataset(cfg.data)
    name = Path(cfg.data).stem if cfg.data else "dataset"
    return _evaluate(sweep_cfg, ds, name, with_separation=True)


def _fmt_theta(theta: float | None) -> str:
    if theta is None:
        return ""
    return f"{theta:g}"


def format_report(rows: list[ReportRow]) -> str:
    """Aligned text table over the fixed report columns."""
    with_sep = any(r.separation is not None for r in rows)
    header = ["dataset", "method", "theta", "accuracy", "avg_steps", "avg_svs", "train_s", "predict_s"]
    if with_sep:
        header.append("separation")
    body = []
    for r in rows:
        cells = [
            r.dataset,
            r.method,
            _fmt_theta(r.theta),
            f"{r.accuracy:.4f}",
            f"{r.avg_steps:.2f}",
            f"{r.avg_svs:.1f}",
            f"{r.train_s:.3f}",
            f"{r.predict_s:.3f}",
        ]
        if with_sep:
            cells.append("" if r.separation is None else f"{r.separation:.4f}")
        body.append(cells)
    widths = [max(len(row[c]) for row in [header] + body) for c in range(len(header))]
    lines = []
    for row in [header] + body:
        lines.append("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


def report_csv(rows: list[ReportRow]) -> str:
    """Comma-separated report with fixed column names."""
    with_sep = any(r.separation is not None for r in rows)
    header = "dataset,method,theta,accuracy,avg_steps,avg_svs,train_s,predict_s"
    if with_sep:
        header += ",separation"
    lines = [header]
    for r in rows:
        cells = [
            r.dataset,
            r.method,
            _fmt_theta(r.theta),
            f"{r.accuracy:.6f}",
            f"{r.avg_steps:.4f}",
            f"{r.avg_svs:.2f}",
            f"{r.train_s:.4f}",
            f"{r.predict_s:.4f}",
        ]
        if with_sep:
            cells.append("" if r.separation is None else f"{r.separation:.6f}")
        lines.append(",".join(cells))
    return "\n".join(lines)
