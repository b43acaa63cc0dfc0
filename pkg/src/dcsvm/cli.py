"""Command-line interface.

Subcommands: train, predict, inspect, compare, sweep.  Exit codes:
0 success, 1 runtime failure (bad data, numeric trouble, corrupt
model), 2 usage or validation errors (bad flags, missing files,
out-of-range thetas, unknown methods).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import TrialConfig, format_report, report_csv, run_trials, threshold_sweep
from .data import (
    SplitSpec,
    apply_feature_scale,
    fit_feature_scale,
    load_dataset,
    scale_features,
    stratified_split,
)
from .errors import DcsvmError, ParseError, ValidationError
from .kernels import KernelSpec
from .persist import ModelBundle, load_model, save_model
from .svm import SvmHyperParams
from .table import format_metrics, format_table, separation_percentage
from .tree import render_tree, trace_path, train_dcsvm, tree_depth


class UsageError(DcsvmError):
    """CLI-level argument problems (exit code 2)."""


def parse_theta(text: str) -> float:
    """Parse a threshold: plain fraction ("0.02") or percent ("2%")."""
    s = text.strip()
    percent = s.endswith("%")
    if percent:
        s = s[:-1].strip()
    try:
        value = float(s)
    except ValueError:
        raise ValidationError(f"invalid theta {text!r}")
    if percent:
        value /= 100.0
    if not 0.0 <= value < 1.0:
        raise ValidationError(
            f"theta must lie in [0, 1) after percent conversion, got {text!r} -> {value:g}"
        )
    return value


def parse_theta_list(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValidationError("empty theta list")
    return tuple(parse_theta(p) for p in parts)


def _add_kernel_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kernel", choices=("linear", "rbf", "poly"), default="rbf")
    p.add_argument("--gamma", type=float, default=None, help="default: 1/d")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--coef0", type=float, default=0.0)
    p.add_argument("--cost", type=float, default=1.0, help="box constraint C")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-passes", type=int, default=100_000)
    p.add_argument("--scale", action="store_true", help="min-max scale features to [0,1]")
    p.add_argument("--seed", type=int, default=0)


def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", required=True, help="dataset file (LIBSVM or CSV)")
    p.add_argument("--format", choices=("libsvm", "csv"), default=None,
                   help="default: by file suffix")
    p.add_argument("--label-column", type=int, default=None, help="CSV only; default last")


def _kernel_from(args) -> KernelSpec:
    return KernelSpec(kind=args.kernel, gamma=args.gamma, degree=args.degree, coef0=args.coef0)


def _hp_from(args) -> SvmHyperParams:
    return SvmHyperParams(C=args.cost, tol=args.tol, max_passes=args.max_passes)


def _require_file(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {p}")
    return p


def cmd_train(args) -> int:
    _require_file(args.data)
    theta = parse_theta(args.theta)
    ds = load_dataset(args.data, fmt=args.format, label_column=args.label_column)
    scaler = None
    if args.scale:
        scaler = fit_feature_scale(ds)
        ds = apply_feature_scale(ds, scaler)
    table_data = None
    if args.table_holdout > 0.0:
        fit_part, table_part = stratified_split(
            ds, SplitSpec(1.0 - args.table_holdout, seed=args.seed)
        )
        ds, table_data = fit_part, table_part
    kernel = _kernel_from(args)
    hp = _hp_from(args)
    model = train_dcsvm(
        ds,
        theta=theta,
        kernel=kernel,
        hp=hp,
        strategy=args.strategy,
        seed=args.seed,
        table_data=table_data,
    )
    bundle = ModelBundle(model, scaler=scaler, hp=hp, dataset_name=Path(args.data).stem)
    save_model(bundle, args.out)
    k = len(model.labels)
    print(f"trained on {ds.n} samples, {k} classes {list(model.labels)}")
    print(f"tree depth {tree_depth(model.tree)} (k-1 = {k - 1}), theta {theta:g}, "
          f"strategy {model.strategy}")
    print(f"table: {model.table.n_rows} classifiers x {k} classes, "
          f"separation {100.0 * separation_percentage(model.table, theta):.1f}%")
    print("per-pair metrics:")
    print(format_metrics(model.table, theta))
    print(f"model written to {args.out}")
    return 0


def _load_feature_rows(args, model_d: int):
    """Feature rows (and labels when present) for the predict command."""
    path = _require_file(args.data)
    if args.unlabeled:
        fmt = args.format or ("csv" if path.suffix.lower() == ".csv" else "libsvm")
        rows = []
        if fmt == "csv":
            import csv as _csv

            with open(path, newline="", encoding="utf-8") as fh:
                for line_no, rec in enumerate(_csv.reader(fh), start=1):
                    if not rec or all(c.strip() == "" for c in rec):
                        continue
                    try:
                        values = [float(c) for c in rec]
                    except ValueError:
                        if line_no == 1:
                            continue  # header
                        raise ParseError("non-numeric field", path, line_no)
                    if len(values) != model_d:
                        raise ParseError(
                            f"row has {len(values)} features, model expects {model_d}",
                            path,
                            line_no,
                        )
                    rows.append(values)
        else:
            with open(path, encoding="utf-8") as fh:
                for line_no, raw in enumerate(fh, start=1):
                    line = raw.split("#", 1)[0].strip()
                    if not line:
                        continue
                    values = [0.0] * model_d
                    for tok in line.split():
                        idx_s, sep, val_s = tok.partition(":")
                        if not sep:
                            raise ParseError(
                                f"expected index:value, got {tok!r} (unlabeled mode)",
                                path,
                                line_no,
                            )
                        try:
                            idx = int(idx_s)
                            val = float(val_s)
                        except ValueError:
                            raise ParseError(f"invalid feature token {tok!r}", path, line_no)
                        if not 1 <= idx <= model_d:
                            raise ParseError(
                                f"feature index {idx} outside model dimension {model_d}",
                                path,
                                line_no,
                            )
                        values[idx - 1] = val
                    rows.append(values)
        if not rows:
            raise ParseError("file contains no samples", path)
        return np.array(rows, dtype=np.float64), None
    ds = load_dataset(path, fmt=args.format, label_column=args.label_column)
    if ds.d > model_d:
        raise ParseError(
            f"data has {ds.d} features, model expects {model_d}", path
        )
    X = ds.X
    if ds.d < model_d:  # sparse files may simply omit trailing zeros
        X = np.hstack([X, np.zeros((ds.n, model_d - ds.d))])
    return X, ds.y


def cmd_predict(args) -> int:
    _require_file(args.model)
    bundle = load_model(args.model)
    model = bundle.model
    X, y = _load_feature_rows(args, model.d)
    if bundle.scaler is not None:
        X = scale_features(X, bundle.scaler)
    correct = 0
    for row in range(X.shape[0]):
        visited, label = trace_path(model, X[row])
        if args.trace:
            path_s = " -> ".join(f"svm_{{{a},{b}}}" for a, b in visited)
            print(f"{label}\t{path_s} -> {label}")
        else:
            print(label)
        if y is not None:
            correct += int(label == y[row])
    if y is not None:
        n = X.shape[0]
        print(f"# accuracy: {100.0 * correct / n:.2f}% ({correct}/{n})")
    return 0


def cmd_inspect(args) -> int:
    _require_file(args.model)
    bundle = load_model(args.model)
    model = bundle.model
    theta = model.theta if args.theta is None else parse_theta(args.theta)
    if args.out_format == "csv":
        print("pair,label,toward_i,toward_j")
        for pair in model.table.rows:
            for l in model.table.labels:
                ti, tj = model.table.cell(pair, l)
                print(f"svm_{{{pair[0]},{pair[1]}}},{l},{ti!r},{tj!r}")
        return 0
    name = f" ({bundle.dataset_name})" if bundle.dataset_name else ""
    print(f"model{name}: {len(model.labels)} classes {list(model.labels)}, "
          f"theta {model.theta:g}, strategy {model.strategy}")
    print()
    print("all-predictions table (toward_i/toward_j, %):")
    print(format_table(model.table))
    print()
    print(f"metrics at theta {theta:g}:")
    print(format_metrics(model.table, theta))
    print()
    print(f"separation: {100.0 * separation_percentage(model.table, theta):.1f}% "
          f"of cells decided at theta {theta:g}")
    print()
    print(f"tree (depth {tree_depth(model.tree)}):")
    print(render_tree(model.tree))
    return 0


def _trial_config(args, thetas) -> TrialConfig:
    return TrialConfig(
        data=args.data,
        methods=tuple(m.strip() for m in args.methods.split(",") if m.strip()),
        thetas=thetas,
        trials=args.trials,
        split=SplitSpec(args.train_fraction, seed=0),
        kernel=_kernel_from(args),
        hp=_hp_from(args),
        strategy=args.strategy,
        seed=args.seed,
        scale=args.scale,
    )


def cmd_compare(args) -> int:
    _require_file(args.data)
    cfg = _trial_config(args, parse_theta_list(args.theta))
    rows = run_trials(cfg)
    print(report_csv(rows) if args.out_format == "csv" else format_report(rows))
    return 0


def cmd_sweep(args) -> int:
    _require_file(args.data)
    thetas = parse_theta_list(args.thetas)
    if len(thetas) < 2:
        raise UsageError("sweep needs at least 2 theta values")
    args.methods = "dcsvm"
    cfg = _trial_config(args, thetas)
    rows = threshold_sweep(cfg)
    print(report_csv(rows) if args.out_format == "csv" else format_report(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcsvm",
        description="Multi-class SVM classification via a divide-and-conquer "
        "tree of pairwise binary SVMs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model and save it")
    _add_data_args(p)
    p.add_argument("--theta", default="0", help='threshold, e.g. "0.02" or "2%%"')
    p.add_argument("--strategy", choices=("balanced", "accuracy"), default="balanced")
    p.add_argument("--table-holdout", type=float, default=0.0,
                   help="fraction of training data held out to measure likelihoods")
    _add_kernel_args(p)
    p.add_argument("--out", required=True, help="model file to write")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="predict labels with a saved model")
    p.add_argument("--model", required=True)
    _add_data_args(p)
    p.add_argument("--unlabeled", action="store_true",
                   help="input rows carry no label column")
    p.add_argument("--trace", action="store_true",
                   help="print the tree path next to each label")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("inspect", help="print a saved model's table, metrics, and tree")
    p.add_argument("--model", required=True)
    p.add_argument("--theta", default=None,
                   help="recompute purity/balance at this threshold (default: model's)")
    p.add_argument("--out-format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("compare", help="benchmark methods over repeated trials")
    _add_data_args(p)
    p.add_argument("--methods", default="dcsvm,ovo,dag",
                   help="comma list from: dcsvm, ovo, dag, ovr")
    p.add_argument("--theta", default="1%", help="comma list of thresholds for dcsvm")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--train-fraction", type=float, default=0.8)
    p.add_argument("--strategy", choices=("balanced", "accuracy"), default="balanced")
    _add_kernel_args(p)
    p.add_argument("--out-format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="sweep thresholds for the tree method")
    _add_data_args(p)
    p.add_argument("--thetas", default="0,0.1%,1%,2%", help="comma list of thresholds")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--train-fraction", type=float, default=0.8)
    p.add_argument("--strategy", choices=("balanced", "accuracy"), default="balanced")
    _add_kernel_args(p)
    p.add_argument("--out-format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DcsvmError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
