"""End-to-end walkthrough on the glass-like dataset.

Trains every pair classifier, prints the all-predictions table with
its per-row metrics, builds the decision tree, and traces a few
samples from the root to their leaf.  Run from the repository root:

    python3 demos/01_walkthrough_glass.py
"""

from pathlib import Path

import numpy as np

from dcsvm import (
    apply_feature_scale,
    classify,
    fit_feature_scale,
    format_metrics,
    format_table,
    load_dataset,
    render_tree,
    separation_percentage,
    trace_path,
    train_dcsvm,
    tree_depth,
)

DATA = Path(__file__).resolve().parent.parent / "datasets" / "glass.libsvm"
THETA = 0.01

ds = load_dataset(DATA)
print(f"loaded {ds.n} samples, {ds.d} features, classes {list(ds.classes)}")

# min-max scaling matters for RBF kernels: the raw features span very
# different ranges and the wide ones would dominate the distances
ds = apply_feature_scale(ds, fit_feature_scale(ds))

model = train_dcsvm(ds, theta=THETA)

print()
print("all-predictions table (toward_i/toward_j, %):")
print(format_table(model.table))

print()
print(f"per-row metrics at theta={THETA:g}:")
print(format_metrics(model.table, THETA))
print(f"separation: {100 * separation_percentage(model.table, THETA):.1f}% of cells decided")

print()
k = len(model.labels)
print(f"decision tree (depth {tree_depth(model.tree)}, worst case k-1 = {k - 1}):")
print(render_tree(model.tree))

print()
print("sample traces (one binary decision per arrow):")
rng = np.random.default_rng(4)
for row in rng.choice(ds.n, size=5, replace=False):
    pairs, label = trace_path(model, ds.X[row])
    hops = " -> ".join(f"svm_{{{a},{b}}}" for a, b in pairs)
    mark = "ok " if label == ds.y[row] else "MISS"
    print(f"  [{mark}] true {ds.y[row]}: {hops} -> {label}")

correct = sum(classify(model, x)[0] == y for x, y in zip(ds.X, ds.y))
steps = np.mean([classify(model, x)[1] for x in ds.X])
print()
print(f"training accuracy {100 * correct / ds.n:.1f}%, "
      f"mean {steps:.2f} binary evaluations per prediction "
      f"(one-vs-one would use {k * (k - 1) // 2})")
