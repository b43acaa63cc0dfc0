"""Materialize the benchmark datasets into datasets/.

iris and wine are written from scikit-learn's bundled UCI copies
(scikit-learn is needed only to run this script, never by the library
or its tests).  glass.libsvm is a deterministic synthetic stand-in for
the classic glass identification data, which is not redistributable
offline here: it reproduces the original's shape (214 samples, 9
features, labels {1,2,3,5,6,7} with counts 70/76/17/13/9/29) and its
separability character (the three window-glass classes overlap, the
three non-window classes are well separated).

Run from the repository root:  python scripts/make_datasets.py
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dcsvm import LabeledDataset, save_libsvm  # noqa: E402

OUT_DIR = Path(__file__).resolve().parent.parent / "datasets"

GLASS_COUNTS = {1: 70, 2: 76, 3: 17, 5: 13, 6: 9, 7: 29}
GLASS_DIM = 9


def make_glass_like(seed: int = 20) -> LabeledDataset:
    rng = np.random.default_rng(seed)
    # class centers: 1/2 close together, 3 between them (heavy overlap);
    # 5, 6, 7 placed far from the window group and from each other
    u = rng.normal(size=(4, GLASS_DIM))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    base = rng.normal(0.0, 1.0, GLASS_DIM)
    centers = {
        1: base,
        2: base + 3.1 * u[0],
        3: base + 1.55 * u[0] + 1.5 * u[1],
        5: base + 7.0 * u[1],
        6: base + 7.0 * u[2],
        7: base + 7.0 * u[3],
    }
    spreads = {1: 1.0, 2: 1.0, 3: 1.05, 5: 0.9, 6: 0.8, 7: 0.9}
    # uneven per-feature scales and offsets so min-max scaling matters
    axis_scale = np.array([0.01, 4.0, 2.0, 1.0, 3.0, 0.5, 2.0, 1.0, 0.2])
    axis_shift = np.array([1.52, 13.0, 2.7, 1.4, 72.6, 0.5, 8.9, 0.2, 0.06])
    Xs = []
    ys = []
    for label in sorted(GLASS_COUNTS):
        n = GLASS_COUNTS[label]
        pts = rng.normal(0.0, spreads[label], size=(n, GLASS_DIM)) + centers[label]
        Xs.append(pts * axis_scale + axis_shift)
        ys.append(np.full(n, label, dtype=np.int64))
    X = np.round(np.vstack(Xs), 5)
    return LabeledDataset(X, np.concatenate(ys))


def main() -> None:
    from sklearn.datasets import load_iris, load_wine

    OUT_DIR.mkdir(exist_ok=True)
    iris = load_iris()
    save_libsvm(LabeledDataset(iris.data, iris.target), OUT_DIR / "iris.libsvm")
    wine = load_wine()
    save_libsvm(LabeledDataset(wine.data, wine.target), OUT_DIR / "wine.libsvm")
    save_libsvm(make_glass_like(), OUT_DIR / "glass.libsvm")
    for name in ("iris", "wine", "glass"):
        path = OUT_DIR / f"{name}.libsvm"
        print(f"wrote {path} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
