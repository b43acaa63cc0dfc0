from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

DATASET_DIR = Path(__file__).resolve().parent.parent / "datasets"


@pytest.fixture(scope="session")
def iris_path() -> Path:
    return DATASET_DIR / "iris.libsvm"


@pytest.fixture(scope="session")
def wine_path() -> Path:
    return DATASET_DIR / "wine.libsvm"


@pytest.fixture(scope="session")
def glass_path() -> Path:
    return DATASET_DIR / "glass.libsvm"


def make_blobs(rng: np.random.Generator, centers, counts, spread=0.5):
    """Gaussian clusters; returns (X, y) with y = external labels.

    `centers` and `counts` are both keyed by label.
    """
    Xs = []
    ys = []
    for label, center in centers.items():
        c = np.asarray(center, dtype=np.float64)
        count = counts[label]
        Xs.append(rng.normal(0.0, spread, size=(count, c.size)) + c)
        ys.append(np.full(count, label, dtype=np.int64))
    return np.vstack(Xs), np.concatenate(ys)
