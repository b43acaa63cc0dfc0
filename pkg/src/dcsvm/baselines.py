"""Multi-class baselines built on the same binary SVMs.

one-vs-one: evaluate all k(k-1)/2 pair classifiers and vote.
DAG: keep a candidate list, repeatedly evaluate the classifier of the
first two candidates and drop the loser; exactly k-1 evaluations.
one-vs-rest: k classifiers, each class against everything else; the
largest decision value wins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import LabeledDataset
from .errors import CardinalityError, ValidationError
from .kernels import KernelSpec
from .svm import (
    BinarySvmModel,
    SvmHyperParams,
    predict_binary,
    train_binary_svm,
    train_pair_classifiers,
)


@dataclass
class OvoModel:
    """All pair classifiers, keyed (i, j) with i < j in external labels."""

    labels: tuple[int, ...]
    classifiers: dict[tuple[int, int], BinarySvmModel]


@dataclass
class OvrModel:
    """One classifier per class; the class is the +1 side of each."""

    labels: tuple[int, ...]
    classifiers: dict[int, BinarySvmModel]


def train_ovo(
    ds: LabeledDataset,
    kernel: KernelSpec | None = None,
    hp: SvmHyperParams | None = None,
    seed: int = 0,
) -> OvoModel:
    return OvoModel(ds.classes, train_pair_classifiers(ds, kernel=kernel, hp=hp, seed=seed))


def ovo_model_from(labels, classifiers) -> OvoModel:
    """Wrap a shared pair-classifier dict (extra pairs are tolerated)."""
    labels = tuple(sorted(int(l) for l in labels))
    missing = [
        (a, b)
        for idx, a in enumerate(labels)
        for b in labels[idx + 1:]
        if (a, b) not in classifiers
    ]
    if missing:
        raise ValidationError(f"missing pair classifier(s): {missing}")
    return OvoModel(labels, classifiers)


def ovo_predict(model: OvoModel, x) -> tuple[int, dict[int, int]]:
    """Majority vote over all pairs; ties go to the smallest label."""
    votes = {l: 0 for l in model.labels}
    for idx, a in enumerate(model.labels):
        for b in model.labels[idx + 1:]:
            winner, _ = predict_binary(model.classifiers[(a, b)], x)
            votes[winner] += 1
    best = max(votes.values())
    label = min(l for l, v in votes.items() if v == best)
    return label, votes


def dag_visit(model: OvoModel, x) -> tuple[int, list[tuple[int, int]]]:
    """Elimination walk; returns the winner and the pairs evaluated."""
    candidates = list(model.labels)  # ascending
    evaluated = []
    while len(candidates) > 1:
        a, b = candidates[0], candidates[1]
        winner, _ = predict_binary(model.classifiers[(a, b)], x)
        evaluated.append((a, b))
        candidates.remove(b if winner == a else a)
    return candidates[0], evaluated


def dag_predict(model: OvoModel, x) -> tuple[int, int]:
    """Predict via candidate elimination; steps is always k-1."""
    label, evaluated = dag_visit(model, x)
    return label, len(evaluated)


def train_ovr(
    ds: LabeledDataset,
    kernel: KernelSpec | None = None,
    hp: SvmHyperParams | None = None,
    seed: int = 0,
) -> OvrModel:
    if ds.k < 2:
        raise CardinalityError(f"need at least 2 classes, got {ds.k}")
    classifiers = {}
    for c in ds.classes:
        pos = ds.X[ds.y == c]
        neg = ds.X[ds.y != c]
        classifiers[c] = train_binary_svm(
            pos, neg, kernel=kernel, hp=hp, seed=seed, pair=(0, 1)
        )
    return OvrModel(ds.classes, classifiers)


def ovr_predict(model: OvrModel, x) -> int:
    """Largest decision value wins; exact ties go to the smallest label."""
    x = np.asarray(x, dtype=np.float64)
    values = [predict_binary(model.classifiers[l], x)[1] for l in model.labels]
    return model.labels[int(np.argmax(values))]
