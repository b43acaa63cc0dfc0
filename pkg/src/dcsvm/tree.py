"""Divide-and-conquer decision tree over pairwise SVM classifiers.

Training picks the "optimal" classifier row of the all-predictions
table, splits the active classes into the two lists it decides (plus
its own classes, which are always forced to their own side), prunes
the table to each branch, and recurses until a branch holds a single
class.  Classification walks the tree root to leaf, so a prediction
costs at most k-1 binary evaluations; when rows split classes into
halves the walk shortens to about log2(k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .data import LabeledDataset
from .errors import DimensionError, ValidationError
from .kernels import KernelSpec
from .svm import (
    BinarySvmModel,
    SvmHyperParams,
    predict_binary,
    train_pair_classifiers,
)
from .table import (
    AllPredictionsTable,
    _check_theta,
    balance_index,
    build_all_predictions_table,
    purity_index,
    score,
)

SELECTION_STRATEGIES = ("balanced", "accuracy")


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Inner:
    pair: tuple[int, int]
    left: "Node"   # the pair[0] side
    right: "Node"  # the pair[1] side


Node = Union[Leaf, Inner]


def _check_strategy(strategy: str) -> str:
    if strategy not in SELECTION_STRATEGIES:
        raise ValidationError(
            f"unknown strategy {strategy!r}; valid: {', '.join(SELECTION_STRATEGIES)}"
        )
    return strategy


def split_classes(
    table: AllPredictionsTable, pair, theta: float
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Class lists for the two branches of row `pair` at theta.

    A class joins a side when the row sends a fraction above theta of
    its samples there; undecided classes join both.  Each of the row's
    own classes is forced onto its own side only.
    """
    theta = _check_theta(theta)
    i, j = (int(pair[0]), int(pair[1]))
    ti = table.row_values(pair)
    listi = []
    listj = []
    for l, t in zip(table.labels, ti):
        if l == i or (l != j and t > theta):
            listi.append(l)
        if l == j or (l != i and (1.0 - t) > theta):
            listj.append(l)
    return tuple(listi), tuple(listj)


def select_optimal(table: AllPredictionsTable, theta: float, strategy: str = "balanced") -> tuple[int, int]:
    """Pick the classifier row to split on.

    balanced: fewest undecided classes, then largest balance, then
    best score.  accuracy: best score first, then purity, then
    balance.  Remaining ties go to the first row in table order.
    """
    theta = _check_theta(theta)
    strategy = _check_strategy(strategy)
    if not table.rows:
        raise ValidationError("cannot select from an empty table")
    best_pair = None
    best_key = None
    for pair in table.rows:
        p = purity_index(table, pair, theta)
        b = balance_index(table, pair, theta)
        s = score(table, pair)
        if strategy == "balanced":
            key = (p, -b, -s, pair)
        else:
            key = (-s, p, -b, pair)
        if best_key is None or key < best_key:
            best_key = key
            best_pair = pair
    return best_pair


def build_tree(table: AllPredictionsTable, theta: float, strategy: str = "balanced") -> Node:
    """Recursively build the decision tree from a complete table."""
    theta = _check_theta(theta)
    if theta >= 0.5:
        # above 0.5 a class can fall below theta on both sides of a row
        # and silently vanish from both branches
        raise ValidationError(f"tree construction requires theta < 0.5, got {theta}")
    strategy = _check_strategy(strategy)
    return _subtree(table, theta, strategy)


def _subtree(table: AllPredictionsTable, theta: float, strategy: str) -> Node:
    pair = select_optimal(table, theta, strategy)
    listi, listj = split_classes(table, pair, theta)
    if len(listi) == 1:
        left: Node = Leaf(listi[0])
    else:
        left = _subtree(table.restrict(listi), theta, strategy)
    if len(listj) == 1:
        right: Node = Leaf(listj[0])
    else:
        right = _subtree(table.restrict(listj), theta, strategy)
    return Inner(pair, left, right)


def tree_depth(node: Node) -> int:
    """Internal nodes on the longest root-to-leaf path."""
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))


def leaf_labels(node: Node) -> set[int]:
    if isinstance(node, Leaf):
        return {node.label}
    return leaf_labels(node.left) | leaf_labels(node.right)


def render_tree(node: Node) -> str:
    """Indented dump: svm_{i,j} for internal nodes, [label] for leaves."""
    lines = []

    def walk(n, depth):
        pad = "  " * depth
        if isinstance(n, Leaf):
            lines.append(f"{pad}[{n.label}]")
        else:
            lines.append(f"{pad}svm_{{{n.pair[0]},{n.pair[1]}}}")
            walk(n.left, depth + 1)
            walk(n.right, depth + 1)

    walk(node, 0)
    return "\n".join(lines)


@dataclass
class DcsvmModel:
    """Trained multi-class model: tree + pair classifiers + table.

    Treated as immutable after construction.
    """

    tree: Node
    classifiers: dict[tuple[int, int], BinarySvmModel]
    table: AllPredictionsTable
    theta: float
    strategy: str

    @property
    def labels(self) -> tuple[int, ...]:
        return self.table.labels

    @property
    def d(self) -> int:
        return next(iter(self.classifiers.values())).d


def build_dcsvm(
    classifiers: dict[tuple[int, int], BinarySvmModel],
    table: AllPredictionsTable,
    theta: float,
    strategy: str = "balanced",
) -> DcsvmModel:
    """Assemble a model from already-trained parts."""
    missing = [pair for pair in table.rows if pair not in classifiers]
    if missing:
        raise ValidationError(f"missing pair classifier(s): {missing}")
    tree = build_tree(table, theta, strategy)
    return DcsvmModel(tree, dict(classifiers), table, float(theta), strategy)


def train_dcsvm(
    ds: LabeledDataset,
    theta: float = 0.0,
    kernel: KernelSpec | None = None,
    hp: SvmHyperParams | None = None,
    strategy: str = "balanced",
    seed: int = 0,
    table_data: LabeledDataset | None = None,
) -> DcsvmModel:
    """Full training pipeline on a labelled dataset.

    Likelihoods are measured on the training partitions themselves
    unless `table_data` supplies a separate held-out set.
    """
    classifiers = train_pair_classifiers(ds, kernel=kernel, hp=hp, seed=seed)
    source = table_data if table_data is not None else ds
    if tuple(source.classes) != tuple(ds.classes):
        raise ValidationError(
            "table_data must cover exactly the training classes"
        )
    table = build_all_predictions_table(classifiers, source.partitions())
    return build_dcsvm(classifiers, table, theta, strategy)


def trace_path(model: DcsvmModel, x) -> tuple[list[tuple[int, int]], int]:
    """Pairs visited root to leaf for one sample, plus the final label."""
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size != model.d:
        raise DimensionError(f"input has {x.size} features, model expects {model.d}")
    node = model.tree
    visited = []
    while isinstance(node, Inner):
        clf = model.classifiers[node.pair]
        label, _ = predict_binary(clf, x)
        visited.append(node.pair)
        node = node.left if label == node.pair[0] else node.right
    return visited, node.label


def classify(model: DcsvmModel, x) -> tuple[int, int, int]:
    """Predict one sample.

    Returns (label, steps, sv_count): the leaf label, the number of
    binary evaluations, and the total support vectors of the
    classifiers consulted along the path.
    """
    visited, label = trace_path(model, x)
    svs = sum(model.classifiers[pair].n_support for pair in visited)
    return label, len(visited), svs
