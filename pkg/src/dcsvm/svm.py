"""Binary soft-margin SVM trained with sequential minimal optimization.

The solver works on the dual problem

    min  0.5 * a' Q a - sum(a)    s.t.  0 <= a <= C,  y' a = 0

with Q = (y y') * K, picking the maximal-KKT-violating pair each
iteration and solving the two-variable subproblem analytically.  The
first class of a pair trains as +1, so positive decision values mean
"class i"; ties (decision value exactly 0) go to class j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .data import LabeledDataset
from .errors import CardinalityError, DimensionError, NumericError, ValidationError
from .kernels import KernelSpec, gram

_TAU = 1e-12  # floor for non-positive curvature in degenerate subproblems


@dataclass(frozen=True)
class SvmHyperParams:
    """Box constraint, stopping tolerance, and iteration bound."""

    C: float = 1.0
    tol: float = 1e-3
    max_passes: int = 100_000

    def __post_init__(self):
        if not self.C > 0.0:
            raise ValidationError(f"C must be positive, got {self.C}")
        if not self.tol > 0.0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if self.max_passes < 1:
            raise ValidationError(f"max_passes must be >= 1, got {self.max_passes}")


@dataclass
class BinarySvmModel:
    """Trained binary decider.

    alphas holds the signed coefficients y_m * a_m for the retained
    support vectors only (zero-coefficient points are dropped), so the
    decision function is sum(alphas * k(sv, x)) + bias.
    """

    pair: tuple[int, int]
    support_vectors: np.ndarray
    alphas: np.ndarray
    bias: float
    kernel: KernelSpec
    converged: bool = True

    @property
    def n_support(self) -> int:
        return self.support_vectors.shape[0]

    @property
    def d(self) -> int:
        return self.support_vectors.shape[1]


def _solve_smo(qcol, qdiag, y, C, tol, max_iter):
    """Maximal-violating-pair coordinate ascent on the dual.

    qcol(t) returns column t of Q; qdiag is its diagonal.  Returns
    (alpha, gradient, converged).
    """
    n = y.size
    alpha = np.zeros(n, dtype=np.float64)
    G = -np.ones(n, dtype=np.float64)  # gradient of the dual at alpha = 0
    pos = y > 0
    converged = False
    for _ in range(max_iter):
        v = -y * G
        up = (pos & (alpha < C)) | (~pos & (alpha > 0.0))
        low = (~pos & (alpha < C)) | (pos & (alpha > 0.0))
        if not up.any() or not low.any():
            converged = True
            break
        vi = np.where(up, v, -np.inf)
        i = int(np.argmax(vi))
        vj = np.where(low, v, np.inf)
        j = int(np.argmin(vj))
        if vi[i] - vj[j] < tol:
            converged = True
            break
        col_i = qcol(i)
        col_j = qcol(j)
        old_i = alpha[i]
        old_j = alpha[j]
        # analytic two-variable step, clipped to the box while keeping
        # y'a constant (corner handling follows the standard solver)
        if y[i] != y[j]:
            quad = qdiag[i] + qdiag[j] + 2.0 * col_i[j]
            if quad <= 0.0:
                quad = _TAU
            delta = (-G[i] - G[j]) / quad
            diff = old_i - old_j
            ai = old_i + delta
            aj = old_j + delta
            if diff > 0.0:
                if aj < 0.0:
                    aj = 0.0
                    ai = diff
            else:
                if ai < 0.0:
                    ai = 0.0
                    aj = -diff
            if diff > 0.0:
                if ai > C:
                    ai = C
                    aj = C - diff
            else:
                if aj > C:
                    aj = C
                    ai = C + diff
        else:
            quad = qdiag[i] + qdiag[j] - 2.0 * col_i[j]
            if quad <= 0.0:
                quad = _TAU
            delta = (G[i] - G[j]) / quad
            total = old_i + old_j
            ai = old_i - delta
            aj = old_j + delta
            if total > C:
                if ai > C:
                    ai = C
                    aj = total - C
            else:
                if aj < 0.0:
                    aj = 0.0
                    ai = total
            if total > C:
                if aj > C:
                    aj = C
                    ai = total - C
            else:
                if ai < 0.0:
                    ai = 0.0
                    aj = total
        alpha[i] = ai
        alpha[j] = aj
        G += col_i * (ai - old_i) + col_j * (aj - old_j)
    return alpha, G, converged


def _bias(alpha, G, y, C):
    """Intercept from the KKT conditions at the final iterate.

    Free vectors pin b exactly (averaged); otherwise b is the midpoint
    of the interval allowed by the bound constraints.
    """
    v = -y * G
    free = (alpha > 0.0) & (alpha < C)
    if free.any():
        return float(v[free].mean())
    lower = ((alpha <= 0.0) & (y > 0)) | ((alpha >= C) & (y < 0))  # b >= v
    upper = ((alpha <= 0.0) & (y < 0)) | ((alpha >= C) & (y > 0))  # b <= v
    lo = float(v[lower].max()) if lower.any() else None
    hi = float(v[upper].min()) if upper.any() else None
    if lo is not None and hi is not None:
        return (lo + hi) / 2.0
    if lo is not None:
        return lo
    if hi is not None:
        return hi
    return 0.0


def train_binary_svm(
    pos,
    neg,
    kernel: KernelSpec | None = None,
    hp: SvmHyperParams | None = None,
    seed: int = 0,
    pair: tuple[int, int] = (0, 1),
    gram_cache_limit: int = 4096,
) -> BinarySvmModel:
    """Train a binary SVM separating `pos` (class pair[0]) from `neg`.

    Parameters
    ----------
    pos, neg : array-like, shape (n_pos, d) / (n_neg, d)
        Samples of the two classes; pos trains as +1.
    kernel : KernelSpec, optional (default rbf with gamma = 1/d)
    hp : SvmHyperParams, optional (default C=1, tol=1e-3)
    seed : int
        Accepted for interface uniformity; the maximal-violating-pair
        solver is deterministic and does not consume randomness.
    pair : (int, int)
        Class ids recorded on the model; pair[0] is the +1 side.
    gram_cache_limit : int
        Precompute the full kernel matrix when the training size is at
        most this; larger problems compute kernel columns on demand.

    Returns a model flagged converged=False when max_passes ran out;
    the best iterate so far is still returned.
    """
    del seed  # deterministic solver, see docstring
    pos = np.atleast_2d(np.asarray(pos, dtype=np.float64))
    neg = np.atleast_2d(np.asarray(neg, dtype=np.float64))
    if pos.shape[0] == 0 or neg.shape[0] == 0:
        raise CardinalityError("both classes need at least one sample")
    if pos.shape[1] != neg.shape[1]:
        raise DimensionError(
            f"class samples disagree on dimension: {pos.shape[1]} vs {neg.shape[1]}"
        )
    if not (np.isfinite(pos).all() and np.isfinite(neg).all()):
        raise NumericError("training samples contain non-finite values")
    if not pair[0] < pair[1]:
        raise ValidationError(f"pair must be ascending, got {pair}")
    kernel = (kernel or KernelSpec()).resolved(pos.shape[1])
    hp = hp or SvmHyperParams()

    X = np.vstack([pos, neg])
    y = np.concatenate(
        [np.ones(pos.shape[0]), -np.ones(neg.shape[0])]
    )
    n = X.shape[0]
    if n <= gram_cache_limit:
        K = gram(kernel, X, X)
        if not np.isfinite(K).all():
            raise NumericError("kernel matrix contains non-finite values")
        qdiag = np.diag(K).copy()  # y_t^2 = 1

        def qcol(t):
            return y * (y[t] * K[:, t])

    else:
        def qcol(t):
            col = gram(kernel, X, X[t][None, :])[:, 0]
            if not np.isfinite(col).all():
                raise NumericError("kernel matrix contains non-finite values")
            return y * (y[t] * col)

        qdiag = np.array([gram(kernel, X[t][None, :], X[t][None, :])[0, 0] for t in range(n)])

    alpha, G, converged = _solve_smo(qcol, qdiag, y, hp.C, hp.tol, hp.max_passes)
    b = _bias(alpha, G, y, hp.C)

    keep = alpha > 0.0
    return BinarySvmModel(
        pair=(int(pair[0]), int(pair[1])),
        support_vectors=X[keep].copy(),
        alphas=(alpha * y)[keep],
        bias=b,
        kernel=kernel,
        converged=converged,
    )


def decision_values(model: BinarySvmModel, X) -> np.ndarray:
    """Decision function for each row of X (positive means pair[0])."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != model.d:
        raise DimensionError(
            f"input has {X.shape[1]} features, model expects {model.d}"
        )
    return gram(model.kernel, X, model.support_vectors) @ model.alphas + model.bias


def predict_binary(model: BinarySvmModel, x) -> tuple[int, float]:
    """Classify one sample; returns (winning class id, decision value).

    A non-positive decision value predicts pair[1].
    """
    value = float(decision_values(model, np.asarray(x, dtype=np.float64)[None, :])[0])
    label = model.pair[0] if value > 0.0 else model.pair[1]
    return label, value


def dual_objective(model: BinarySvmModel) -> float:
    """Dual objective value sum(a) - 0.5 a'Qa recovered from the model."""
    s = model.alphas
    K = gram(model.kernel, model.support_vectors, model.support_vectors)
    return float(np.sum(np.abs(s)) - 0.5 * s @ K @ s)


def train_pair_classifiers(
    ds: LabeledDataset,
    kernel: KernelSpec | None = None,
    hp: SvmHyperParams | None = None,
    seed: int = 0,
) -> dict[tuple[int, int], BinarySvmModel]:
    """One binary model per unordered class pair, keyed (i, j) with i < j.

    Class i trains as the +1 side of svm_(i,j).
    """
    if ds.k < 2:
        raise CardinalityError(f"need at least 2 classes, got {ds.k}")
    parts = ds.partitions()
    models = {}
    for a, b in combinations(ds.classes, 2):
        models[(a, b)] = train_binary_svm(
            parts[a], parts[b], kernel=kernel, hp=hp, seed=seed, pair=(a, b)
        )
    return models
