"""Kernel functions and Gram-matrix helpers for the binary solver."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError, ValidationError

KERNEL_KINDS = ("linear", "rbf", "poly")


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice plus its parameters.

    gamma=None means "resolve to 1/d when the feature dimension is
    known"; linear kernels ignore gamma entirely.
    """

    kind: str = "rbf"
    gamma: float | None = None
    degree: int = 3
    coef0: float = 0.0

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValidationError(
                f"unknown kernel {self.kind!r}; valid kinds: {', '.join(KERNEL_KINDS)}"
            )
        if self.gamma is not None and not self.gamma > 0.0:
            raise ValidationError(f"gamma must be positive, got {self.gamma}")
        if int(self.degree) != self.degree or self.degree < 1:
            raise ValidationError(f"degree must be an integer >= 1, got {self.degree}")

    def resolved(self, d: int) -> "KernelSpec":
        """Return a spec with gamma made concrete for dimension d."""
        if self.kind != "linear" and self.gamma is None:
            if d < 1:
                raise DimensionError("cannot resolve gamma for a 0-feature dataset")
            return replace(self, gamma=1.0 / d)
        return self


def gram(spec: KernelSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kernel matrix k(a, b) for every row a of A against every row b of B."""
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    if A.shape[1] != B.shape[1]:
        raise DimensionError(
            f"kernel operands disagree on dimension: {A.shape[1]} vs {B.shape[1]}"
        )
    spec = spec.resolved(A.shape[1])
    if spec.kind == "linear":
        return A @ B.T
    if spec.kind == "rbf":
        # squared distances via the expansion |a|^2 + |b|^2 - 2ab, clipped
        # because cancellation can leave tiny negatives
        sq = (
            np.sum(A * A, axis=1)[:, None]
            + np.sum(B * B, axis=1)[None, :]
            - 2.0 * (A @ B.T)
        )
        np.maximum(sq, 0.0, out=sq)
        return np.exp(-spec.gamma * sq)
    return (spec.gamma * (A @ B.T) + spec.coef0) ** spec.degree


def kernel_eval(spec: KernelSpec, x: np.ndarray, x2: np.ndarray) -> float:
    """Evaluate the kernel on a single pair of vectors."""
    x = np.asarray(x, dtype=np.float64).ravel()
    x2 = np.asarray(x2, dtype=np.float64).ravel()
    if x.shape != x2.shape:
        raise DimensionError(
            f"kernel operands disagree on dimension: {x.size} vs {x2.size}"
        )
    return float(gram(spec, x[None, :], x2[None, :])[0, 0])
