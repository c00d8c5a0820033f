"""Linear model containers and the least-squares solver.

The intercept is implicit: a ``Dataset`` stores only the predictor columns
and the design matrix ``W = [1, X]`` is built on demand.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import solve_triangular

from .errors import SingularDesignError, SubsetTooSmallError

RANK_TOL = 1e-10


@dataclass(frozen=True)
class Dataset:
    """Observations ``(x_i, y_i)``; ``x`` is ``n x (p - 1)``."""

    predictors: np.ndarray
    responses: np.ndarray

    def __post_init__(self):
        X = np.array(self.predictors, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        y = np.array(self.responses, dtype=float).ravel()
        if X.ndim != 2 or X.shape[1] < 1:
            raise ValueError("predictors must be an n x (p-1) matrix with p >= 2")
        if X.shape[0] != y.shape[0]:
            raise ValueError(f"predictors have {X.shape[0]} rows, responses {y.shape[0]}")
        if y.shape[0] < 1:
            raise ValueError("dataset is empty")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise ValueError("dataset contains non-finite values")
        X.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "predictors", X)
        object.__setattr__(self, "responses", y)

    @property
    def n(self) -> int:
        return self.responses.shape[0]

    @property
    def p(self) -> int:
        return self.predictors.shape[1] + 1

    @cached_property
    def design(self) -> np.ndarray:
        W = np.column_stack([np.ones(self.n), self.predictors])
        W.flags.writeable = False
        return W

    def replace_rows(self, rows, x_row, y_value) -> "Dataset":
        X = self.predictors.copy()
        y = self.responses.copy()
        X[rows] = x_row
        y[rows] = y_value
        return Dataset(X, y)


@dataclass
class FitResult:
    """Estimator output. ``kept`` is 0-based; reports print it 1-based."""

    coefficients: np.ndarray
    objective: float
    kept: np.ndarray
    evaluations: int
    elapsed: float = 0.0
    method: str = ""
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "method": self.method,
            "coefficients": [float(b) for b in self.coefficients],
            "objective": float(self.objective),
            "kept": [int(i) + 1 for i in self.kept],
            "kept_size": int(len(self.kept)),
            "evaluations": int(self.evaluations),
            "diagnostics": self.diagnostics,
        }
        if timing:
            out["elapsed"] = self.elapsed
        return out


def _check_beta(d: Dataset, beta) -> np.ndarray:
    b = np.asarray(beta, dtype=float).ravel()
    if b.shape[0] != d.p:
        raise ValueError(f"coefficient length {b.shape[0]} does not match p = {d.p}")
    return b


def predict(d: Dataset, beta) -> np.ndarray:
    b = _check_beta(d, beta)
    return d.design @ b


def residuals(d: Dataset, beta) -> np.ndarray:
    return d.responses - predict(d, beta)


def solve_ls(W: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Least squares via Householder QR with a diagonal rank check."""
    m, p = W.shape
    if m < p:
        raise SubsetTooSmallError()
    Q, R = np.linalg.qr(W)
    diag = np.abs(np.diag(R))
    if not diag.max() > 0.0 or diag.min() < RANK_TOL * diag.max():
        raise SingularDesignError()
    return solve_triangular(R, Q.T @ y, check_finite=False)


def ls_fit(d: Dataset, subset=None) -> np.ndarray:
    """Ordinary least squares on all rows, or on ``subset`` (0-based indices)."""
    if subset is None:
        return solve_ls(d.design, d.responses)
    idx = np.asarray(subset, dtype=int)
    return solve_ls(d.design[idx], d.responses[idx])


def fit_ls(d: Dataset) -> FitResult:
    """``ls_fit`` wrapped as a :class:`FitResult` (objective = full RSS)."""
    t0 = time.perf_counter()
    beta = ls_fit(d)
    elapsed = time.perf_counter() - t0
    r = residuals(d, beta)
    return FitResult(beta, float(r @ r), np.arange(d.n), 1, elapsed, "ls")
