"""Approximate least sum of squares of depth-trimmed residuals (LST).

Each replication samples a pair of observations with distinct predictors,
builds two coefficient vectors on which the pair's residuals coincide
(intercept 0 and 1), perturbs every coordinate of both by ``+-delta`` and
refits least squares on the depth-trimmed subset of every candidate. The
refit with the smallest in-subset residual sum of squares wins.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (DegeneratePredictorsError, NoAdmissibleCandidateError,
                     SingularDesignError, SubsetTooSmallError)
from .regression import Dataset, FitResult, solve_ls
from .rng import stream
from .robust import outlyingness_columns

DEFAULT_BENCH_REPS = 50


def max_replications(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class LstConfig:
    alpha: float = 3.0
    delta: float = 0.5
    replications: Optional[int] = 1
    seed: int = 0
    # 1.0 keeps the raw MAD; NORMAL_CONSISTENCY rescales it to sigma units.
    mad_constant: float = 1.0
    # Keep replicating past ``replications`` (up to n(n-1)/2) until some
    # candidate is admissible.
    extend: bool = False

    def __post_init__(self):
        if not self.alpha >= 1.0:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if not self.delta > 0.0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if self.replications is not None and self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not self.mad_constant > 0.0:
            raise ValueError("mad_constant must be positive")

    def resolve_replications(self, n: int) -> int:
        """``None`` means ``min(50, n(n-1)/2)``."""
        cap = max_replications(n)
        if self.replications is None:
            return min(DEFAULT_BENCH_REPS, cap)
        if self.replications > cap:
            raise ValueError(f"replications {self.replications} exceed n(n-1)/2 = {cap}")
        return self.replications


def sample_pair(d: Dataset, rng: np.random.Generator):
    """Draw ``(i, j, k)``: rows with ``x_i != x_j`` differing in column ``k``.

    ``k`` indexes the predictor columns (0-based); when several columns
    differ one is chosen uniformly.
    """
    X = d.predictors
    if np.all(X == X[0]):
        raise DegeneratePredictorsError()
    # rejection sampling: uniform over unordered pairs with distinct x
    while True:
        i, j = rng.choice(d.n, size=2, replace=False)
        differ = np.flatnonzero(X[i] != X[j])
        if differ.size:
            k = differ[0] if differ.size == 1 else rng.choice(differ)
            return int(i), int(j), int(k)


def boundary_betas(d: Dataset, i: int, j: int, k: int) -> np.ndarray:
    """The two unperturbed candidates (rows) for pair ``(i, j)`` and column ``k``."""
    slope = (d.responses[i] - d.responses[j]) / (d.predictors[i, k] - d.predictors[j, k])
    B = np.zeros((2, d.p))
    B[1, 0] = 1.0
    B[:, k + 1] = slope
    return B


def perturb(B: np.ndarray, delta: float) -> np.ndarray:
    """Stack ``B`` with every coordinate of every row moved by ``+delta`` and ``-delta``."""
    m, p = B.shape
    out = [B]
    for row in B:
        for l in range(p):
            for sign in (1.0, -1.0):
                b = row.copy()
                b[l] += sign * delta
                out.append(b[None, :])
    return np.vstack(out)


def candidate_betas(d: Dataset, rng: np.random.Generator, delta: float = 0.5):
    """``2 + 4p`` candidate rows plus the sampled pair ``(i, j)``."""
    if d.n <= 2:
        raise ValueError("candidate construction needs n > 2")
    i, j, k = sample_pair(d, rng)
    return perturb(boundary_betas(d, i, j, k), delta), (i, j)


def _strictly_ordered(O: np.ndarray, keep: np.ndarray, r: np.ndarray) -> bool:
    """True if the kept outlyingness values have no ties.

    For even ``n`` the two central residuals are equidistant from their own
    midpoint by construction; that tie says nothing about the kept set and
    is tolerated unless the two residuals themselves coincide.
    """
    ties = int(np.count_nonzero(np.diff(np.sort(O[keep])) == 0.0))
    if ties == 0:
        return True
    n = r.shape[0]
    if n % 2 == 0:
        order = np.argsort(r, kind="stable")
        a, b = order[n // 2 - 1], order[n // 2]
        if r[a] != r[b] and O[a] == O[b] and keep[a] and keep[b]:
            ties -= 1
    return ties == 0


def lst_fit(d: Dataset, cfg: LstConfig = LstConfig(), trace: bool = False) -> FitResult:
    if d.n <= 2 or d.n < d.p:
        raise ValueError(f"LST needs n > 2 and n >= p (n={d.n}, p={d.p})")
    reps = cfg.resolve_replications(d.n)
    W, y = d.design, d.responses
    t0 = time.perf_counter()

    best_ss, best_beta, best_keep, best_at = math.inf, None, None, None
    counts = dict(admissible=0, skipped_ties=0, skipped_singular=0, skipped_scale=0)
    evaluations = 0
    history = []
    cap = max_replications(d.n)
    rep = 0
    while rep < reps or (cfg.extend and best_beta is None and rep < cap):
        B, _ = candidate_betas(d, stream(cfg.seed, rep), cfg.delta)
        rep += 1
        R = y[:, None] - W @ B.T
        O, _, _, _ = outlyingness_columns(R, cfg.mad_constant)
        for c in range(B.shape[0]):
            evaluations += 1
            Oc = O[:, c]
            if np.isnan(Oc[0]):
                counts["skipped_scale"] += 1
                continue
            keep = Oc <= cfg.alpha
            if not _strictly_ordered(Oc, keep, R[:, c]):
                counts["skipped_ties"] += 1
                continue
            idx = np.flatnonzero(keep)
            try:
                beta = solve_ls(W[idx], y[idx])
            except (SingularDesignError, SubsetTooSmallError):
                counts["skipped_singular"] += 1
                continue
            counts["admissible"] += 1
            res = y[idx] - W[idx] @ beta
            ss = float(res @ res)
            if trace:
                history.append((rep - 1, c, ss))
            if ss < best_ss:
                best_ss, best_beta, best_keep, best_at = ss, beta, idx, (rep - 1, c)
    elapsed = time.perf_counter() - t0
    if best_beta is None:
        raise NoAdmissibleCandidateError()
    diag = dict(counts, replications=rep, best_replication=best_at[0], best_candidate=best_at[1])
    if trace:
        diag["trace"] = history
    return FitResult(best_beta, best_ss, best_keep, evaluations, elapsed, "lst", diag)
