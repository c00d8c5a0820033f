"""Least trimmed squares: exhaustive search and concentration steps."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SingularDesignError, SubsetTooSmallError, TooManySubsetsError
from .objectives import default_h
from .regression import Dataset, FitResult, solve_ls
from .rng import stream

MAX_SUBSETS = 10**6


@dataclass(frozen=True)
class LtsConfig:
    h: Optional[int] = None
    n_starts: int = 500
    n_csteps: int = 30
    seed: int = 0
    mode: str = "concentration"

    def __post_init__(self):
        if self.n_starts < 1 or self.n_csteps < 1:
            raise ValueError("n_starts and n_csteps must be >= 1")
        if self.mode not in ("concentration", "exhaustive"):
            raise ValueError(f"unknown LTS mode {self.mode!r}")

    def coverage(self, d: Dataset) -> int:
        h = default_h(d.n, d.p) if self.h is None else self.h
        if not d.p <= h <= d.n:
            raise ValueError(f"h must lie in [{d.p}, {d.n}], got {h}")
        return h


def _trimmed_ss(r2: np.ndarray, h: int) -> float:
    return float(np.sum(np.partition(r2, h - 1)[:h]))


def _h_smallest(r2: np.ndarray, h: int) -> np.ndarray:
    # stable sort: equal squared residuals go to the smaller index
    return np.sort(np.argsort(r2, kind="stable")[:h])


def lts_exhaustive(d: Dataset, h: Optional[int] = None) -> FitResult:
    """Fit LS on every ``h``-subset and keep the best full-data LTS objective.

    Ties between subsets go to the lexicographically smallest one, which is
    the first visited.
    """
    h = LtsConfig(h=h).coverage(d)
    total = math.comb(d.n, h)
    if total > MAX_SUBSETS:
        raise TooManySubsetsError(f"too many subsets: C({d.n}, {h}) = {total}")
    W, y = d.design, d.responses
    t0 = time.perf_counter()
    best, best_beta, best_sub = math.inf, None, None
    visited = singular = 0
    for sub in itertools.combinations(range(d.n), h):
        visited += 1
        idx = np.fromiter(sub, dtype=int, count=h)
        try:
            beta = solve_ls(W[idx], y[idx])
        except SingularDesignError:
            singular += 1
            continue
        r = y - W @ beta
        obj = _trimmed_ss(r * r, h)
        if obj < best:
            best, best_beta, best_sub = obj, beta, idx
    elapsed = time.perf_counter() - t0
    if best_beta is None:
        raise SingularDesignError("singular design on every subset")
    return FitResult(best_beta, best, best_sub, visited, elapsed, "lts-exact",
                     {"h": h, "subsets": visited, "singular": singular})


def concentrate(d: Dataset, start: np.ndarray, h: int, n_csteps: int, seen=None):
    """Run C-steps from an initial index set (any size >= p).

    Returns ``(beta, objective, hset, history)``; ``history`` lists the LTS
    objective after the initial fit and after every C-step. With a ``seen``
    set, returns ``None`` as soon as the path reaches an ``h``-set already
    recorded there (the rest of the path would repeat an earlier start).
    """
    W, y = d.design, d.responses
    beta = solve_ls(W[start], y[start])
    r = y - W @ beta
    r2 = r * r
    history = [_trimmed_ss(r2, h)]
    hset = _h_smallest(r2, h)
    for _ in range(n_csteps):
        if seen is not None:
            key = hset.tobytes()
            if key in seen:
                return None
            seen.add(key)
        try:
            beta_new = solve_ls(W[hset], y[hset])
        except SingularDesignError:
            break
        r = y - W @ beta_new
        r2 = r * r
        obj = _trimmed_ss(r2, h)
        if obj > history[-1]:
            # rounding only; LS on the h-set cannot do worse than the old fit
            break
        beta = beta_new
        history.append(obj)
        new = _h_smallest(r2, h)
        if np.array_equal(new, hset):
            break
        hset = new
    return beta, history[-1], hset, history


def lts_concentration(d: Dataset, cfg: LtsConfig = LtsConfig()) -> FitResult:
    """Random ``p``-subset starts, each refined by C-steps; best objective wins."""
    if d.n < d.p:
        raise ValueError(f"LTS needs n >= p (n={d.n}, p={d.p})")
    h = cfg.coverage(d)
    rng = stream(cfg.seed)
    starts = [rng.choice(d.n, size=d.p, replace=False) for _ in range(cfg.n_starts)]
    t0 = time.perf_counter()
    best, best_beta, best_set = math.inf, None, None
    singular = csteps = repeats = 0
    seen = set()
    for start in starts:
        try:
            out = concentrate(d, start, h, cfg.n_csteps, seen)
        except (SingularDesignError, SubsetTooSmallError):
            singular += 1
            continue
        if out is None:
            repeats += 1
            continue
        beta, obj, hset, hist = out
        csteps += len(hist) - 1
        if obj < best:
            best, best_beta, best_set = obj, beta, hset
    elapsed = time.perf_counter() - t0
    if best_beta is None:
        raise SingularDesignError("singular design on every start")
    return FitResult(best_beta, best, best_set, cfg.n_starts, elapsed, "lts",
                     {"h": h, "singular_starts": singular, "csteps": csteps,
                      "repeated_paths": repeats})


def lts_fit(d: Dataset, cfg: LtsConfig = LtsConfig()) -> FitResult:
    if cfg.mode == "exhaustive":
        return lts_exhaustive(d, cfg.h)
    return lts_concentration(d, cfg)
