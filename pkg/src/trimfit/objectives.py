"""Depth-trimmed index sets and the LST / LTS criteria."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .regression import Dataset, residuals
from .robust import OutlyingnessProfile, outlyingness

DEFAULT_ALPHA = 3.0


@dataclass(frozen=True)
class TrimConfig:
    alpha: float = DEFAULT_ALPHA
    mad_constant: float = 1.0

    def __post_init__(self):
        if not self.alpha >= 1.0:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")


@dataclass(frozen=True)
class TrimSet:
    indices: np.ndarray
    profile: OutlyingnessProfile


def _config(cfg) -> TrimConfig:
    return cfg if isinstance(cfg, TrimConfig) else TrimConfig(float(cfg))


def trim_set(d: Dataset, beta, cfg=DEFAULT_ALPHA) -> TrimSet:
    """Indices (0-based, sorted) whose residual outlyingness is <= alpha.

    ``cfg`` is a :class:`TrimConfig` or a bare alpha.
    """
    cfg = _config(cfg)
    prof = outlyingness(residuals(d, beta), cfg.mad_constant)
    return TrimSet(np.flatnonzero(prof.values <= cfg.alpha), prof)


def objective_lst(d: Dataset, beta, cfg=DEFAULT_ALPHA) -> float:
    r = residuals(d, beta)
    keep = trim_set(d, beta, cfg).indices
    return float(np.sum(r[keep] ** 2))


def deepest(d: Dataset, beta, k: int) -> np.ndarray:
    """The ``k`` least outlying indices; ties go to the smaller index."""
    if not d.p <= k <= d.n:
        raise ValueError(f"k must lie in [{d.p}, {d.n}], got {k}")
    prof = outlyingness(residuals(d, beta))
    return np.sort(np.argsort(prof.values, kind="stable")[:k])


def objective_lst_k(d: Dataset, beta, k: int) -> float:
    r = residuals(d, beta)
    return float(np.sum(r[deepest(d, beta, k)] ** 2))


def objective_lts(d: Dataset, beta, h: int) -> float:
    """Sum of the ``h`` smallest squared residuals."""
    if not d.p <= h <= d.n:
        raise ValueError(f"h must lie in [{d.p}, {d.n}], got {h}")
    r2 = np.sort(residuals(d, beta) ** 2)
    return float(np.sum(r2[:h]))


def default_h(n: int, p: int, mode: str = "ltsreg") -> int:
    """Coverage for LTS.

    ``"ltsreg"``: ``(n + p + 1) // 2``; ``"breakdown"``: ``n // 2 + (p + 1) // 2``.
    """
    if mode in ("ltsreg", "ltsReg-default"):
        return (n + p + 1) // 2
    if mode in ("breakdown", "breakdown-optimal"):
        return n // 2 + (p + 1) // 2
    raise ValueError(f"unknown coverage mode {mode!r}")
