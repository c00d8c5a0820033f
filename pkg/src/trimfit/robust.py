"""Univariate median, MAD and outlyingness.

The MAD carries no consistency constant. When a majority of the sample
(at least ``(n + 1) // 2`` entries) share one exact value the MAD is set to
1 and the result is flagged ``degenerate``; that majority sits at the centre
and gets outlyingness 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySampleError, ZeroScaleError

# MAD of a standard normal is 1 / 1.4826.
NORMAL_CONSISTENCY = 1.4826


@dataclass(frozen=True)
class LocationScale:
    med: float
    mad: float
    degenerate: bool = False


@dataclass(frozen=True)
class OutlyingnessProfile:
    values: np.ndarray
    med: float
    mad: float
    degenerate: bool = False


def _as_sample(values) -> np.ndarray:
    s = np.asarray(values, dtype=float).ravel()
    if s.size == 0:
        raise EmptySampleError()
    if not np.all(np.isfinite(s)):
        raise ValueError("sample contains non-finite values")
    return s


def _median_sorted(s: np.ndarray) -> float:
    n = s.shape[0]
    mid = n // 2
    if n % 2:
        return float(s[mid])
    return float((s[mid - 1] + s[mid]) / 2.0)


def median(values) -> float:
    """Middle order statistic; mean of the central pair for even length."""
    return _median_sorted(np.sort(_as_sample(values), kind="stable"))


def majority_tied(sorted_values: np.ndarray) -> bool:
    """True if some value occurs at least ``(n + 1) // 2`` times.

    ``sorted_values`` must be sorted along axis 0; a run of length ``k``
    exists iff ``s[i] == s[i + k - 1]`` for some ``i``.
    """
    n = sorted_values.shape[0]
    k = (n + 1) // 2
    return bool(np.any(sorted_values[k - 1:] == sorted_values[: n - k + 1]))


def mad(values) -> LocationScale:
    s = np.sort(_as_sample(values), kind="stable")
    med = _median_sorted(s)
    if majority_tied(s):
        return LocationScale(med, 1.0, True)
    dev = np.sort(np.abs(s - med), kind="stable")
    return LocationScale(med, _median_sorted(dev), False)


def outlyingness(values, scale: float = 1.0) -> OutlyingnessProfile:
    """``|x - med| / (scale * mad)``.

    ``scale`` defaults to 1 (raw MAD); pass ``NORMAL_CONSISTENCY`` to measure
    outlyingness in units of a normal-consistent MAD.
    """
    s = _as_sample(values)
    loc = mad(s)
    if loc.mad == 0.0:
        raise ZeroScaleError()
    spread = scale * loc.mad
    return OutlyingnessProfile(np.abs(s - loc.med) / spread, loc.med, spread, loc.degenerate)


def outlyingness_columns(R: np.ndarray, scale: float = 1.0):
    """Column-wise outlyingness of an ``n x m`` matrix.

    Returns ``(O, med, mad, degenerate)``. Columns whose scale is zero get
    ``nan`` outlyingness so callers can skip them; this mirrors
    :func:`outlyingness` raising :class:`ZeroScaleError`.
    """
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    if n == 0:
        raise EmptySampleError()
    k = (n + 1) // 2
    S = np.sort(R, axis=0)
    mid = n // 2
    med = S[mid] if n % 2 else (S[mid - 1] + S[mid]) / 2.0
    degenerate = np.any(S[k - 1:] == S[: n - k + 1], axis=0)
    D = np.sort(np.abs(R - med), axis=0)
    spread = D[mid] if n % 2 else (D[mid - 1] + D[mid]) / 2.0
    spread = scale * np.where(degenerate, 1.0, spread)
    with np.errstate(divide="ignore", invalid="ignore"):
        O = np.abs(R - med) / spread
    O[:, spread == 0.0] = np.nan
    return O, med, spread, degenerate
