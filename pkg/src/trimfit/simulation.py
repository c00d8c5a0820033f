"""Monte-Carlo scenarios and the EMSE / SVAR / TT / RE criteria.

Replication ``i`` of a scenario draws its data, its contamination and the
seeds of the randomized fitters from streams keyed by ``(seed, i)``, so a
run gives the same estimates serially or spread over worker processes.
Only the fit calls are timed.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import TrimfitError
from .lst import LstConfig, lst_fit
from .lts import LtsConfig, lts_concentration
from .regression import Dataset, ls_fit
from .rng import derive_seed, stream

METHODS = ("ls", "lts", "lst")


@dataclass(frozen=True)
class ScenarioConfig:
    n: int
    p: int
    name: str = "scenario"
    epsilon: float = 0.0
    replications: int = 200
    beta0: Optional[tuple] = None
    covariance: str = "identity"
    rho: float = 0.9
    outlier_row: Optional[tuple] = None
    seed: int = 0
    methods: tuple = METHODS
    # estimator settings
    alpha: float = 3.0
    lst_reps: int = 1
    lst_delta: float = 0.5
    lst_extend: bool = True
    mad_constant: float = 1.0
    lts_h: Optional[int] = None
    lts_starts: int = 500
    lts_csteps: int = 30

    def __post_init__(self):
        if self.p < 2 or self.n < self.p:
            raise ValueError(f"need n >= p >= 2 (n={self.n}, p={self.p})")
        if not 0.0 <= self.epsilon < 0.5:
            raise ValueError(f"epsilon must lie in [0, 0.5), got {self.epsilon}")
        if contamination_count(self.n, self.epsilon) >= self.n / 2:
            raise ValueError("ceil(n * epsilon) must be below n / 2")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.covariance not in ("identity", "equicorrelated"):
            raise ValueError(f"unknown covariance {self.covariance!r}")
        if not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must lie in [0, 1), got {self.rho}")
        beta0 = sparse_beta0(self.p) if self.beta0 is None else tuple(map(float, self.beta0))
        if len(beta0) != self.p:
            raise ValueError(f"beta0 has length {len(beta0)}, expected p = {self.p}")
        row = default_outlier_row(self.p, 4.5) if self.outlier_row is None else tuple(map(float, self.outlier_row))
        if len(row) != self.p:
            raise ValueError(f"outlier_row has length {len(row)}, expected p = {self.p}")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}")
        object.__setattr__(self, "beta0", beta0)
        object.__setattr__(self, "outlier_row", row)
        object.__setattr__(self, "methods", tuple(self.methods))


def sparse_beta0(p: int) -> tuple:
    return (1.0, 1.0) + (0.0,) * (p - 2)


def default_outlier_row(p: int, value: float) -> tuple:
    """``(value, ..., value, -value)``: predictors at ``value``, response at ``-value``."""
    return (float(value),) * (p - 1) + (-float(value),)


def contamination_count(n: int, epsilon: float) -> int:
    # guard against 100 * 0.07 = 7.000000000000001
    return math.ceil(round(n * epsilon, 9))


def generate(cfg: ScenarioConfig, index: int) -> Dataset:
    """Clean Gaussian sample for replication ``index``."""
    rng = stream(cfg.seed, index, 0)
    n, q = cfg.n, cfg.p - 1
    if cfg.covariance == "identity":
        X = rng.standard_normal((n, q))
    else:
        shared = rng.standard_normal((n, 1))
        X = math.sqrt(cfg.rho) * shared + math.sqrt(1.0 - cfg.rho) * rng.standard_normal((n, q))
    e = rng.standard_normal(n)
    b = np.asarray(cfg.beta0)
    return Dataset(X, b[0] + X @ b[1:] + e)


def contaminate(d: Dataset, epsilon: float, outlier_row, rng: np.random.Generator):
    """Replace ``ceil(n * epsilon)`` random rows by ``outlier_row``.

    Returns ``(dataset, rows)``; the input is left untouched.
    """
    if not 0.0 <= epsilon < 1.0:
        raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")
    m = contamination_count(d.n, epsilon)
    if m >= d.n:
        raise ValueError(f"cannot replace {m} of {d.n} rows")
    row = np.asarray(outlier_row, dtype=float)
    if row.shape != (d.p,):
        raise ValueError(f"outlier_row must have length p = {d.p}")
    if m == 0:
        return d, np.empty(0, dtype=int)
    rows = np.sort(rng.choice(d.n, size=m, replace=False))
    return d.replace_rows(rows, row[:-1], row[-1]), rows


def scenario_data(cfg: ScenarioConfig, index: int) -> Dataset:
    d = generate(cfg, index)
    if cfg.epsilon > 0.0:
        d, _ = contaminate(d, cfg.epsilon, cfg.outlier_row, stream(cfg.seed, index, 1))
    return d


def _fit_ls(d: Dataset, cfg: ScenarioConfig, index: int) -> np.ndarray:
    return ls_fit(d)


def _fit_lts(d: Dataset, cfg: ScenarioConfig, index: int) -> np.ndarray:
    lcfg = LtsConfig(h=cfg.lts_h, n_starts=cfg.lts_starts, n_csteps=cfg.lts_csteps,
                     seed=derive_seed(cfg.seed, index, 2))
    return lts_concentration(d, lcfg).coefficients


def _fit_lst(d: Dataset, cfg: ScenarioConfig, index: int) -> np.ndarray:
    lcfg = LstConfig(alpha=cfg.alpha, delta=cfg.lst_delta, replications=min(cfg.lst_reps, d.n * (d.n - 1) // 2),
                     seed=derive_seed(cfg.seed, index, 3), mad_constant=cfg.mad_constant,
                     extend=cfg.lst_extend)
    return lst_fit(d, lcfg).coefficients


FITTERS: dict = {"ls": _fit_ls, "lts": _fit_lts, "lst": _fit_lst}


def replicate(cfg: ScenarioConfig, index: int, fitters: Optional[dict] = None) -> dict:
    """Fit every method on replication ``index``.

    Returns ``{method: (estimate or None, seconds, error message or None)}``.
    """
    fitters = FITTERS if fitters is None else {**FITTERS, **fitters}
    d = scenario_data(cfg, index)
    out = {}
    for m in cfg.methods:
        t0 = time.perf_counter()
        try:
            beta = np.asarray(fitters[m](d, cfg, index), dtype=float)
            err = None
        except (TrimfitError, np.linalg.LinAlgError) as exc:
            beta, err = None, str(exc)
        out[m] = (beta, time.perf_counter() - t0, err)
    return out


def _replicate_chunk(args):
    cfg, indices = args
    return [replicate(cfg, i) for i in indices]


@dataclass
class MetricsReport:
    method: str
    emse: float
    svar: float
    tt: float
    per_replication: list
    failures: int = 0
    re: Optional[float] = None
    re_svar: Optional[float] = None
    mean_estimate: list = field(default_factory=list)
    bias_sq: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            out.pop("tt")
        return out


def summarize(method: str, estimates: Sequence, beta0, seconds: float) -> MetricsReport:
    """Aggregate per-replication estimates (``None`` marks a failed fit)."""
    b0 = np.asarray(beta0, dtype=float)
    ok = [np.asarray(b) for b in estimates if b is not None]
    per = [None if b is None else float(np.sum((np.asarray(b) - b0) ** 2)) for b in estimates]
    failures = len(estimates) - len(ok)
    if not ok:
        return MetricsReport(method, math.nan, math.nan, seconds, per, failures)
    B = np.vstack(ok)
    k = B.shape[0]
    mean = B.mean(axis=0)
    emse = float(np.sum((B - b0) ** 2) / k)
    svar = float(np.sum((B - mean) ** 2) / (k - 1)) if k > 1 else math.nan
    bias_sq = float(np.sum((mean - b0) ** 2))
    return MetricsReport(method, emse, svar, seconds, per, failures,
                         mean_estimate=[float(v) for v in mean], bias_sq=bias_sq)


def _ratio(num: float, den: float) -> Optional[float]:
    if math.isnan(num) or math.isnan(den):
        return None
    if den == 0.0:
        return math.inf if num > 0 else 1.0
    return num / den


def attach_efficiency(reports: dict) -> dict:
    """Fill ``re`` (EMSE ratio) and ``re_svar`` (SVAR ratio) against LS."""
    base = reports.get("ls")
    for m, rep in reports.items():
        if base is None:
            continue
        if m == "ls":
            rep.re, rep.re_svar = 1.0, 1.0
        else:
            rep.re = _ratio(base.emse, rep.emse)
            rep.re_svar = _ratio(base.svar, rep.svar)
    return reports


def run_benchmark(cfg: ScenarioConfig, methods: Optional[Sequence[str]] = None,
                  parallelism: int = 1, fitters: Optional[dict] = None,
                  progress: Optional[Callable[[int], None]] = None) -> dict:
    """Run all replications of ``cfg``; returns ``{method: MetricsReport}``.

    ``fitters`` overrides individual estimators (``f(dataset, cfg, index)``
    returning coefficients) and forces serial execution.
    """
    if methods is not None:
        cfg = ScenarioConfig(**{**asdict(cfg), "methods": tuple(methods)})
    indices = list(range(cfg.replications))
    if parallelism > 1 and fitters is None:
        size = max(1, math.ceil(len(indices) / (parallelism * 4)))
        chunks = [indices[i:i + size] for i in range(0, len(indices), size)]
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            rows = [r for chunk in pool.map(_replicate_chunk, [(cfg, c) for c in chunks]) for r in chunk]
    else:
        rows = []
        for i in indices:
            rows.append(replicate(cfg, i, fitters))
            if progress:
                progress(i)
    reports = {}
    for m in cfg.methods:
        estimates = [row[m][0] for row in rows]
        seconds = float(sum(row[m][1] for row in rows))
        reports[m] = summarize(m, estimates, cfg.beta0, seconds)
    return attach_efficiency(reports)


def decomposition_gap(rep: MetricsReport) -> float:
    """``|EMSE - (SVAR (k-1)/k + |mean - beta0|^2)|`` over the ``k`` successes."""
    k = sum(v is not None for v in rep.per_replication)
    if k < 2:
        return 0.0
    return abs(rep.emse - (rep.svar * (k - 1) / k + rep.bias_sq))


CSV_COLUMNS = ("scenario", "method", "n", "p", "epsilon", "R", "emse", "svar",
               "tt_seconds", "re", "re_svar", "failures")


def csv_rows(cfg: ScenarioConfig, reports: dict, timing: bool = True) -> list:
    rows = []
    for m, rep in reports.items():
        rows.append({
            "scenario": cfg.name, "method": m, "n": cfg.n, "p": cfg.p,
            "epsilon": cfg.epsilon, "R": cfg.replications, "emse": rep.emse,
            "svar": rep.svar, "tt_seconds": rep.tt if timing else "",
            "re": rep.re, "re_svar": rep.re_svar, "failures": rep.failures,
        })
    return rows
