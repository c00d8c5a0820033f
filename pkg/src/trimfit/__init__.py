"""Robust linear regression by depth-trimmed least squares.

Estimators: ordinary least squares (``ls_fit``), least trimmed squares
(``lts_exhaustive``, ``lts_concentration``) and the least sum of squares of
depth-trimmed residuals (``lst_fit``), plus a Monte-Carlo harness comparing
them (``run_benchmark``).
"""
from .errors import (DegeneratePredictorsError, EmptySampleError, InputError,
                     NoAdmissibleCandidateError, SingularDesignError,
                     SubsetTooSmallError, TooManySubsetsError, TrimfitError,
                     ZeroScaleError)
from .lst import LstConfig, candidate_betas, lst_fit
from .lts import LtsConfig, lts_concentration, lts_exhaustive, lts_fit
from .objectives import (TrimConfig, TrimSet, default_h, objective_lst,
                         objective_lst_k, objective_lts, trim_set)
from .regression import Dataset, FitResult, fit_ls, ls_fit, predict, residuals
from .robust import (LocationScale, OutlyingnessProfile, mad, median,
                     outlyingness)
from .simulation import (MetricsReport, ScenarioConfig, contaminate, generate,
                         run_benchmark)

__version__ = "0.1.0"
