import numpy as np
import pytest

from trimfit import Dataset
from trimfit.example1 import X as EX_X, Y as EX_Y


@pytest.fixture
def ex1():
    return Dataset(np.array(EX_X), np.array(EX_Y))


def random_dataset(rng, n, p, noise=1.0):
    X = rng.standard_normal((n, p - 1))
    beta = rng.standard_normal(p)
    y = beta[0] + X @ beta[1:] + noise * rng.standard_normal(n)
    return Dataset(X, y)


def line_with_outliers(seed, n_line=9, n_out=6):
    """Points exactly on y = 1 + 2x plus a leveraged outlier cluster."""
    rng = np.random.default_rng(seed)
    x = np.concatenate([rng.uniform(-3, 3, n_line), rng.normal(6, 0.5, n_out)])
    y = np.concatenate([1 + 2 * x[:n_line], rng.normal(-8, 1, n_out)])
    perm = rng.permutation(n_line + n_out)
    return Dataset(x[perm], y[perm])
