import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trimfit import (Dataset, TrimConfig, default_h, objective_lst, objective_lst_k,
                     objective_lts, trim_set)
from trimfit.example1 import DIAGONAL, FLAT

from conftest import random_dataset


def lts_oracle(d, beta, h):
    r = [float(y - beta[0] - np.dot(x, beta[1:])) for x, y in zip(d.predictors, d.responses)]
    return sum(sorted(v * v for v in r)[:h])


def test_trim_set_examples(ex1):
    ts = trim_set(ex1, FLAT, 1)
    assert list(ts.indices + 1) == [4, 5, 6, 7]
    np.testing.assert_allclose(ts.profile.values, [1.25, 1.25, 2, 1, 0.2, 0, 0.75], atol=1e-15)
    # all outlyingness values are <= 2, so alpha = 3 keeps everything
    assert list(trim_set(ex1, FLAT, 3).indices + 1) == [1, 2, 3, 4, 5, 6, 7]


def test_constant_residuals_keep_everything():
    x = np.array([0.0, 1.0, 2.0, 5.0])
    d = Dataset(x, 4 + 0.5 * x)
    ts = trim_set(d, [4, 0.5], 1)
    assert ts.profile.degenerate
    assert list(ts.indices) == [0, 1, 2, 3]


def test_boundary_is_kept():
    # residuals 0, 1, 2, 3, 4: med 2, MAD 1; O = 2, 1, 0, 1, 2
    d = Dataset(np.arange(5.0), np.arange(5.0) * 2)
    assert list(trim_set(d, [0, 1], 2).indices) == [0, 1, 2, 3, 4]
    assert list(trim_set(d, [0, 1], 1).indices) == [1, 2, 3]


def test_alpha_below_one_rejected(ex1):
    with pytest.raises(ValueError):
        trim_set(ex1, FLAT, 0.5)
    with pytest.raises(ValueError):
        TrimConfig(0.99)


def test_lst_objective(ex1):
    x = np.array([1.0, 2.0, 4.0])
    assert objective_lst(Dataset(x, 1 + x), [1, 1]) == 0.0
    # alpha = 1 on y = x keeps O <= 1: points 3, 4, 5, 6
    r = ex1.responses - ex1.predictors[:, 0]
    assert objective_lst(ex1, DIAGONAL, 1) == pytest.approx(np.sum(r[[2, 3, 4, 5]] ** 2), abs=1e-12)
    assert objective_lst(ex1, DIAGONAL, 1) == pytest.approx(4.86, abs=1e-12)


def test_lst_k_prefers_diagonal(ex1):
    flat, diag = objective_lst_k(ex1, FLAT, 4), objective_lst_k(ex1, DIAGONAL, 4)
    # direct evaluation: {4,5,6,7} under y=0 and {3,4,5,6} under y=x
    assert flat == pytest.approx(16 + 5.76 + 4 + 0.25, abs=1e-12)
    assert diag == pytest.approx(4 + 0.25 + 0.36 + 0.25, abs=1e-12)
    assert diag < flat


def test_lst_k_full_and_range(ex1):
    r = ex1.responses
    assert objective_lst_k(ex1, FLAT, 7) == pytest.approx(np.sum(r ** 2))
    with pytest.raises(ValueError):
        objective_lst_k(ex1, FLAT, 1)
    with pytest.raises(ValueError):
        objective_lst_k(ex1, FLAT, 8)


def test_lst_k_ties_take_smaller_index():
    d = Dataset(np.arange(5.0), np.array([1.0, -1.0, 0.0, 3.0, -3.0]))
    # residuals under beta = 0: O = 1, 1, 0, 3, 3 -> k = 2 keeps index 2 and 0
    assert objective_lst_k(d, [0, 0], 2) == 1.0
    from trimfit.objectives import deepest
    assert list(deepest(d, [0, 0], 2)) == [0, 2]


@pytest.mark.parametrize("beta, h, value", [(FLAT, 4, 4.75), (DIAGONAL, 4, 4.86), (DIAGONAL, 5, 11.11)])
def test_lts_published_values(ex1, beta, h, value):
    assert objective_lts(ex1, beta, h) == pytest.approx(value, abs=1e-12)
    assert lts_oracle(ex1, beta, h) == pytest.approx(value, abs=1e-12)


def test_lts_flat_h5_direct_value(ex1):
    # 0.25 + 0.25 + 0.25 + 4 + 5.76
    assert objective_lts(ex1, FLAT, 5) == pytest.approx(10.51, abs=1e-12)


def test_lts_range(ex1):
    with pytest.raises(ValueError):
        objective_lts(ex1, FLAT, 1)


@pytest.mark.parametrize("n, p, mode, h", [
    (7, 2, "ltsreg", 5), (7, 2, "breakdown", 4), (100, 10, "ltsreg", 55),
    (7, 2, "ltsReg-default", 5), (7, 2, "breakdown-optimal", 4)])
def test_default_h(n, p, mode, h):
    assert default_h(n, p, mode) == h


def _instance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 25))
    p = int(rng.integers(2, min(n, 5) + 1))
    d = random_dataset(rng, n, p, noise=float(rng.uniform(0.1, 3)))
    if rng.random() < 0.3:
        k = int(rng.integers(1, n // 2 + 1))
        y = d.responses.copy()
        y[:k] = rng.normal(10, 1, k)
        d = Dataset(d.predictors, y)
    return d, rng.standard_normal(p), rng


def test_trim_set_cardinality():
    for seed in range(1000):
        d, beta, rng = _instance(seed)
        alpha = 1 + 4 * rng.random() if seed % 3 else 1.0
        assert len(trim_set(d, beta, alpha).indices) >= (d.n + 1) // 2


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_monotone_in_size(seed):
    d, beta, _ = _instance(seed)
    lts = [objective_lts(d, beta, h) for h in range(d.p, d.n + 1)]
    lstk = [objective_lst_k(d, beta, k) for k in range(d.p, d.n + 1)]
    assert all(a <= b for a, b in zip(lts, lts[1:]))
    assert all(a <= b for a, b in zip(lstk, lstk[1:]))
    full = float(np.sum((d.responses - d.design @ beta) ** 2))
    assert lts[-1] == pytest.approx(full) and lstk[-1] == pytest.approx(full)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.floats(1, 6))
def test_threshold_set_is_a_depth_prefix(seed, alpha):
    d, beta, _ = _instance(seed)
    k = len(trim_set(d, beta, alpha).indices)
    if k >= d.p:
        assert objective_lst(d, beta, alpha) == pytest.approx(objective_lst_k(d, beta, k), rel=1e-12, abs=1e-12)


def test_lts_matches_sort_oracle_small_n():
    rng = np.random.default_rng(21)
    for _ in range(300):
        n = int(rng.integers(2, 11))
        p = int(rng.integers(2, n + 1))
        d = random_dataset(rng, n, p)
        beta = rng.standard_normal(p)
        for h in range(p, n + 1):
            assert objective_lts(d, beta, h) == pytest.approx(lts_oracle(d, beta, h), rel=1e-12, abs=1e-12)
