from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trimfit import (Dataset, SingularDesignError, SubsetTooSmallError, ls_fit,
                     predict, residuals)
from trimfit.example1 import X, Y

from conftest import random_dataset


def test_residuals_examples(ex1):
    np.testing.assert_array_equal(residuals(ex1, [0, 0]), Y)
    np.testing.assert_allclose(residuals(ex1, [0, 1]), [-5.5, -6, 2, 0.5, -0.6, -0.5, 2.5], atol=1e-15)


def test_predict_examples(ex1):
    np.testing.assert_array_equal(predict(ex1, [0, 0]), 0.0)
    np.testing.assert_array_equal(predict(ex1, [1.5, 0]), 1.5)
    np.testing.assert_array_equal(predict(ex1, [0, 1]), X)
    b = np.array([0.3, -1.2])
    np.testing.assert_array_equal(residuals(ex1, b), ex1.responses - predict(ex1, b))


def test_dimension_mismatch(ex1):
    with pytest.raises(ValueError, match="does not match"):
        residuals(ex1, [1, 2, 3])


def test_dataset_validation():
    with pytest.raises(ValueError):
        Dataset(np.ones((3, 1)), np.ones(4))
    with pytest.raises(ValueError):
        Dataset(np.array([1.0, np.inf]), np.ones(2))
    d = Dataset(np.arange(3.0), np.arange(3.0))
    assert (d.n, d.p) == (3, 2)
    with pytest.raises(ValueError):
        d.responses[0] = 5.0


def test_interpolating_line():
    x = np.array([-1.0, 0.5, 2.0, 7.0])
    np.testing.assert_allclose(ls_fit(Dataset(x, 3 + 2 * x)), [3, 2], atol=1e-12)


def test_square_system_interpolates():
    rng = np.random.default_rng(2)
    d = random_dataset(rng, 4, 4)
    np.testing.assert_allclose(residuals(d, ls_fit(d)), 0, atol=1e-10)


def test_example1_against_exact_normal_equations(ex1):
    xs = [Fraction(str(v)) for v in X]
    ys = [Fraction(str(v)) for v in Y]
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx, sxy = sum(x * x for x in xs), sum(x * y for x, y in zip(xs, ys))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    intercept = (sy - slope * sx) / n
    np.testing.assert_allclose(ls_fit(ex1), [float(intercept), float(slope)], rtol=1e-12)
    # the slope is positive (about 0.034); points 1, 2 and 7 flatten it
    assert 0 < slope < Fraction(1, 10)


def test_singular_and_small_subsets():
    d = Dataset(np.array([1.0, 1.0, 1.0, 2.0]), np.array([1.0, 2.0, 3.0, 4.0]))
    with pytest.raises(SingularDesignError, match="singular design"):
        ls_fit(d, [0, 1, 2])
    with pytest.raises(SubsetTooSmallError, match="subset too small"):
        ls_fit(d, [3])
    np.testing.assert_allclose(ls_fit(d, [0, 3]), [-2, 3], atol=1e-12)


def test_full_subset_equals_full_fit():
    d = random_dataset(np.random.default_rng(4), 30, 4)
    np.testing.assert_array_equal(ls_fit(d), ls_fit(d, np.arange(d.n)))


def test_normal_equation_oracle():
    rng = np.random.default_rng(8)
    for _ in range(200):
        W = np.column_stack([np.ones(5), rng.standard_normal((5, 2))])
        if np.linalg.cond(W) > 50:
            continue
        y = rng.standard_normal(5)
        oracle = np.linalg.solve(W.T @ W, W.T @ y)
        np.testing.assert_allclose(ls_fit(Dataset(W[:, 1:], y)), oracle, rtol=1e-6, atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 6), st.integers(0, 20))
def test_equivariance_and_orthogonality(seed, p, extra):
    rng = np.random.default_rng(seed)
    d = random_dataset(rng, p + extra, p)
    beta = ls_fit(d)
    W = d.design
    r = residuals(d, beta)
    assert np.all(np.abs(W.T @ r) <= 1e-8 * (1 + np.abs(W.T @ d.responses)))
    v = rng.standard_normal(p)
    shifted = Dataset(d.predictors, d.responses + W @ v)
    np.testing.assert_allclose(ls_fit(shifted), beta + v, atol=1e-8)
