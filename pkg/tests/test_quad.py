import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from riskdist.dists import Beta
from riskdist.exceptions import NonConvergenceError
from riskdist.quad import (
    GAUSS_WEIGHTS,
    KRONROD_WEIGHTS,
    NODES,
    cdf_moments,
    integrate01,
)


def exact01(poly: Polynomial) -> float:
    """Oracle: term-wise antiderivative evaluated on [0, 1]."""
    P = poly.integ()
    return P(1.0) - P(0.0)


def test_rule_tables():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert np.all(np.diff(NODES) > 0)
    assert np.abs(NODES).max() < 1.0


def test_linear():
    assert integrate01(lambda x: x).value == pytest.approx(0.5, abs=1e-12)


def test_beta22_cdf_squared():
    F = Polynomial([0, 0, 3, -2])
    assert exact01(F**2) == pytest.approx(13 / 35, abs=1e-15)
    assert integrate01(lambda x: (3 * x**2 - 2 * x**3) ** 2).value == pytest.approx(13 / 35, abs=1e-10)


def test_beta13_cdf_squared():
    F = 1 - Polynomial([1, -1]) ** 3
    assert exact01(F**2) == pytest.approx(9 / 14, abs=1e-15)
    assert integrate01(lambda x: (1 - (1 - x) ** 3) ** 2).value == pytest.approx(9 / 14, abs=1e-10)


@pytest.mark.parametrize("deg", range(0, 23))
def test_kronrod_exact_through_degree_22(deg):
    # single panel: Kronrod-15 integrates x^deg exactly on [-1, 1]
    exact = 2.0 / (deg + 1) if deg % 2 == 0 else 0.0
    assert KRONROD_WEIGHTS @ NODES**deg == pytest.approx(exact, abs=1e-14)


def test_gauss_exact_through_degree_13():
    for deg in range(14):
        exact = 2.0 / (deg + 1) if deg % 2 == 0 else 0.0
        assert GAUSS_WEIGHTS @ NODES**deg == pytest.approx(exact, abs=1e-14)


def test_scalar_callable_fallback():
    r = integrate01(math.sqrt)
    assert r.value == pytest.approx(2 / 3, abs=1e-9)
    assert r.abs_error_estimate >= 0
    assert r.subdivisions > 4


def test_vector_integrand():
    r = integrate01(lambda x: np.stack([x, x * x]))
    np.testing.assert_allclose(r.value, [0.5, 1 / 3], atol=1e-14)


def test_never_evaluates_endpoints():
    seen = []

    def f(x):
        seen.append(np.asarray(x).copy())
        return np.sqrt(x)

    integrate01(f)
    xs = np.concatenate(seen)
    assert xs.min() > 0.0 and xs.max() < 1.0


def test_error_bound_holds():
    f = lambda x: np.exp(-30 * (x - 0.3) ** 2)  # noqa: E731
    exact = math.sqrt(math.pi / 30) / 2 * (math.erf(math.sqrt(30) * 0.7) + math.erf(math.sqrt(30) * 0.3))
    for tol in (1e-6, 1e-10):
        r = integrate01(f, tol=tol)
        assert abs(r.value - exact) <= max(tol, r.abs_error_estimate)


def test_doubling_limit_is_stable():
    f = lambda x: np.sqrt(x) * np.log1p(x)  # noqa: E731
    r1 = integrate01(f, limit=200)
    r2 = integrate01(f, limit=400)
    assert abs(r1.value - r2.value) <= r1.abs_error_estimate


def test_subdivision_limit():
    with pytest.raises(NonConvergenceError):
        integrate01(lambda x: 1 / np.sqrt(np.abs(x - 1 / 3)), tol=1e-14, limit=20)


@pytest.mark.parametrize(
    "d,expected",
    [(Beta(1, 1), (0.5, 1 / 3)), (Beta(2, 2), (0.5, 13 / 35)), (Beta(1, 3), (0.75, 9 / 14))],
    ids=["uniform", "beta22", "beta13"],
)
def test_cdf_moments(d, expected):
    I1, I2 = cdf_moments(d)
    assert I1 == pytest.approx(expected[0], abs=1e-10)
    assert I2 == pytest.approx(expected[1], abs=1e-10)
    assert 0 <= I2 <= I1 <= 1
