"""Special functions on and around the unit interval.

Thin, domain-checked wrappers over :mod:`scipy.special`. All functions accept
scalars or array-likes and return the matching shape (Python ``float`` for
scalar input).
"""
from __future__ import annotations

import numpy as np
from scipy import special

from .exceptions import DomainError

_SQRT_2PI = np.sqrt(2.0 * np.pi)


def _out(arr: np.ndarray):
    return float(arr) if arr.ndim == 0 else arr


def std_normal_cdf(z):
    """Standard normal CDF. Saturates to 0 or 1 in the far tails."""
    z = np.asarray(z, dtype=float)
    if np.any(np.isnan(z)):
        raise DomainError("std_normal_cdf: z must not be NaN")
    return _out(special.ndtr(z))


def std_normal_pdf(z):
    z = np.asarray(z, dtype=float)
    return _out(np.exp(-0.5 * z * z) / _SQRT_2PI)


def std_normal_quantile(p):
    """Inverse of :func:`std_normal_cdf` on the open interval (0, 1).

    The library estimate is refined with one Halley step against the CDF.
    """
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0.0) | ~(p < 1.0)):
        raise DomainError("std_normal_quantile requires 0 < p < 1")
    x = special.ndtri(p)
    # Halley correction; err/pdf is computed as err * sqrt(2pi) * exp(x^2/2).
    err = special.ndtr(x) - p
    with np.errstate(over="ignore", invalid="ignore"):
        u = err * _SQRT_2PI * np.exp(0.5 * x * x)
        step = u / (1.0 + 0.5 * x * u)
    x = np.where(np.isfinite(step), x - step, x)
    return _out(x)


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta I_x(a, b), i.e. the Beta(a, b) CDF at x."""
    x = np.asarray(x, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(~(a > 0.0)) or np.any(~(b > 0.0)):
        raise DomainError("reg_inc_beta requires a > 0 and b > 0")
    if np.any(~(x >= 0.0) | ~(x <= 1.0)):
        raise DomainError("reg_inc_beta requires 0 <= x <= 1")
    return _out(special.betainc(a, b, x))


def logit(p):
    p = np.asarray(p, dtype=float)
    if np.any(~(p > 0.0) | ~(p < 1.0)):
        raise DomainError("logit requires 0 < p < 1")
    return _out(special.logit(p))


def expit(x):
    x = np.asarray(x, dtype=float)
    return _out(special.expit(x))
