"""Two-parameter distribution families on [0, 1] and the triangular mixtures.

Every distribution exposes a vectorised ``cdf``; ``pdf`` and ``ppf`` are
available where the family has them in closed form. The three named families
double as their own parameter records (``Beta(alpha, beta)`` etc.) and are
immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import special

from .exceptions import DomainError


def _as_unit(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~(x >= 0.0) | ~(x <= 1.0)):
        raise DomainError("distribution argument must lie in [0, 1]")
    return x


def _out(arr):
    arr = np.asarray(arr)
    return float(arr) if arr.ndim == 0 else arr


class Distribution:
    """Base class for distributions supported on [0, 1].

    Subclasses implement :meth:`_cdf` on a float array already checked to lie
    in [0, 1]. ``pdf`` and ``ppf`` raise ``NotImplementedError`` unless the
    subclass provides them.
    """

    name = "generic"

    def cdf(self, x):
        return _out(self._cdf(_as_unit(x)))

    def pdf(self, x):
        return _out(self._pdf(_as_unit(x)))

    def ppf(self, p):
        return _out(self._ppf(_as_unit(p)))

    @property
    def has_pdf(self) -> bool:
        return type(self)._pdf is not Distribution._pdf

    @property
    def has_ppf(self) -> bool:
        return type(self)._ppf is not Distribution._ppf

    def _cdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{type(self).__name__} has no density")

    def _ppf(self, p: np.ndarray) -> np.ndarray:
        raise NotImplementedError(f"{type(self).__name__} has no quantile function")


def _check_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class Beta(Distribution):
    alpha: float
    beta: float

    name = "beta"

    def __post_init__(self):
        _check_positive("alpha", self.alpha)
        _check_positive("beta", self.beta)

    @property
    def params(self) -> tuple[float, float]:
        return (self.alpha, self.beta)

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    def _cdf(self, x):
        return special.betainc(self.alpha, self.beta, x)

    def _pdf(self, x):
        a, b = self.alpha, self.beta
        with np.errstate(divide="ignore", invalid="ignore"):
            logp = special.xlogy(a - 1.0, x) + special.xlog1py(b - 1.0, -x) - special.betaln(a, b)
        return np.exp(logp)

    def _ppf(self, p):
        return special.betaincinv(self.alpha, self.beta, p)


class _NormalLink(Distribution):
    """Shared machinery for families defined by ``link(pi) ~ Normal(mu, sigma^2)``."""

    mu: float
    sigma: float

    def __post_init__(self):
        _check_finite("mu", self.mu)
        _check_positive("sigma", self.sigma)

    @property
    def params(self) -> tuple[float, float]:
        return (self.mu, self.sigma)

    def _link(self, x):
        raise NotImplementedError

    def _link_inv(self, z):
        raise NotImplementedError

    def _link_deriv(self, x):
        raise NotImplementedError

    def _cdf(self, x):
        inner = (x > 0.0) & (x < 1.0)
        xi = np.where(inner, x, 0.5)
        out = special.ndtr((self._link(xi) - self.mu) / self.sigma)
        # limit values at the closed endpoints
        return np.where(inner, out, np.where(x >= 1.0, 1.0, 0.0))

    def _pdf(self, x):
        inner = (x > 0.0) & (x < 1.0)
        xi = np.where(inner, x, 0.5)
        z = (self._link(xi) - self.mu) / self.sigma
        dens = np.exp(-0.5 * z * z) / (math.sqrt(2.0 * math.pi) * self.sigma) * self._link_deriv(xi)
        return np.where(inner, dens, 0.0)

    def _ppf(self, p):
        return self._link_inv(self.mu + self.sigma * special.ndtri(p))


@dataclass(frozen=True)
class LogitNormal(_NormalLink):
    mu: float
    sigma: float

    name = "logitnorm"

    def _link(self, x):
        return special.logit(x)

    def _link_inv(self, z):
        return special.expit(z)

    def _link_deriv(self, x):
        return 1.0 / (x * (1.0 - x))


@dataclass(frozen=True)
class ProbitNormal(_NormalLink):
    mu: float
    sigma: float

    name = "probitnorm"

    @property
    def mean(self) -> float:
        return float(special.ndtr(self.mu / math.sqrt(1.0 + self.sigma**2)))

    def _link(self, x):
        return special.ndtri(x)

    def _link_inv(self, z):
        return special.ndtr(z)

    def _link_deriv(self, x):
        q = special.ndtri(x)
        return math.sqrt(2.0 * math.pi) * np.exp(0.5 * q * q)


@dataclass(frozen=True)
class Triangular(Distribution):
    lower: float
    upper: float
    mode: float

    name = "triangular"

    def __post_init__(self):
        lo, hi, c = self.lower, self.upper, self.mode
        if not (0.0 <= lo <= c <= hi <= 1.0 and lo < hi):
            raise DomainError(f"invalid triangular distribution ({lo}, {hi}, {c})")

    def _pdf(self, x):
        lo, hi, c = self.lower, self.upper, self.mode
        h = 2.0 / (hi - lo)
        with np.errstate(divide="ignore", invalid="ignore"):
            left = h * (x - lo) / (c - lo) if c > lo else np.zeros_like(x)
            right = h * (hi - x) / (hi - c) if hi > c else np.zeros_like(x)
        out = np.where(x <= c, left, right)
        if c == lo:
            out = np.where(x == c, h, out)
        return np.where((x < lo) | (x > hi), 0.0, out)

    def _cdf(self, x):
        lo, hi, c = self.lower, self.upper, self.mode
        span = hi - lo
        with np.errstate(divide="ignore", invalid="ignore"):
            left = (x - lo) ** 2 / (span * (c - lo)) if c > lo else np.zeros_like(x)
            right = 1.0 - (hi - x) ** 2 / (span * (hi - c)) if hi > c else np.ones_like(x)
        out = np.where(x <= c, left, right)
        return np.where(x <= lo, 0.0, np.where(x >= hi, 1.0, out))

    def _ppf(self, p):
        lo, hi, c = self.lower, self.upper, self.mode
        span = hi - lo
        split = (c - lo) / span
        left = lo + np.sqrt(p * span * (c - lo))
        right = hi - np.sqrt((1.0 - p) * span * (hi - c))
        return np.where(p <= split, left, right)


@dataclass(frozen=True)
class TwoComponentMixture(Distribution):
    comp1: Distribution
    w1: float
    comp2: Distribution

    name = "mixture"

    def __post_init__(self):
        if not (0.0 < self.w1 < 1.0):
            raise DomainError(f"mixture weight must lie in (0, 1), got {self.w1!r}")

    def _cdf(self, x):
        return self.w1 * self.comp1._cdf(x) + (1.0 - self.w1) * self.comp2._cdf(x)

    def _pdf(self, x):
        return self.w1 * self.comp1._pdf(x) + (1.0 - self.w1) * self.comp2._pdf(x)


class CDFDistribution(Distribution):
    """Wrap user-supplied vectorised callables as a distribution."""

    def __init__(
        self,
        cdf: Callable,
        pdf: Optional[Callable] = None,
        ppf: Optional[Callable] = None,
        name: str = "generic",
    ):
        self._cdf_fn = cdf
        self._pdf_fn = pdf
        self._ppf_fn = ppf
        self.name = name

    @property
    def has_pdf(self) -> bool:
        return self._pdf_fn is not None

    @property
    def has_ppf(self) -> bool:
        return self._ppf_fn is not None

    def _cdf(self, x):
        return np.asarray(self._cdf_fn(x), dtype=float)

    def _pdf(self, x):
        if self._pdf_fn is None:
            return super()._pdf(x)
        return np.asarray(self._pdf_fn(x), dtype=float)

    def _ppf(self, p):
        if self._ppf_fn is None:
            return super()._ppf(p)
        return np.asarray(self._ppf_fn(p), dtype=float)


@dataclass(frozen=True)
class Mirrored(Distribution):
    """Law of ``1 - pi`` where ``pi`` follows ``base``."""

    base: Distribution

    @property
    def name(self) -> str:
        return f"mirror({self.base.name})"

    @property
    def has_pdf(self) -> bool:
        return self.base.has_pdf

    @property
    def has_ppf(self) -> bool:
        return self.base.has_ppf

    def _cdf(self, x):
        return 1.0 - self.base._cdf(1.0 - x)

    def _pdf(self, x):
        return self.base._pdf(1.0 - x)

    def _ppf(self, p):
        return 1.0 - self.base._ppf(1.0 - p)


def mirror(d: Distribution) -> Distribution:
    """Return the distribution of ``1 - pi``; mirroring twice gives ``d`` back."""
    if isinstance(d, Mirrored):
        return d.base
    return Mirrored(d)


UNIFORM = Beta(1.0, 1.0)

FAMILIES: dict[str, type] = {
    "beta": Beta,
    "logitnorm": LogitNormal,
    "probitnorm": ProbitNormal,
}


def make_family(name: str, p1: float, p2: float) -> Distribution:
    """Construct a named family member from its two parameters."""
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise DomainError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}") from None
    return cls(float(p1), float(p2))
