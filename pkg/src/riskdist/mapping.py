"""Map a (mean, c-statistic) pair to the parameters of a risk distribution.

Any distribution on [0, 1] with CDF ``F``, mean ``m`` and c-statistic ``c``
satisfies

    ∫F  = 1 - m
    ∫F² = 1 - 2cm + (2c - 1)m²

so identifying the distribution amounts to matching those two integrals. The
beta and probit-normal solvers use the mean to eliminate one parameter and
root-find on the second integral; logit-normal and the generic solver minimise
the squared integral residuals with Nelder-Mead.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

from . import quad
from ._validation import check_mean_cstat, extreme_c_warning
from .dists import Beta, Distribution, LogitNormal, ProbitNormal, mirror
from .exceptions import BracketError, DomainError, NonConvergenceError
from .solve import brent_root, minimize2
from .specfun import logit, std_normal_quantile

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
OBJECTIVE_TOL = 1e-16
PENALTY = 1e6


class MeanCstat(NamedTuple):
    m: float
    c: float


class TargetIntegrals(NamedTuple):
    I1: float
    I2: float


@dataclass(frozen=True)
class SolveReport:
    family: str
    params: Distribution
    residual_I1: float
    residual_I2: float
    iterations: int
    converged: bool
    warning: Optional[str] = None

    @property
    def max_residual(self) -> float:
        return max(abs(self.residual_I1), abs(self.residual_I2))

    def as_dict(self) -> dict:
        p = getattr(self.params, "params", (math.nan, math.nan))
        return {
            "family": self.family,
            "p1": p[0],
            "p2": p[1],
            "residual_I1": self.residual_I1,
            "residual_I2": self.residual_I2,
            "iterations": self.iterations,
            "converged": self.converged,
            "warning": self.warning,
        }


def target_integrals(m: float, c: float) -> TargetIntegrals:
    m, c = check_mean_cstat(m, c)
    return TargetIntegrals(1.0 - m, 1.0 - 2.0 * c * m + (2.0 * c - 1.0) * m * m)


def mc_of(d: Distribution, tol: float = quad.DEFAULT_TOL) -> MeanCstat:
    """Forward map: mean and c-statistic of ``d`` from its CDF integrals."""
    I1, I2 = quad.cdf_moments(d, tol=tol)
    m = 1.0 - I1
    denom = m * (1.0 - m)
    if denom < 1e-12:
        raise DomainError(f"degenerate distribution: mean {m!r} leaves m(1-m) < 1e-12")
    c = (1.0 - I2 - m * m) / (2.0 * denom)
    return MeanCstat(m, c)


def _report(family, d, targets, iterations, solver_ok, warning, quad_tol) -> SolveReport:
    I1, I2 = quad.cdf_moments(d, tol=quad_tol)
    r1, r2 = I1 - targets.I1, I2 - targets.I2
    converged = bool(solver_ok) and max(abs(r1), abs(r2)) <= RESIDUAL_TOL
    if not converged:
        note = f"solver did not converge (residuals {r1:.3g}, {r2:.3g})"
        warning = f"{warning}; {note}" if warning else note
    if warning:
        logger.warning("%s: %s", family, warning)
    return SolveReport(family, d, r1, r2, iterations, converged, warning)


def _bracketed_log_root(h, lo: float, hi: float, expansions: int = 3):
    """Find a sign-change bracket for ``h`` on a log scale, widening by 10x."""
    a, b = math.log(lo), math.log(hi)
    step = math.log(10.0)
    ha, hb = h(a), h(b)
    for _ in range(expansions):
        if ha * hb <= 0:
            break
        # h increases with the concentration parameter
        if ha > 0:
            a -= step
            ha = h(a)
        else:
            b += step
            hb = h(b)
    if ha * hb > 0:
        raise BracketError("could not bracket the solution; the c-statistic may be too extreme")
    return a, b


def _solve_by_root(family, make, targets, warning, quad_tol, max_iter, lo, hi) -> SolveReport:
    def h(log_s):
        try:
            return quad.cdf_moments(make(math.exp(log_s)), tol=quad_tol)[1] - targets.I2
        except NonConvergenceError:
            return math.nan

    try:
        a, b = _bracketed_log_root(h, lo, hi)
        root = brent_root(h, a, b, tol=1e-10, xtol=1e-13, ftol=1e-14, maxiter=max_iter)
    except BracketError as exc:
        note = str(exc)
        return SolveReport(family, make(1.0), math.nan, math.nan, 0, False,
                           f"{warning}; {note}" if warning else note)
    return _report(family, make(math.exp(root.root)), targets, root.iterations,
                   root.converged, warning, quad_tol)


def mcmap_beta(m: float, c: float, *, quad_tol: float = quad.DEFAULT_TOL, max_iter: int = 200) -> SolveReport:
    """Beta(alpha, beta) with the given mean and c-statistic.

    The mean fixes ``beta = alpha (1 - m) / m``; ``alpha`` is then the root of
    ``∫ I_x(alpha, beta)² dx - target``, found by Brent on ``log alpha``.
    """
    m, c = check_mean_cstat(m, c)
    targets = target_integrals(m, c)
    ratio = (1.0 - m) / m
    return _solve_by_root("beta", lambda a: Beta(a, a * ratio), targets,
                          extreme_c_warning(c), quad_tol, max_iter, 1e-4, 1e4)


def mcmap_probitnorm(m: float, c: float, *, quad_tol: float = quad.DEFAULT_TOL, max_iter: int = 200) -> SolveReport:
    """Probit-normal(mu, sigma) with the given mean and c-statistic.

    The mean satisfies ``Phi(mu / sqrt(1 + sigma²)) = m`` so ``mu`` follows from
    ``sigma``; ``sigma`` is found by Brent on ``log sigma``.
    """
    m, c = check_mean_cstat(m, c)
    targets = target_integrals(m, c)
    q = std_normal_quantile(m)

    def make(s):
        return ProbitNormal(q * math.sqrt(1.0 + s * s), s)

    # root-find on 1/sigma so that the second integral increases in the unknown,
    # as it does in alpha for the beta family; sigma spans [1e-4, 100]
    return _solve_by_root("probitnorm", lambda t: make(1.0 / t), targets,
                          extreme_c_warning(c), quad_tol, max_iter, 1e-2, 1e4)


def _squared_error(d: Distribution, targets: TargetIntegrals, quad_tol: float) -> float:
    I1, I2 = quad.cdf_moments(d, tol=quad_tol)
    return (I1 - targets.I1) ** 2 + (I2 - targets.I2) ** 2


def _minimise(objective, start, max_iter) -> tuple[tuple[float, float], int, bool]:
    total = 0
    res = minimize2(objective, start, tol=1e-22, xtol=1e-10, maxiter=max_iter, target=1e-22)
    total += res.iterations
    # one restart from the best vertex guards against a collapsed simplex
    if res.objective_value > OBJECTIVE_TOL and total < max_iter:
        res2 = minimize2(objective, res.argmin, tol=1e-22, xtol=1e-10,
                         maxiter=max_iter - total, target=1e-22)
        total += res2.iterations
        if res2.objective_value < res.objective_value:
            res = res2
    return res.argmin, total, res.objective_value <= OBJECTIVE_TOL


def mcmap_logitnorm(
    m: float,
    c: float,
    *,
    quad_tol: float = quad.DEFAULT_TOL,
    max_iter: int = 500,
    start: Optional[Sequence[float]] = None,
) -> SolveReport:
    """Logit-normal(mu, sigma) with the given mean and c-statistic.

    Minimises the squared integral residuals over ``(mu, log sigma)`` starting
    from ``(logit(m), 0)``.
    """
    m, c = check_mean_cstat(m, c)
    targets = target_integrals(m, c)

    def objective(mu, log_sigma):
        if not (math.isfinite(mu) and -30.0 < log_sigma < 10.0):
            return PENALTY
        try:
            return _squared_error(LogitNormal(mu, math.exp(log_sigma)), targets, quad_tol)
        except (DomainError, NonConvergenceError):
            return PENALTY

    x0 = (logit(m), 0.0) if start is None else (float(start[0]), math.log(float(start[1])))
    (mu, log_sigma), iters, ok = _minimise(objective, x0, max_iter)
    return _report("logitnorm", LogitNormal(mu, math.exp(log_sigma)), targets, iters,
                   ok, extreme_c_warning(c), quad_tol)


def mcmap_generic(
    family: Callable[[float, float], Distribution],
    m: float,
    c: float,
    start: Sequence[float],
    *,
    to_internal: Optional[Callable[[float, float], tuple[float, float]]] = None,
    from_internal: Optional[Callable[[float, float], tuple[float, float]]] = None,
    quad_tol: float = quad.DEFAULT_TOL,
    max_iter: int = 1000,
    name: str = "generic",
) -> SolveReport:
    """Fit any two-parameter family by minimising the squared integral residuals.

    ``family(p1, p2)`` must return a :class:`Distribution` or raise
    ``ValueError`` for inadmissible parameters; such excursions score a
    penalty of 1e6 instead of aborting. ``to_internal``/``from_internal`` let
    callers optimise over an unconstrained reparametrisation.
    """
    m, c = check_mean_cstat(m, c)
    targets = target_integrals(m, c)
    to_int = to_internal or (lambda a, b: (a, b))
    from_int = from_internal or (lambda a, b: (a, b))

    def build(z1, z2):
        p1, p2 = from_int(z1, z2)
        return family(p1, p2)

    def objective(z1, z2):
        try:
            return _squared_error(build(z1, z2), targets, quad_tol)
        except (ValueError, ArithmeticError, NonConvergenceError):
            return PENALTY

    z0 = to_int(float(start[0]), float(start[1]))
    z, iters, ok = _minimise(objective, z0, max_iter)
    return _report(name, build(*z), targets, iters, ok, extreme_c_warning(c), quad_tol)


SOLVERS = {
    "beta": mcmap_beta,
    "logitnorm": mcmap_logitnorm,
    "probitnorm": mcmap_probitnorm,
}


def mcmap(family: str, m: float, c: float, **kwargs) -> SolveReport:
    """Dispatch to the solver for a named family."""
    try:
        solver = SOLVERS[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}; expected one of {sorted(SOLVERS)}") from None
    return solver(m, c, **kwargs)


def mirror_solution(m: float, c: float, params: Distribution) -> Distribution:
    """Given the solution for ``(m, c)``, return the solution for ``(1 - m, c)``."""
    if isinstance(params, Beta):
        return Beta(params.beta, params.alpha)
    if isinstance(params, LogitNormal):
        return LogitNormal(-params.mu, params.sigma)
    if isinstance(params, ProbitNormal):
        return ProbitNormal(-params.mu, params.sigma)
    return mirror(params)


__all__ = [
    "MeanCstat", "TargetIntegrals", "SolveReport", "target_integrals", "mc_of",
    "mcmap_beta", "mcmap_probitnorm", "mcmap_logitnorm", "mcmap_generic", "mcmap",
    "mirror_solution",
]
