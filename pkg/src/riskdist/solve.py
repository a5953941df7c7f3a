"""Scalar root finding and two-variable derivative-free minimisation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .exceptions import BracketError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class MinResult:
    argmin: tuple[float, float]
    objective_value: float
    iterations: int
    converged: bool


def brent_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    *,
    xtol: float = 1e-12,
    ftol: Optional[float] = None,
    maxiter: int = 200,
) -> RootResult:
    """Brent's method on a sign-change bracket ``[lo, hi]``.

    Iterates until the bracket half-width falls below ``2 eps |x| + xtol / 2``,
    or earlier once ``|f(x)| <= ftol`` if ``ftol`` is given. The result is
    flagged converged when the final residual is within ``tol``; a collapsed
    bracket around a discontinuity therefore reports ``converged=False``.
    """
    if not lo < hi:
        raise BracketError(f"brent_root: need lo < hi, got [{lo}, {hi}]")
    a, b = float(lo), float(hi)
    fa, fb = float(f(a)), float(f(b))
    if fa == 0.0:
        return RootResult(a, 0.0, 0, True)
    if fb == 0.0:
        return RootResult(b, 0.0, 0, True)
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise BracketError(f"brent_root: f({a})={fa:.6g} and f({b})={fb:.6g} have the same sign")

    c, fc = a, fa
    d = e = b - a
    for it in range(1, maxiter + 1):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * xtol
        xm = 0.5 * (c - b)
        if fb == 0.0 or abs(xm) <= tol1 or (ftol is not None and abs(fb) <= ftol):
            return RootResult(b, fb, it, abs(fb) <= tol)
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = float(f(b))
    return RootResult(b, fb, maxiter, abs(fb) <= tol)


def minimize2(
    f: Callable[[float, float], float],
    start: tuple[float, float],
    tol: float = 1e-10,
    *,
    maxiter: int = 500,
    xtol: float = 1e-8,
    target: Optional[float] = None,
    step: Optional[tuple[float, float]] = None,
) -> MinResult:
    """Nelder-Mead simplex minimisation of ``f(x, y)``.

    Coefficients are the standard ones (reflect 1, expand 2, contract 0.5,
    shrink 0.5). The initial simplex offsets each coordinate by 10% of its
    start value, at least 0.1, unless ``step`` is given.

    Converges when the simplex has collapsed (spread in ``f`` at most ``tol``
    and vertex spread at most ``xtol``) or, if ``target`` is set, as soon
    as the best value drops to ``target``.
    """
    x0 = np.asarray(start, dtype=float)
    if x0.shape != (2,):
        raise ValueError("start must be a pair")
    if step is None:
        step = np.maximum(0.1 * np.abs(x0), 0.1)
    else:
        step = np.asarray(step, dtype=float)

    def F(v):
        val = float(f(float(v[0]), float(v[1])))
        return val if not math.isnan(val) else math.inf

    simplex = np.array([x0, x0 + [step[0], 0.0], x0 + [0.0, step[1]]])
    values = np.array([F(v) for v in simplex])
    if not math.isfinite(values[0]):
        raise ValueError("minimize2: objective is not finite at the start point")

    it = 0
    converged = False
    while it < maxiter:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        if target is not None and values[0] <= target:
            converged = True
            break
        size = np.max(np.abs(simplex[1:] - simplex[0]))
        if values[-1] - values[0] <= tol and size <= xtol:
            converged = True
            break
        it += 1
        centroid = simplex[:2].mean(axis=0)
        worst = simplex[2]
        xr = centroid + (centroid - worst)
        fr = F(xr)
        if fr < values[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = F(xe)
            if fe < fr:
                simplex[2], values[2] = xe, fe
            else:
                simplex[2], values[2] = xr, fr
        elif fr < values[1]:
            simplex[2], values[2] = xr, fr
        else:
            if fr < values[2]:
                xc = centroid + 0.5 * (xr - centroid)
                fc = F(xc)
                accept = fc <= fr
            else:
                xc = centroid + 0.5 * (worst - centroid)
                fc = F(xc)
                accept = fc < values[2]
            if accept:
                simplex[2], values[2] = xc, fc
            else:
                simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
                values[1:] = [F(v) for v in simplex[1:]]
    best = int(np.argmin(values))
    return MinResult(
        (float(simplex[best, 0]), float(simplex[best, 1])),
        float(values[best]),
        it,
        converged,
    )


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-9, maxiter: int = 200
) -> float:
    """Maximise a unimodal ``f`` on ``[lo, hi]`` by golden-section search."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if b - a <= xtol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)
