"""Triangular-mixture families showing that mode or median plus c do not
identify a distribution.

Mirroring ``pi -> 1 - pi`` preserves the c-statistic. Each family below is
closed under mirroring and has a fixed mode (or median) at 0.5, so a member
and its mirror share both statistics while being different distributions.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .dists import Distribution, Triangular, TwoComponentMixture, mirror
from .exceptions import DomainError
from .mapping import mc_of
from .solve import brent_root, golden_section_max

logger = logging.getLogger(__name__)

MODE_TOL = 1e-4
MEDIAN_TOL = 1e-8
C_TOL = 1e-8
DISTINCT_MIN = 0.01
_GRID = np.linspace(0.0, 1.0, 10_001)


def mode_family(a: float) -> TwoComponentMixture:
    """3/4 Tri(0, 1, 0.5) + 1/4 Tri(0, 1, a); the mode is 0.5 for every a."""
    if not 0.0 < a < 1.0:
        raise DomainError(f"mode-family parameter must lie in (0, 1), got {a!r}")
    return TwoComponentMixture(Triangular(0.0, 1.0, 0.5), 0.75, Triangular(0.0, 1.0, a))


def median_family(a: float) -> TwoComponentMixture:
    """1/2 Tri(0, 0.5, a) + 1/2 Tri(0.5, 1, 0.5 + a); the median is 0.5."""
    if not 0.0 < a < 0.5:
        raise DomainError(f"median-family parameter must lie in (0, 0.5), got {a!r}")
    return TwoComponentMixture(Triangular(0.0, 0.5, a), 0.5, Triangular(0.5, 1.0, 0.5 + a))


def mode_of(d: Distribution) -> float:
    """Global argmax of the density: grid bracket, then golden-section polish."""
    if not d.has_pdf:
        raise DomainError("mode_of needs a distribution with a density")
    dens = np.asarray(d.pdf(_GRID))
    k = int(np.argmax(dens))
    # a second local maximum of (nearly) equal height makes the mode ambiguous
    interior = (dens[1:-1] >= dens[:-2]) & (dens[1:-1] >= dens[2:])
    peaks = np.flatnonzero(interior) + 1
    rivals = [p for p in peaks if abs(p - k) > 1 and abs(dens[p] - dens[k]) <= 1e-9]
    if rivals:
        warnings.warn("density has several maxima of equal height; returning the first", RuntimeWarning)
    lo = _GRID[max(k - 1, 0)]
    hi = _GRID[min(k + 1, len(_GRID) - 1)]
    return float(golden_section_max(lambda x: float(d.pdf(x)), lo, hi, xtol=1e-9))


def median_of(d: Distribution) -> float:
    """Root of ``F(x) - 1/2`` on [0, 1], located to the sign change."""
    res = brent_root(lambda x: float(d.cdf(x)) - 0.5, 0.0, 1.0, tol=1e-10, xtol=1e-12)
    return float(res.root)


def sup_cdf_distance(d1: Distribution, d2: Distribution) -> float:
    return float(np.max(np.abs(np.asarray(d1.cdf(_GRID)) - np.asarray(d2.cdf(_GRID)))))


@dataclass(frozen=True)
class CounterexampleReport:
    kind: str
    a: float
    a_mirror: float
    stat1: float
    stat2: float
    c1: float
    c2: float
    sup_cdf_diff: float
    mirror_max_diff: float
    same_stat: bool
    same_c: bool
    distinct: bool

    @property
    def verified(self) -> bool:
        return self.same_stat and self.same_c and self.distinct

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out["verified"] = self.verified
        return out


def _verify(kind, a, a_mirror, make, stat, stat_tol) -> CounterexampleReport:
    d1, d2 = make(a), make(a_mirror)
    s1, s2 = stat(d1), stat(d2)
    c1, c2 = mc_of(d1).c, mc_of(d2).c
    # the partner really is the mirror image of the first member
    mirror_gap = sup_cdf_distance(mirror(d1), d2)
    same_stat = abs(s1 - s2) <= stat_tol and abs(s1 - 0.5) <= stat_tol and abs(s2 - 0.5) <= stat_tol
    sup = sup_cdf_distance(d1, d2)
    report = CounterexampleReport(
        kind, a, a_mirror, s1, s2, c1, c2, sup, mirror_gap,
        bool(same_stat), abs(c1 - c2) <= C_TOL, sup >= DISTINCT_MIN,
    )
    logger.info("%s counterexample a=%g: verified=%s", kind, a, report.verified)
    return report


def verify_mode_counterexample(a: float) -> CounterexampleReport:
    """Check that mode-family members ``a`` and ``1 - a`` share mode and c but differ."""
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie in (0, 1), got {a!r}")
    if a == 0.5:
        raise DomainError("a = 0.5 is its own mirror image; the pair would be identical")
    return _verify("mode", a, 1.0 - a, mode_family, mode_of, MODE_TOL)


def verify_median_counterexample(a: float) -> CounterexampleReport:
    """Check that median-family members ``a`` and ``0.5 - a`` share median and c but differ."""
    if not 0.0 < a < 0.5:
        raise DomainError(f"a must lie in (0, 0.5), got {a!r}")
    if a == 0.25:
        raise DomainError("a = 0.25 is its own mirror image; the pair would be identical")
    return _verify("median", a, 0.5 - a, median_family, median_of, MEDIAN_TOL)
