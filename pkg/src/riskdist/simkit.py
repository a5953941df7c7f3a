"""Monte-Carlo check that solved distributions reproduce their (m, c).

For each grid cell the distribution is solved from ``(m, c)``, a sample of
risks and Bernoulli outcomes is drawn, and the empirical mean outcome and
Mann-Whitney c-statistic are compared with the targets. The sample size
targets a given standard error on both statistics.
"""
from __future__ import annotations

import csv
import io
import math
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import special
from scipy.stats import rankdata

from ._validation import check_mean_cstat, check_positive, check_probability
from .dists import Beta, Distribution, LogitNormal, Mirrored, ProbitNormal, TwoComponentMixture
from .exceptions import DomainError, RiskDistError
from .mapping import mcmap

CSV_HEADER = ("family", "m", "c", "p1", "p2", "n", "m_hat", "c_hat", "dm", "dc", "converged", "seed")

_RISK_STREAM = 0
_OUTCOME_STREAM = 1


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based Philox generator keyed on ``(seed, stream)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))


def cell_seed(base_seed: int, family: str, m_index: int, c_index: int) -> int:
    """Per-cell 63-bit seed derived from the base seed and the cell coordinates."""
    ss = np.random.SeedSequence([int(base_seed), zlib.crc32(family.encode()), int(m_index), int(c_index)])
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


def wald_n(m: float, se: float) -> int:
    """Smallest n with sqrt(m(1 - m) / n) <= se."""
    m = check_probability("m", m)
    se = check_positive("se", se)
    # the relative slack absorbs rounding in se**2, e.g. 0.25 / 0.001**2
    return max(1, math.ceil(m * (1.0 - m) / (se * se) * (1.0 - 1e-12)))


def cstat_variance(c: float, n_cases: int, n_controls: int) -> float:
    """Hanley-McNeil variance of the empirical c-statistic."""
    q1 = c / (2.0 - c)
    q2 = 2.0 * c * c / (1.0 + c)
    return (c * (1.0 - c) + (n_cases - 1) * (q1 - c * c) + (n_controls - 1) * (q2 - c * c)) / (
        n_cases * n_controls
    )


def _split(m: float, n: int) -> tuple[int, int]:
    n1 = int(round(m * n))
    return n1, n - n1


def _newcombe_var(m: float, c: float, n: int) -> float:
    n1, n0 = _split(m, n)
    if n1 < 1 or n0 < 1:
        return math.inf
    return cstat_variance(c, n1, n0)


def newcombe_n(m: float, c: float, se: float) -> int:
    """Smallest n (found by integer bisection) whose c-statistic SE is at most ``se``.

    Cases are ``round(m * n)`` of the ``n`` draws.
    """
    m, c = check_mean_cstat(m, c)
    se = check_positive("se", se)
    target = se * se
    lo, hi = 1, 2
    while _newcombe_var(m, c, hi) > target:
        lo, hi = hi, hi * 2
    # invariant: var(lo) > target >= var(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _newcombe_var(m, c, mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def sample_size(m: float, c: float, se: float) -> int:
    return max(wald_n(m, se), newcombe_n(m, c, se))


def _open_uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    # k / 2^53 + 2^-54 lies strictly inside (0, 1)
    return rng.random(n) + 2.0**-54


def _draw(d: Distribution, n: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(d, Beta):
        x = rng.standard_gamma(d.alpha, n)
        y = rng.standard_gamma(d.beta, n)
        return x / (x + y)
    if isinstance(d, LogitNormal):
        return special.expit(d.mu + d.sigma * special.ndtri(_open_uniforms(rng, n)))
    if isinstance(d, ProbitNormal):
        return special.ndtr(d.mu + d.sigma * special.ndtri(_open_uniforms(rng, n)))
    if isinstance(d, Mirrored):
        return 1.0 - _draw(d.base, n, rng)
    if isinstance(d, TwoComponentMixture):
        first = rng.random(n) < d.w1
        a = _draw(d.comp1, n, rng)
        b = _draw(d.comp2, n, rng)
        return np.where(first, a, b)
    if d.has_ppf:
        return np.asarray(d.ppf(_open_uniforms(rng, n)), dtype=float)
    raise DomainError(f"no sampler for {type(d).__name__}")


def sample_risks(d: Distribution, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` risks from ``d``; identical seeds give identical samples.

    Beta uses a ratio of gamma variates; the normal-link families transform
    inverse-CDF normals.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    return _draw(d, int(n), make_rng(seed, _RISK_STREAM))


def simulate_outcomes(risks, seed: int) -> np.ndarray:
    """Bernoulli(risk) outcomes as an int8 array."""
    risks = np.asarray(risks, dtype=float)
    if np.any(~(risks >= 0.0) | ~(risks <= 1.0)):
        raise DomainError("risks must lie in [0, 1]")
    u = make_rng(seed, _OUTCOME_STREAM).random(risks.shape)
    return (u < risks).astype(np.int8)


def empirical_cstat(risks, outcomes) -> float:
    """Mann-Whitney c-statistic with ties counted one half."""
    risks = np.asarray(risks, dtype=float)
    y = np.asarray(outcomes).astype(bool)
    if risks.shape != y.shape:
        raise ValueError("risks and outcomes must have the same length")
    n1 = int(y.sum())
    n0 = y.size - n1
    if n1 == 0 or n0 == 0:
        raise DomainError("c-statistic is undefined without both cases and controls")
    ranks = rankdata(risks)
    u = ranks[y].sum() - n1 * (n1 + 1) / 2.0
    return float(u / (n1 * n0))


@dataclass(frozen=True)
class SimGrid:
    m_values: Sequence[float]
    c_values: Sequence[float]
    families: Sequence[str] = ("beta", "logitnorm", "probitnorm")
    se_target: float = 0.001
    base_seed: int = 0

    def cells(self) -> list[tuple[str, int, float, int, float]]:
        return [
            (fam, i, float(m), j, float(c))
            for fam in self.families
            for i, m in enumerate(self.m_values)
            for j, c in enumerate(self.c_values)
        ]


@dataclass(frozen=True)
class SimCell:
    family: str
    m: float
    c: float
    p1: float
    p2: float
    n: int
    m_hat: float
    c_hat: float
    dm: float
    dc: float
    converged: bool
    seed: int
    risk_mean: float = math.nan
    error: Optional[str] = field(default=None, compare=False)

    def row(self) -> list[str]:
        return [
            self.family, repr(self.m), repr(self.c), repr(self.p1), repr(self.p2), str(self.n),
            repr(self.m_hat), repr(self.c_hat), repr(self.dm), repr(self.dc),
            "true" if self.converged else "false", str(self.seed),
        ]


def run_cell(
    family: str, m: float, c: float, se_target: float, seed: int, solver_kwargs: Optional[dict] = None
) -> SimCell:
    """Solve, sample and score one ``(family, m, c)`` cell."""
    nan = math.nan
    try:
        report = mcmap(family, m, c, **(solver_kwargs or {}))
    except RiskDistError as exc:
        return SimCell(family, m, c, nan, nan, 0, nan, nan, nan, nan, False, seed, error=str(exc))
    p1, p2 = report.params.params
    n = sample_size(m, c, se_target)
    if not report.converged:
        return SimCell(family, m, c, p1, p2, n, nan, nan, nan, nan, False, seed, error=report.warning)
    risks = sample_risks(report.params, n, seed)
    y = simulate_outcomes(risks, seed)
    m_hat = float(y.mean())
    c_hat = empirical_cstat(risks, y)
    return SimCell(family, m, c, p1, p2, n, m_hat, c_hat, m_hat - m, c_hat - c, True, seed,
                   risk_mean=float(risks.mean()))


def _run_cell_args(args):
    return run_cell(*args)


def run_grid(grid: SimGrid, jobs: int = 1, solver_kwargs: Optional[dict] = None) -> list[SimCell]:
    """Run every cell of ``grid``; output order is (family, m, c) whatever ``jobs`` is."""
    check_positive("se_target", grid.se_target)
    for m in grid.m_values:
        for c in grid.c_values:
            check_mean_cstat(m, c)
    tasks = [
        (fam, m, c, grid.se_target, cell_seed(grid.base_seed, fam, i, j), solver_kwargs)
        for fam, i, m, j, c in grid.cells()
    ]
    if jobs <= 1:
        return [_run_cell_args(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_cell_args, tasks, chunksize=1))


def write_csv(cells: Iterable[SimCell], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for cell in cells:
        writer.writerow(cell.row())


def to_csv(cells: Iterable[SimCell]) -> str:
    buf = io.StringIO()
    write_csv(cells, buf)
    return buf.getvalue()


def frange(start: float, stop: float, step: float) -> list[float]:
    """Inclusive decimal grid, rounded to the step's precision so that the
    points print cleanly (0.01, 0.02, ... rather than 0.030000000000000002)."""
    if step <= 0:
        raise DomainError("step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    digits = max(0, -math.floor(math.log10(step)) + 6)
    return [round(start + k * step, digits) for k in range(count)]


FULL_M = frange(0.01, 0.50, 0.01)
FULL_C = frange(0.51, 0.99, 0.01)
DESK_M = [0.1, 0.3, 0.5]
DESK_C = [0.6, 0.75, 0.9]
