"""Input validation helpers."""
from __future__ import annotations

import math

from .exceptions import DomainError

EXTREME_C_LOW = 0.51
EXTREME_C_HIGH = 0.99


def check_probability(name: str, value, *, open_interval: bool = True) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {value!r}") from None
    ok = (0.0 < v < 1.0) if open_interval else (0.0 <= v <= 1.0)
    if not ok:
        bounds = "(0, 1)" if open_interval else "[0, 1]"
        raise DomainError(f"{name} must lie in {bounds}, got {v!r}")
    return v


def check_positive(name: str, value) -> float:
    v = float(value)
    if not (math.isfinite(v) and v > 0.0):
        raise DomainError(f"{name} must be finite and positive, got {v!r}")
    return v


def check_mean_cstat(m, c) -> tuple[float, float]:
    """Validate a (mean, c-statistic) pair for mapping.

    The c-statistic must lie strictly between 0.5 and 1: 0.5 means no spread
    in risks and 1 means complete separation. Values below 0.5 are rejected
    rather than silently label-flipped.
    """
    m = check_probability("mean", m)
    try:
        c = float(c)
    except (TypeError, ValueError):
        raise DomainError(f"c-statistic must be a real number, got {c!r}") from None
    if not math.isfinite(c):
        raise DomainError(f"c-statistic must be finite, got {c!r}")
    if c < 0.5:
        raise DomainError(
            f"c-statistic {c!r} is below 0.5; swap the case/control labels "
            f"(use 1 - c = {1.0 - c!r}) and retry"
        )
    if c == 0.5:
        raise DomainError("c-statistic 0.5 is degenerate: it implies no variability in risks")
    if c >= 1.0:
        raise DomainError("c-statistic must be < 1; c = 1 implies complete separation")
    return m, c


def extreme_c_warning(c: float) -> str | None:
    if c < EXTREME_C_LOW or c > EXTREME_C_HIGH:
        return (
            f"c-statistic {c:g} is outside [{EXTREME_C_LOW}, {EXTREME_C_HIGH}]; "
            "the CDF may be nearly flat and the solution less reliable"
        )
    return None
