"""Regularized incomplete gamma and the chi-square survival function."""

from __future__ import annotations

import math

from .errors import DomainError

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 100_000


def _lower_series(s: float, x: float) -> float:
    """P(s, x) by its power series; converges fast for x < s + 1."""
    ap = s
    term = total = 1.0 / s
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + s * math.log(x) - math.lgamma(s))


def _upper_continued_fraction(s: float, x: float) -> float:
    """Q(s, x) by modified Lentz evaluation of the continued fraction."""
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + s * math.log(x) - math.lgamma(s)) * h


def gammaincc(s: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s)."""
    if s <= 0:
        raise DomainError(f"shape must be positive, got {s}")
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    if x == 0:
        return 1.0
    if x < s + 1.0:
        return min(1.0, max(0.0, 1.0 - _lower_series(s, x)))
    return min(1.0, max(0.0, _upper_continued_fraction(s, x)))


def chi_square_sf(x: float, df: int) -> float:
    """P(X >= x) for a chi-square variable with ``df`` degrees of freedom."""
    if x < 0 or math.isnan(x):
        raise DomainError(f"chi-square statistic must be >= 0, got {x}")
    if df < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {df}")
    return gammaincc(df / 2.0, x / 2.0)
