"""Zipf models, estimators and Pearson goodness of fit.

Two models are fitted to rank-frequency tables:

* the right-truncated zeta distribution, pmf(z) = z**-a / T(n, a) on ranks
  1..n, with T(n, a) the truncated zeta sum.  The normalizing constant is
  always derived from (a, n), never a free parameter.
* an unnormalized power law, expected(z) = N * C * z**-a with C free.  A
  normalized infinite zeta cannot represent a < 1, which short texts produce.

Goodness of fit pools adjacent rank classes from the sparse tail upward until
each class carries at least ``PoolingPolicy.min_expected`` expected tokens.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from .errors import DegenerateInputError, DomainError
from .rankfreq import RankFrequencyTable, TypeCounts, rank_label
from .special import chi_square_sf

log = logging.getLogger(__name__)

A_MIN, A_MAX = 0.0, 10.0
GRID_STEP = 0.01
MLE_TOL = 1e-7
_MAX_REPARTITIONS = 25
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Method(str, enum.Enum):
    MLE = "mle"
    MIN_CHISQ = "min_chisq"


@dataclass(frozen=True)
class PoolingPolicy:
    min_expected: float = 1.0

    def __post_init__(self) -> None:
        if not self.min_expected > 0:
            raise ValueError(f"min_expected must be positive, got {self.min_expected}")


def truncated_zeta_normalizer(a: float, n: int) -> float:
    """T(n, a) = sum of z**-a for z = 1..n, smallest terms added first."""
    if n < 1:
        raise DomainError(f"truncation rank must be >= 1, got {n}")
    z = np.arange(n, 0, -1, dtype=float)
    return float(np.sum(z ** -a))


@dataclass(frozen=True)
class TruncatedZetaModel:
    a: float
    n: int

    free_params = 1

    def __post_init__(self) -> None:
        if self.a < 0:
            raise DomainError(f"exponent must be >= 0, got {self.a}")
        if self.n < 1:
            raise DomainError(f"truncation rank must be >= 1, got {self.n}")

    @property
    def C(self) -> float:
        return 1.0 / truncated_zeta_normalizer(self.a, self.n)

    def pmf(self, z: int) -> float:
        return truncated_zeta_pmf(self, z)

    def probabilities(self) -> np.ndarray:
        z = np.arange(1, self.n + 1, dtype=float)
        w = z ** -self.a
        return w / np.sum(w[::-1])

    def expected(self, N: int, ranks: int) -> np.ndarray:
        p = np.zeros(ranks)
        m = min(ranks, self.n)
        p[:m] = self.probabilities()[:m]
        return N * p


@dataclass(frozen=True)
class PowerLawModel:
    a: float
    C: float

    free_params = 2

    def __post_init__(self) -> None:
        if self.a < 0:
            raise DomainError(f"exponent must be >= 0, got {self.a}")
        if not self.C > 0:
            raise DomainError(f"amplitude must be positive, got {self.C}")

    def expected(self, N: int, ranks: int) -> np.ndarray:
        z = np.arange(1, ranks + 1, dtype=float)
        return N * self.C * z ** -self.a


Model = Union[TruncatedZetaModel, PowerLawModel]


def truncated_zeta_pmf(model: TruncatedZetaModel, z: int) -> float:
    if z < 1:
        raise DomainError(f"rank must be >= 1, got {z}")
    if z > model.n:
        return 0.0
    return model.C * z ** -model.a


class GoodnessOfFit(NamedTuple):
    X2: float
    df: int | None
    p: float | None
    classes: int


@dataclass(frozen=True)
class FitResult:
    model: Model
    X2: float
    df: int | None
    p: float | None
    method: Method
    pooled_classes: int
    N: int
    V: int

    @property
    def a(self) -> float:
        return self.model.a

    @property
    def C(self) -> float:
        return self.model.C


# --- pooling / Pearson statistic -------------------------------------------


def pool_classes(expected: np.ndarray, min_expected: float) -> np.ndarray:
    """Start indices of pooled classes, in ascending rank order.

    Ranks are accumulated from the tail toward rank 1; a class closes once its
    expected total reaches ``min_expected``.  A short remainder at the head is
    folded into the adjacent class.
    """
    starts: list[int] = []
    acc = 0.0
    for i in range(len(expected) - 1, -1, -1):
        acc += expected[i]
        if acc >= min_expected:
            starts.append(i)
            acc = 0.0
    if not starts:
        return np.array([0])
    if starts[-1] != 0:
        starts[-1] = 0
    return np.array(starts[::-1])


def _pearson(observed: np.ndarray, expected: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """X2 over fixed classes; ``expected`` may be a 2-D stack of candidates."""
    o = np.add.reduceat(observed, starts)
    e = np.add.reduceat(expected, starts, axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(e > 0, (o - e) ** 2 / e, np.where(o > 0, np.inf, 0.0))
    return terms.sum(axis=-1)


def _observed(table: RankFrequencyTable, ranks: int) -> np.ndarray:
    obs = np.zeros(ranks)
    obs[: table.V] = table.frequencies
    return obs


def _support(table: RankFrequencyTable, model: Model) -> int:
    if isinstance(model, TruncatedZetaModel):
        return max(table.V, model.n)
    return table.V


def pearson_gof(
    table: RankFrequencyTable,
    model: Model,
    free_params: int | None = None,
    policy: PoolingPolicy | None = None,
) -> GoodnessOfFit:
    policy = policy or PoolingPolicy()
    if free_params is None:
        free_params = model.free_params
    ranks = _support(table, model)
    expected = model.expected(table.N, ranks)
    observed = _observed(table, ranks)
    starts = pool_classes(expected, policy.min_expected)
    x2 = float(_pearson(observed, expected, starts))
    df = len(starts) - 1 - free_params
    if df < 1:
        return GoodnessOfFit(x2, None, None, len(starts))
    return GoodnessOfFit(x2, df, chi_square_sf(x2, df), len(starts))


def chisq_from_counts(observed, expected, min_expected: float = 1.0, free_params: int = 0) -> GoodnessOfFit:
    """Pearson test of arbitrary binned counts with the same tail pooling."""
    observed = np.asarray(observed, dtype=float)
    expected = np.asarray(expected, dtype=float)
    starts = pool_classes(expected, min_expected)
    x2 = float(_pearson(observed, expected, starts))
    df = len(starts) - 1 - free_params
    if df < 1:
        return GoodnessOfFit(x2, None, None, len(starts))
    return GoodnessOfFit(x2, df, chi_square_sf(x2, df), len(starts))


# --- one-dimensional search ------------------------------------------------


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float = MLE_TOL) -> float:
    """Maximizer of a unimodal ``f`` on [lo, hi] to within ``tol``."""
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
    return 0.5 * (lo + hi)


def _a_grid() -> np.ndarray:
    return np.linspace(A_MIN, A_MAX, int(round((A_MAX - A_MIN) / GRID_STEP)) + 1)


# --- truncated zeta --------------------------------------------------------


def truncated_zeta_loglik(table: RankFrequencyTable, a: float, n: int | None = None) -> float:
    """Log-likelihood up to the multinomial constant: -a*sum(f ln z) - N ln T(n, a)."""
    n = table.V if n is None else n
    z = np.arange(1, table.V + 1, dtype=float)
    s = float(np.dot(table.frequencies, np.log(z)))
    return -a * s - table.N * math.log(truncated_zeta_normalizer(a, n))


def _loglik_slope(a: float, s: float, N: int, n: int) -> float:
    z = np.arange(n, 0, -1, dtype=float)
    w = z ** -a
    return -s + N * float(np.sum(w * np.log(z))) / float(np.sum(w))


def _mle_truncated(table: RankFrequencyTable, n: int) -> float:
    z = np.arange(1, table.V + 1, dtype=float)
    s = float(np.dot(table.frequencies, np.log(z)))
    N = table.N
    # Concave objective: the sign of the slope at the ends decides boundary optima.
    if _loglik_slope(A_MIN, s, N, n) <= 1e-12 * max(1.0, abs(s)):
        return A_MIN
    if _loglik_slope(A_MAX, s, N, n) >= 0:
        return A_MAX
    logz = np.log(np.arange(n, 0, -1, dtype=float))

    def loglik(a: float) -> float:
        return -a * s - N * math.log(float(np.sum(np.exp(-a * logz))))

    return golden_section_max(loglik, A_MIN, A_MAX)


def _min_chisq(
    observed: np.ndarray,
    expected_at: Callable[[np.ndarray], np.ndarray],
    a0: float,
    policy: PoolingPolicy,
) -> float:
    """Minimize X2 over a, with the class partition held fixed during each search.

    Pooling is recomputed at the new estimate and the search repeated until
    the partition no longer changes.  Letting the partition float inside the
    search is ill-posed: large a pools everything into one class and X2 -> 0.
    """
    grid = _a_grid()
    a = a0
    starts = pool_classes(expected_at(np.array([a]))[0], policy.min_expected)
    for _ in range(_MAX_REPARTITIONS):
        x2 = _pearson(observed, expected_at(grid), starts)
        g = float(grid[int(np.argmin(x2))])
        lo, hi = max(A_MIN, g - GRID_STEP), min(A_MAX, g + GRID_STEP)
        a = golden_section_max(
            lambda t: -float(_pearson(observed, expected_at(np.array([t]))[0], starts)),
            lo,
            hi,
            tol=1e-9,
        )
        new_starts = pool_classes(expected_at(np.array([a]))[0], policy.min_expected)
        if np.array_equal(new_starts, starts):
            break
        starts = new_starts
    else:
        log.warning("class partition did not settle after %d rounds", _MAX_REPARTITIONS)
    return a


def fit_truncated_zeta(
    table: RankFrequencyTable,
    method: Method | str = Method.MLE,
    n_override: int | None = None,
    policy: PoolingPolicy | None = None,
) -> FitResult:
    method = Method(method)
    policy = policy or PoolingPolicy()
    if table.V < 2:
        raise DegenerateInputError(f"truncated zeta fit needs V >= 2, got V={table.V}")
    n = table.V if n_override is None else int(n_override)
    if n < table.V:
        raise DomainError(f"truncation rank {n} is below the observed vocabulary {table.V}")

    a = _mle_truncated(table, n)
    if method is Method.MIN_CHISQ:
        ranks = max(table.V, n)
        observed = _observed(table, ranks)
        logz = np.log(np.arange(1, n + 1, dtype=float))

        def expected_at(avals: np.ndarray) -> np.ndarray:
            w = np.exp(-np.outer(avals, logz))
            p = w / w[:, ::-1].sum(axis=1, keepdims=True)
            out = np.zeros((len(avals), ranks))
            out[:, :n] = table.N * p
            return out

        a = _min_chisq(observed, expected_at, a, policy)

    model = TruncatedZetaModel(a, n)
    gof = pearson_gof(table, model, policy=policy)
    return FitResult(model, gof.X2, gof.df, gof.p, method, gof.classes, table.N, table.V)


# --- power law -------------------------------------------------------------


def _profile_amplitude(observed: np.ndarray, shape: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """X2-optimal C for each row of ``shape`` (expected counts at C = 1).

    X2(C) = sum(o^2 / (C e)) - 2 sum(o) + C sum(e) is minimized at
    C^2 = sum(o^2 / e) / sum(e).
    """
    o = np.add.reduceat(observed, starts)
    e = np.add.reduceat(shape, starts, axis=-1)
    return np.sqrt(np.sum(o ** 2 / e, axis=-1) / np.sum(e, axis=-1))


def fit_power_law(
    table: RankFrequencyTable,
    method: Method | str = Method.MIN_CHISQ,
    policy: PoolingPolicy | None = None,
) -> FitResult:
    """Two-parameter fit of N*C*z**-a by minimum Pearson X2.

    ``method`` is accepted for interface symmetry; the amplitude is not tied
    to a likelihood, so the fit is always minimum chi-square.
    """
    if Method(method) is not Method.MIN_CHISQ:
        log.debug("power-law fit is minimum chi-square regardless of method=%s", method)
    policy = policy or PoolingPolicy()
    if table.V < 3:
        raise DegenerateInputError(f"power-law fit needs V >= 3, got V={table.V}")
    N, V = table.N, table.V
    observed = table.frequencies
    logz = np.log(np.arange(1, V + 1, dtype=float))

    slope, intercept = np.polyfit(logz, np.log(observed), 1)
    a0 = float(np.clip(-slope, A_MIN, A_MAX))
    c0 = math.exp(intercept) / N
    starts = pool_classes(N * c0 * np.exp(-a0 * logz), policy.min_expected)

    def shape_at(avals: np.ndarray) -> np.ndarray:
        return N * np.exp(-np.outer(avals, logz))

    grid = _a_grid()
    a = a0
    for _ in range(_MAX_REPARTITIONS):

        def x2_at(avals: np.ndarray) -> np.ndarray:
            shape = shape_at(avals)
            c = _profile_amplitude(observed, shape, starts)
            return _pearson(observed, c[:, None] * shape, starts)

        x2 = x2_at(grid)
        g = float(grid[int(np.argmin(x2))])
        lo, hi = max(A_MIN, g - GRID_STEP), min(A_MAX, g + GRID_STEP)
        a = golden_section_max(lambda t: -float(x2_at(np.array([t]))[0]), lo, hi, tol=1e-9)
        c = float(_profile_amplitude(observed, shape_at(np.array([a])), starts)[0])
        new_starts = pool_classes(N * c * np.exp(-a * logz), policy.min_expected)
        if np.array_equal(new_starts, starts):
            break
        starts = new_starts
    else:
        log.warning("class partition did not settle after %d rounds", _MAX_REPARTITIONS)

    model = PowerLawModel(a, c)
    gof = pearson_gof(table, model, policy=policy)
    return FitResult(model, gof.X2, gof.df, gof.p, Method.MIN_CHISQ, gof.classes, N, V)


# --- sampling --------------------------------------------------------------


def sample_truncated_zeta(model: TruncatedZetaModel, N: int, seed: int) -> TypeCounts:
    """Draw N ranks by inverting the cumulative pmf.

    Uniforms come from numpy's PCG64 generator seeded with ``seed``; a draw u
    maps to the smallest rank z with cdf(z) > u.  Counts are keyed by the
    synthetic form of the true rank.
    """
    if N <= 0:
        return TypeCounts({})
    rng = np.random.Generator(np.random.PCG64(seed))
    cdf = np.cumsum(model.probabilities())
    cdf[-1] = 1.0
    ranks = np.searchsorted(cdf, rng.random(N), side="right") + 1
    counts = np.bincount(ranks, minlength=model.n + 1)
    return TypeCounts({rank_label(z): int(c) for z, c in enumerate(counts) if z >= 1 and c > 0})
