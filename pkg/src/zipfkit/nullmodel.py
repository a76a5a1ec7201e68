"""Random-text ("monkey typing") null model and log-log diagnostics.

Characters are drawn i.i.d.: a space with probability ``space_prob``,
otherwise one of ``alphabet_size`` equiprobable letters.  Words are the
maximal runs of letters.

Randomness comes from numpy's PCG64 bit generator seeded with the integer
seed, consumed as one double per character via ``Generator.random``:
u < space_prob gives a space, otherwise the letter index is
floor((u - space_prob) / (1 - space_prob) * alphabet_size).
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Union

import numpy as np

from .corpus import Token
from .errors import ConfigError, DegenerateInputError
from .rankfreq import FrequencySpectrum, RankFrequencyTable

_BASE_ALPHABET = string.ascii_lowercase + string.ascii_uppercase + string.digits


def alphabet(size: int) -> str:
    if size <= len(_BASE_ALPHABET):
        return _BASE_ALPHABET[:size]
    extra = size - len(_BASE_ALPHABET)
    return _BASE_ALPHABET + "".join(chr(0x100 + k) for k in range(extra))


@dataclass(frozen=True)
class MonkeyConfig:
    alphabet_size: int = 26
    space_prob: float = 0.18
    length: int = 1_000_000
    seed: int = 42

    def __post_init__(self) -> None:
        if not 0.0 < self.space_prob < 1.0:
            raise ConfigError(f"space probability must lie in (0, 1), got {self.space_prob}")
        if self.alphabet_size < 1:
            raise ConfigError(f"alphabet size must be >= 1, got {self.alphabet_size}")
        if self.length < 1:
            raise ConfigError(f"text length must be >= 1, got {self.length}")


@dataclass(frozen=True)
class SpectrumDiagnostics:
    slope: float
    intercept: float
    r2: float
    points_used: int


@dataclass(frozen=True)
class SpectrumComparison:
    real: SpectrumDiagnostics
    monkey: SpectrumDiagnostics
    real_spectrum: FrequencySpectrum
    monkey_spectrum: FrequencySpectrum


def generate_monkey_chars(cfg: MonkeyConfig) -> str:
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    u = rng.random(cfg.length)
    space = u < cfg.space_prob
    idx = np.floor((u - cfg.space_prob) / (1.0 - cfg.space_prob) * cfg.alphabet_size)
    idx = np.clip(idx, 0, cfg.alphabet_size - 1).astype(np.int64) + 1
    idx[space] = 0
    symbols = np.array([" "] + list(alphabet(cfg.alphabet_size)))
    return "".join(symbols[idx].tolist())


def generate_monkey_text(cfg: MonkeyConfig) -> list[Token]:
    return [Token(w) for w in generate_monkey_chars(cfg).split(" ") if w]


def loglog_regression(
    data: Union[RankFrequencyTable, FrequencySpectrum],
) -> SpectrumDiagnostics:
    """OLS of ln y on ln x: rank vs frequency, or frequency vs P(f)."""
    if isinstance(data, RankFrequencyTable):
        x = np.arange(1, data.V + 1, dtype=float)
        y = data.frequencies
    else:
        x = np.array(list(data.P.keys()), dtype=float)
        y = np.array(list(data.P.values()), dtype=float)
    keep = (y > 0) & (x > 0)
    x, y = np.log(x[keep]), np.log(y[keep])
    if len(x) < 2 or np.ptp(x) == 0:
        raise DegenerateInputError(f"log-log regression needs >= 2 distinct points, got {len(x)}")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - float(np.sum(resid ** 2)) / ss_tot
    return SpectrumDiagnostics(float(slope), float(intercept), min(1.0, max(0.0, r2)), int(len(x)))


def compare_spectra(real: FrequencySpectrum, monkey: FrequencySpectrum) -> SpectrumComparison:
    for label, spec in (("real", real), ("monkey", monkey)):
        if not spec.spectrum:
            raise DegenerateInputError(f"{label} spectrum is empty")
    return SpectrumComparison(loglog_regression(real), loglog_regression(monkey), real, monkey)
