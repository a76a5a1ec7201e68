"""Type counts, rank-frequency tables and frequency spectra."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .corpus import Token
from .errors import DegenerateInputError, RankTableFormatError


def rank_label(rank: int) -> str:
    """Synthetic surface form for a type known only by its rank."""
    return f"⟨r{rank:05d}⟩"


@dataclass(frozen=True)
class TypeCounts:
    counts: Mapping[str, int]

    def __post_init__(self) -> None:
        counts = dict(self.counts)
        bad = [k for k, v in counts.items() if int(v) != v or v < 1]
        if bad:
            raise ValueError(f"type counts must be positive integers: {bad[:5]}")
        object.__setattr__(self, "counts", counts)

    @property
    def N(self) -> int:
        return sum(self.counts.values())

    @property
    def V(self) -> int:
        return len(self.counts)

    def __getitem__(self, form: str) -> int:
        return self.counts[form]

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class RankEntry:
    rank: int
    form: str
    frequency: int


@dataclass(frozen=True)
class RankFrequencyTable:
    entries: tuple[RankEntry, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        prev = None
        for i, e in enumerate(entries, 1):
            if e.rank != i:
                raise ValueError(f"rank {e.rank} at position {i}: ranks must be 1..V")
            if e.frequency < 1:
                raise ValueError(f"rank {e.rank}: frequency must be positive")
            if prev is not None and e.frequency > prev:
                raise ValueError(f"rank {e.rank}: frequencies must be non-increasing")
            prev = e.frequency

    @property
    def N(self) -> int:
        return sum(e.frequency for e in self.entries)

    @property
    def V(self) -> int:
        return len(self.entries)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([e.frequency for e in self.entries], dtype=float)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class FrequencySpectrum:
    """V(f), the number of types seen exactly f times, and P(f) = V(f)/V."""

    spectrum: dict[int, int]
    P: dict[int, float]

    def __post_init__(self) -> None:
        if abs(sum(self.P.values()) - 1.0) > 1e-12:
            raise ValueError("spectrum probabilities do not sum to one")

    @property
    def V(self) -> int:
        return sum(self.spectrum.values())

    @property
    def N(self) -> int:
        return sum(f * v for f, v in self.spectrum.items())


def count_types(tokens: Iterable[Token | str]) -> TypeCounts:
    return TypeCounts(Counter(t.surface if isinstance(t, Token) else t for t in tokens))


def build_rank_frequency(counts: TypeCounts | Mapping[str, int]) -> RankFrequencyTable:
    """Rank types by descending count; ties go to the lexicographically smaller form."""
    if isinstance(counts, TypeCounts):
        counts = counts.counts
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return RankFrequencyTable(
        tuple(RankEntry(i, form, int(f)) for i, (form, f) in enumerate(ordered, 1))
    )


def table_from_frequencies(freqs: Iterable[int]) -> RankFrequencyTable:
    """Rank table with synthetic forms from a non-increasing frequency list."""
    return RankFrequencyTable(
        tuple(RankEntry(i, rank_label(i), int(f)) for i, f in enumerate(freqs, 1))
    )


def frequency_spectrum(table: RankFrequencyTable) -> FrequencySpectrum:
    if table.V == 0:
        raise DegenerateInputError("frequency spectrum of an empty table is undefined")
    spec = Counter(e.frequency for e in table.entries)
    spectrum = {f: spec[f] for f in sorted(spec)}
    V = table.V
    P = {f: v / V for f, v in spectrum.items()}
    return FrequencySpectrum(spectrum, P)


def parse_rank_rows(rows: Iterable[tuple[int, int, int]], source: str = "<rows>") -> RankFrequencyTable:
    freqs: list[int] = []
    expected = 1
    prev_f = None
    for lo, hi, f in rows:
        if lo != expected:
            kind = "gap" if lo > expected else "overlap"
            raise RankTableFormatError(
                f"{source}: rank range {lo}-{hi} leaves a {kind} (expected rank {expected})"
            )
        if hi < lo:
            raise RankTableFormatError(f"{source}: empty rank range {lo}-{hi}")
        if f < 1:
            raise RankTableFormatError(f"{source}: frequency {f} must be positive")
        if prev_f is not None and f > prev_f:
            raise RankTableFormatError(
                f"{source}: frequency rises from {prev_f} to {f} at rank {lo}"
            )
        freqs.extend([f] * (hi - lo + 1))
        expected = hi + 1
        prev_f = f
    return table_from_frequencies(freqs)


def parse_rank_table(path: str | Path) -> RankFrequencyTable:
    """Load a run-length fixture: ``rank_from<TAB>rank_to<TAB>frequency`` per line."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise RankTableFormatError(f"{path}: not valid UTF-8") from exc
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        try:
            lo, hi, f = (int(p) for p in parts)
        except ValueError:
            raise RankTableFormatError(
                f"{path}:{lineno}: expected three integers, got {line!r}"
            ) from None
        rows.append((lo, hi, f))
    return parse_rank_rows(rows, str(path))
