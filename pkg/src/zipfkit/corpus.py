"""Loading and tokenizing transliterated texts.

Texts are plain Latin transliterations in which words are delimited by a
separator string (``:`` by default, mirroring the colon-like word divider of
the cursive script) and/or whitespace.  Lines whose first non-blank character
is ``#`` carry editorial apparatus and are skipped.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import ConfigError, CorpusFormatError

ILLEGIBLE_MERGED = "⟨illegible⟩"


def illegible_label(k: int) -> str:
    return f"⟨illegible-{k}⟩"


class IllegiblePolicy(str, enum.Enum):
    DISTINCT = "distinct"
    MERGED = "merged"


@dataclass(frozen=True)
class Token:
    surface: str
    illegible: bool = False

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("token surface must be nonempty")
        if any(ch.isspace() for ch in self.surface):
            raise ValueError(f"token surface contains whitespace: {self.surface!r}")

    def __str__(self) -> str:
        return self.surface


@dataclass(frozen=True)
class CorpusConfig:
    separator: str = ":"
    illegible_marker: str = "?"
    illegible_policy: IllegiblePolicy = IllegiblePolicy.DISTINCT

    def __post_init__(self) -> None:
        if not self.separator:
            raise ConfigError("separator must be nonempty")
        if not self.illegible_marker:
            raise ConfigError("illegible marker must be nonempty")
        try:
            policy = IllegiblePolicy(self.illegible_policy)
        except ValueError:
            raise ConfigError(
                f"unknown illegible policy {self.illegible_policy!r}"
            ) from None
        object.__setattr__(self, "illegible_policy", policy)


@dataclass(frozen=True)
class Text:
    id: str
    raw: str
    tokens: tuple[Token, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("text id must be nonempty")
        object.__setattr__(self, "tokens", tuple(self.tokens))


class NormalizationTable(Mapping[str, str]):
    """Variant spelling -> canonical spelling.

    Canonical forms may not themselves be variants, so a single rewrite pass
    is already a fixpoint.
    """

    def __init__(self, entries: Mapping[str, str] | Iterable[tuple[str, str]] = ()):
        pairs = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        table: dict[str, str] = {}
        for variant, canonical in pairs:
            if variant in table:
                raise CorpusFormatError(f"duplicate normalization key {variant!r}")
            table[variant] = canonical
        chained = sorted(c for c in table.values() if c in table)
        if chained:
            raise CorpusFormatError(
                f"canonical forms are also variants (chains): {', '.join(chained)}"
            )
        self._table = table

    def __getitem__(self, key: str) -> str:
        return self._table[key]

    def __iter__(self):
        return iter(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def __repr__(self) -> str:
        return f"NormalizationTable({self._table!r})"

    @classmethod
    def from_file(cls, path: str | Path) -> "NormalizationTable":
        """Read ``variant<TAB>canonical`` lines; blank and ``#`` lines are skipped."""
        text = _read_text(Path(path))
        pairs = []
        for lineno, line in enumerate(text.splitlines(), 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                raise CorpusFormatError(
                    f"{path}:{lineno}: expected 'variant<TAB>canonical', got {line!r}"
                )
            pairs.append((parts[0].strip(), parts[1].strip()))
        return cls(pairs)


def tokenize(raw: str, cfg: CorpusConfig | None = None) -> list[Token]:
    cfg = cfg or CorpusConfig()
    tokens: list[Token] = []
    for line in raw.splitlines():
        if line.lstrip().startswith("#"):
            continue
        for chunk in line.split(cfg.separator):
            for fragment in chunk.split():
                tokens.append(Token(fragment, cfg.illegible_marker in fragment))
    return tokens


def normalize(tokens: Sequence[Token], table: Mapping[str, str]) -> list[Token]:
    out = []
    for tok in tokens:
        if not tok.illegible and tok.surface in table:
            tok = replace(tok, surface=table[tok.surface])
        out.append(tok)
    return out


def apply_illegible_policy(
    tokens: Sequence[Token], cfg: CorpusConfig | None = None
) -> list[Token]:
    cfg = cfg or CorpusConfig()
    out = []
    k = 0
    for tok in tokens:
        if tok.illegible:
            if cfg.illegible_policy is IllegiblePolicy.MERGED:
                tok = Token(ILLEGIBLE_MERGED, True)
            else:
                k += 1
                tok = Token(illegible_label(k), True)
        out.append(tok)
    return out


def _read_text(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(f"{path}: not valid UTF-8 ({exc.reason})") from exc


def load_text(path: str | Path, cfg: CorpusConfig | None = None) -> Text:
    """Read one corpus file; the text id is the file stem."""
    path = Path(path)
    raw = _read_text(path)
    return Text(id=path.stem, raw=raw, tokens=tuple(tokenize(raw, cfg)))


def join_tokens(tokens: Iterable[Token], cfg: CorpusConfig | None = None) -> str:
    cfg = cfg or CorpusConfig()
    return f" {cfg.separator} ".join(t.surface for t in tokens)
