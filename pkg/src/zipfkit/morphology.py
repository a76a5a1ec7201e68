"""Suffix-expansion segmentation of bound morphemes.

A rule maps a token-final ``pattern`` to the sequence of morphemes it is split
into, e.g. ``telowi -> te lo wi``.  Rules are tried longest pattern first and
at most one rule fires per token; whatever precedes the matched suffix is kept
as the stem (dropped if empty).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import Token
from .errors import RuleValidationError


@dataclass(frozen=True)
class MorphemeRule:
    pattern: str
    expansion: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "expansion", tuple(self.expansion))
        if not self.pattern:
            raise RuleValidationError("rule pattern must be nonempty")
        if not self.expansion or any(not m for m in self.expansion):
            raise RuleValidationError(
                f"rule {self.pattern!r}: expansion must be a nonempty list of nonempty morphemes"
            )
        if "".join(self.expansion) != self.pattern:
            raise RuleValidationError(
                f"rule {self.pattern!r} -> {' + '.join(self.expansion)}: "
                f"morphemes concatenate to {''.join(self.expansion)!r}"
            )


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[MorphemeRule, ...] = ()

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def match(self, surface: str) -> MorphemeRule | None:
        for rule in self.rules:
            if surface.endswith(rule.pattern):
                return rule
        return None


def compile_rules(entries: Iterable[tuple[str, Sequence[str]]]) -> RuleSet:
    rules = []
    seen: set[str] = set()
    for pattern, expansion in entries:
        rule = MorphemeRule(pattern, tuple(expansion))
        if rule.pattern in seen:
            raise RuleValidationError(f"duplicate rule pattern {rule.pattern!r}")
        seen.add(rule.pattern)
        rules.append(rule)
    rules.sort(key=lambda r: (-len(r.pattern), r.pattern))
    return RuleSet(tuple(rules))


def parse_rules(text: str, source: str = "<rules>") -> RuleSet:
    """Parse ``pattern<TAB>seg1 seg2 ...`` lines into a RuleSet."""
    entries = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        pattern, sep, rest = stripped.partition("\t")
        if not sep or not rest.split():
            raise RuleValidationError(
                f"{source}:{lineno}: expected 'pattern<TAB>seg1 seg2 ...', got {line!r}"
            )
        entries.append((pattern.strip(), rest.split()))
    return compile_rules(entries)


def load_rules(path: str | Path) -> RuleSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise RuleValidationError(f"{path}: not valid UTF-8") from exc
    return parse_rules(text, str(path))


@lru_cache(maxsize=None)
def default_rules() -> RuleSet:
    """The shipped table: the six bound morphemes and their compound suffixes."""
    text = resources.files("zipfkit").joinpath("data/default_rules.tsv").read_text("utf-8")
    return parse_rules(text, "default_rules.tsv")


def segment_token(token: Token | str, rules: RuleSet) -> list[str]:
    if isinstance(token, str):
        token = Token(token)
    if token.illegible:
        return [token.surface]
    rule = rules.match(token.surface)
    if rule is None:
        return [token.surface]
    stem = token.surface[: len(token.surface) - len(rule.pattern)]
    return ([stem] if stem else []) + list(rule.expansion)


def segment_text(tokens: Sequence[Token], rules: RuleSet) -> list[Token]:
    out: list[Token] = []
    for tok in tokens:
        if tok.illegible:
            out.append(tok)
            continue
        out.extend(Token(piece) for piece in segment_token(tok, rules))
    return out
