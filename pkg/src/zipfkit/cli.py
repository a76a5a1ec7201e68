"""Command-line front end: ``zipfkit analyze`` and ``zipfkit monkey``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .corpus import CorpusConfig, IllegiblePolicy, NormalizationTable, apply_illegible_policy, load_text, normalize
from .errors import ConfigError, DegenerateInputError, ZipfkitError
from .fitting import FitResult, Method, PoolingPolicy, fit_power_law, fit_truncated_zeta
from .morphology import RuleSet, default_rules, load_rules, segment_text
from .nullmodel import MonkeyConfig, SpectrumDiagnostics, compare_spectra, generate_monkey_text, loglog_regression
from .rankfreq import RankFrequencyTable, build_rank_frequency, count_types, frequency_spectrum, parse_rank_table

log = logging.getLogger("zipfkit")

EXIT_OK, EXIT_PARTIAL, EXIT_CONFIG = 0, 1, 2

VARIANTS = ("normal", "bm")
MODELS = ("power_law", "truncated_zeta")
_MODEL_ALIASES = {
    "power": "power_law",
    "power_law": "power_law",
    "zeta": "power_law",
    "truncated": "truncated_zeta",
    "truncated_zeta": "truncated_zeta",
}
SUMMARY_COLUMNS = ("text_id", "variant", "N", "V", "model", "method", "a", "C", "X2", "df", "p")


@dataclass
class RunConfig:
    inputs: list[Path]
    output_dir: Path
    input_kind: str = "corpus"
    variants: tuple[str, ...] = VARIANTS
    models: tuple[str, ...] = ("truncated_zeta",)
    method: Method = Method.MLE
    rule_file: Path | None = None
    norm_file: Path | None = None
    pooling: PoolingPolicy = field(default_factory=PoolingPolicy)
    corpus_cfg: CorpusConfig = field(default_factory=CorpusConfig)
    precision: int = 2

    def __post_init__(self) -> None:
        if not self.inputs:
            raise ConfigError("no input files given")
        if self.input_kind not in ("corpus", "rank_table"):
            raise ConfigError(f"unknown input kind {self.input_kind!r}")
        bad = [v for v in self.variants if v not in VARIANTS]
        if bad or not self.variants:
            raise ConfigError(f"variants must be drawn from {VARIANTS}, got {self.variants}")
        bad = [m for m in self.models if m not in MODELS]
        if bad or not self.models:
            raise ConfigError(f"models must be drawn from {MODELS}, got {self.models}")
        self.method = Method(self.method)
        # fixed order keeps output deterministic whatever order flags came in
        self.variants = tuple(v for v in VARIANTS if v in self.variants)
        self.models = tuple(m for m in MODELS if m in self.models)
        if self.precision < 0:
            raise ConfigError("precision must be non-negative")


@dataclass(frozen=True)
class SummaryRow:
    text_id: str
    variant: str
    N: int
    V: int
    model: str
    method: str
    a: float | None
    C: float | None
    X2: float | None
    df: int | None
    p: float | None

    def format(self, precision: int = 2) -> str:
        def num(x: float | None) -> str:
            return "NA" if x is None else f"{x:.{precision}f}"

        return "\t".join(
            [
                self.text_id,
                self.variant,
                str(self.N),
                str(self.V),
                self.model,
                self.method,
                num(self.a),
                num(self.C),
                num(self.X2),
                "NA" if self.df is None else str(self.df),
                num(self.p),
            ]
        )


def fit_model(table: RankFrequencyTable, model: str, method: Method, pooling: PoolingPolicy) -> FitResult:
    if model == "truncated_zeta":
        return fit_truncated_zeta(table, method, policy=pooling)
    return fit_power_law(table, method, policy=pooling)


def emit_plot_data(table: RankFrequencyTable, fit: FitResult, path: str | Path) -> Path:
    """Write ``rank observed expected`` rows for log-log plotting."""
    if table.V == 0:
        raise DegenerateInputError("cannot emit plot data for an empty table")
    path = Path(path)
    expected = fit.model.expected(table.N, table.V)
    lines = ["rank\tobserved\texpected"]
    lines += [f"{e.rank}\t{e.frequency}\t{x:.6f}" for e, x in zip(table.entries, expected)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _rank_table_paths(path: Path) -> tuple[str, dict[str, Path]]:
    """Text id plus the normal/bm sibling files of a rank-table fixture.

    ``rem1003.tsv`` pairs with ``rem1003-bm.tsv``; either may be given.
    """
    stem = path.stem
    base = stem[:-3] if stem.lower().endswith("-bm") else stem
    return base, {
        "normal": path.with_name(base + path.suffix),
        "bm": path.with_name(base + "-bm" + path.suffix),
    }


def _corpus_tables(path: Path, cfg: RunConfig, rules: RuleSet, norm: NormalizationTable | None):
    text = load_text(path, cfg.corpus_cfg)
    tokens = list(text.tokens)
    if norm is not None:
        tokens = normalize(tokens, norm)
    tokens = apply_illegible_policy(tokens, cfg.corpus_cfg)
    tables = {}
    for variant in cfg.variants:
        variant_tokens = segment_text(tokens, rules) if variant == "bm" else tokens
        tables[variant] = build_rank_frequency(count_types(variant_tokens))
    return text.id, tables


def run_analyze(cfg: RunConfig) -> int:
    rules = load_rules(cfg.rule_file) if cfg.rule_file else default_rules()
    norm = NormalizationTable.from_file(cfg.norm_file) if cfg.norm_file else None

    out = Path(cfg.output_dir)
    plots = out / "plots"
    plots.mkdir(parents=True, exist_ok=True)

    rows: list[SummaryRow] = []
    failures = 0
    for path in cfg.inputs:
        path = Path(path)
        try:
            if cfg.input_kind == "corpus":
                text_id, tables = _corpus_tables(path, cfg, rules, norm)
            else:
                text_id, siblings = _rank_table_paths(path)
                tables = {v: parse_rank_table(siblings[v]) for v in cfg.variants}
        except (OSError, ZipfkitError) as exc:
            log.error("%s: %s", path, exc)
            failures += 1
            continue

        for variant in cfg.variants:
            table = tables[variant]
            for model in cfg.models:
                try:
                    fit = fit_model(table, model, cfg.method, cfg.pooling)
                except DegenerateInputError as exc:
                    log.warning("%s [%s, %s]: %s", text_id, variant, model, exc)
                    rows.append(SummaryRow(text_id, variant, table.N, table.V, model,
                                           cfg.method.value, None, None, None, None, None))
                    continue
                rows.append(SummaryRow(text_id, variant, table.N, table.V, model,
                                       fit.method.value, fit.a, fit.C, fit.X2, fit.df, fit.p))
                emit_plot_data(table, fit, plots / f"{text_id}_{variant}_{model}.tsv")

    lines = ["\t".join(SUMMARY_COLUMNS)] + [r.format(cfg.precision) for r in rows]
    (out / "summary.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_PARTIAL if failures else EXIT_OK


def _diag_line(label: str, d: SpectrumDiagnostics) -> str:
    return f"{label}\t{d.slope:.6f}\t{d.intercept:.6f}\t{d.r2:.6f}\t{d.points_used}"


def _write_spectrum(spec, path: Path) -> None:
    lines = ["frequency\ttypes\tprobability"]
    lines += [f"{f}\t{v}\t{spec.P[f]:.10f}" for f, v in spec.spectrum.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def run_monkey(cfg: MonkeyConfig, compare_to: str | Path | None, output_dir: str | Path) -> int:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    real = parse_rank_table(compare_to) if compare_to else None

    table = build_rank_frequency(count_types(generate_monkey_text(cfg)))
    spectrum = frequency_spectrum(table)

    lines = ["rank\tfrequency"] + [f"{e.rank}\t{e.frequency}" for e in table.entries]
    (out / "monkey_rank.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_spectrum(spectrum, out / "monkey_spectrum.tsv")

    header = "series\tslope\tintercept\tr2\tpoints_used"
    diag = [header, _diag_line("rank_frequency", loglog_regression(table)),
            _diag_line("spectrum", loglog_regression(spectrum))]
    (out / "monkey_diagnostics.tsv").write_text("\n".join(diag) + "\n", encoding="utf-8")

    if real is not None:
        real_spectrum = frequency_spectrum(real)
        _write_spectrum(real_spectrum, out / "real_spectrum.tsv")
        cmp = compare_spectra(real_spectrum, spectrum)
        real_id = _rank_table_paths(Path(compare_to))[0]
        lines = ["source\tslope\tintercept\tr2\tpoints_used",
                 _diag_line(real_id, cmp.real), _diag_line("monkey", cmp.monkey)]
        (out / "comparison.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def _csv(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zipfkit", description="Zipf rank-frequency analysis of transliterated corpora.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="fit Zipf models to corpora or rank tables")
    a.add_argument("--input", nargs="+", default=[], type=Path, metavar="PATH")
    a.add_argument("--kind", choices=["corpus", "rank-table"], default="corpus")
    a.add_argument("--variants", type=_csv, default=["normal", "bm"])
    a.add_argument("--model", type=_csv, default=["truncated"], help="truncated,power")
    a.add_argument("--method", choices=["mle", "min-chisq"], default="mle")
    a.add_argument("--rules", type=Path, help="morpheme rule file (pattern<TAB>seg seg ...)")
    a.add_argument("--norm", type=Path, help="spelling normalization file (variant<TAB>canonical)")
    a.add_argument("--separator", default=":")
    a.add_argument("--illegible-marker", default="?")
    a.add_argument("--illegible-policy", choices=[p.value for p in IllegiblePolicy], default="distinct")
    a.add_argument("--pool-min", type=float, default=1.0, help="minimum expected count per pooled class")
    a.add_argument("--precision", type=int, default=2, help="decimals for a, C, X2, p")
    a.add_argument("--out", type=Path, required=True)

    m = sub.add_parser("monkey", help="random-text null model")
    m.add_argument("--alphabet", type=int, default=26)
    m.add_argument("--space-prob", type=float, default=0.18)
    m.add_argument("--chars", type=int, default=1_000_000)
    m.add_argument("--seed", type=int, default=42)
    m.add_argument("--compare", type=Path, help="rank-table fixture to compare against")
    m.add_argument("--out", type=Path, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "analyze":
            models = []
            for name in args.model:
                if name not in _MODEL_ALIASES:
                    raise ConfigError(f"unknown model {name!r}")
                models.append(_MODEL_ALIASES[name])
            cfg = RunConfig(
                inputs=list(args.input),
                output_dir=args.out,
                input_kind=args.kind.replace("-", "_"),
                variants=tuple(args.variants),
                models=tuple(models),
                method=Method(args.method.replace("-", "_")),
                rule_file=args.rules,
                norm_file=args.norm,
                pooling=PoolingPolicy(args.pool_min),
                corpus_cfg=CorpusConfig(args.separator, args.illegible_marker, args.illegible_policy),
                precision=args.precision,
            )
            return run_analyze(cfg)
        cfg = MonkeyConfig(args.alphabet, args.space_prob, args.chars, args.seed)
        return run_monkey(cfg, args.compare, args.out)
    except (ConfigError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
