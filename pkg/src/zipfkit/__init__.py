"""Zipf rank-frequency analysis for transliterated corpora."""

from .corpus import CorpusConfig, NormalizationTable, Text, Token, apply_illegible_policy, load_text, normalize, tokenize
from .fitting import (
    FitResult,
    Method,
    PoolingPolicy,
    PowerLawModel,
    TruncatedZetaModel,
    fit_power_law,
    fit_truncated_zeta,
    pearson_gof,
    sample_truncated_zeta,
    truncated_zeta_normalizer,
    truncated_zeta_pmf,
)
from .morphology import MorphemeRule, RuleSet, compile_rules, default_rules, segment_text, segment_token
from .nullmodel import MonkeyConfig, compare_spectra, generate_monkey_text, loglog_regression
from .rankfreq import (
    FrequencySpectrum,
    RankFrequencyTable,
    TypeCounts,
    build_rank_frequency,
    count_types,
    frequency_spectrum,
    parse_rank_table,
)
from .special import chi_square_sf

__version__ = "0.1.0"
