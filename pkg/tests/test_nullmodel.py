import math

import numpy as np
import pytest

from zipfkit.errors import ConfigError, DegenerateInputError
from zipfkit.fitting import chisq_from_counts
from zipfkit.nullmodel import (
    MonkeyConfig,
    compare_spectra,
    generate_monkey_chars,
    generate_monkey_text,
    loglog_regression,
)
from zipfkit.rankfreq import build_rank_frequency, count_types, frequency_spectrum, table_from_frequencies

from conftest import GOLDEN


@pytest.fixture(scope="module")
def big_text():
    return generate_monkey_text(MonkeyConfig(26, 0.18, 1_000_000, 42))


def test_deterministic():
    cfg = MonkeyConfig(alphabet_size=1, space_prob=0.5, length=8, seed=7)
    assert generate_monkey_text(cfg) == generate_monkey_text(cfg)


def test_seed_matters():
    a = generate_monkey_chars(MonkeyConfig(26, 0.18, 2000, 1))
    b = generate_monkey_chars(MonkeyConfig(26, 0.18, 2000, 2))
    assert a != b


@pytest.mark.parametrize("p", [0.0, 1.0, 1.2, -0.1])
def test_bad_space_prob(p):
    with pytest.raises(ConfigError):
        MonkeyConfig(space_prob=p)


def test_alphabet_respected():
    chars = generate_monkey_chars(MonkeyConfig(3, 0.3, 5000, 9))
    assert set(chars) == {" ", "a", "b", "c"}


def test_large_alphabet():
    toks = generate_monkey_text(MonkeyConfig(100, 0.2, 20_000, 9))
    assert len({ch for t in toks for ch in t.surface}) == 100


def test_tokens_clean(big_text):
    assert all(t.surface and " " not in t.surface for t in big_text)


def test_mean_word_length(big_text):
    # nonempty runs are geometric on {1, 2, ...}: mean 1/p, variance (1-p)/p^2
    p = 0.18
    lengths = np.array([len(t.surface) for t in big_text])
    sigma = math.sqrt((1 - p) / p**2 / len(lengths))
    assert abs(lengths.mean() - 1 / p) <= 3 * sigma


def test_letters_per_gap():
    # counting empty runs too, letters per space-delimited run -> (1-p)/p
    p, n = 0.18, 1_000_000
    chars = generate_monkey_chars(MonkeyConfig(26, p, n, 42))
    runs = chars.split(" ")
    letters = sum(len(r) for r in runs)
    # letters/runs ~ letters/spaces; delta-method sd of a ratio of binomial counts
    ratio = letters / len(runs)
    sigma = math.sqrt((1 - p) / (n * p**3))
    assert abs(ratio - (1 - p) / p) <= 3 * sigma


def test_word_length_geometric(big_text):
    p = 0.18
    lengths = np.bincount([len(t.surface) for t in big_text])[1:]
    k = np.arange(1, len(lengths) + 1)
    expected = len(big_text) * (1 - p) ** (k - 1) * p
    gof = chisq_from_counts(lengths, expected, min_expected=5.0)
    assert gof.p > 0.001


def test_regression_exact_line():
    # 144 / z**2 is integer-valued for z = 1..4
    diag = loglog_regression(table_from_frequencies([144, 36, 16, 9]))
    assert diag.slope == pytest.approx(-2.0, abs=1e-12)
    assert diag.intercept == pytest.approx(math.log(144), abs=1e-12)
    assert diag.r2 == pytest.approx(1.0, abs=1e-12)
    assert diag.points_used == 4


def test_regression_single_point():
    with pytest.raises(DegenerateInputError):
        loglog_regression(build_rank_frequency({"a": 5}))


def test_rem1003_spectrum_slope_negative(rem1003):
    assert loglog_regression(frequency_spectrum(rem1003)).slope < 0


def test_compare_identical(rem1003):
    spec = frequency_spectrum(rem1003)
    cmp = compare_spectra(spec, spec)
    assert cmp.real == cmp.monkey


def test_compare_empty_monkey(rem1003):
    with pytest.raises(DegenerateInputError):
        compare_spectra(frequency_spectrum(rem1003), frequency_spectrum(build_rank_frequency({})))


def test_compare_golden(rem1003, big_text):
    monkey = frequency_spectrum(build_rank_frequency(count_types(big_text)))
    cmp = compare_spectra(frequency_spectrum(rem1003), monkey)
    lines = [
        f"{label}\t{d.slope:.6f}\t{d.intercept:.6f}\t{d.r2:.6f}\t{d.points_used}"
        for label, d in (("rem1003", cmp.real), ("monkey", cmp.monkey))
    ]
    golden = (GOLDEN / "compare_rem1003_monkey_seed42.tsv").read_text(encoding="utf-8").splitlines()
    assert lines == golden
