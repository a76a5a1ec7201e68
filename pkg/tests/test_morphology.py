import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zipfkit.corpus import Token
from zipfkit.errors import RuleValidationError
from zipfkit.morphology import (
    RuleSet,
    compile_rules,
    default_rules,
    load_rules,
    segment_text,
    segment_token,
)
from zipfkit.rankfreq import count_types

SHIPPED = {
    "lowi": ("lo", "wi"),
    "telowi": ("te", "lo", "wi"),
    "teli": ("te", "li"),
    "lebkwi": ("lebk", "wi"),
    "atomhe": ("ato", "mhe"),
    "atmhe": ("at", "mhe"),
    "qowi": ("qo", "wi"),
    "qo": ("qo",),
    "lo": ("lo",),
    "li": ("li",),
    "lw": ("lw",),
    "te": ("te",),
    "mhe": ("mhe",),
}


def test_default_table_contents():
    rules = default_rules()
    assert {r.pattern: r.expansion for r in rules} == SHIPPED
    lengths = [len(r.pattern) for r in rules]
    assert lengths == sorted(lengths, reverse=True)


def test_compile_single_rule():
    assert len(compile_rules([("lowi", ["lo", "wi"])])) == 1


def test_compile_rejects_mismatch():
    with pytest.raises(RuleValidationError, match="xy"):
        compile_rules([("xy", ["a", "b"])])


def test_compile_rejects_duplicate():
    with pytest.raises(RuleValidationError, match="duplicate"):
        compile_rules([("li", ["li"]), ("li", ["l", "i"])])


def test_compile_empty_is_identity():
    rules = compile_rules([])
    assert len(rules) == 0
    assert segment_token("telowi", rules) == ["telowi"]


@pytest.mark.parametrize(
    "surface, expected",
    [
        ("telowi", ["te", "lo", "wi"]),
        ("qesli", ["qes", "li"]),
        ("abr", ["abr"]),
        ("atomhe", ["ato", "mhe"]),
        ("lebkwi", ["lebk", "wi"]),
        ("qowi", ["qo", "wi"]),
        ("qo", ["qo"]),
        ("arselowi", ["arse", "lo", "wi"]),
        ("kdiselteli", ["kdisel", "te", "li"]),
    ],
)
def test_segment_token(surface, expected):
    assert segment_token(Token(surface), default_rules()) == expected


def test_longest_match_wins():
    rules = default_rules()
    assert segment_token("amnilowi", rules) == ["amni", "lo", "wi"]
    assert segment_token("bedewitelowi", rules) == ["bedewi", "te", "lo", "wi"]  # not lowi
    assert segment_token("adatomhe", rules) == ["ad", "ato", "mhe"]  # not mhe


def test_no_recursion_into_stem():
    # stem "qeste" still ends in "te" but only one rule fires
    assert segment_token("qesteli", default_rules()) == ["qes", "te", "li"]
    assert segment_token("qestete", default_rules()) == ["qeste", "te"]


def test_illegible_never_segmented():
    assert segment_token(Token("ab?li", True), default_rules()) == ["ab?li"]


def test_segment_text_merge_pattern():
    out = segment_text([Token("qesli"), Token("qes")], default_rules())
    assert [t.surface for t in out] == ["qes", "li", "qes"]


def test_segment_text_empty():
    assert segment_text([], default_rules()) == []


def test_segment_text_hand_traced():
    # telowi is the longest pattern that is a suffix: bedewi | te lo wi
    out = segment_text([Token("bedewitelowi")], default_rules())
    assert [t.surface for t in out] == ["bedewi", "te", "lo", "wi"]


def test_bm_types_can_shrink():
    # qesli/qes and arseli/arse collapse: N grows, V shrinks
    tokens = [Token(s) for s in ["qes", "qesli", "arse", "arseli", "li"]]
    normal = count_types(tokens)
    bm = count_types(segment_text(tokens, default_rules()))
    assert bm.N > normal.N
    assert bm.V < normal.V


def test_rule_file(tmp_path):
    p = tmp_path / "rules.tsv"
    p.write_text("# custom\nlowi\tlo wi\nke\tke\n", encoding="utf-8")
    rules = load_rules(p)
    assert [r.pattern for r in rules] == ["lowi", "ke"]


def test_rule_file_invalid(tmp_path):
    p = tmp_path / "rules.tsv"
    p.write_text("lowi\tlo we\n", encoding="utf-8")
    with pytest.raises(RuleValidationError):
        load_rules(p)


surface_strategy = st.text(alphabet="abeiklmnoqstw", min_size=1, max_size=12)


@given(st.lists(surface_strategy, max_size=20))
def test_segmentation_concatenation_identity(surfaces):
    rules = default_rules()
    tokens = [Token(s) for s in surfaces]
    out = segment_text(tokens, rules)
    assert len(out) >= len(tokens)
    for s in surfaces:
        assert "".join(segment_token(s, rules)) == s


@given(st.lists(surface_strategy, max_size=20))
def test_empty_ruleset_is_identity(surfaces):
    tokens = [Token(s) for s in surfaces]
    assert segment_text(tokens, RuleSet()) == tokens


def test_round_trip_random_tokens():
    rng = random.Random(7)
    rules = default_rules()
    pieces = ["q", "e", "s", "a", "b", "r", "k", "d", "i"] + [r.pattern for r in rules]
    for _ in range(10_000):
        s = "".join(rng.choice(pieces) for _ in range(rng.randint(1, 4)))
        assert "".join(segment_token(s, rules)) == s
