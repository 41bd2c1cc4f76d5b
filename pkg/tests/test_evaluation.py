import pytest
from hypothesis import given
from hypothesis import strategies as st

from emet.defaults import (
    mini_corpus_gold_path,
    mini_corpus_path,
)
from emet.evaluation import (
    GoldEntry,
    GoldFileError,
    GoldStandard,
    ambiguity_rate,
    evaluate_document,
    f_measure,
    load_gold,
    make_report,
    score,
    source_digest,
    system_entities,
)
from emet.pipeline import transcribe


# ----------------------------------------
# The measure itself
# ----------------------------------------


def test_reported_measure_triple():
    # 954 correct out of 985 proposed and 1011 expected reproduces the
    # published precision/recall pair at four decimals
    report = make_report(n_auto=985, n_gold=1011, n_correct=954)
    assert round(report.precision, 4) == 0.9685
    assert round(report.recall, 4) == 0.9436
    assert abs(report.f_measure - 0.9558) <= 2e-4
    assert abs(f_measure(0.9685, 0.9436) - 0.9558) <= 2e-4


def test_perfect_run():
    gold = GoldStandard("x", [GoldEntry(0, 3, "abc", "xyz")])
    report = score([(0, 3, "xyz")], gold)
    assert (report.precision, report.recall, report.f_measure) == (1.0, 1.0, 1.0)


def test_empty_system_is_all_zero():
    gold = GoldStandard("x", [GoldEntry(0, 3, "abc", "xyz")])
    report = score([], gold)
    assert (report.precision, report.recall, report.f_measure) == (0.0, 0.0, 0.0)


def test_matching_is_whitespace_normalized_but_case_sensitive():
    gold = GoldStandard("x", [GoldEntry(0, 3, "abc", "two  words")])
    assert score([(0, 3, "two words")], gold).n_correct == 1
    assert score([(0, 3, "Two words")], gold).n_correct == 0
    assert score([(0, 4, "two words")], gold).n_correct == 0


@given(
    n_correct=st.integers(0, 50),
    extra_auto=st.integers(0, 50),
    extra_gold=st.integers(0, 50),
)
def test_harmonic_mean_bounds(n_correct, extra_auto, extra_gold):
    report = make_report(n_correct + extra_auto, n_correct + extra_gold, n_correct)
    p, r, f = report.precision, report.recall, report.f_measure
    assert 0.0 <= p <= 1.0 and 0.0 <= r <= 1.0 and 0.0 <= f <= 1.0
    if p > 0 and r > 0:
        assert min(p, r) - 1e-12 <= f <= max(p, r) + 1e-12


# ----------------------------------------
# Gold files
# ----------------------------------------


def test_load_gold_single_line(tmp_path):
    source = "it will unlesse we act"
    path = tmp_path / "g.tsv"
    start = source.index("unlesse")
    path.write_text(f"{start}\t{start + 7}\tunlesse\tunless\n")
    gold = load_gold(path, source)
    assert gold.entries == [GoldEntry(start, start + 7, "unlesse", "unless")]
    assert gold.source_sha256 == source_digest(source)


def test_load_gold_rejects_overlaps(tmp_path):
    source = "unlesse again"
    path = tmp_path / "g.tsv"
    path.write_text("0\t7\tunlesse\tunless\n3\t10\tesse ag\tx\n")
    with pytest.raises(GoldFileError, match="lines 1 and 2"):
        load_gold(path, source)


def test_load_gold_rejects_malformed_lines(tmp_path):
    path = tmp_path / "g.tsv"
    path.write_text("0\t7\tunlesse\n")
    with pytest.raises(GoldFileError, match="4 tab-separated"):
        load_gold(path, "unlesse")
    path.write_text("a\tb\tunlesse\tunless\n")
    with pytest.raises(GoldFileError, match="integers"):
        load_gold(path, "unlesse")
    path.write_text("0\t99\tunlesse\tunless\n")
    with pytest.raises(GoldFileError, match="out of bounds"):
        load_gold(path, "unlesse")
    path.write_text("0\t7\tWRONGGG\tunless\n")
    with pytest.raises(GoldFileError, match="source reads"):
        load_gold(path, "unlesse")


def test_bundled_gold_is_complete(lex, rules):
    text = mini_corpus_path().read_text(encoding="utf-8")
    gold = load_gold(mini_corpus_gold_path(), text)
    assert len(gold.entries) >= 30


def test_bundled_corpus_scores(lex, rules):
    text = mini_corpus_path().read_text(encoding="utf-8")
    gold = load_gold(mini_corpus_gold_path(), text)
    doc = transcribe(text, lex, rules)
    report = evaluate_document(doc, gold)
    # two gold entities are deliberate silences, everything proposed is right
    assert report.n_correct == report.n_auto
    assert report.n_gold == report.n_correct + 2
    assert report.precision == 1.0
    assert report.recall == pytest.approx(report.n_correct / report.n_gold)
    expected_f = f_measure(report.precision, report.recall)
    assert report.f_measure == pytest.approx(expected_f)


def test_hash_mismatch_is_rejected(lex, rules):
    text = mini_corpus_path().read_text(encoding="utf-8")
    gold = load_gold(mini_corpus_gold_path(), text)
    other = transcribe("some other text", lex, rules)
    with pytest.raises(GoldFileError, match="hash"):
        evaluate_document(other, gold)


# ----------------------------------------
# Oracle mode
# ----------------------------------------


def test_oracle_mode_upper_bounds_auto_selection(lex, rules):
    text = "the poore man"
    start = text.index("poore")
    doc = transcribe(text, lex, rules)
    gold = GoldStandard(source_digest(text), [GoldEntry(start, start + 5, "poore", "pore")])
    auto = evaluate_document(doc, gold)
    oracle = evaluate_document(doc, gold, oracle=True)
    assert auto.n_correct == 0  # first-ranked candidate is "poor"
    assert oracle.n_correct == 1
    assert oracle.f_measure >= auto.f_measure


def test_oracle_never_scores_below_auto_on_the_corpus(lex, rules):
    text = mini_corpus_path().read_text(encoding="utf-8")
    gold = load_gold(mini_corpus_gold_path(), text)
    doc = transcribe(text, lex, rules)
    auto = evaluate_document(doc, gold)
    oracle = evaluate_document(doc, gold, oracle=True)
    assert oracle.f_measure >= auto.f_measure


def test_selected_candidates_feed_the_system_output(lex, rules):
    text = "the sinne of pride"
    doc = transcribe(text, lex, rules)
    span = next(s for s in doc.spans if s.text == "sinne")
    span.selected = 1
    entities = system_entities(doc)
    assert (text.index("sinne"), text.index("sinne") + 5, "sine") in entities


def test_ambiguity_rate(lex, rules):
    doc = transcribe("the sinne of pride", lex, rules)
    assert 0.0 < ambiguity_rate(doc) <= 1.0
    plain = transcribe("the poor man", lex, rules)
    assert ambiguity_rate(plain) == 0.0
