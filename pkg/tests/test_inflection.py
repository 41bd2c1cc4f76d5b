import pytest

from emet.inflection import (
    EditScript,
    Paradigm,
    ParadigmError,
    expand,
    format_paradigms,
    guess_paradigm,
    inflect,
    parse_paradigms,
    parse_script,
    project,
    transfer,
)


@pytest.mark.parametrize(
    "lemma,paradigm,bundle,expected",
    [
        ("biscuit", "Nsp", {"N", "p"}, "biscuits"),
        ("live", "LIVE", {"V", "PR", "3", "s"}, "lives"),
        ("embrace", "LIVE", {"V", "PP"}, "embraced"),
        ("help", "HELP", {"V", "INF"}, "help"),
        ("penitentiary", "Nsp_y", {"N", "p"}, "penitentiaries"),
        ("crop", "DOUBLE", {"V", "PP"}, "cropped"),
        ("crop", "DOUBLE", {"V", "G"}, "cropping"),
        ("put", "PUT", {"V", "PT"}, "put"),
        ("dry", "CRY", {"V", "PP"}, "dried"),
        ("pass", "PASS", {"V", "PR", "3", "s"}, "passes"),
    ],
)
def test_inflect(paradigms, lemma, paradigm, bundle, expected):
    assert inflect(lemma, paradigms[paradigm], bundle) == expected


def test_inflect_empty_bundle_is_identity(paradigms):
    assert inflect("biscuit", paradigms["Nsp"], frozenset()) == "biscuit"


def test_inflect_missing_rule(paradigms):
    with pytest.raises(ParadigmError, match="no rule"):
        inflect("biscuit", paradigms["Nsp"], {"V", "PP"})


def test_inflect_lemma_too_short():
    paradigm = Paradigm("X", {frozenset({"N", "p"}): EditScript(delete=3, append="ies")})
    with pytest.raises(ParadigmError, match="too short"):
        inflect("ab", paradigm, {"N", "p"})


@pytest.mark.parametrize(
    "features,lemma,paradigm,expected",
    [
        ({"V", "PR", "3", "s"}, "live", "LIVE", "lives"),
        ({"N", "p"}, "biscuit", "Nsp", "biscuits"),
        ({"V", "PP"}, "join", "HELP", "joined"),
    ],
)
def test_transfer(paradigms, features, lemma, paradigm, expected):
    assert transfer(features, lemma, paradigms[paradigm]) == expected


def test_transfer_ignores_semantic_traits(paradigms):
    full = {"V", "PR", "3", "s", "Hum", "XVII"}
    assert transfer(full, "live", paradigms["LIVE"]) == "lives"


def test_expand_two_rule_noun(paradigms):
    assert expand("sin", paradigms["Nsp"]) == [
        ("sin", frozenset({"N", "s"})),
        ("sins", frozenset({"N", "p"})),
    ]


def test_expand_verb_includes_participle_and_gerund(paradigms):
    forms = dict((f, b) for f, b in expand("acquiesce", paradigms["LIVE"]))
    assert forms["acquiesced"] in (frozenset({"V", "PT"}), frozenset({"V", "PP"}))
    assert forms["acquiescing"] == frozenset({"V", "G"})
    pairs = expand("acquiesce", paradigms["LIVE"])
    assert ("acquiesced", frozenset({"V", "PT"})) in pairs
    assert ("acquiesced", frozenset({"V", "PP"})) in pairs


def test_expand_item(paradigms):
    assert expand("item", paradigms["Nsp"]) == [
        ("item", frozenset({"N", "s"})),
        ("items", frozenset({"N", "p"})),
    ]


def test_expand_no_duplicates(paradigms):
    for name, lemma in SAMPLE_LEMMAS.items():
        pairs = expand(lemma, paradigms[name])
        assert len(pairs) == len(set(pairs)), name


SAMPLE_LEMMAS = {
    "Nsp": "burden",
    "Nsp_es": "box",
    "Nsp_y": "lady",
    "Ninv": "sheep",
    "HELP": "help",
    "LIVE": "live",
    "SMILE": "smile",
    "CRY": "cry",
    "DOUBLE": "crop",
    "PASS": "pass",
    "PUT": "put",
}


def test_transfer_matches_inflect_on_every_expanded_form(paradigms):
    # definitional equivalence: re-inflecting with an expanded form's own
    # bundle reproduces that form
    for name, paradigm in paradigms.items():
        lemma = SAMPLE_LEMMAS[name]
        for form, bundle in expand(lemma, paradigm):
            assert transfer(bundle, lemma, paradigm) == form
            assert inflect(lemma, paradigm, project(bundle)) == form


def test_expanded_forms_differ_only_in_tail(paradigms):
    for name, paradigm in paradigms.items():
        lemma = SAMPLE_LEMMAS[name]
        max_delete = max((s.delete for s in paradigm.rules.values()), default=0)
        keep = len(lemma) - max_delete
        for form, _ in expand(lemma, paradigm):
            assert form[:keep] == lemma[:keep]


def test_paradigm_file_round_trip(paradigms):
    assert parse_paradigms(format_paradigms(paradigms)) == paradigms


@pytest.mark.parametrize(
    "text,expected",
    [
        ("+s", EditScript(0, "s", False)),
        ("-1+ies", EditScript(1, "ies", False)),
        ("&+ed", EditScript(0, "ed", True)),
        ("+", EditScript(0, "", False)),
        ("", EditScript(0, "", False)),
    ],
)
def test_parse_script(text, expected):
    assert parse_script(text) == expected
    assert parse_script(expected.format()) == expected


def test_parse_paradigms_errors():
    with pytest.raises(ParadigmError, match="duplicate paradigm"):
        parse_paradigms("A:\n    N+s = +\nA:\n    N+s = +\n")
    with pytest.raises(ParadigmError, match="unknown paradigm"):
        parse_paradigms("B = MISSING\n")
    with pytest.raises(ParadigmError, match="outside a paradigm"):
        parse_paradigms("    N+s = +\n")
    with pytest.raises(ParadigmError, match="duplicate bundle"):
        parse_paradigms("A:\n    N+s = +\n    N+s = +x\n")


def test_alias_copies_rules(paradigms):
    assert paradigms["SMILE"].rules == paradigms["LIVE"].rules
    assert paradigms["SMILE"].name == "SMILE"


@pytest.mark.parametrize(
    "lemma,pos,expected",
    [
        ("walk", "V", "HELP"),
        ("move", "V", "LIVE"),
        ("carry", "V", "CRY"),
        ("fix", "V", "PASS"),
        ("door", "N", "Nsp"),
        ("dish", "N", "Nsp_es"),
        ("city", "N", "Nsp_y"),
        ("blue", "A", None),
    ],
)
def test_guess_paradigm(paradigms, lemma, pos, expected):
    got = guess_paradigm(lemma, pos, paradigms)
    if expected is None:
        assert got is None
    else:
        assert got is not None and got.name == expected
