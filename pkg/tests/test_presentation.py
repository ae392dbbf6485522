import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skelcat.errors import FormatError, SkelcatError
from skelcat.fincat import discrete, enumerate_functors, identity_functor, make_functor
from skelcat.presentation import (
    Generator,
    Model,
    Presentation,
    Relation,
    Verdict,
    bounded_normal_forms,
    components,
    format_pword,
    free_reduce,
    groupoid_consistency,
    identity_zcok_equivalence,
    induced_model,
    inverse_word,
    localization_presentation,
    model_problems,
    parse_pword,
    replay,
    word_equal_bounded,
    z_cokernel,
    z_cokernel_of_identity,
)
from conftest import CORPUS

U, V = ("u", 1), ("u", -1)


def power(n):
    return (U,) * n if n >= 0 else (V,) * -n


def pushout_2_to_I():
    f = make_functor(CORPUS["2"], CORPUS["I"], {"A": "X", "B": "Y"}, {"u": "f"})
    return z_cokernel(f)


def test_parse_format_round_trip():
    w = parse_pword("u, v^-1,u")
    assert w == (("u", 1), ("v", -1), ("u", 1))
    assert format_pword(w) == "u,v^-1,u"
    assert parse_pword("()") == () and format_pword(()) == "()"
    assert inverse_word(w) == (("u", -1), ("v", 1), ("u", -1))
    with pytest.raises(FormatError):
        parse_pword("u^2")


def test_presentation_validation():
    with pytest.raises(SkelcatError):
        Presentation(("A",), (Generator("x", "A", "B"),), ())
    with pytest.raises(SkelcatError):
        Presentation(("A",), (Generator("x", "A", "A"),), (Relation((("y", 1),), (), "A", "A"),))
    p = Presentation(("A",), (Generator("x", "A", "A"),), ())
    with pytest.raises(SkelcatError):
        p.endpoints((("x", -1),))


def test_free_reduce_only_touches_invertibles():
    p = Presentation(("A",), (Generator("x", "A", "A", True), Generator("y", "A", "A")), ())
    assert free_reduce(p, parse_pword("y,x,x^-1,y")) == parse_pword("y,y")


def test_identity_zcok_of_arrow_category():
    zc = z_cokernel_of_identity(CORPUS["2"])
    p = zc.presentation
    assert p.objects == ("A",)
    assert zc.object_map == {"A": "A", "B": "A"}
    forms = bounded_normal_forms(p, 6)
    assert list(forms) == [("A", "A")]
    assert set(forms["A", "A"]) == {power(n) for n in range(-6, 7)}
    assert len(forms["A", "A"]) == 13
    assert word_equal_bounded(p, (U, V), ()).equal
    assert word_equal_bounded(p, (U, U), (U,)).distinct


def test_frozen_verdicts_in_pushout():
    zc = pushout_2_to_I()
    p = zc.presentation
    g, qinv = parse_pword("g"), parse_pword("qp(u)^-1")
    assert word_equal_bounded(p, g, qinv, 12, max_steps=0, at="X").status is Verdict.UNKNOWN
    v = word_equal_bounded(p, g, qinv, at="X")
    assert v.equal and replay(p, v.trace, "X")
    assert v.trace[0] == g and v.trace[-1] == qinv


def test_pushout_normal_forms_are_integers():
    p = pushout_2_to_I().presentation
    forms = bounded_normal_forms(p, 3)
    assert [format_pword(w) for w in forms["X", "X"]] == ["()", "f", "g", "f,f", "g,g", "f,f,f", "g,g,g"]


def test_endpoint_mismatch_is_distinct():
    p = localization_presentation(CORPUS["I"])
    v = word_equal_bounded(p, parse_pword("f"), parse_pword("g"))
    assert v.distinct and "endpoints" in v.reason


def test_localization_of_I():
    p = localization_presentation(CORPUS["I"])
    v = word_equal_bounded(p, parse_pword("g"), parse_pword("f^-1"))
    assert v.equal and replay(p, v.trace)
    assert len(bounded_normal_forms(p, 3)) == 4


def test_replay_rejects_jumps():
    p = localization_presentation(CORPUS["2"])
    assert not replay(p, (parse_pword("u"), parse_pword("u,u,u")), "A")


def test_models_and_problems():
    p = z_cokernel_of_identity(CORPUS["z2"]).presentation
    z2 = CORPUS["z2"]
    good = Model(p, z2, {"X": "X"}, {"e": "e"})
    assert model_problems(good) == []
    z3 = CORPUS["z3"]
    bad = Model(p, z3, {"X": "X"}, {"e": z3.nonidentity[0]})
    assert model_problems(bad)
    assert word_equal_bounded(p, parse_pword("e"), (), models=[good]).distinct


def test_empty_source_gives_target_presentation():
    f = make_functor(discrete([]), CORPUS["I"], {}, {})
    p = z_cokernel(f).presentation
    assert p.objects == ("X", "Y")
    assert [g.name for g in p.generators] == ["f", "g"]
    assert not any(g.invertible for g in p.generators)


def test_induced_model_from_trivial_functors():
    zc = pushout_2_to_I()
    ws = list(enumerate_functors(CORPUS["I"], CORPUS["z2"]))
    assert len(ws) == 2
    for w in ws:
        assert model_problems(induced_model(zc, w)) == []


def test_components():
    assert components(CORPUS["cospan"]) == {"A": "A", "B": "A", "C": "A"}
    assert components(CORPUS["discrete2"]) == {"X": "X", "Y": "Y"}


@pytest.mark.parametrize("name", ["1", "2", "I", "z2", "idempotent", "parallel"])
def test_identity_equivalence(name):
    assert identity_zcok_equivalence(CORPUS[name]) == []
    assert z_cokernel(identity_functor(CORPUS[name])).functor is not None


@pytest.mark.parametrize("name", ["I", "z2", "z3"])
def test_groupoid_consistency(name):
    assert groupoid_consistency(CORPUS[name]) == []


def test_groupoid_consistency_needs_groupoid():
    with pytest.raises(SkelcatError):
        groupoid_consistency(CORPUS["2"])


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from([U, V]), max_size=8))
def test_integer_words(word):
    p = z_cokernel_of_identity(CORPUS["2"]).presentation
    n = sum(e for _, e in word)
    assert word_equal_bounded(p, tuple(word), power(n), at="A").equal
    assert word_equal_bounded(p, tuple(word), power(n + 1), at="A").distinct
