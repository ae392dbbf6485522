import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skelcat.errors import PreconditionError, SkelcatError
from skelcat.words import (
    all_words,
    closure_oracle,
    format_word,
    is_reduced,
    parse_word,
    phi,
    reduce,
    star,
    universe_size,
)
from conftest import CORPUS

NAMES = sorted(CORPUS)


@st.composite
def cat_and_words(draw, n=2, max_size=8):
    c = CORPUS[draw(st.sampled_from(NAMES))]
    letters = st.sampled_from(sorted(c.arrows))
    return (c, *[tuple(draw(st.lists(letters, max_size=max_size))) for _ in range(n)])


def test_parse_and_format():
    assert parse_word("f, g") == ("f", "g")
    assert parse_word("") == () == parse_word("()")
    assert format_word(()) == "()"
    assert format_word(("f", "f")) == "f,f"


def test_examples_on_I():
    c = CORPUS["I"]
    assert reduce(c, ("f", "g")) == ()
    assert reduce(c, ("f", "f", "g")) == ("f",)
    assert phi(c, "f", ("g", "f")) == ("f",)
    assert phi(c, "id:X", ("f",)) == ("f",)
    assert star(c, ("f",), ("g",)) == ()
    assert reduce(c, ("id:X",)) == ()
    assert phi(c, "f", ("f",)) == ("f", "f")
    assert star(c, (), ("f",)) == ("f",)
    assert star(c, ("f", "f"), ()) == ("f", "f")


def test_phi_cases():
    c = CORPUS["chain3"]
    # composable with the head: absorbed
    assert phi(c, "a", ("b",)) == ("ab",)
    # identity: dropped
    assert phi(c, "id:A", ("a",)) == ("a",)
    # otherwise prepended
    assert phi(c, "b", ("a",)) == ("b", "a")


def test_star_requires_reduced_tail():
    with pytest.raises(PreconditionError):
        star(CORPUS["I"], ("f",), ("f", "g"))


def test_unknown_letter():
    with pytest.raises(SkelcatError):
        reduce(CORPUS["I"], ("h",))


def test_oracle_on_I():
    classes = closure_oracle(CORPUS["I"], 2)
    assert len(classes.classes) == 5
    assert classes.same_class(("f", "g"), ())
    assert not classes.same_class(("f",), ("g",))


def test_oracle_budget():
    from skelcat.errors import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        closure_oracle(CORPUS["codiscrete3"], 6, budget=1000)


def test_universe_size():
    c = CORPUS["I"]
    assert universe_size(4, 3) == len(list(all_words(c, 3))) == 85


@settings(max_examples=300, deadline=None)
@given(cat_and_words(n=1))
def test_reduce_is_reduced_and_idempotent(data):
    c, w = data
    r = reduce(c, w)
    assert is_reduced(c, r)
    assert reduce(c, r) == r


@settings(max_examples=300, deadline=None)
@given(cat_and_words(n=2))
def test_star_associates_over_concatenation(data):
    c, alpha, beta = data
    nu = ()
    assert star(c, alpha, star(c, beta, nu)) == star(c, alpha + beta, nu)


@settings(max_examples=300, deadline=None)
@given(cat_and_words(n=3))
def test_reduce_is_a_monoid_map(data):
    c, a, b, x = data
    nu = reduce(c, x)
    assert star(c, a, star(c, b, nu)) == star(c, a + b, nu)
    assert star(c, (), nu) == nu
    assert reduce(c, a + b) == reduce(c, reduce(c, a) + reduce(c, b))


@settings(max_examples=200, deadline=None)
@given(cat_and_words(n=1))
def test_reduced_words_are_fixed(data):
    c, w = data
    if is_reduced(c, w):
        assert reduce(c, w) == w


@pytest.mark.parametrize("name", ["I", "retract", "iso_idem", "flip"])
def test_oracle_agrees_at_length_three(name):
    c = CORPUS[name]
    classes = closure_oracle(c, 3)
    for cls in classes.classes:
        assert len({reduce(c, w) for w in cls}) == 1
    reps = [reduce(c, cls[0]) for cls in classes.classes]
    assert len(set(reps)) == len(reps)
