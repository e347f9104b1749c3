import pytest
from hypothesis import given, strategies as st

from nfactor.errors import BadBase, DigitOutOfRange, EmptyPattern, NegativeLetter
from nfactor.words import (
    base_k_realize,
    base_k_repr,
    conj,
    format_word,
    mirr,
    occurrences,
    parse_block,
    parse_word,
    shift_letters,
    slice_word,
    word,
)

digits3 = st.lists(st.integers(0, 2), max_size=8).map(tuple)


@pytest.mark.parametrize("u, i, j, expected", [
    ((0, 1, 2, 2, 3), 1, 3, (1, 2, 2)),
    ((0, 1), 0, 5, ()),
    ((), 0, 0, ()),
    ((0, 1, 2), 2, 1, ()),
    ((0, 1, 2), 0, 0, (0,)),
])
def test_slice(u, i, j, expected):
    assert slice_word(u, i, j) == expected


@pytest.mark.parametrize("y, x, expected", [
    ((1, 1, 1), (1, 1), 2),
    ((1, 1), (1, 1), 1),
    ((1, 0), (0, 1), 0),
    ((0,), (0, 0), 0),
])
def test_occurrences(y, x, expected):
    assert occurrences(y, x) == expected


def test_occurrences_empty_pattern():
    with pytest.raises(EmptyPattern):
        occurrences((1, 2), ())


@pytest.mark.parametrize("m, k, expected", [
    (8, 2, (1, 0, 0, 0)),
    (0, 2, (0,)),
    (5, 3, (1, 2)),
    (1, 10, (1,)),
])
def test_base_k_repr(m, k, expected):
    assert base_k_repr(m, k) == expected


@pytest.mark.parametrize("u, k, expected", [
    ((1, 0, 1), 2, 5),
    ((0, 1, 2), 3, 5),
    ((), 7, 0),
])
def test_base_k_realize(u, k, expected):
    assert base_k_realize(u, k) == expected


def test_base_errors():
    with pytest.raises(BadBase):
        base_k_repr(3, 1)
    with pytest.raises(DigitOutOfRange):
        base_k_realize((0, 2), 2)
    with pytest.raises(NegativeLetter):
        word([0, -1])


@given(st.integers(0, 10**12), st.integers(2, 16))
def test_repr_roundtrip(m, k):
    assert base_k_realize(base_k_repr(m, k), k) == m


def test_conj_mirr_examples():
    assert conj((0, 1), 2) == (1, 0)
    assert conj((1, 2), 3) == (1, 0)
    assert mirr((0, 1, 2)) == (2, 1, 0)
    assert mirr(()) == ()


@given(digits3)
def test_conj_and_mirr_are_involutions(u):
    assert conj(conj(u, 3), 3) == u
    assert mirr(mirr(u)) == u


@given(st.lists(st.integers(0, 30), max_size=10).map(tuple))
def test_shift_roundtrip(u):
    assert shift_letters(shift_letters(u, +1), -1) == u


def test_shift_examples():
    assert shift_letters((0, 1, 2), +1) == (1, 2, 3)
    assert shift_letters((1, 2, 3), -1) == (0, 1, 2)
    with pytest.raises(NegativeLetter):
        shift_letters((0,), -1)
    with pytest.raises(ValueError):
        shift_letters((1,), 2)


@given(st.lists(st.integers(0, 40), max_size=10).map(tuple))
def test_text_form_roundtrip(u):
    assert parse_word(format_word(u)) == u


@pytest.mark.parametrize("text, k, expected", [
    ("01", 2, (0, 1)),
    ("12", 3, (1, 2)),
    ("1.10", 12, (1, 10)),
    ("11", 12, (11,)),
])
def test_parse_block(text, k, expected):
    assert parse_block(text, k) == expected


def test_parse_block_rejects():
    with pytest.raises(EmptyPattern):
        parse_block("", 2)
    with pytest.raises(DigitOutOfRange):
        parse_block("2", 2)
