import pytest
from hypothesis import given, strategies as st

from cuntzkit import AlgebraElement, Monomial, parse_element, render
from cuntzkit.parser import LetterRangeError, ParseError

from conftest import mono


def test_examples():
    assert parse_element("v1 v2*", 2) == mono(2, (1,), (2,))
    assert parse_element("(0+1i) v1 + v2 v2*", 2) == mono(2, (1,), c=1j) + mono(2, (2,), (2,))
    with pytest.raises(LetterRangeError):
        parse_element("v3", 2)


def test_juxtaposition_reduces():
    assert parse_element("v1* v1", 2) == AlgebraElement.unit(2)
    assert parse_element("v1* v2", 2).is_zero()
    assert parse_element("v1 v2* v1* v1", 2) == mono(2, (1,), (2,))
    assert parse_element("v1 v2 v2* v1*", 2) == mono(2, (1, 2), (1, 2))


def test_coefficient_forms():
    assert parse_element("(2.5,-1) 1", 2) == AlgebraElement.unit(2).scale(2.5 - 1j)
    assert parse_element("(3i) v1", 2) == mono(2, (1,), c=3j)
    assert parse_element("(1-i) v1", 2) == mono(2, (1,), c=1 - 1j)
    assert parse_element("-v1 - (2,0) v2", 2) == mono(2, (1,), c=-1) + mono(2, (2,), c=-2)
    assert parse_element("(1e-3,2E2) v1*", 2) == mono(2, (), (1,), c=1e-3 + 200j)


@pytest.mark.parametrize(
    "text,pos",
    [("v1 +", 4), ("v1 & v2", 3), ("(1,2 v1", 5), ("v1 v2 (1,0)", 6), ("2 v1", 0)],
)
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_element(text, 2)
    assert err.value.pos == pos


letters = st.lists(st.integers(1, 3), max_size=3).map(tuple)
finite = st.floats(-1e3, 1e3, allow_nan=False)


@given(st.dictionaries(st.builds(Monomial, letters, letters), st.builds(complex, finite, finite), max_size=4))
def test_render_round_trip(terms):
    x = AlgebraElement(3, terms)
    assert parse_element(render(x), 3) == x
