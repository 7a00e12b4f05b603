from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvmetric import (
    AsymmetryError,
    IdentityError,
    MetricClass,
    NegativeDistanceError,
    NonPositiveScaleError,
    format_rational,
    make_space,
    parse_rational,
    scale_space,
)
from bvmetric.core import RationalGrammarError, ShapeError, make_map, MapError
from bvmetric.gallery import reciprocal_space

from conftest import spaces


@pytest.mark.parametrize(
    "text, value",
    [
        ("3/2", Fraction(3, 2)),
        ("-3/6", Fraction(-1, 2)),
        ("+7", Fraction(7)),
        ("0.125", Fraction(1, 8)),
        ("-2.50", Fraction(-5, 2)),
        ("0", Fraction(0)),
    ],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5/2", "abc", "", "1e3", "1/", ".5", "--1"])
def test_parse_rational_rejects(text):
    with pytest.raises(RationalGrammarError):
        parse_rational(text)


def test_round_trip_print():
    assert format_rational(parse_rational("3/2")) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"


@settings(max_examples=1000)
@given(st.fractions(), st.fractions())
def test_comparison_matches_cross_multiplication(a, b):
    a2, b2 = parse_rational(format_rational(a)), parse_rational(format_rational(b))
    assert (a2, b2) == (a, b)
    cross = a.numerator * b.denominator - b.numerator * a.denominator
    assert (a2 < b2) == (cross < 0)
    assert (a2 == b2) == (cross == 0)


def test_two_point_space():
    sp = make_space(["a", "b"], [[0, 1], [1, 0]])
    assert sp.n == 2 and sp.d(0, 1) == 1


def test_asymmetry_reported_with_pair():
    with pytest.raises(AsymmetryError) as info:
        make_space(["a", "b"], [[0, 1], [2, 0]])
    assert info.value.pair == (0, 1)


def test_nonzero_self_distance():
    with pytest.raises(IdentityError) as info:
        make_space(["a", "b"], [[1, 1], [1, 0]])
    assert info.value.pair == (0, 0)


def test_zero_between_distinct_points():
    with pytest.raises(IdentityError) as info:
        make_space(["a", "b", "c"], [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert info.value.pair == (0, 2)


def test_negative_distance():
    with pytest.raises(NegativeDistanceError):
        make_space(["a", "b"], [[0, -1], [-1, 0]])


def test_shape_checked():
    with pytest.raises(ShapeError):
        make_space(["a", "b"], [[0, 1]])


def test_floats_refused():
    with pytest.raises(TypeError):
        make_space(["a", "b"], [[0, 0.5], [0.5, 0]])


def test_scale_two_point():
    sp = scale_space(make_space(["a", "b"], [[0, 1], [1, 0]]), 3)
    assert sp.d(0, 1) == 3


def test_scale_by_one_is_identity():
    sp = reciprocal_space(10).space
    assert scale_space(sp, 1) == sp


def test_scale_reciprocal_half():
    sp = scale_space(reciprocal_space(10).space, Fraction(1, 2))
    assert sp.d(sp.index("1/2"), sp.index("1/3")) == Fraction(1, 4)


@pytest.mark.parametrize("c", [0, -1, "-1/2"])
def test_scale_nonpositive(c):
    with pytest.raises(NonPositiveScaleError):
        scale_space(make_space(["a", "b"], [[0, 1], [1, 0]]), c)


@given(spaces(), st.fractions(min_value=Fraction(1, 50), max_value=50))
def test_scale_round_trip(space, c):
    assert scale_space(scale_space(space, c), 1 / c) == space


def test_metric_class_guards():
    assert MetricClass(2, "3/2").s == Fraction(3, 2)
    with pytest.raises(ValueError):
        MetricClass(2, Fraction(1, 2))
    with pytest.raises(ValueError):
        MetricClass(0, 1)


def test_map_must_stay_inside():
    sp = make_space(["a", "b"], [[0, 1], [1, 0]])
    with pytest.raises(MapError):
        make_map(sp, [0, 2])
    assert make_map(sp, [1, None]).partial
