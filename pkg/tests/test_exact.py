"""Arithmetic of the exact Gaussian-rational scalar."""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsatlab.exact import GR_ONE, GR_ZERO, GaussianRational

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=8
)
scalars = st.builds(GaussianRational, rationals, rationals)


def test_basic_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 2), -1)
    assert a + b == GaussianRational(Fraction(3, 2), 1)
    assert a - b == GaussianRational(Fraction(1, 2), 3)
    assert a * b == GaussianRational(Fraction(5, 2), 0)
    assert -a == GaussianRational(-1, -2)
    assert a.conjugate() == GaussianRational(1, -2)


def test_int_interop():
    a = GaussianRational(3)
    assert a + 1 == 4
    assert 1 + a == 4
    assert 2 * a == 6
    assert a - 1 == 2
    assert 1 - a == -2
    assert a / 2 == GaussianRational(Fraction(3, 2))
    assert 6 / a == 2


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GR_ONE / GR_ZERO


def test_coerce_rejects_floats():
    with pytest.raises(TypeError):
        GaussianRational.coerce(0.5)
    assert GaussianRational.coerce(Fraction(1, 3)).re == Fraction(1, 3)


def test_parse():
    assert GaussianRational.parse("1,2") == GaussianRational(1, 2)
    assert GaussianRational.parse("1/2,-3") == GaussianRational(Fraction(1, 2), -3)
    assert GaussianRational.parse("0.5") == GaussianRational(Fraction(1, 2))
    with pytest.raises(ValueError):
        GaussianRational.parse("1,2,3")


def test_predicates():
    assert bool(GaussianRational(0, 1))
    assert not bool(GR_ZERO)
    assert GaussianRational(2).is_integer()
    assert not GaussianRational(Fraction(1, 2)).is_integer()
    assert complex(GaussianRational(1, -1)) == 1 - 1j


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(scalars, scalars)
def test_conjugate_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(scalars, scalars)
def test_division_roundtrip(a, b):
    if not bool(b):
        return
    assert (a / b) * b == a


@given(scalars)
def test_norm_squared_nonnegative(a):
    n = a * a.conjugate()
    assert n.im == 0
    assert n.re >= 0
