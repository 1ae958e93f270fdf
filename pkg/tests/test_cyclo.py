import warnings
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from localEps.cyclo import (Cyclotomic, ScaledCyclotomic, as_root_of_unity, from_exponents, human,
                            legendre_table, parse, root_exponent, root_of_unity, sqrt_q, zeta)
from localEps.errors import DivisionByZero, IncompatibleBase, ParseError

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def elements(draw, N=12):
    cs = draw(st.lists(coeff, min_size=N, max_size=N))
    return Cyclotomic(N, cs)


def test_roots_of_unity():
    assert zeta(4) ** 2 == -1
    assert zeta(3) + zeta(3, 2) == -1
    assert not (1 + zeta(3) + zeta(3, 2))
    assert zeta(5).galois(2) == zeta(5, 2)
    assert zeta(6) == -zeta(3, 2)
    assert root_of_unity(Fraction(3, 4)) == zeta(4, 3)


def test_equality_across_orders():
    assert zeta(4) == zeta(8, 2)
    assert zeta(12, 4) == zeta(3)
    assert zeta(8) != zeta(8, 3)


def test_exponent_sums():
    assert from_exponents([0, Fraction(1, 2)]) == 0
    assert from_exponents([Fraction(k, 5) for k in range(5)]) == 0
    assert from_exponents([Fraction(1, 4)] * 3) == 3 * zeta(4)


@pytest.mark.parametrize('q', list(range(1, 31)))
def test_sqrt_q_squares_to_q(q):
    r = sqrt_q(q)
    assert r * r == q


def test_scaled_values():
    s3 = ScaledCyclotomic(3, 1, 1)
    assert s3 ** 2 == 3
    assert s3 == sqrt_q(3)
    assert ScaledCyclotomic(4, 1, 1) == 2
    assert ScaledCyclotomic(5, 1, 1) * ScaledCyclotomic(5, -1, 1) == 1
    with pytest.raises(IncompatibleBase):
        ScaledCyclotomic(2, 1, 1) * ScaledCyclotomic(3, 1, 1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Cyclotomic(5).inverse()
    with pytest.raises(DivisionByZero):
        ScaledCyclotomic(3, 1, 0).inverse()


def test_root_recognition():
    assert as_root_of_unity(zeta(12, 8)) == (2, 3)
    assert as_root_of_unity(-1) == (1, 2)
    assert as_root_of_unity(1) == (0, 1)
    assert as_root_of_unity(2) is None
    assert as_root_of_unity(zeta(5) + zeta(5, 2)) is None
    assert root_exponent(zeta(8, 3)) == Fraction(3, 8)
    with pytest.raises(ValueError):
        root_exponent(zeta(3) + 1 + zeta(3, 2) + 5)


@pytest.mark.parametrize('N, k', [(1800, 7), (2 * 3 * 5 * 7 * 11, 1), (1024, 513), (2310, 1155)])
def test_root_recognition_large_orders(N, k):
    e = Fraction(k, N)
    assert as_root_of_unity(zeta(N, k)) == (e.numerator, e.denominator)
    minus = (e + Fraction(1, 2)) % 1
    assert as_root_of_unity(-zeta(N, k)) == (minus.numerator, minus.denominator)
    assert as_root_of_unity(zeta(N, k) + zeta(N, k + 1)) is None


@pytest.mark.parametrize('p', [3, 5, 7, 1999, 2003])
def test_legendre_table(p):
    with warnings.catch_warnings():
        warnings.simplefilter('error', DeprecationWarning)
        table = legendre_table(p)
        r = sqrt_q(p)
    assert table.tolist() == [sympy.jacobi_symbol(x, p) for x in range(p)]
    assert r * r == p


def test_human_notation():
    assert human(zeta(4)) == 'i'
    assert human(zeta(4, 3)) == '-i'
    assert human(-1) == '-1'
    assert human(ScaledCyclotomic(3, 1, zeta(4))) == 'i*sqrt(3)'
    assert human(ScaledCyclotomic(5, 1, -1)) == '-sqrt(5)'
    assert human(sqrt_q(7) * zeta(4)) == 'i*sqrt(7)'
    assert human(sqrt_q(20)) == '2*sqrt(5)'
    assert human(-sqrt_q(2)) == '-sqrt(2)'
    assert human(zeta(4, 3) * Fraction(3, 2)) == '-3/2*i'
    assert human(zeta(8) + zeta(4)).startswith('(')


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse('zeta(3)')
    with pytest.raises(ParseError):
        parse('(1 + 2*w) with z = zeta_3')


@given(elements())
@settings(max_examples=30, deadline=None)
def test_parse_inverts_str(a):
    assert parse(str(a)) == a
    s = ScaledCyclotomic(7, 1, a)
    assert parse(str(s)) == s


@given(elements(), elements(), elements())
@settings(max_examples=25, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(elements())
@settings(max_examples=25, deadline=None)
def test_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert a.conjugate().conjugate() == a
