import time

import pytest
from hypothesis import given, settings, strategies as st

from localEps.errors import BothTrivial, InvalidPrime, ParseError
from localEps.finite_field import (FFMultChar, FqField, characters, gauss_sum, get_field,
                                   lift_and_check_davenport_hasse, parse_field,
                                   quadratic_character, quadratic_gauss_closed_form,
                                   quadratic_square_sum, trivial_character)
from localEps.mini_utils import prime_power
from localEps.verify import _prime_powers


def test_field_tables(small_field):
    F = small_field
    n = F.q - 1
    assert sorted(F.exp_table.tolist()) == list(range(1, F.q))
    for x in range(1, F.q):
        assert F.mul(x, F.inv(x)) == 1
        assert F.power(x, n) == 1
        assert F.gpow(F.dlog(x)) == x
    assert sum(1 for x in range(F.q) if F.trace(x) == 0) == F.q // F.p


def test_field_descriptor_round_trip():
    F = get_field(3, 2)
    assert parse_field(str(F)) is F
    with pytest.raises(ParseError):
        parse_field('GF(9)')
    with pytest.raises(InvalidPrime):
        FqField(4, 1)


def test_gauss_sum_absolute_value(small_field):
    F = small_field
    for chi in characters(F)[1:]:
        g = gauss_sum(chi)
        assert g * g.conjugate() == F.q


def test_trivial_gauss_sum():
    F = get_field(5)
    assert gauss_sum(trivial_character(F)) == -1
    assert gauss_sum(trivial_character(F), 0) == 4
    assert gauss_sum(FFMultChar(F, 1), 0) == 0


def test_gauss_sum_of_f9_is_three():
    F = get_field(3, 2)
    assert gauss_sum(quadratic_character(F)) == 3
    assert quadratic_gauss_closed_form(3, 2) == 3


@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125])
def test_quadratic_closed_form(q):
    p, s = prime_power(q)
    F = get_field(p, s)
    g = gauss_sum(quadratic_character(F))
    assert g == quadratic_gauss_closed_form(p, s)
    assert quadratic_square_sum(F) == g


def test_quadratic_character_needs_odd_p():
    with pytest.raises(InvalidPrime):
        quadratic_character(get_field(2, 2))
    with pytest.raises(InvalidPrime):
        quadratic_gauss_closed_form(2)


def test_additive_shift():
    F = get_field(7)
    for chi in characters(F)[1:]:
        for b in range(1, 7):
            assert gauss_sum(chi, b) == chi(F.inv(b)) * gauss_sum(chi)


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (5, 1)]), st.integers(2, 3), st.integers(0, 100))
@settings(max_examples=20, deadline=None)
def test_davenport_hasse(ps, s, k):
    F = get_field(*ps)
    chi = FFMultChar(F, k)
    rep = lift_and_check_davenport_hasse(chi, s)
    assert rep.equal
    assert rep.lhs == rep.rhs


def test_davenport_hasse_rejects_trivial_pair():
    with pytest.raises(BothTrivial):
        lift_and_check_davenport_hasse(trivial_character(get_field(3)), 2, psi_shift=0)


def test_character_group_structure():
    F = get_field(2, 3)
    chars = characters(F)
    assert len(chars) == 7
    assert all((c ** c.order).is_trivial() for c in chars)
    assert (chars[3] * chars[3].inverse()).is_trivial()


@pytest.mark.slow
def test_quadratic_closed_form_grid():
    start = time.perf_counter()
    for q, p, s in _prime_powers(2000, odd=True):
        g = gauss_sum(quadratic_character(get_field(p, s)), 1)
        assert g == quadratic_gauss_closed_form(p, s), q
    assert time.perf_counter() - start < 30


@pytest.mark.slow
def test_davenport_hasse_grid():
    for q, p, s in _prime_powers(54):
        field = get_field(p, s)
        t = 2
        while q ** t <= 3000:
            for chi in characters(field):
                assert lift_and_check_davenport_hasse(chi, t).equal, (q, t, str(chi))
            t += 1
