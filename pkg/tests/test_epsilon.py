from fractions import Fraction

import pytest

from localEps import epsilon
from localEps.cyclo import ScaledCyclotomic
from localEps.epsilon import (W, check_additive_shift, check_functional_equation,
                              check_mod_p_power_roots, check_unit_independence, convert_convention,
                              deligne_twist, epsilon_sum, evaluate, find_c, lamprecht_tate,
                              lamprecht_tate_closed_form, twist_unramified)
from localEps.errors import (ConductorMismatch, NoValidC, NoValidY, NotUnramified,
                             PreconditionViolated, UnsupportedExponent, UnsupportedModel)
from localEps.local_field import (LocalFieldDesc, canonical_psi, qp_characters, qp_psi,
                                  tame_character, unramified_character)


def _with_conductor(p, a):
    return [c for c in qp_characters(p, a) if c.conductor == a]


@pytest.mark.parametrize('p,a_max', [(2, 4), (3, 3), (5, 2)])
def test_functional_equation(p, a_max):
    psi = qp_psi(p)
    for chi in qp_characters(p, a_max, pi_orders=(1, 2)):
        rep = check_functional_equation(chi, psi)
        assert rep.equal, (str(chi), rep.lhs, rep.rhs)


@pytest.mark.parametrize('p', [2, 3, 5])
def test_unramified_values(p):
    w = unramified_character(LocalFieldDesc(p), Fraction(1, 2))
    assert W(w, qp_psi(p)) == 1
    assert W(w, qp_psi(p, p)) == -1
    assert W(w, qp_psi(p, p * p)) == 1


@pytest.mark.parametrize('p', [3, 5])
def test_tame_value_is_normalised_gauss_sum(p):
    psi = qp_psi(p)
    for chi in _with_conductor(p, 1):
        w = W(chi, psi)
        assert w.base_q == p
        assert w * w.conjugate() == 1


def test_unit_independence_and_shift():
    psi = qp_psi(3)
    for chi in qp_characters(3, 2):
        assert check_unit_independence(chi, psi).equal
        for b in (3, -1, 2):
            assert check_additive_shift(chi, psi, b).equal


def test_residue_level_model():
    F = LocalFieldDesc(3, 1, 2)
    psi = canonical_psi(F)
    for k in range(1, 8):
        chi = tame_character(F, k, Fraction(1, 2))
        assert check_functional_equation(chi, psi).equal
        assert check_unit_independence(chi, psi).equal


@pytest.mark.parametrize('p,a', [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)])
def test_lamprecht_tate_reduced_sums(p, a):
    psi = qp_psi(p)
    for chi in _with_conductor(p, a):
        w = W(chi, psi)
        for m in range(0, a // 2 + 1):
            assert lamprecht_tate(chi, psi, m).value == w
        assert lamprecht_tate_closed_form(chi, psi).value == w
        assert check_mod_p_power_roots(chi, psi).equal


def test_find_c_preconditions():
    chi = _with_conductor(3, 2)[0]
    psi = qp_psi(3)
    c = find_c(chi, psi, 1)
    assert c.denominator == 1 and c % 9 == 0 and (c // 9) % 3
    with pytest.raises(PreconditionViolated):
        find_c(chi, psi, 2)
    F = LocalFieldDesc(3, 1, 2)
    with pytest.raises(UnsupportedModel):
        find_c(tame_character(F, 1), canonical_psi(F), 0)


def test_deligne_twist():
    psi = qp_psi(5)
    alpha = _with_conductor(5, 2)[0]
    for beta in qp_characters(5, 1, pi_orders=(2,)):
        res = deligne_twist(alpha, beta, psi)
        assert res.checks == (('direct', True),)
        assert res.value == W(alpha * beta, psi)
    with pytest.raises(PreconditionViolated):
        deligne_twist(_with_conductor(5, 1)[0], _with_conductor(5, 1)[0], psi)


def _constant_psi_residue(psi, u, a):
    return 0


def test_find_c_without_solution(monkeypatch):
    chi = _with_conductor(3, 2)[0]
    psi = qp_psi(3)
    monkeypatch.setattr(epsilon, '_psi_residue', _constant_psi_residue)
    with pytest.raises(NoValidC):
        find_c(chi, psi, 1)
    with pytest.raises(NoValidY) as err:
        deligne_twist(chi, unramified_character(LocalFieldDesc(3), Fraction(1, 2)), psi)
    assert 'P^1' in str(err.value)


def test_unramified_twist():
    psi = qp_psi(3, 3)
    w = unramified_character(LocalFieldDesc(3), Fraction(1, 3))
    for chi in qp_characters(3, 2):
        res = twist_unramified(chi, w, psi)
        assert res.value == W(chi * w, psi)
    with pytest.raises(NotUnramified):
        twist_unramified(w, _with_conductor(3, 1)[0], psi)


def test_explicit_c():
    psi = qp_psi(3)
    chi = _with_conductor(3, 2)[0]
    assert epsilon_sum(chi, psi, c=Fraction(9 * 2)).value == W(chi, psi)
    with pytest.raises(ConductorMismatch):
        epsilon_sum(chi, psi, c=Fraction(3))


def test_convention_conversion():
    chi = _with_conductor(3, 2)[0]
    res = epsilon_sum(chi, qp_psi(3))
    assert convert_convention(res, Fraction(1, 2)).value == res.value
    shifted = convert_convention(res, 0)
    assert shifted.value == res.value * ScaledCyclotomic(3, 2, 1)
    assert shifted.convention == 'BH(0)'
    with pytest.raises(UnsupportedExponent):
        convert_convention(res, Fraction(1, 3))


def test_evaluate_on_minus_one():
    for chi in qp_characters(5, 1):
        assert evaluate(chi, -1) ** 2 == 1


@pytest.mark.slow
@pytest.mark.parametrize('p', [2, 3, 5])
def test_functional_equation_grid(p):
    psi = qp_psi(p)
    for chi in qp_characters(p, 4, pi_orders=(1, 2, 4)):
        assert check_functional_equation(chi, psi).equal, str(chi)


@pytest.mark.slow
@pytest.mark.parametrize('p', [2, 3, 5])
def test_lamprecht_tate_grid(p):
    psi = qp_psi(p)
    count = 0
    for a in range(2, 7):
        for chi in _with_conductor(p, a):
            w = W(chi, psi)
            for m in range(0, a // 2 + 1):
                assert lamprecht_tate(chi, psi, m).value == w, (str(chi), m)
            count += 1
    assert count == sum(p ** (a - 2) * (p - 1) ** 2 for a in range(2, 7))
