"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Abelian local constants W(chi, psi, c) and the identities they satisfy.

W(chi, psi, c) = chi(c) q^{-a/2} sum_{x in U/U^a} chi^{-1}(x) psi(x/c) with
nu(c) = a(chi) + n(psi); for unramified chi it is chi(c).  Over Q_p every
conductor is supported.  Over a general field only a(chi) <= 1, where the sum
lives on the residue field.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from localEps.cyclo import (ScaledCyclotomic, as_root_of_unity, exponent_sum, from_exponents,
                            root_of_unity)
from localEps.errors import (ConductorMismatch, NoValidC, NoValidY, NotUnramified,
                             PreconditionViolated, UnsupportedExponent, UnsupportedModel)
from localEps.local_field import (as_qp_unit_char, qp_unit_table, split_unit,
                                  unit_residue)
from localEps.mini_utils import lcm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CChoice:
    """c = pi^valuation * unit; unit is a rational unit over Q_p, a residue code elsewhere."""
    valuation: int
    unit: object

    def __str__(self):
        return 'pi^%d*%s' % (self.valuation, self.unit)


@dataclass(frozen=True)
class EpsilonResult:
    value: ScaledCyclotomic
    c_used: CChoice
    convention: str = 'W'
    conductor: int = 0
    n_psi: int = 0
    checks: tuple = ()


@dataclass(frozen=True)
class CheckReport:
    name: str
    lhs: object
    rhs: object
    equal: bool
    detail: str = ''


#########################################################
################### The modified sum
#########################################################

def _check_fields(chi, psi):
    if chi.field != psi.field:
        raise ValueError("chi lives on %s but psi on %s" % (chi.field, psi.field))


def _unit_exponent_arrays(up, p, a):
    """Integer exponents (idx, L) of chi on the units mod p^a: chi(x) = zeta_L^idx."""
    up = as_qp_unit_char(up, p)
    level = max(up.level, a)
    up = up.lift(level)
    reps, logs = qp_unit_table(p, a, level)
    L = lcm(*(t.denominator for t in up.exps))
    ex = np.array([int(t * L) for t in up.exps], dtype=np.int64)
    idx = (logs @ ex) % L if len(ex) else np.zeros(len(reps), dtype=np.int64)
    return reps, idx, L


def _chi_table(chi):
    """(table, Lc): chi(x) = zeta_Lc^table[x] for units x mod p^a."""
    p, a = chi.field.p, chi.conductor
    reps, cidx, Lc = _unit_exponent_arrays(chi.unit_part, p, a)
    table = np.zeros(p ** a, dtype=np.int64)
    table[reps] = cidx
    return table, Lc


def _psi_residue(psi, u, a):
    """r with psi(x / c) = zeta_{p^a}^{r x} for integers x, c = u p^{a+n}."""
    p = psi.field.p
    beta = psi.shift / Fraction(p) ** psi.shift_valuation
    return unit_residue(beta / Fraction(u), p, a)


def _qp_exponents(chi, psi, u, xs=None):
    """(idx, L) with chi^{-1}(x) psi(x/c) = zeta_L^idx for the units xs
    (default: every unit mod p^a), c = u p^{a+n}."""
    p, a = chi.field.p, chi.conductor
    pa = p ** a
    table, Lc = _chi_table(chi)
    if xs is None:
        xs = qp_unit_table(p, a)[0]
    xs = np.asarray(xs, dtype=np.int64) % pa
    r = _psi_residue(psi, u, a)
    L = lcm(Lc, pa)
    idx = (-table[xs] * (L // Lc) + ((r * xs) % pa) * (L // pa)) % L
    return idx, L


def _qp_unit_sum(chi, psi, u):
    """sum_{x in U/U^a} chi^{-1}(x) psi(x/c) over Q_p with c = u p^{a+n}."""
    return exponent_sum(*_qp_exponents(chi, psi, u))


def _tame_unit_sum(chi, psi, u):
    """Residue-level sum over k^x of chi^{-1}(x) psi_q(b x / u)."""
    k = chi.field.residue_field()
    n = k.q - 1
    up = chi.unit_part
    j = np.arange(n, dtype=np.int64)
    shift = psi.residue_unit
    y = k.exp_table[(j + k.dlog(shift) - k.dlog(u)) % n]
    tr = k.trace_table[y]
    d = up.order
    cidx = (-(up.index // (n // d)) * j) % d
    return exponent_sum(cidx * k.p + tr * d, d * k.p)


def epsilon_sum(chi, psi, c_unit=None, c=None):
    """W(chi, psi, c) by the modified sum; c = c_unit * pi^{a+n}."""
    _check_fields(chi, psi)
    F = chi.field
    a, n = chi.conductor, psi.conductor
    if c is not None:
        if not F.is_qp:
            raise UnsupportedModel("explicit c needs F = Q_p, got %s" % F)
        v, c_unit = split_unit(c, F.p)
        if v != a + n:
            raise ConductorMismatch("nu(c) = %d but a(chi) + n(psi) = %d" % (v, a + n))
    if F.is_qp:
        u = Fraction(1 if c_unit is None else c_unit)
        if u.numerator % F.p == 0 or u.denominator % F.p == 0:
            raise ValueError("c_unit %s is not a %d-adic unit" % (u, F.p))
    else:
        if a > 1:
            raise UnsupportedModel("conductor %d over %s is beyond the residue-level model" % (a, F))
        u = 1 if c_unit is None else int(c_unit)
        if u == 0:
            raise ValueError("c_unit must be a nonzero residue")
    q = F.q
    chi_c = root_of_unity(chi.exponent_at(a + n, u))
    if a == 0:
        value = ScaledCyclotomic(q, 0, chi_c)
    elif F.is_qp:
        value = ScaledCyclotomic(q, -a, chi_c * _qp_unit_sum(chi, psi, u))
    else:
        value = ScaledCyclotomic(q, -1, chi_c * _tame_unit_sum(chi, psi, u))
    return EpsilonResult(value, CChoice(a + n, u), 'W', a, n)


def W(chi, psi):
    return epsilon_sum(chi, psi).value


def minus_one(field):
    """-1 as an argument for characters of `field`."""
    if field.is_qp:
        return Fraction(-1)
    k = field.residue_field()
    return (0, k.neg(1))


def evaluate(chi, x):
    return root_of_unity(chi.exponent(x))


#########################################################
################### Properties
#########################################################

def check_additive_shift(chi, psi, b):
    """W(chi, b psi) = chi(b) W(chi, psi)."""
    lhs = epsilon_sum(chi, psi.scaled(b)).value
    rhs = evaluate(chi, b) * epsilon_sum(chi, psi).value
    return CheckReport('additive_shift', lhs, rhs, lhs == rhs, 'b=%s' % (b,))


def check_functional_equation(chi, psi):
    """W(chi, psi) W(chi^{-1}, psi) = chi(-1), together with |W| = 1."""
    w = W(chi, psi)
    lhs = w * W(chi.inverse(), psi)
    rhs = evaluate(chi, minus_one(chi.field))
    unitary = w * w.conjugate() == 1
    return CheckReport('functional_equation', lhs, rhs, lhs == rhs and unitary,
                       'unitary' if unitary else '|W| != 1')


def check_unit_independence(chi, psi):
    """epsilon_sum is the same for every unit part of c."""
    F = chi.field
    if F.is_qp:
        a = max(chi.conductor, 1)
        units = [u for u in range(1, F.p ** a) if u % F.p]
    else:
        units = list(range(1, F.q))
    ref = epsilon_sum(chi, psi).value
    bad = [u for u in units if epsilon_sum(chi, psi, c_unit=u).value != ref]
    if bad:
        logger.debug("W(%s) depends on c: units %s differ", chi, bad[:5])
    return CheckReport('unit_independence', ref, ref, not bad,
                       '%d units checked' % len(units))


def twist_unramified(chi1, chi2, psi):
    """W(chi1 chi2, psi) = chi2(pi)^{a(chi1)+n(psi)} W(chi1, psi) for unramified chi2."""
    if chi2.conductor != 0:
        raise NotUnramified("chi2 has conductor %d" % chi2.conductor)
    base = epsilon_sum(chi1, psi)
    k = chi1.conductor + psi.conductor
    value = base.value * root_of_unity(k * chi2.pi_exp)
    checks = ()
    try:
        direct = W(chi1 * chi2, psi)
        checks = (('direct', direct == value),)
        if direct != value:
            logger.warning("unramified twist disagrees with the direct sum for %s", chi1)
    except UnsupportedModel:
        pass
    return EpsilonResult(value, base.c_used, 'W', chi1.conductor, psi.conductor, checks)


#########################################################
################### Choice of c, Deligne and Lamprecht-Tate
#########################################################

def find_c(chi, psi, m):
    """Least unit u (mod p^max(m,1)) such that c = u p^{a+n} satisfies
    chi(1 + x) = psi(x / c) for every x in P^{a-m}."""
    F = chi.field
    if not F.is_qp:
        raise UnsupportedModel("the search for c needs F = Q_p, got %s" % F)
    p, a, n = F.p, chi.conductor, psi.conductor
    if 2 * m > a:
        raise PreconditionViolated("need 2m <= a(chi), got m=%d a=%d" % (m, a))
    scale = Fraction(p) ** (a + n)
    if m == 0:
        return scale
    pa = p ** a
    table, Lc = _chi_table(chi)
    L = lcm(Lc, pa)
    xs = p ** (a - m) * np.arange(1, p ** m, dtype=np.int64)
    lhs = (table[(1 + xs) % pa] * (L // Lc)) % L
    for u in range(1, p ** m):
        if u % p == 0:
            continue
        r = _psi_residue(psi, u, a)
        if np.array_equal(lhs, ((r * xs) % pa) * (L // pa)):
            return u * scale
    raise NoValidC("no c with chi(1+x) = psi(x/c) on P^%d for %s" % (a - m, chi))


def deligne_twist(alpha, beta, psi):
    """W(alpha beta, psi) = beta(c) W(alpha, psi) with c = y_{alpha,psi}^{-1}."""
    if not alpha.field.is_qp:
        raise UnsupportedModel("Deligne's twist formula needs F = Q_p")
    a = alpha.conductor
    if a < 2 * beta.conductor:
        raise PreconditionViolated("need a(alpha) >= 2 a(beta), got %d and %d" % (a, beta.conductor))
    try:
        c = find_c(alpha, psi, a // 2)
    except NoValidC as err:
        raise NoValidY(str(err))
    base = epsilon_sum(alpha, psi)
    value = base.value * evaluate(beta, c)
    v, u = split_unit(c, alpha.field.p)
    direct = W(alpha * beta, psi)
    if direct != value:
        logger.warning("Deligne twist disagrees with the direct sum for %s, %s", alpha, beta)
    return EpsilonResult(value, CChoice(v, u), 'W', (alpha * beta).conductor, psi.conductor,
                         (('direct', direct == value),))


def lamprecht_tate(chi, psi, m):
    """Reduced sum chi(c) q^{-(a-2m)/2} sum over (1+P^m)/(1+P^{a-m})."""
    F = chi.field
    if not F.is_qp:
        raise UnsupportedModel("the reduced formula needs F = Q_p")
    p, a = F.p, chi.conductor
    if m < 0 or 2 * m > a:
        raise PreconditionViolated("need 0 <= 2m <= a(chi), got m=%d a=%d" % (m, a))
    if a == 0:
        return epsilon_sum(chi, psi)
    c = find_c(chi, psi, m)
    v, u = split_unit(c, p)
    xs = None if m == 0 else 1 + p ** m * np.arange(p ** (a - 2 * m), dtype=np.int64)
    total = exponent_sum(*_qp_exponents(chi, psi, u, xs)) * evaluate(chi, c)
    return EpsilonResult(ScaledCyclotomic(p, -(a - 2 * m), total), CChoice(v, u), 'W',
                         a, psi.conductor)


def lamprecht_tate_closed_form(chi, psi):
    """chi(c) psi(1/c) for even a; times q^{-1/2} sum_{P^d/P^{d+1}} chi^{-1}(1+x) psi(x/c)
    for odd a = 2d + 1."""
    F = chi.field
    p, a = F.p, chi.conductor
    if a < 2:
        raise PreconditionViolated("closed forms need a(chi) >= 2, got %d" % a)
    d = a // 2
    c = find_c(chi, psi, d)
    head = evaluate(chi, c) * root_of_unity(psi.exponent(1 / c))
    v, u = split_unit(c, p)
    if a % 2 == 0:
        return EpsilonResult(ScaledCyclotomic(p, 0, head), CChoice(v, u), 'W', a, psi.conductor)
    exps = [(-chi.exponent(1 + p ** d * t) + psi.exponent(Fraction(p ** d * t) / c)) % 1
            for t in range(p)]
    return EpsilonResult(ScaledCyclotomic(p, -1, head * from_exponents(exps)), CChoice(v, u),
                         'W', a, psi.conductor)


def g_of_c(chi, psi, c):
    """G(c) = q^{-1/2} sum_{x in P^d/P^{d+1}} psi(x^2 / (2c)) for odd a = 2d + 1."""
    p, a = chi.field.p, chi.conductor
    if a % 2 == 0:
        raise PreconditionViolated("G(c) is defined for odd conductor only")
    d = a // 2
    exps = [psi.exponent(Fraction((p ** d * t) ** 2) / (2 * c)) for t in range(p)]
    return ScaledCyclotomic(p, -1, from_exponents(exps))


def check_mod_p_power_roots(chi, psi):
    """W / chi(c) (even a, or p = 2) and W / (chi(c) G(c)) (odd a, p odd)
    must be p-power roots of unity."""
    p, a = chi.field.p, chi.conductor
    if a < 2:
        raise PreconditionViolated("needs a(chi) >= 2, got %d" % a)
    c = find_c(chi, psi, a // 2)
    w = W(chi, psi)
    ratio = w / evaluate(chi, c)
    if a % 2 == 1 and p != 2:
        ratio = ratio / g_of_c(chi, psi, c)
    root = as_root_of_unity(ratio)
    ok = root is not None and _is_power_of(root[1], p)
    return CheckReport('mod_p_power_roots', w, ratio, ok, 'root=%s' % (root,))


def _is_power_of(N, p):
    while N % p == 0:
        N //= p
    return N == 1


#########################################################
################### Conventions
#########################################################

def convert_convention(result, s):
    """epsilon_BH(chi, s, psi) = q^{(1/2 - s)(a + n)} W(chi, psi)."""
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise UnsupportedExponent("s = %s does not have denominator dividing 2" % s)
    if result.convention != 'W':
        raise UnsupportedExponent("convert from the W convention, not %s" % result.convention)
    k = (1 - 2 * s) * (result.conductor + result.n_psi)
    q = result.value.base_q
    value = result.value * ScaledCyclotomic(q, int(k), 1)
    return EpsilonResult(value, result.c_used, 'BH(%s)' % s, result.conductor, result.n_psi,
                         result.checks)
