"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Lambda functions lambda_{K/F}(psi) = W(Ind_{K/F} 1, psi) of local extensions.

Closed forms cover unramified, odd degree, tamely ramified quadratic and
biquadratic (Klein four) extensions for odd p.  Over Q_2 the seven
quadratic extensions are computed from their characters.  The structural
classifier reads lambda_1^G off the Sylow 2-subgroup of a Galois group.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from localEps.cyclo import ScaledCyclotomic, human, zeta
from localEps.epsilon import CheckReport, W, epsilon_sum, evaluate, minus_one
from localEps.errors import (NotARoot, OddDegree, OpenProblem, PreconditionViolated,
                             WildPrime)
from localEps.finite_field import gauss_sum, quadratic_character
from localEps.group_core import klein_subgroup, sylow2_type
from localEps.local_field import (LocalAdditiveChar, LocalFieldDesc, q2_quadratic_catalogue,
                                  qp_psi, tame_character, unramified_character)
from localEps.mini_utils import prime_power

logger = logging.getLogger(__name__)

PROVENANCES = ('closed_form', 'gauss_sum', 'epsilon_product', 'classifier')

# lambda_{Q_2(sqrt d)/Q_2}(psi_Q2) as (k, 4) with value i^k
Q2_EXPECTED = ((5, 0), (-1, 1), (-5, 1), (2, 0), (10, 2), (-2, 1), (-10, 3))


@dataclass(frozen=True)
class LambdaValue:
    value: ScaledCyclotomic
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError("unknown provenance %r" % self.provenance)
        v = self.value
        if not isinstance(v, ScaledCyclotomic):
            v = ScaledCyclotomic(1, 0, v)
            object.__setattr__(self, 'value', v)
        if v ** 4 != 1:
            raise NotARoot("lambda = %s is not a fourth root of unity" % v)

    def __mul__(self, other):
        other = other.value if isinstance(other, LambdaValue) else other
        return LambdaValue(self.value * other, self.provenance)

    def __pow__(self, k):
        return LambdaValue(self.value ** k, self.provenance)

    def __eq__(self, other):
        if isinstance(other, LambdaValue):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return human(self.value)


def _sign(k):
    return -1 if k % 2 else 1


def _lam(x, provenance):
    return LambdaValue(ScaledCyclotomic(1, 0, x), provenance)


#########################################################
################### Closed forms
#########################################################

def lambda_unramified(field, n_psi, degree):
    """(-1)^{n(psi)} for an unramified extension of even degree."""
    if degree % 2:
        raise OddDegree("degree %d is odd; use lambda_odd" % degree)
    return _lam(_sign(n_psi), 'closed_form')


def lambda_odd(field, degree):
    """Galois extensions of odd degree have lambda = 1."""
    if degree % 2 == 0:
        raise PreconditionViolated("degree %d is even" % degree)
    return _lam(1, 'closed_form')


def lambda_tower(lambda_LK, lambda_KF, degree_LK):
    """lambda_{L/F} = lambda_{L/K} * lambda_{K/F}^{[L:K]}."""
    return LambdaValue(lambda_LK.value * lambda_KF.value ** degree_LK, 'closed_form')


def lambda_odd_ramification(n_psi, degree, e):
    """Even degree, odd ramification index: lambda = (-1)^{n(psi)}."""
    if degree % 2 or e % 2 == 0 or degree % e:
        raise PreconditionViolated("need even degree with odd e dividing it, got degree=%d e=%d"
                                   % (degree, e))
    f = degree // e
    # unramified layer of degree f below a totally ramified layer of degree e
    return lambda_tower(lambda_odd(None, e), lambda_unramified(None, n_psi, f), e)


def _tame_minus_one_value(p, s):
    unit = zeta(4, s) if p % 4 == 3 else zeta(1)
    return unit * _sign(s - 1)


def lambda_tame_quadratic(field, psi_choice='conductor_minus_1', trace_residue=None):
    """lambda_{K/F} for a tamely ramified quadratic K/F, p odd.

    For psi_choice = 'conductor_minus_1' this is (-1)^{s-1} (p = 1 mod 4) or
    (-1)^{s-1} i^s (p = 3 mod 4), q = p^s.  For 'canonical' the value is
    multiplied by Delta(c') = +-1, read from the square class of the residue
    of Tr_{F/F_0}(p c) with c = pi^{-1-d} and pi a norm from K.  When F/Q_p is
    unramified that residue is 1; otherwise pass its residue-field code.
    """
    p, s = field.p, field.f
    if p == 2:
        raise WildPrime("quadratic extensions of %s are wildly ramified" % field)
    value = _tame_minus_one_value(p, s)
    if psi_choice == 'conductor_minus_1':
        return _lam(value, 'closed_form')
    if psi_choice != 'canonical':
        raise ValueError("psi_choice must be 'conductor_minus_1' or 'canonical', got %r" % psi_choice)
    if trace_residue is None:
        if field.e != 1:
            raise PreconditionViolated("ramified %s needs the residue of Tr(pc)" % field)
        trace_residue = 1
    k = field.residue_field()
    if trace_residue % k.q == 0:
        raise ValueError("the residue of Tr(pc) must be nonzero")
    if not k.is_square(trace_residue):
        value = -value
    return _lam(value, 'closed_form')


def lambda_tame_quadratic_gauss(field):
    """q^{-1/2} G(eta, psi_q) on the residue field, eta quadratic."""
    if field.p == 2:
        raise WildPrime("quadratic extensions of %s are wildly ramified" % field)
    k = field.residue_field()
    g = gauss_sum(quadratic_character(k))
    return LambdaValue(g * ScaledCyclotomic(k.q, -1, 1), 'gauss_sum')


def lambda_klein4(q):
    """lambda of the biquadratic extension with norm group F^x2, p odd."""
    p, _ = prime_power(q)
    if p == 2:
        raise WildPrime("the square class group of a 2-adic field is not Klein four")
    return _lam(-1 if q % 4 == 1 else 1, 'closed_form')


def lambda_square_class(field):
    """lambda of the abelian K/F with N(K^x) = F^x2."""
    if field.p == 2:
        # rank >= 3, not metacyclic
        return _lam(1, 'closed_form')
    return lambda_klein4(field.q)


def deligne_constant(W_rho, W_det):
    """c(rho) = W(rho) / W(det rho)."""
    if not W_det:
        raise PreconditionViolated("W(det rho) vanishes")
    return W_rho / W_det


#########################################################
################### Q_2
#########################################################

@dataclass(frozen=True)
class Q2Row:
    d: int
    conductor: int
    value: LambdaValue
    expected: LambdaValue
    ok: bool


@dataclass(frozen=True)
class Q2Table:
    rows: tuple
    product: LambdaValue
    product_ok: bool

    @property
    def ok(self):
        return self.product_ok and all(r.ok for r in self.rows)

    def as_dict(self):
        return {r.d: r.value for r in self.rows}


def lambda_q2_table(expected=Q2_EXPECTED):
    """W(chi_d, psi_Q2) for the seven quadratic extensions Q_2(sqrt d)."""
    psi = qp_psi(2)
    want = dict(expected)
    rows = []
    prod = ScaledCyclotomic(1, 0, 1)
    for rec in q2_quadratic_catalogue():
        lam = LambdaValue(W(rec.char, psi), 'epsilon_product')
        exp_val = _lam(zeta(4, want[rec.d]), 'closed_form')
        rows.append(Q2Row(rec.d, rec.conductor, lam, exp_val, lam == exp_val))
        prod = prod * lam.value
    product = LambdaValue(prod, 'epsilon_product')
    product_ok = product == lambda_square_class(LocalFieldDesc(2))
    table = Q2Table(tuple(rows), product, product_ok)
    if not table.ok:
        logger.warning("Q_2 lambda table disagrees: %s",
                       [(r.d, str(r.value)) for r in rows if not r.ok])
    return table


def lambda_wild_quadratic(field, d):
    """lambda_{F(sqrt d)/F} for p = 2; known only for F = Q_2."""
    if field.p != 2:
        raise PreconditionViolated("%s is not a 2-adic field" % field)
    if not field.is_qp:
        raise OpenProblem("lambda of wild quadratic extensions of %s is not known in closed form" % field)
    table = lambda_q2_table().as_dict()
    if d not in table:
        raise ValueError("Q_2(sqrt %d) is not one of the seven quadratic extensions" % d)
    return table[d]


#########################################################
################### Remark table for the Klein four case
#########################################################

@dataclass(frozen=True)
class RemarkRow:
    """One row of the sign table for p odd.

    lambda_2 is given with the positive sign when lambda_2 = -lambda_3;
    otherwise both signs occur and lambda_2_choices lists them.
    """
    q_mod4: int
    n_parity: int
    lambda_KF: int
    lambda_1: int
    lambda_2_choices: tuple
    lambda_3_opposite: bool


def remark_table(q, n_psi):
    if q % 2 == 0:
        raise WildPrime("the sign table needs odd q, got %d" % q)
    odd = n_psi % 2
    if q % 4 == 1:
        lam_kf, roots = -1, (zeta(1), -zeta(1))
    else:
        lam_kf, roots = 1, (zeta(4), zeta(4, 3))
    choices = roots if odd else roots[:1]
    return RemarkRow(q % 4, odd, lam_kf, _sign(n_psi), choices, not odd)


def check_remark_row(q, n_psi, l1, l2, l3):
    row = remark_table(q, n_psi)
    lam = [x.value if isinstance(x, LambdaValue) else x for x in (l1, l2, l3)]
    ok = lam[0] == row.lambda_1 and lam[0] * lam[1] * lam[2] == row.lambda_KF
    if row.lambda_3_opposite:
        ok = ok and lam[2] == -lam[1] and (lam[1] in row.lambda_2_choices
                                          or lam[2] in row.lambda_2_choices)
    else:
        ok = ok and lam[2] == lam[1] and lam[1] in row.lambda_2_choices
    return CheckReport('remark_row', tuple(human(x) for x in lam),
                       (row.lambda_KF, row.lambda_1), ok, 'q=%d n=%d' % (q, n_psi))


#########################################################
################### Structural classifier
#########################################################

@dataclass(frozen=True)
class ClassifierContext:
    """Arithmetic data pinning the values the group alone leaves open.

    alpha is 'unramified' or 'ramified' for the quadratic character of the
    exceptional case; ramified alpha is resolved for n_psi = -1 only.
    """
    q: int
    n_psi: int = 0
    alpha: str = None


@dataclass(frozen=True)
class ClassifierResult:
    case: int
    sylow: object
    formula: str
    value: LambdaValue = None


def _w_alpha(context):
    if context.alpha == 'unramified':
        return _sign(context.n_psi)
    if context.alpha == 'ramified' and context.n_psi == -1:
        p, s = prime_power(context.q)
        return _tame_minus_one_value(p, s)
    return None


def lambda_classifier(g, context=None):
    """lambda_1^G from the Sylow 2-subgroup S of G."""
    syl = sylow2_type(g)
    if syl.kind == 'trivial':
        return ClassifierResult(1, syl, '1', _lam(1, 'classifier'))
    if syl.kind == 'cyclic':
        odd_part = g.n // syl.order
        # lambda_{K/F}^[E:K] with [E:K] = odd_part; W(alpha) = +-1 once |S| >= 4
        sign = 1 if odd_part % 4 == 1 else -1
        if syl.order == 2:
            formula = 'W(alpha)' if sign == 1 else 'W(alpha)^-1'
        elif syl.order == 4:
            formula = 'beta(-1) * W(alpha)'
        else:
            formula = 'W(alpha)'
        value = None
        # |S| = 4 keeps the unresolved factor beta(-1)
        if context is not None and context.q % 2 == 1 and syl.order != 4:
            w = _w_alpha(context)
            if w is not None:
                value = _lam(w, 'classifier') ** sign
        return ClassifierResult(2, syl, formula, value)
    if syl.kind == 'metacyclic':
        if klein_subgroup(g) is None:
            return ClassifierResult(3, syl, '1', _lam(1, 'classifier'))
        if context is not None and context.q % 2 == 1:
            lam = lambda_klein4(context.q)
            return ClassifierResult(3, syl, 'lambda_1^V', LambdaValue(lam.value, 'classifier'))
        return ClassifierResult(3, syl, 'lambda_1^V')
    return ClassifierResult(4, syl, '1', _lam(1, 'classifier'))


#########################################################
################### Identity suite
#########################################################

def _klein_characters(field):
    """(omega_1, omega_2, omega_3): unramified, tame with omega_2(pi) = 1, and their product."""
    k = field.residue_field()
    w1 = unramified_character(field, Fraction(1, 2))
    w2 = tame_character(field, (k.q - 1) // 2, 0)
    return w1, w2, w1 * w2


def _psi_of_conductor(field, n):
    if field.is_qp:
        return qp_psi(field.p, Fraction(field.p) ** n)
    return LocalAdditiveChar(field, n, None, 1)


def _odd_prime_powers(q_max):
    out = []
    for q in range(3, q_max + 1, 2):
        try:
            out.append((q,) + prime_power(q))
        except ValueError:
            continue
    return out


def lambda_identity_suite(q_max=13):
    """Exact checks of the lambda identities; returns a list of CheckReport."""
    reports = []
    table = lambda_q2_table()
    reports.append(CheckReport('q2_table', tuple(str(r.value) for r in table.rows),
                               tuple(str(r.expected) for r in table.rows),
                               all(r.ok for r in table.rows)))
    reports.append(CheckReport('q2_product', table.product, 1, table.product_ok))
    for rec in q2_quadratic_catalogue():
        lam = W(rec.char, qp_psi(2))
        delta = evaluate(rec.char, -1)
        reports.append(CheckReport('lambda_squared', lam * lam, delta, lam * lam == delta,
                                   'Q_2(sqrt %d)' % rec.d))

    for q, p, s in _odd_prime_powers(q_max):
        field = LocalFieldDesc(p, 1, s)
        closed = lambda_tame_quadratic(field)
        gauss = lambda_tame_quadratic_gauss(field)
        reports.append(CheckReport('tame_closed_vs_gauss', closed.value, gauss.value,
                                   closed == gauss, 'q=%d' % q))
        w1, w2, w3 = _klein_characters(field)
        for n in (0, 1):
            psi = _psi_of_conductor(field, n)
            l1, l2, l3 = (epsilon_sum(w, psi).value for w in (w1, w2, w3))
            tag = 'q=%d n=%d' % (q, n)
            reports.append(CheckReport('unramified_closed_form', l1,
                                       lambda_unramified(field, n, 2).value,
                                       l1 == lambda_unramified(field, n, 2).value, tag))
            reports.append(CheckReport('l1_l3_is_minus_l2', l1 * l3, -l2, l1 * l3 == -l2, tag))
            reports.append(CheckReport('l1_l2_is_minus_l3', l1 * l2, -l3, l1 * l2 == -l3, tag))
            reports.append(CheckReport('klein4_product', l1 * l2 * l3, lambda_klein4(q).value,
                                       l1 * l2 * l3 == lambda_klein4(q).value, tag))
            reports.append(check_remark_row(q, n, l1, l2, l3))
            for w, lam in ((w2, l2), (w3, l3)):
                delta = evaluate(w, minus_one(field))
                reports.append(CheckReport('lambda_squared', lam * lam, delta,
                                           lam * lam == delta, tag))
    bad = [r for r in reports if not r.equal]
    logger.info("lambda identities: %d checks, %d failures", len(reports), len(bad))
    for r in bad:
        logger.debug("lambda identity %s failed (%s): %s != %s", r.name, r.detail, r.lhs, r.rhs)
    return reports
