"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Desk-scale model of local fields F/Q_p.

Full unit-group arithmetic is available over Q_p itself (integers modulo
p^a).  A general F is described by its invariants (p, e, f, d); characters on
it are supported only at residue level, i.e. conductor <= 1.  The uniformizer
is a formal marker: characters carry their value on it explicitly, and over
Q_p it is p.
"""
import itertools
import logging
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np
import sympy

from localEps.cyclo import root_of_unity
from localEps.errors import InvalidPrime, ParseError, UnsupportedModel
from localEps.finite_field import FFMultChar, get_field, parse_character
from localEps.mini_utils import lcm, p_valuation

logger = logging.getLogger(__name__)

#########################################################
################### Field descriptors
#########################################################

@dataclass(frozen=True)
class LocalFieldDesc:
    """F/Q_p with ramification e, residue degree f and different exponent d."""
    p: int
    e: int = 1
    f: int = 1
    d: int = None

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise InvalidPrime("residue characteristic %d is not a prime" % self.p)
        if self.e < 1 or self.f < 1:
            raise ParseError("e and f must be positive, got e=%d f=%d" % (self.e, self.f))
        tame = gcd(self.p, self.e) == 1
        if self.d is None:
            if not tame:
                raise ParseError("wildly ramified field needs an explicit different exponent")
            object.__setattr__(self, 'd', self.e - 1)
        elif tame and self.d != self.e - 1:
            raise ParseError("tame field with e=%d must have d=%d, got %d" % (self.e, self.e - 1, self.d))
        elif not tame and self.d < self.e:
            raise ParseError("wild field with e=%d needs d >= e, got %d" % (self.e, self.d))

    @property
    def q(self):
        return self.p ** self.f

    @property
    def n_psi(self):
        """Conductor of the canonical additive character psi_F = psi_Qp o Tr."""
        return self.d

    @property
    def is_qp(self):
        return self.e == 1 and self.f == 1

    @property
    def degree(self):
        return self.e * self.f

    def residue_field(self):
        return get_field(self.p, self.f)

    def __str__(self):
        return 'Local(%d, %d, %d, %d)' % (self.p, self.e, self.f, self.d)


def qp(p):
    return LocalFieldDesc(p)


_LOCAL_RE = re.compile(r'^Local\((\d+),\s*(\d+),\s*(\d+),\s*(\d+)\)$')


def parse_local_field(text):
    m = _LOCAL_RE.match(text.strip())
    if m is None:
        raise ParseError("cannot parse local field descriptor %r" % text)
    try:
        return LocalFieldDesc(*(int(g) for g in m.groups()))
    except ValueError as err:
        raise ParseError(str(err))


def composed_psi_conductor(e, d, n_psi):
    """n(psi o Tr_{K/F}) = e_{K/F} n(psi) + d_{K/F}."""
    if e < 1 or d < 0:
        raise ValueError("need e >= 1 and d >= 0, got e=%d d=%d" % (e, d))
    return e * n_psi + d


def tame_different(e):
    return e - 1


def square_class_order(field):
    """|F^x / F^x2| = 4 q^{nu_F(2)}."""
    nu2 = field.e if field.p == 2 else 0
    return 4 * field.q ** nu2


#########################################################
################### Units of Q_p
#########################################################

@lru_cache(maxsize=None)
def _odd_generator(p):
    g = int(sympy.primitive_root(p))
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def qp_unit_generators(p, a):
    """Fixed generators of (Z/p^a)^x with their orders."""
    if a <= 0:
        return ()
    if p != 2:
        pa = p ** a
        return ((_odd_generator(p) % pa, (p - 1) * p ** (a - 1)),)
    if a == 1:
        return ()
    if a == 2:
        return ((3, 2),)
    return ((2 ** a - 1, 2), (5, 2 ** (a - 2)))


@lru_cache(maxsize=64)
def _unit_log_table(p, a):
    """u mod p^a -> exponent vector on qp_unit_generators(p, a)."""
    pa = p ** a
    gens = qp_unit_generators(p, a)
    table = {}
    orders = [o for _, o in gens]
    for exps in itertools.product(*(range(o) for o in orders)):
        u = 1
        for (g, _), k in zip(gens, exps):
            u = u * pow(g, k, pa) % pa
        table[u] = exps
    if not gens:
        for u in range(1, pa):
            if u % p:
                table[u] = ()
    return table


def unit_log(u, p, a):
    return _unit_log_table(p, a)[u % p ** a]


def unit_residue(x, p, a):
    """Residue mod p^a of a p-adic unit given as an int or Fraction."""
    x = Fraction(x)
    pa = p ** a
    return x.numerator * pow(x.denominator, -1, pa) % pa


def split_unit(x, p):
    """x = p^v * u; returns (v, u) with u a p-adic unit (Fraction)."""
    x = Fraction(x)
    v = p_valuation(x, p)
    return v, x / Fraction(p) ** v


def qp_fractional_part(y, p):
    """The r in Z[1/p] cap [0, 1) with y - r in Z_p."""
    y = Fraction(y)
    if y == 0:
        return Fraction(0)
    v = p_valuation(y, p)
    if v >= 0:
        return Fraction(0)
    k = -v
    pk = p ** k
    m = y.denominator // pk
    r = y.numerator * pow(m, -1, pk) % pk
    return Fraction(r, pk)


@dataclass(frozen=True)
class QpUnitChar:
    """Character of (Z/p^level)^x, chi(gen_i) = exp(2 pi i exps[i])."""
    p: int
    level: int
    exps: tuple

    def __post_init__(self):
        gens = qp_unit_generators(self.p, self.level)
        exps = tuple(Fraction(t) % 1 for t in self.exps)
        if len(exps) != len(gens):
            raise ValueError("need %d generator values at level %d, got %d"
                             % (len(gens), self.level, len(exps)))
        for (g, o), t in zip(gens, exps):
            if (t * o).denominator != 1:
                raise ValueError("value %s at generator %d is not an %d-th root of unity" % (t, g, o))
        object.__setattr__(self, 'exps', exps)

    def exponent(self, u):
        if self.level == 0:
            return Fraction(0)
        logs = unit_log(unit_residue(u, self.p, self.level), self.p, self.level)
        return sum((k * t for k, t in zip(logs, self.exps)), Fraction(0)) % 1

    def lift(self, level):
        """The same character read modulo p^level, level >= self.level."""
        if level == self.level:
            return self
        if level < self.level:
            raise ValueError("cannot lower level %d to %d" % (self.level, level))
        n = len(qp_unit_generators(self.p, level))
        exps = self.exps
        if self.p == 2:
            exps = (exps + (Fraction(0),) * n)[:n]
        elif not exps:
            exps = (Fraction(0),)
        return QpUnitChar(self.p, level, exps)

    def is_trivial(self):
        return not any(self.exps)

    def conductor(self):
        """Least m with the character trivial on 1 + p^m (all units for m = 0)."""
        if self.is_trivial():
            return 0
        for m in range(1, self.level + 1):
            if self.p == 2 and m == 1:
                continue
            if self.exponent(1 + self.p ** m) == 0:
                return m
        return self.level

    def __mul__(self, other):
        lv = max(self.level, other.level)
        a, b = self.lift(lv), other.lift(lv)
        return QpUnitChar(self.p, lv, tuple(x + y for x, y in zip(a.exps, b.exps)))

    def __pow__(self, k):
        return QpUnitChar(self.p, self.level, tuple(k * t for t in self.exps))

    def inverse(self):
        return self ** -1

    def order(self):
        return lcm(*(t.denominator for t in self.exps))

    def __str__(self):
        return '[%s] mod %d^%d' % (','.join(str(t) for t in self.exps), self.p, self.level)


def qp_unit_characters(p, level):
    """Every character of (Z/p^level)^x."""
    gens = qp_unit_generators(p, level)
    return [QpUnitChar(p, level, tuple(Fraction(k, o) for k, (_, o) in zip(ks, gens)))
            for ks in itertools.product(*(range(o) for _, o in gens))]


def unit_quotient_reps(field, a):
    """Canonical representatives of U_F / U_F^a."""
    if a <= 0:
        return [1]
    if field.is_qp:
        pa = field.p ** a
        return [u for u in range(1, pa) if u % field.p]
    if a == 1:
        return list(range(1, field.q))
    raise UnsupportedModel("unit quotients beyond level 1 are only modelled over Q_p, not %s" % field)


#########################################################
################### Multiplicative characters
#########################################################

@dataclass(frozen=True)
class LocalMultChar:
    """chi(pi^v u) = exp(2 pi i (v * pi_exp)) * unit_part(u).

    unit_part is an FFMultChar on the residue field (conductor <= 1) or, over
    Q_p, a QpUnitChar.  Over Q_p units are ints/Fractions; elsewhere they are
    residue-field codes.
    """
    field: LocalFieldDesc
    conductor: int
    pi_exp: Fraction
    unit_part: object
    label: str = dc_field(default='', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'pi_exp', Fraction(self.pi_exp) % 1)
        up = self.unit_part
        if isinstance(up, FFMultChar):
            if up.field != self.field.residue_field():
                raise ValueError("unit character lives on %s, not on the residue field of %s"
                                 % (up.field, self.field))
            exact = 0 if up.is_trivial() else 1
        elif isinstance(up, QpUnitChar):
            if not self.field.is_qp or up.p != self.field.p:
                raise UnsupportedModel("unit characters mod p^a need F = Q_p, got %s" % self.field)
            exact = up.conductor()
        else:
            raise TypeError("unsupported unit part %r" % (up,))
        if exact != self.conductor:
            raise ValueError("declared conductor %d but the unit part has conductor %d"
                             % (self.conductor, exact))

    @property
    def value_on_pi(self):
        return root_of_unity(self.pi_exp)

    @property
    def is_unramified(self):
        return self.conductor == 0

    def order(self):
        up = self.unit_part
        o = up.order if isinstance(up, FFMultChar) else up.order()
        return lcm(o, self.pi_exp.denominator)

    ########## evaluation
    def unit_exponent(self, u):
        up = self.unit_part
        if isinstance(up, FFMultChar) and self.field.is_qp:
            u = unit_residue(u, self.field.p, 1)
        return up.exponent(u)

    def exponent_at(self, v, u):
        return (v * self.pi_exp + self.unit_exponent(u)) % 1

    def exponent(self, x):
        """chi(x) for x in Q_p^x (int/Fraction) or x = (v, residue) elsewhere."""
        if isinstance(x, tuple):
            return self.exponent_at(*x)
        if not self.field.is_qp:
            raise UnsupportedModel("evaluate characters of %s on (valuation, residue) pairs" % self.field)
        v, u = split_unit(x, self.field.p)
        return self.exponent_at(v, u)

    def __call__(self, x):
        return root_of_unity(self.exponent(x))

    ########## group structure
    def _unit_level(self):
        return self.unit_part.level if isinstance(self.unit_part, QpUnitChar) else 1

    def __mul__(self, other):
        if self.field != other.field:
            raise ValueError("characters of %s and %s cannot be multiplied" % (self.field, other.field))
        a, b = self.unit_part, other.unit_part
        if isinstance(a, QpUnitChar) or isinstance(b, QpUnitChar):
            a, b = as_qp_unit_char(a, self.field.p), as_qp_unit_char(b, self.field.p)
            up = a * b
            cond = up.conductor()
        else:
            up = a * b
            cond = 0 if up.is_trivial() else 1
        return LocalMultChar(self.field, cond, self.pi_exp + other.pi_exp, up)

    def __pow__(self, k):
        up = self.unit_part ** k
        cond = (0 if up.is_trivial() else 1) if isinstance(up, FFMultChar) else up.conductor()
        return LocalMultChar(self.field, cond, self.pi_exp * k, up)

    def inverse(self):
        return self ** -1

    def as_qp(self, level=None):
        """Same character with a QpUnitChar unit part (F = Q_p only)."""
        up = as_qp_unit_char(self.unit_part, self.field.p)
        if level is not None:
            up = up.lift(level)
        return LocalMultChar(self.field, self.conductor, self.pi_exp, up, self.label)

    def __str__(self):
        t = self.pi_exp
        return 'locchi(%d; pi->zeta_%d^%d; unit->%s)' % (self.conductor, t.denominator, t.numerator,
                                                        self.unit_part)


def as_qp_unit_char(up, p):
    if isinstance(up, QpUnitChar):
        return up
    if up.field.s != 1 or up.field.p != p:
        raise UnsupportedModel("residue character on %s is not a character of Z_%d^x" % (up.field, p))
    if p == 2:
        return QpUnitChar(2, 1, ())
    # read the residue character at the fixed generator of Z_p^x
    g = _odd_generator(p) % p
    return QpUnitChar(p, 1, (up.exponent(g),))


def unramified_character(field, pi_exp=0):
    up = FFMultChar(field.residue_field(), 0) if not field.is_qp else QpUnitChar(field.p, 1, (0,) if field.p != 2 else ())
    return LocalMultChar(field, 0, pi_exp, up)


def trivial_character(field):
    return unramified_character(field, 0)


def qp_character(p, unit_exps, level, pi_exp=0, label=''):
    up = QpUnitChar(p, level, tuple(unit_exps))
    return LocalMultChar(qp(p), up.conductor(), pi_exp, up, label)


def tame_character(field, index, pi_exp=0, label=''):
    """Conductor <= 1 character with residue part chi(index mod q-1)."""
    up = FFMultChar(field.residue_field(), index)
    if field.is_qp:
        up = as_qp_unit_char(up, field.p)
        return LocalMultChar(field, up.conductor(), pi_exp, up, label)
    return LocalMultChar(field, 0 if up.is_trivial() else 1, pi_exp, up, label)


def qp_characters(p, a_max, pi_orders=(1,)):
    """Characters of Q_p^x of conductor <= a_max, chi(p) running over mu_r."""
    out = []
    level = max(a_max, 1)
    pis = sorted({Fraction(k, r) for r in pi_orders for k in range(r)})
    for up in qp_unit_characters(p, level):
        for t in pis:
            out.append(LocalMultChar(qp(p), up.conductor(), t, up))
    return out


_LOCCHI_RE = re.compile(r'^locchi\((\d+); pi->zeta_(\d+)\^(-?\d+); unit->(.*)\)$')
_QPUNIT_RE = re.compile(r'^\[([\d/,]*)\] mod (\d+)\^(\d+)$')


def parse_local_character(text, field):
    m = _LOCCHI_RE.match(text.strip())
    if m is None:
        raise ParseError("cannot parse local character %r" % text)
    a, N, k, unit = m.groups()
    pi_exp = Fraction(int(k), int(N))
    unit = unit.strip()
    try:
        um = _QPUNIT_RE.match(unit)
        if um is not None:
            body, up_p, level = um.groups()
            if int(up_p) != field.p:
                raise ValueError("unit part modulo a power of %s over %s" % (up_p, field))
            exps = tuple(Fraction(t) for t in body.split(',')) if body else ()
            up = QpUnitChar(field.p, int(level), exps)
        else:
            up = parse_character(unit, field.residue_field())
        return LocalMultChar(field, int(a), pi_exp, up)
    except (ValueError, ZeroDivisionError) as err:
        raise ParseError("bad local character %r: %s" % (text, err))


#########################################################
################### Additive characters
#########################################################

@dataclass(frozen=True)
class LocalAdditiveChar:
    """b * psi_F : x -> psi_F(b x).

    Over Q_p the shift b is an exact rational.  Over a general field only
    nu(b) and the residue of b / pi^nu(b) are kept; the character is then
    known on P^{-1-n}: psi(pi^{-1-n} y) = psi_q(b_res * y mod P).
    """
    field: LocalFieldDesc
    shift_valuation: int = 0
    shift: Fraction = None
    residue_unit: int = 1

    def __post_init__(self):
        if self.shift is not None:
            b = Fraction(self.shift)
            if b == 0:
                raise ValueError("the additive character shift must be nonzero")
            object.__setattr__(self, 'shift', b)
            object.__setattr__(self, 'shift_valuation', p_valuation(b, self.field.p))
            v, u = split_unit(b, self.field.p)
            object.__setattr__(self, 'residue_unit', unit_residue(u, self.field.p, 1))

    @property
    def conductor(self):
        return self.shift_valuation + self.field.d

    def scaled(self, b):
        """(b psi)(x) = psi(b x)."""
        if self.field.is_qp:
            return LocalAdditiveChar(self.field, shift=self.shift * Fraction(b))
        v, code = b
        res = self.field.residue_field().mul(self.residue_unit, code)
        return LocalAdditiveChar(self.field, self.shift_valuation + v, None, res)

    def exponent(self, x):
        """psi(x) = exp(2 pi i t) for x in Q_p; returns t."""
        if not self.field.is_qp:
            raise UnsupportedModel("exact evaluation of additive characters needs F = Q_p")
        return qp_fractional_part(self.shift * Fraction(x), self.field.p)

    def residue_exponent(self, v, u):
        """psi(pi^v u) for a unit u known by its residue code (tame model)."""
        n = self.conductor
        if v >= -n:
            return Fraction(0)
        if v == -1 - n:
            k = self.field.residue_field()
            return Fraction(k.trace(k.mul(self.residue_unit, u)), self.field.p)
        raise UnsupportedModel("psi on P^%d is outside the residue-level model" % v)

    def __call__(self, x):
        return root_of_unity(self.exponent(x))

    def __str__(self):
        if self.shift is not None:
            return 'psi(b=%s)' % self.shift
        return 'psi(nu_b=%d; res=%d)' % (self.shift_valuation, self.residue_unit)


def canonical_psi(field):
    if field.is_qp:
        return LocalAdditiveChar(field, shift=Fraction(1))
    return LocalAdditiveChar(field, 0, None, 1)


def qp_psi(p, b=1):
    return LocalAdditiveChar(qp(p), shift=Fraction(b))


#########################################################
################### Q_2 square classes
#########################################################

@dataclass(frozen=True)
class QuadraticRecord:
    d: int
    conductor: int
    norm_group: str
    char: LocalMultChar


# (d, norm group generators modulo squares, description)
_Q2_NORM_GROUPS = (
    (5, (4, -1, 5), '<4> x U'),
    (-1, (2, 5), '<2> x <5> x U^3'),
    (-5, (-2, 5), '<-2> x <5> x U^3'),
    (2, (2, -1), '<2> x <-1> x U^3'),
    (10, (10, -1), '<10> x <-1> x U^3'),
    (-2, (2, 3), '<2> x <3> x U^3'),
    (-10, (-2, 3), '<-2> x <3> x U^3'),
)


def _square_class(x):
    """Image of x in Q_2^x / Q_2^x2 = Z/2 x (Z/8)^x."""
    v, u = split_unit(x, 2)
    return v % 2, unit_residue(u, 2, 3)


def _class_span(gens):
    span = {(0, 1)}
    for g in gens:
        cg = _square_class(g)
        span |= {((v + cg[0]) % 2, u * cg[1] % 8) for v, u in span}
    return span


def norm_group_member(x, gens):
    return _square_class(x) in _class_span(gens)


def character_from_norm_group(gens, label=''):
    """The quadratic character of Q_2^x whose kernel is the given index-2 group."""
    span = _class_span(gens)
    if len(span) != 4:
        raise ValueError("norm group %s does not have index 2 modulo squares" % (gens,))
    half = Fraction(1, 2)
    pi_exp = 0 if _square_class(2) in span else half
    exps = tuple(0 if _square_class(g) in span else half for g in (-1, 5))
    up = QpUnitChar(2, 3, exps)
    return LocalMultChar(qp(2), up.conductor(), pi_exp, up, label)


@lru_cache(maxsize=None)
def q2_quadratic_catalogue():
    """The seven quadratic extensions Q_2(sqrt d) with their characters."""
    out = []
    for i, (d, gens, desc) in enumerate(_Q2_NORM_GROUPS, start=1):
        chi = character_from_norm_group(gens, label='chi_%d' % i)
        out.append(QuadraticRecord(d, chi.conductor, desc, chi))
    logger.debug("Q_2 catalogue conductors %s", [r.conductor for r in out])
    return tuple(out)


def q2_character_group():
    """All eight characters of Q_2^x / Q_2^x2, trivial one first."""
    cat = q2_quadratic_catalogue()
    return (trivial_character(qp(2)).as_qp(3),) + tuple(r.char for r in cat)


@lru_cache(maxsize=64)
def qp_unit_table(p, a, level=None):
    """(reps, logs): numpy arrays of the units mod p^a and their exponent
    vectors on the generators of level `level` (default a)."""
    level = a if level is None else level
    reps = np.array([u for u in range(1, p ** a) if u % p], dtype=np.int64)
    ngens = len(qp_unit_generators(p, level))
    logs = np.zeros((len(reps), ngens), dtype=np.int64)
    for i, u in enumerate(reps.tolist()):
        logs[i, :] = unit_log(u, p, level)
    return reps, logs
