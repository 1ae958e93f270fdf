"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Finite fields F_{p^s}, their canonical additive character, multiplicative
characters and Gauss sums.

Elements are integer codes c_0 + c_1 p + ... + c_{s-1} p^{s-1} for the
polynomial c_0 + c_1 x + ... modulo the field's modulus.  Multiplication
goes through discrete-log tables built eagerly at construction.
"""
import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np
import sympy

from localEps.cyclo import ScaledCyclotomic, exponent_sum, zeta
from localEps.errors import BothTrivial, InvalidPrime, ParseError

logger = logging.getLogger(__name__)

#########################################################
################### Field construction
#########################################################

def _times_x(d, modulus, p):
    """Multiply the coefficient list d by x modulo the monic modulus."""
    top = d[-1]
    out = [0] + d[:-1]
    if top:
        out = [(c - top * m) % p for c, m in zip(out, modulus)]
    return out


def _x_order_is_full(modulus, p, s):
    n = p ** s - 1
    cur = [1] + [0] * (s - 1)
    one = list(cur)
    for k in range(1, n + 1):
        cur = _times_x(cur, modulus, p)
        if cur == one:
            return k == n
    return False


def least_primitive_modulus(p, s):
    """Lexicographically least (c_0, ..., c_{s-1}) such that
    x^s + c_{s-1} x^{s-1} + ... + c_0 is primitive over F_p."""
    for low in itertools.product(range(p), repeat=s):
        if low[0] == 0:
            continue
        if _x_order_is_full(list(low), p, s):
            return tuple(low) + (1,)
    raise ValueError("no primitive polynomial of degree %d over F_%d" % (s, p))


class FqField(object):
    """F_q, q = p^s, with fixed modulus, generator and discrete logs."""

    def __init__(self, p, s=1):
        p, s = int(p), int(s)
        if not sympy.isprime(p):
            raise InvalidPrime("%d is not a prime" % p)
        if s < 1:
            raise ValueError("extension degree must be positive, got %d" % s)
        self.p, self.s = p, s
        self.q = q = p ** s
        n = q - 1
        self.modulus = least_primitive_modulus(p, s)
        low = list(self.modulus[:-1])
        self.powers_p = p ** np.arange(s, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.digits = (codes[:, None] // self.powers_p[None, :]) % p

        # powers of x, then re-based on the least primitive element
        xpow = np.zeros(n, dtype=np.int64)
        cur = [1] + [0] * (s - 1)
        for k in range(n):
            xpow[k] = self._encode(cur)
            cur = _times_x(cur, low, p)
        xlog = np.full(q, -1, dtype=np.int64)
        xlog[xpow] = np.arange(n)
        for tup in itertools.product(range(p), repeat=s):
            code = self._encode(tup)
            if code and gcd(int(xlog[code]), n) == 1:
                break
        self.generator = code
        j0 = int(xlog[code])
        self.exp_table = xpow[(j0 * np.arange(n)) % n]
        self.dlog_table = np.full(q, -1, dtype=np.int64)
        self.dlog_table[self.exp_table] = np.arange(n)
        if n > 1 and len(set(self.exp_table.tolist())) != n:
            raise ValueError("generator of F_%d does not have order %d" % (q, n))

        # absolute trace is F_p-linear: tabulate it on the basis 1, x, ...
        tr_basis = np.zeros(s, dtype=np.int64)
        for i in range(s):
            acc = np.zeros(s, dtype=np.int64)
            for m in range(s):
                acc += self.digits[xpow[(i * p ** m) % n]]
            acc %= p
            tr_basis[i] = acc[0]
        self.trace_table = (self.digits @ tr_basis) % p
        logger.debug("built F_%d with modulus %s and generator %d", q, self.modulus, code)

    def _encode(self, coeffs):
        return int(sum(int(c) * int(self.p) ** i for i, c in enumerate(coeffs)))

    ########## element arithmetic (codes may be ints or numpy arrays)
    def element(self, coeffs):
        coeffs = list(coeffs) + [0] * (self.s - len(coeffs))
        return self._encode([c % self.p for c in coeffs[:self.s]])

    def coeffs(self, x):
        return tuple(int(c) for c in self.digits[x])

    def elements(self):
        return range(self.q)

    def add(self, a, b):
        r = ((self.digits[a] + self.digits[b]) % self.p) @ self.powers_p
        return int(r) if np.ndim(r) == 0 else r

    def neg(self, a):
        r = ((-self.digits[a]) % self.p) @ self.powers_p
        return int(r) if np.ndim(r) == 0 else r

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def dlog(self, x):
        if np.any(np.asarray(x) == 0):
            raise ValueError("discrete log of 0 in F_%d" % self.q)
        r = self.dlog_table[x]
        return int(r) if np.ndim(r) == 0 else r

    def gpow(self, j):
        r = self.exp_table[np.mod(j, self.q - 1)]
        return int(r) if np.ndim(r) == 0 else r

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.gpow(self.dlog(a) + self.dlog(b))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d" % self.q)
        return self.gpow(-self.dlog(a))

    def power(self, a, k):
        if a == 0:
            if k <= 0:
                raise ZeroDivisionError("0 to a nonpositive power in F_%d" % self.q)
            return 0
        return self.gpow(self.dlog(a) * k)

    def from_int(self, m):
        """Image of the integer m in the prime field."""
        return int(m) % self.p

    ########## trace and norm
    def trace(self, x):
        r = self.trace_table[x]
        return int(r) if np.ndim(r) == 0 else r

    def norm(self, x):
        return self.norm_to(x, 1)

    def trace_to(self, x, t):
        """Relative trace to the subfield F_{p^t}."""
        if self.s % t:
            raise ValueError("F_%d^%d is not a subfield of F_%d" % (self.p, t, self.q))
        acc = 0
        for i in range(self.s // t):
            acc = self.add(acc, self.power(x, self.p ** (t * i)) if x else 0)
        return acc

    def norm_to(self, x, t):
        """Relative norm to the subfield F_{p^t}."""
        if self.s % t:
            raise ValueError("F_%d^%d is not a subfield of F_%d" % (self.p, t, self.q))
        return self.power(x, (self.q - 1) // (self.p ** t - 1)) if x else 0

    def frobenius_conjugates(self, x):
        return [self.power(x, self.p ** i) if x else 0 for i in range(self.s)]

    def is_square(self, x):
        return x == 0 or self.dlog(x) % 2 == 0 or self.p == 2

    def poly_eval(self, coeffs, a):
        """Evaluate the F_p-polynomial sum coeffs[i] X^i at a."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, a), self.from_int(c))
        return acc

    ########## identity
    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self):
        return hash(('Fq', self.p, self.s))

    def __str__(self):
        return 'Fq(%d^%d; modulus=[%s])' % (self.p, self.s, ','.join(str(c) for c in self.modulus))

    __repr__ = __str__


@lru_cache(maxsize=64)
def get_field(p, s=1):
    return FqField(p, s)


_FIELD_RE = re.compile(r'^Fq\((\d+)\^(\d+)(?:; modulus=\[([\d,]+)\])?\)$')


def parse_field(text):
    m = _FIELD_RE.match(text.strip())
    if m is None:
        raise ParseError("cannot parse field descriptor %r" % text)
    field = get_field(int(m.group(1)), int(m.group(2)))
    if m.group(3) is not None:
        given = tuple(int(c) for c in m.group(3).split(','))
        if given != field.modulus:
            raise ParseError("modulus %s is not the canonical modulus %s of %s"
                             % (list(given), list(field.modulus), field))
    return field


def subfield_embedding(big, small):
    """Array mapping codes of `small` to codes of `big`, sending the
    polynomial variable of `small` to the least-code root of its modulus."""
    if big.p != small.p or big.s % small.s:
        raise ValueError("%s does not embed in %s" % (small, big))
    step = (big.q - 1) // (small.q - 1)
    alpha = None
    for j in range(0, big.q - 1, step):
        cand = big.gpow(j)
        if big.poly_eval(small.modulus, cand) == 0 and (alpha is None or cand < alpha):
            alpha = cand
    out = np.zeros(small.q, dtype=np.int64)
    for code in range(small.q):
        acc = 0
        for i, c in enumerate(small.coeffs(code)):
            if c:
                term = big.mul(big.from_int(c), big.power(alpha, i) if i else 1)
                acc = big.add(acc, term)
        out[code] = acc
    return out


#########################################################
################### Characters
#########################################################

def psi_q(field, x):
    """Canonical additive character zeta_p^{Tr x}."""
    return zeta(field.p, field.trace(x))


@dataclass(frozen=True)
class FFMultChar:
    """chi(g^j) = zeta_{q-1}^{index * j}; chi(0) is undefined."""
    field: FqField
    index: int

    def __post_init__(self):
        object.__setattr__(self, 'index', int(self.index) % (self.field.q - 1))

    @property
    def order(self):
        n = self.field.q - 1
        return n // gcd(self.index, n)

    def is_trivial(self):
        return self.index == 0

    def exponent(self, x):
        """chi(x) = exp(2 pi i t), returns t."""
        if x == 0:
            raise ValueError("chi(0) is undefined")
        return Fraction(self.index * self.field.dlog(x), self.field.q - 1) % 1

    def __call__(self, x):
        if x == 0:
            raise ValueError("chi(0) is undefined")
        return zeta(self.field.q - 1, self.index * self.field.dlog(x))

    def __mul__(self, other):
        if other.field != self.field:
            raise ValueError("characters on different fields")
        return FFMultChar(self.field, self.index + other.index)

    def inverse(self):
        return FFMultChar(self.field, -self.index)

    def __pow__(self, k):
        return FFMultChar(self.field, self.index * k)

    def __str__(self):
        return 'chi(%d mod %d)' % (self.index, self.field.q - 1)


def trivial_character(field):
    return FFMultChar(field, 0)


def quadratic_character(field):
    if field.p == 2:
        raise InvalidPrime("F_%d has no quadratic character" % field.q)
    return FFMultChar(field, (field.q - 1) // 2)


def characters(field):
    return [FFMultChar(field, k) for k in range(field.q - 1)]


_CHAR_RE = re.compile(r'^chi\((-?\d+) mod (\d+)\)$')


def parse_character(text, field):
    m = _CHAR_RE.match(text.strip())
    if m is None or int(m.group(2)) != field.q - 1:
        raise ParseError("cannot parse character %r over %s" % (text, field))
    return FFMultChar(field, int(m.group(1)))


#########################################################
################### Gauss sums
#########################################################

def _character_sum(chi, b_exp):
    """sum over x = g^j of chi(x) * zeta_p^{Tr(b x)}, b = g^b_exp."""
    F = chi.field
    n = F.q - 1
    j = np.arange(n, dtype=np.int64)
    tr = F.trace_table[F.exp_table[(j + b_exp) % n]]
    d = chi.order
    k = chi.index // (n // d)
    idx = ((k * j) % d) * F.p + tr * d
    return exponent_sum(idx, d * F.p)


def gauss_sum(chi, psi_shift=1):
    """G(chi, b psi_q) = sum_{x != 0} chi(x) psi_q(b x)."""
    F = chi.field
    b = int(psi_shift)
    if b == 0:
        value = F.q - 1 if chi.is_trivial() else 0
        return ScaledCyclotomic(F.q, 0, value)
    return ScaledCyclotomic(F.q, 0, _character_sum(chi, F.dlog(b)))


def quadratic_gauss_closed_form(p, s=1):
    """(-1)^(s-1) sqrt(q) for p = 1 mod 4, (-1)^(s-1) i^s sqrt(q) for p = 3 mod 4."""
    if p == 2:
        raise InvalidPrime("the quadratic Gauss sum needs an odd prime")
    if not sympy.isprime(p):
        raise InvalidPrime("%d is not a prime" % p)
    sign = -1 if (s - 1) % 2 else 1
    unit = zeta(4, s) if p % 4 == 3 else zeta(1)
    return ScaledCyclotomic(p ** s, 1, unit * sign)


def quadratic_square_sum(field, b=1):
    """sum over all x of psi_q(b x^2); equals G(eta, b psi_q) for b != 0."""
    n = field.q - 1
    if b == 0:
        return ScaledCyclotomic(field.q, 0, field.q)
    j = np.arange(n, dtype=np.int64)
    sq = field.exp_table[(2 * j + field.dlog(b)) % n]
    tr = np.concatenate([[0], field.trace_table[sq]])
    return ScaledCyclotomic(field.q, 0, exponent_sum(tr, field.p))


@dataclass(frozen=True)
class DavenportHasseReport:
    lhs: ScaledCyclotomic
    rhs: ScaledCyclotomic
    equal: bool


def lift_character(chi, big):
    """chi composed with the norm from `big` down to chi's field."""
    small = chi.field
    iota = subfield_embedding(big, small)
    step = (big.q - 1) // (small.q - 1)
    u = big.dlog(int(iota[small.generator])) // step
    u_inv = pow(u, -1, small.q - 1) if small.q > 2 else 0
    return FFMultChar(big, chi.index * u_inv * step), iota


def lift_and_check_davenport_hasse(chi, s, psi_shift=1):
    """Check G(chi o N, psi o Tr) = (-1)^(s-1) G(chi, psi)^s over F_{q^s}."""
    small = chi.field
    if chi.is_trivial() and psi_shift == 0:
        raise BothTrivial("chi and psi are both trivial")
    big = get_field(small.p, small.s * s)
    lifted, iota = lift_character(chi, big)
    lhs = gauss_sum(lifted, int(iota[psi_shift]))
    g = gauss_sum(chi, psi_shift)
    rhs = g ** s * (-1 if (s - 1) % 2 else 1)
    equal = lhs == rhs
    if not equal:
        logger.warning("Davenport-Hasse mismatch for %s over %s, s=%d", chi, small, s)
    return DavenportHasseReport(lhs, rhs, equal)
