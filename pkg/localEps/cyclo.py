"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Exact arithmetic in cyclotomic fields Q(zeta_N), extended by a formal square
root of a positive integer q.

A Cyclotomic stores an integer numerator vector over the power basis
1, z, ..., z^(phi(N)-1) (z = zeta_N) together with a positive common
denominator, reduced modulo the N-th cyclotomic polynomial.  Values of
different orders meet in Q(zeta_lcm).  A ScaledCyclotomic is value * q^(e/2)
with e normalized to {0, 1}; equality and hashing look through the formal
root by realising sqrt(q) inside a cyclotomic field.
"""
import logging
import numbers
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np
import sympy
from sympy.polys.specialpolys import cyclotomic_poly

from localEps.errors import DivisionByZero, IncompatibleBase, ParseError
from localEps.mini_utils import lcm

logger = logging.getLogger(__name__)

_x = sympy.Symbol('x')

INT64_BOUND = 2 ** 62

#########################################################
################### Polynomial kernels
#########################################################

@lru_cache(maxsize=None)
def cyclotomic_coeffs(N):
    """Coefficients of Phi_N, lowest degree first."""
    poly = cyclotomic_poly(N, _x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _primes(N):
    return tuple(int(l) for l in sympy.primefactors(N))


@lru_cache(maxsize=None)
def _ramanujan_ratio(N, k):
    m = N // gcd(k, N)
    return Fraction(int(sympy.mobius(m)), int(sympy.totient(m)))


@lru_cache(maxsize=None)
def _radical_split(N):
    """(r, t, phi(r), low, height) with r = rad(N) and t = N / r, so that
    Phi_N(z) = Phi_r(z^t); low is Phi_r without its leading 1."""
    r = 1
    for l in _primes(N):
        r *= l
    low = np.array(cyclotomic_coeffs(r)[:-1], dtype=np.int64)
    return r, N // r, len(low), low, int(np.abs(low).max())


def _int_array(vec):
    """vec as an int64 array, or as an object array once an entry reaches INT64_BOUND."""
    if isinstance(vec, np.ndarray) and vec.dtype == object:
        return vec
    try:
        arr = np.asarray(vec, dtype=np.int64)
    except OverflowError:
        return np.array([int(c) for c in vec], dtype=object)
    if len(arr) and (arr.max() >= INT64_BOUND or arr.min() <= -INT64_BOUND):
        arr = arr.astype(object)
    return arr


def _max_abs(arr):
    return int(np.abs(arr).max()) if len(arr) else 0


def _reduce(vec, N):
    """Reduce the integer vector vec (vec[k] the coefficient of z^k) modulo
    Phi_N; returns the phi(N) low coefficients as a list of ints.

    vec is folded modulo z^N - 1, laid out as an r x t array (r = rad(N))
    whose rows are then reduced modulo Phi_r(z^t).
    """
    r, t, deg_r, low, height = _radical_split(N)
    arr = _int_array(vec)
    n = len(arr)
    if n > N:
        rows = -(-n // N)
        if arr.dtype != object and _max_abs(arr) * rows >= INT64_BOUND:
            arr = arr.astype(object)
        pad = np.zeros(rows * N - n, dtype=arr.dtype)
        arr = np.concatenate([arr, pad]).reshape(rows, N).sum(axis=0)
    elif n < N:
        arr = np.concatenate([arr, np.zeros(N - n, dtype=arr.dtype)])
    else:
        arr = arr.copy()
    M = arr.reshape(r, t)
    phi = low.astype(object) if M.dtype == object else low
    bound = _max_abs(arr)
    for i in range(r - 1, deg_r - 1, -1):
        top = _max_abs(M[i])
        if not top:
            continue
        bound += top * height
        if bound >= INT64_BOUND and M.dtype != object:
            M, phi = M.astype(object), low.astype(object)
        M[i - deg_r:i] -= phi[:, None] * M[i][None, :]
        M[i] = 0
    return M[:deg_r].reshape(-1).tolist()


def _poly_mul(a, b):
    A, B = _int_array(a), _int_array(b)
    ia, ib = np.flatnonzero(A), np.flatnonzero(B)
    if len(ia) < len(ib):
        A, B, ia, ib = B, A, ib, ia
    n = len(A) + len(B) - 1
    if not len(ib):
        return [0] * n
    small = (A.dtype != object and B.dtype != object
             and _max_abs(A[ia]) * _max_abs(B[ib]) * len(ib) < INT64_BOUND)
    if small and 4 * len(ib) > len(B):
        return np.convolve(A, B).tolist()
    A = A if small else A.astype(object)
    out = np.zeros(n, dtype=A.dtype)
    for j in ib.tolist():
        out[j:j + len(A)] += int(B[j]) * A
    return out.tolist()


def _normalize(num, den):
    g = gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


def _shrink(N, num):
    """Move a reduced vector to a smaller order when the value visibly lives
    there: N = 2 mod 4 always halves, and l^2 | N drops a factor l when only
    exponents divisible by l occur."""
    num = _int_array(num)
    while N > 1:
        if not num[1:].any():
            return 1, num[:1].tolist()
        if N % 4 == 2:
            M = N // 2
            half = (M + 1) // 2
            ks = np.arange(len(num))
            vec = np.zeros(M, dtype=num.dtype)
            vec[(ks * half) % M] = np.where(ks % 2, -num, num)
            N, num = M, _int_array(_reduce(vec, M))
            continue
        for l in _primes(N):
            if N % (l * l) == 0 and not num.reshape(-1, l)[:, 1:].any():
                N, num = N // l, num[::l]
                break
        else:
            break
    return N, num.tolist()


def _as_cyclotomic(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, numbers.Rational):
        f = Fraction(int(x.numerator), int(x.denominator))
        return Cyclotomic._raw(1, [f.numerator], f.denominator)
    return NotImplemented


#########################################################
################### Cyclotomic numbers
#########################################################

class Cyclotomic(object):
    """An element of Q(zeta_order) in canonical reduced form."""

    __slots__ = ('order', 'num', 'den', '_hash')

    def __init__(self, order, coeffs=None, shrink=True):
        order = int(order)
        if order < 1:
            raise ValueError("cyclotomic order must be positive, got %d" % order)
        if coeffs is None:
            coeffs = ()
        items = coeffs.items() if hasattr(coeffs, 'items') else enumerate(coeffs)
        fr = [(int(k) % order, Fraction(c)) for k, c in items]
        den = lcm(*(c.denominator for _, c in fr))
        vec = [0] * order
        for k, c in fr:
            vec[k] += c.numerator * (den // c.denominator)
        self._set(order, vec, den, shrink)

    @classmethod
    def _raw(cls, order, vec, den, shrink=True):
        obj = cls.__new__(cls)
        obj._set(order, vec, den, shrink)
        return obj

    def _set(self, order, vec, den, shrink):
        num = _reduce(vec, order)
        if shrink:
            order, num = _shrink(order, num)
        self.num, self.den = _normalize(num, den)
        self.order = order
        self._hash = None

    ########## views
    @property
    def coeffs(self):
        """Map exponent k -> rational coefficient of zeta_order^k."""
        return {k: Fraction(c, self.den) for k, c in enumerate(self.num) if c}

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError("%s is not rational" % self)
        return Fraction(self.num[0], self.den)

    def trace(self):
        """Tr(z)/[Q(z):Q]; unchanged by embedding into a larger field."""
        t = Fraction(0)
        for k, c in enumerate(self.num):
            if c:
                t += c * _ramanujan_ratio(self.order, k)
        return t / self.den

    def _lift(self, M):
        """Reduced numerator vector of self inside Q(zeta_M), order | M."""
        if M == self.order:
            return list(self.num)
        num = _int_array(self.num)
        vec = np.zeros(M, dtype=num.dtype)
        vec[:len(num) * (M // self.order):M // self.order] = num
        return _reduce(vec, M)

    def to_complex(self):
        """Floating-point value; for display and debugging only."""
        k = np.arange(len(self.num))
        w = np.exp(2j * np.pi * k / self.order)
        return complex(np.dot(np.array(self.num, dtype=float), w) / self.den)

    ########## comparison
    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        other = _as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == other.order:
            return self.num == other.num and self.den == other.den
        M = lcm(self.order, other.order)
        a, b = self._lift(M), other._lift(M)
        return all(x * other.den == y * self.den for x, y in zip(a, b))

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.trace())
        return self._hash

    ########## arithmetic
    def __neg__(self):
        return Cyclotomic._raw(self.order, [-c for c in self.num], self.den)

    def __add__(self, other):
        other = _as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        M = lcm(self.order, other.order)
        a, b = self._lift(M), other._lift(M)
        vec = [x * other.den + y * self.den for x, y in zip(a, b)]
        return Cyclotomic._raw(M, vec, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        if other.order == 1:
            return Cyclotomic._raw(self.order, [c * other.num[0] for c in self.num],
                                   self.den * other.den)
        if self.order == 1:
            return other * self
        M = lcm(self.order, other.order)
        vec = _poly_mul(self._lift(M), other._lift(M))
        return Cyclotomic._raw(M, vec, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("division by zero in Q(zeta_%d)" % self.order)
        if self.order == 1:
            return Cyclotomic._raw(1, [self.den], self.num[0]) if self.num[0] > 0 \
                else Cyclotomic._raw(1, [-self.den], -self.num[0])
        conj = self.conjugate()
        norm = self * conj
        if norm.is_rational():
            return conj * (1 / norm.to_fraction())
        f = sympy.Poly(list(reversed(self.num)), _x, domain=sympy.QQ)
        g = sympy.Poly(list(reversed(cyclotomic_coeffs(self.order))), _x, domain=sympy.QQ)
        h = f.invert(g)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(h.all_coeffs())]
        return Cyclotomic(self.order, coeffs) * self.den

    def __truediv__(self, other):
        other = _as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        n = int(n)
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = Cyclotomic._raw(1, [1], 1)
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def galois(self, a):
        """Image under zeta_N -> zeta_N^a."""
        N = self.order
        if gcd(a, N) != 1:
            raise ValueError("%d is not a unit modulo %d" % (a, N))
        vec = [0] * N
        for k, c in enumerate(self.num):
            if c:
                vec[(k * a) % N] += c
        return Cyclotomic._raw(N, vec, self.den)

    def conjugate(self):
        return self.galois(-1)

    ########## text
    def _terms(self):
        out = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            s = _fmt(Fraction(c, self.den))
            if k == 1:
                s += '*z'
            elif k > 1:
                s += '*z^%d' % k
            out.append(s)
        return ' + '.join(out) if out else '0'

    def __str__(self):
        return '(%s) with z = zeta_%d' % (self._terms(), self.order)

    def __repr__(self):
        return 'Cyclotomic(%r)' % str(self)


def _fmt(f):
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else '%d/%d' % (f.numerator, f.denominator)


#########################################################
################### Scaled values c * q^(e/2)
#########################################################

class ScaledCyclotomic(object):
    """value * base_q^(half_exponent/2) with half_exponent in {0, 1}."""

    __slots__ = ('base_q', 'half_exponent', 'value', '_absorbed')

    def __init__(self, base_q=1, half_exponent=0, value=1):
        q = int(base_q)
        if q < 1:
            raise ValueError("base_q must be a positive integer, got %r" % (base_q,))
        v = _as_cyclotomic(value)
        if v is NotImplemented:
            raise TypeError("cannot scale %r" % (value,))
        e = int(half_exponent)
        r = e % 2
        k = (e - r) // 2
        if k:
            v = v * (Fraction(q) ** k)
        if r and isqrt(q) ** 2 == q:
            v = v * isqrt(q)
            r = 0
        if not v:
            r = 0
        self.base_q, self.half_exponent, self.value = q, r, v
        self._absorbed = None

    def absorbed(self):
        """The same number with sqrt(q) realised in a cyclotomic field."""
        if self._absorbed is None:
            self._absorbed = self.value * sqrt_q(self.base_q) if self.half_exponent else self.value
        return self._absorbed

    def _coerce(self, other):
        if isinstance(other, ScaledCyclotomic):
            return other
        c = _as_cyclotomic(other)
        if c is NotImplemented:
            return NotImplemented
        return ScaledCyclotomic(self.base_q, 0, c)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.base_q == other.base_q and self.half_exponent == other.half_exponent:
            return self.value == other.value
        return self.absorbed() == other.absorbed()

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(self.absorbed())

    def __bool__(self):
        return bool(self.value)

    def __neg__(self):
        return ScaledCyclotomic(self.base_q, self.half_exponent, -self.value)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.half_exponent == other.half_exponent and (
                self.base_q == other.base_q or self.half_exponent == 0):
            return ScaledCyclotomic(self.base_q, self.half_exponent, self.value + other.value)
        return ScaledCyclotomic(self.base_q, 0, self.absorbed() + other.absorbed())

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.base_q == other.base_q:
            q = self.base_q
        elif other.half_exponent == 0:
            q = self.base_q
        elif self.half_exponent == 0:
            q = other.base_q
        else:
            raise IncompatibleBase("cannot multiply sqrt(%d) and sqrt(%d) formally"
                                   % (self.base_q, other.base_q))
        return ScaledCyclotomic(q, self.half_exponent + other.half_exponent,
                                self.value * other.value)

    __rmul__ = __mul__

    def inverse(self):
        if not self.value:
            raise DivisionByZero("division by zero scaled value")
        return ScaledCyclotomic(self.base_q, -self.half_exponent, self.value.inverse())

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        n = int(n)
        return ScaledCyclotomic(self.base_q, self.half_exponent * n, self.value ** n)

    def conjugate(self):
        return ScaledCyclotomic(self.base_q, self.half_exponent, self.value.conjugate())

    def to_complex(self):
        return self.value.to_complex() * (self.base_q ** 0.5 if self.half_exponent else 1.0)

    def __str__(self):
        return '%d^(%d/2) * %s' % (self.base_q, self.half_exponent, self.value)

    def __repr__(self):
        return 'ScaledCyclotomic(%r)' % str(self)


def scaled(x, q=1):
    """Wrap a number as a ScaledCyclotomic (e = 0) over base q."""
    if isinstance(x, ScaledCyclotomic):
        return x
    return ScaledCyclotomic(q, 0, x)


def absorb(z):
    if isinstance(z, ScaledCyclotomic):
        return z.absorbed()
    c = _as_cyclotomic(z)
    if c is NotImplemented:
        raise TypeError("not a cyclotomic value: %r" % (z,))
    return c


#########################################################
################### Constructors and operations
#########################################################

def zeta(N, k=1):
    """zeta_N^k."""
    return Cyclotomic(N, {k % N: 1})


def root_of_unity(t):
    """exp(2 pi i t) for a rational t."""
    t = Fraction(t)
    return zeta(t.denominator, t.numerator)


def exponent_sum(idx, L, weights=None):
    """Exact sum of w_j * zeta_L^{idx_j}.

    This is the counting kernel behind every character sum: exponents are
    binned with numpy and the count vector is reduced modulo Phi_L once.
    """
    L = int(L)
    idx = np.mod(np.asarray(idx, dtype=np.int64), L)
    den = 1
    if weights is None:
        counts = np.bincount(idx, minlength=L)
    elif isinstance(weights, np.ndarray) and weights.dtype.kind in 'iu':
        counts = np.zeros(L, dtype=np.int64)
        np.add.at(counts, idx, weights.astype(np.int64))
    else:
        w = [Fraction(x) for x in weights]
        den = lcm(*(x.denominator for x in w))
        wi = np.array([x.numerator * (den // x.denominator) for x in w], dtype=np.int64)
        counts = np.zeros(L, dtype=np.int64)
        np.add.at(counts, idx, wi)
    return Cyclotomic._raw(L, counts, den)


def from_exponents(exponents, weights=None):
    """Exact sum of w_j * exp(2 pi i t_j) for rational exponents t_j."""
    exps = [Fraction(t) for t in exponents]
    if not exps:
        return Cyclotomic(1)
    L = lcm(*(t.denominator for t in exps))
    idx = [(t.numerator * (L // t.denominator)) % L for t in exps]
    return exponent_sum(idx, L, weights)


def embed(z, M):
    """z written in Q(zeta_M); z.order must divide M."""
    z = absorb(z)
    if M % z.order:
        raise ValueError("Q(zeta_%d) does not contain Q(zeta_%d)" % (M, z.order))
    return Cyclotomic._raw(M, z._lift(M), z.den, shrink=False)


def galois(z, a):
    return absorb(z).galois(a)


def conjugate(z):
    """Complex conjugation zeta -> zeta^-1; the formal sqrt(q) is fixed."""
    if isinstance(z, (Cyclotomic, ScaledCyclotomic)):
        return z.conjugate()
    return absorb(z).conjugate()


_OPS = {'add': lambda a, b: a + b,
        'sub': lambda a, b: a - b,
        'mul': lambda a, b: a * b,
        'div': lambda a, b: a / b}


def cyclo_arith(a, b, op):
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError("unknown operation %r, expected one of %s" % (op, sorted(_OPS)))
    return fn(a, b)


@lru_cache(maxsize=None)
def legendre_table(p):
    """Legendre symbols (x/p) for x = 0, ..., p-1, odd prime p."""
    table = np.full(p, -1, dtype=np.int64)
    x = np.arange(1, p, dtype=np.int64)
    table[(x * x) % p] = 1
    table[0] = 0
    return table


@lru_cache(maxsize=None)
def _sqrt_prime(p):
    if p == 2:
        return zeta(8) + zeta(8, 7)
    g = exponent_sum(np.arange(1, p), p, legendre_table(p)[1:])
    return g if p % 4 == 1 else g * zeta(4, 3)


@lru_cache(maxsize=None)
def sqrt_q(q):
    """Positive square root of q as an element of a cyclotomic field."""
    out = Cyclotomic(1, [1])
    for p, a in sympy.factorint(q).items():
        out = out * (int(p) ** (a // 2))
        if a % 2:
            out = out * _sqrt_prime(int(p))
    return out


def as_root_of_unity(z):
    """(k, N) in lowest terms with z = zeta_N^k, or None."""
    c = absorb(z)
    if not c or c.den != 1:
        return None
    N = c.order
    r, t = _radical_split(N)[:2]
    # +-zeta_N^(i t + j) reduces onto exponents = j mod t only
    j = next(k for k, x in enumerate(c.num) if x) % t
    num = list(c.num)
    for i in range(r):
        k = j + i * t
        vec = np.zeros(N, dtype=np.int64)
        vec[k] = 1
        red = _reduce(vec, N)
        if red == num:
            e = Fraction(k, N)
        elif [-x for x in red] == num:
            e = (Fraction(k, N) + Fraction(1, 2)) % 1
        else:
            continue
        return e.numerator, e.denominator
    return None


def root_exponent(z):
    """z = exp(2 pi i t); returns t in [0, 1) or raises ValueError."""
    r = as_root_of_unity(z)
    if r is None:
        raise ValueError("%s is not a root of unity" % (z,))
    return Fraction(*r)


_ROOT_NAMES = {(0, 1): '1', (1, 2): '-1', (1, 4): 'i', (3, 4): '-i'}


def _human_core(v):
    if v.is_rational():
        return _fmt(v.to_fraction())
    n = v * v.conjugate()
    if not n.is_rational():
        return None
    r = n.to_fraction()
    # |v|^2 = s^2 t with t squarefree
    m = r.numerator * r.denominator
    t = 1
    for p, a in sympy.factorint(m).items():
        if a % 2:
            t *= int(p)
    s = Fraction(isqrt(m // t), r.denominator)
    rt = as_root_of_unity(v / s if t == 1 else v / (sqrt_q(t) * s))
    if rt is None:
        return None
    name = _ROOT_NAMES.get(rt, 'zeta_%d^%d' % (rt[1], rt[0]))
    neg = name.startswith('-')
    factors = [] if s == 1 else [_fmt(s)]
    if name.lstrip('-') != '1' or (s == 1 and t == 1):
        factors.append(name.lstrip('-'))
    if t != 1:
        factors.append('sqrt(%d)' % t)
    return ('-' if neg else '') + '*'.join(factors)


def human(z):
    """Table notation: '1', '-i', 'i*sqrt(3)', falling back to str(z)."""
    if isinstance(z, ScaledCyclotomic):
        v, q, e = z.value, z.base_q, z.half_exponent
    else:
        v, q, e = absorb(z), 1, 0
    core = _human_core(v)
    if core is None:
        return str(z)
    if not e:
        return core
    if core == '1':
        return 'sqrt(%d)' % q
    if core == '-1':
        return '-sqrt(%d)' % q
    return '%s*sqrt(%d)' % (core, q)


#########################################################
################### Parsing
#########################################################

_VALUE_RE = re.compile(r'^(?:(\d+)\^\((\d+)/2\) \* )?\((.*)\) with z = zeta_(\d+)$')
_TERM_RE = re.compile(r'^(-?\d+(?:/\d+)?)(\*z(?:\^(\d+))?)?$')


def parse(text):
    """Inverse of str() for Cyclotomic and ScaledCyclotomic."""
    m = _VALUE_RE.match(text.strip())
    if m is None:
        raise ParseError("cannot parse cyclotomic value %r" % text)
    q, e, body, N = m.groups()
    N = int(N)
    if N < 1:
        raise ParseError("zeta order must be positive in %r" % text)
    coeffs = {}
    if body != '0':
        for term in body.split(' + '):
            tm = _TERM_RE.match(term)
            if tm is None:
                raise ParseError("bad term %r in %r" % (term, text))
            c, zpart, k = tm.groups()
            k = int(k) if k is not None else (1 if zpart else 0)
            coeffs[k] = coeffs.get(k, 0) + Fraction(c)
    value = Cyclotomic(N, coeffs)
    if q is None:
        return value
    return ScaledCyclotomic(int(q), int(e), value)
