"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Finite groups as Cayley tables.

Elements are the ids 0..n-1 with 0 the identity; `table[a, b]` is the id of
a*b.  Subgroups are sorted tuples of ids.  Named groups are closed from
generators breadth first, so ids are reproducible.
"""
import csv
import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy
from sympy.combinatorics import Permutation, PermutationGroup

from localEps.cyclo import zeta
from localEps.errors import (AxiomViolation, Degenerate, InvalidPrime, LocalEpsError, NotAbelian,
                             NotAGroup, NotClosed, NotSubgroup, ParseError, TooLarge)
from localEps.mini_utils import lcm

logger = logging.getLogger(__name__)

MAX_ORDER = 4096
_FULL_CHECK = 256
_SAMPLES = 20000


class FiniteGroup(object):
    """Group given by its multiplication table."""

    def __init__(self, table, labels=None, name='', check=True):
        T = np.asarray(table)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise NotAGroup("a Cayley table must be a nonempty square array, got shape %s"
                            % (T.shape,))
        n = T.shape[0]
        if n > MAX_ORDER:
            raise TooLarge("order %d exceeds %d" % (n, MAX_ORDER))
        if T.min() < 0 or T.max() >= n:
            raise NotClosed("table entries must lie in 0..%d" % (n - 1))
        self.table = T.astype(np.int32)
        self.n = n
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if check:
            self._check_axioms()
        self.inv = np.argmax(self.table == 0, axis=1).astype(np.int32)
        self._orders = None

    def _check_axioms(self):
        T, n = self.table, self.n
        ar = np.arange(n)
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise AxiomViolation("id 0 is not the identity of %s" % (self.name or 'the table'))
        srt = np.sort(T, axis=1)
        if not (srt == ar).all() or not (np.sort(T, axis=0) == ar[:, None]).all():
            raise AxiomViolation("the table of %s is not a Latin square" % (self.name or 'the group'))
        if n <= _FULL_CHECK:
            for a in range(n):
                if not np.array_equal(T[T[a]], T[a][T]):
                    raise AxiomViolation("multiplication is not associative at a=%d" % a)
        else:
            rng = np.random.RandomState(0)
            a, b, c = rng.randint(0, n, size=(3, _SAMPLES))
            if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
                raise AxiomViolation("multiplication is not associative on sampled triples")

    ########## elements
    def mul(self, a, b):
        return int(self.table[a, b])

    def inverse(self, a):
        return int(self.inv[a])

    def power(self, a, k):
        if k < 0:
            a, k = self.inverse(a), -k
        out, base = 0, int(a)
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def powers(self, k):
        """Array x -> x^k over all elements."""
        ar = np.arange(self.n)
        out = np.zeros(self.n, dtype=np.int32)
        base = ar.astype(np.int32)
        k = int(k)
        if k < 0:
            base, k = self.inv.copy(), -k
        while k:
            if k & 1:
                out = self.table[out, base]
            base = self.table[base, base]
            k >>= 1
        return out

    def commutator(self, x, y):
        """[x, y] = x y x^-1 y^-1."""
        return self.mul(self.mul(self.mul(x, y), self.inverse(x)), self.inverse(y))

    def commutator_table(self):
        T, inv = self.table, self.inv
        return T[T[T, inv[:, None]], inv[None, :]]

    def conjugate(self, g, x):
        return self.mul(self.mul(g, x), self.inverse(g))

    @property
    def orders(self):
        if self._orders is None:
            ar = np.arange(self.n, dtype=np.int32)
            orders = np.zeros(self.n, dtype=np.int64)
            P = ar.copy()
            k = 1
            while (orders == 0).any():
                hit = (P == 0) & (orders == 0)
                orders[hit] = k
                P = self.table[P, ar]
                k += 1
            self._orders = orders
        return self._orders

    def order_of(self, a):
        return int(self.orders[a])

    def exponent(self):
        return lcm(*(int(o) for o in set(self.orders.tolist())))

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def __len__(self):
        return self.n

    def __str__(self):
        return '%s(order %d)' % (self.name or 'Group', self.n)


#########################################################
################### Subgroups
#########################################################

def generated(g, gens):
    """Subgroup generated by `gens`, as a sorted tuple."""
    elems = {0}
    frontier = [0]
    gens = [int(x) for x in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(elems))


def is_subgroup(g, h):
    h = np.asarray(sorted(set(int(x) for x in h)), dtype=np.int64)
    if len(h) == 0 or h[0] != 0 or g.n % len(h):
        return False
    prods = g.table[np.ix_(h, h)]
    return bool(np.isin(prods, h).all())


def _as_subgroup(g, h):
    h = tuple(sorted(set(int(x) for x in h)))
    if not is_subgroup(g, h):
        raise NotSubgroup("%s is not a subgroup of %s" % (list(h)[:8], g))
    return h


def is_normal(g, h):
    hs = np.asarray(h, dtype=np.int64)
    conj = g.table[g.table[:, hs], g.inv[:, None]]
    return bool(np.isin(conj, hs).all())


def center(g):
    return tuple(int(z) for z in np.nonzero((g.table == g.table.T).all(axis=1))[0])


def commutator_subgroup(g):
    return generated(g, sorted(set(g.commutator_table().ravel().tolist())))


def cyclic_subgroups(g):
    seen = set()
    out = []
    for a in range(g.n):
        c = generated(g, [a])
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def all_subgroups(g):
    """Every subgroup, by closing the cyclic ones under joins."""
    subs = set(cyclic_subgroups(g))
    cyc = list(subs)
    frontier = list(subs)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyc:
                if set(c) <= set(h):
                    continue
                j = generated(g, h + c)
                if j not in subs:
                    subs.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(subs, key=lambda s: (len(s), s))


def left_cosets(g, h):
    """(coset index per element, least-id representative per coset)."""
    h = np.asarray(h, dtype=np.int64)
    index = np.full(g.n, -1, dtype=np.int64)
    reps = []
    for x in range(g.n):
        if index[x] < 0:
            index[g.table[x, h]] = len(reps)
            reps.append(x)
    return index, reps


def random_transversal(g, h, rng):
    """Random left transversal of h; rng is a numpy RandomState."""
    index, reps = left_cosets(g, h)
    out = []
    for k in range(len(reps)):
        members = np.nonzero(index == k)[0]
        out.append(int(members[rng.randint(len(members))]))
    return out


@dataclass(frozen=True)
class Quotient:
    group: FiniteGroup
    proj: np.ndarray
    reps: tuple


def quotient(g, n):
    """G/N for normal N; coset ids follow least-id representatives."""
    n = _as_subgroup(g, n)
    if not is_normal(g, n):
        raise NotSubgroup("%s is not normal in %s" % (list(n)[:8], g))
    index, reps = left_cosets(g, n)
    r = np.asarray(reps, dtype=np.int64)
    table = index[g.table[np.ix_(r, r)]]
    name = '%s/N' % (g.name or 'G')
    return Quotient(FiniteGroup(table, name=name, check=False), index, tuple(reps))


@dataclass(frozen=True)
class DerivedData:
    commutator: tuple
    center: tuple
    is_two_step_nilpotent: bool
    is_abelian: bool


def derived_data(g):
    comm = commutator_subgroup(g)
    z = center(g)
    return DerivedData(comm, z, set(comm) <= set(z), len(comm) == 1)


#########################################################
################### Transfer
#########################################################

def _mod_derived(g, h, x):
    """Least id of x [H, H]."""
    hh = commutator_subgroup(restrict(g, h))
    hs = np.asarray(h, dtype=np.int64)
    return int(min(g.table[x, hs[list(hh)]]))


def restrict(g, h):
    """h as a FiniteGroup; ids of the result index into h."""
    hs = np.asarray(h, dtype=np.int64)
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[hs] = np.arange(len(hs))
    return FiniteGroup(pos[g.table[np.ix_(hs, hs)]], check=False)


def transfer(g, h, x, transversal=None):
    """T_{G/H}(x) = prod_i t_{x(i)}^-1 x t_i, read in H/[H, H].

    The result is the least id of its class modulo [H, H].
    """
    h = _as_subgroup(g, h)
    index, reps = left_cosets(g, h)
    if transversal is not None:
        reps = [0] * len(reps)
        for t in transversal:
            reps[index[t]] = int(t)
    out = 0
    for t in reps:
        xt = g.mul(x, t)
        u = reps[index[xt]]
        out = g.mul(out, g.mul(g.inverse(u), xt))
    return _mod_derived(g, h, out)


def transfer_correction(g, h, x):
    """T_{G/H}(x) x^{-[G:H]} for abelian H."""
    h = _as_subgroup(g, h)
    d = g.n // len(h)
    return g.mul(transfer(g, h, x), g.power(x, -d))


def check_two_step_identities(g, n_max=12):
    """[x^n, y] = [x, y]^n and x^n y^n = (xy)^n [x, y]^{n(n-1)/2} for all x, y."""
    T = g.table
    C = g.commutator_table()
    xy = T
    bad = []
    for n in range(1, n_max + 1):
        pn = g.powers(n)
        lhs1 = C[pn[:, None], np.arange(g.n)[None, :]]
        rhs1 = g.powers(n)[C]
        lhs2 = T[pn[:, None], pn[None, :]]
        rhs2 = T[pn[xy], g.powers(n * (n - 1) // 2)[C]]
        if not np.array_equal(lhs1, rhs1):
            bad.append(('commutator_power', n))
        if not np.array_equal(lhs2, rhs2):
            bad.append(('power_of_product', n))
    if bad:
        logger.debug("two-step identities fail on %s: %s", g, bad)
    return not bad, bad


#########################################################
################### Abelian groups
#########################################################

def _require_abelian(a):
    if not a.is_abelian():
        raise NotAbelian("%s is not abelian" % a)


def miller_product(a):
    """Product of all elements of an abelian group."""
    _require_abelian(a)
    out = 0
    for x in range(a.n):
        out = a.mul(out, x)
    return out


def _basis_search(a, orders, chosen, size):
    if not orders:
        return chosen if size == a.n else None
    m = orders[0]
    for t in np.nonzero(a.orders == m)[0].tolist():
        span = len(generated(a, chosen + [t]))
        if span == size * m:
            found = _basis_search(a, orders[1:], chosen + [t], span)
            if found is not None:
                return found
    return None


def _ilog(c, p):
    e = 0
    while c > 1:
        c //= p
        e += 1
    return e


@dataclass(frozen=True)
class ElementaryDivisors:
    factors: tuple
    two_rank: int
    basis: tuple


def elementary_divisors(a):
    """Invariant factors m_1 | m_2 | ... | m_s of an abelian group, with a
    basis of elements of those orders."""
    _require_abelian(a)
    factors = []
    for p in sorted(int(p) for p in sympy.factorint(a.n)):
        # log_p |A[p^k]| = sum_i min(k, lambda_i)
        sizes = [0]
        k = 1
        while k == 1 or sizes[-1] != sizes[-2]:
            sizes.append(_ilog(int(np.count_nonzero((p ** k) % a.orders == 0)), p))
            k += 1
        conj = [sizes[i] - sizes[i - 1] for i in range(1, len(sizes) - 1)]
        parts = [sum(1 for c in conj if c > j) for j in range(conj[0])]
        factors.append(sorted((p ** e for e in parts), reverse=True))
    width = max((len(f) for f in factors), default=0)
    chain = []
    for i in range(width):
        m = 1
        for f in factors:
            if i < len(f):
                m *= f[i]
        chain.append(m)
    chain = sorted(chain)
    basis = _basis_search(a, sorted(chain, reverse=True), [], 1)
    if basis is None:
        raise AxiomViolation("no basis with orders %s found in %s" % (chain, a))
    two_rank = sum(1 for m in chain if m % 2 == 0)
    return ElementaryDivisors(tuple(chain), two_rank, tuple(reversed(basis)))


def bicyclic_counts(m):
    """(psi(m), elements of order m, complements of a fixed cyclic factor) in Z_m x Z_m."""
    if m < 1:
        raise ValueError("m must be positive, got %d" % m)
    psi = Fraction(m)
    order_m = Fraction(m * m)
    for p in sympy.factorint(m):
        psi *= 1 + Fraction(1, p)
        order_m *= 1 - Fraction(1, p * p)
    return int(psi), int(order_m), m


def bicyclic_brute(m):
    """bicyclic_counts by enumeration in Z_m x Z_m."""
    a = abelian(m, m)
    cyc = [c for c in cyclic_subgroups(a) if len(c) == m]
    order_m = int(np.count_nonzero(a.orders == m))
    b = generated(a, [_abelian_id(a, (0, 1 % m))])
    complements = sum(1 for c in cyc if set(c) & set(b) == {0})
    return len(cyc), order_m, complements


def _abelian_id(a, coords):
    return a.labels.index(str(tuple(coords)))


#########################################################
################### Sylow 2-subgroups
#########################################################

def _normalizes(g, x, s):
    conj = g.table[g.table[x, s], g.inv[x]]
    return bool(np.isin(conj, s).all())


def sylow_subgroup(g, p=2):
    """A Sylow p-subgroup, grown one normalizing p-element at a time."""
    target = 1
    while g.n % (target * p) == 0:
        target *= p
    s = (0,)
    pelems = [x for x in range(g.n) if _is_power(g.order_of(x), p)]
    while len(s) < target:
        sa = np.asarray(s, dtype=np.int64)
        for x in pelems:
            if x in s or not _normalizes(g, x, sa):
                continue
            grown = generated(g, s + (x,))
            if _is_power(len(grown), p):
                s = grown
                break
        else:
            raise AxiomViolation("could not grow a %d-subgroup of %s past order %d" % (p, g, len(s)))
    return s


def _is_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def klein_subgroup(g, within=None):
    """Least {e, a, b, ab} isomorphic to C2 x C2, or None."""
    pool = range(g.n) if within is None else within
    inv2 = [x for x in pool if g.order_of(x) == 2]
    for a, b in itertools.combinations(inv2, 2):
        if g.mul(a, b) == g.mul(b, a):
            return tuple(sorted((0, a, b, g.mul(a, b))))
    return None


def _is_metacyclic(g, s):
    ss = np.asarray(s, dtype=np.int64)
    for c in {generated(g, [x]) for x in s}:
        if not _normalizes_all(g, ss, c):
            continue
        idx = len(s) // len(c)
        cset = np.asarray(c, dtype=np.int64)
        for b in s:
            # order of b modulo c
            y, k = b, 1
            while not np.isin(y, cset):
                y = g.mul(y, b)
                k += 1
            if k == idx:
                return True
    return False


def _normalizes_all(g, s, c):
    cs = np.asarray(c, dtype=np.int64)
    conj = g.table[g.table[s[:, None], cs[None, :]], g.inv[s][:, None]]
    return bool(np.isin(conj, cs).all())


@dataclass(frozen=True)
class Sylow2Type:
    kind: str
    order: int
    contains_klein: bool
    elements: tuple

    def __str__(self):
        if self.kind == 'cyclic':
            return 'cyclic(%d)' % self.order
        if self.kind == 'metacyclic':
            return 'metacyclic_not_cyclic(order %d, klein=%s)' % (self.order, self.contains_klein)
        return self.kind


def sylow2_type(g):
    if g.n > MAX_ORDER:
        raise TooLarge("order %d exceeds %d" % (g.n, MAX_ORDER))
    s = sylow_subgroup(g, 2)
    k4 = klein_subgroup(g, within=s) is not None
    if len(s) == 1:
        kind = 'trivial'
    elif any(g.order_of(x) == len(s) for x in s):
        kind = 'cyclic'
    elif _is_metacyclic(g, s):
        kind = 'metacyclic'
    else:
        kind = 'not_metacyclic'
    return Sylow2Type(kind, len(s), k4, s)


#########################################################
################### Alternating bicharacters
#########################################################

class AltBichar(object):
    """X(a, b) = zeta_N^{exps[a, b]} on an abelian group."""

    def __init__(self, group, exps, N):
        _require_abelian(group)
        self.group = group
        self.N = int(N)
        self.exps = np.mod(np.asarray(exps, dtype=np.int64), self.N)
        E, T = self.exps, group.table
        if (np.diag(E) != 0).any():
            raise AxiomViolation("X(a, a) != 1 for some a")
        if ((E + E.T) % self.N != 0).any():
            raise AxiomViolation("X(a, b) X(b, a) != 1 for some a, b")
        for a in range(group.n):
            if not np.array_equal(E[T[a]], (E[a][None, :] + E) % self.N):
                raise AxiomViolation("X is not multiplicative in the first slot at a=%d" % a)

    @classmethod
    def from_function(cls, group, fn):
        """fn(a, b) -> rational t with X(a, b) = exp(2 pi i t)."""
        vals = [[Fraction(fn(a, b)) % 1 for b in range(group.n)] for a in range(group.n)]
        N = lcm(*(t.denominator for row in vals for t in row))
        return cls(group, [[int(t * N) for t in row] for row in vals], N)

    def __call__(self, a, b):
        return zeta(self.N, int(self.exps[a, b]))

    def exponent(self, a, b):
        return Fraction(int(self.exps[a, b]), self.N)

    def radical(self):
        return tuple(int(a) for a in np.nonzero((self.exps == 0).all(axis=1))[0])

    def is_nondegenerate(self):
        return len(self.radical()) == 1

    def orthogonal(self, elems, within=None):
        """Elements of `within` (default all) orthogonal to every element of elems."""
        pool = np.arange(self.group.n) if within is None else np.asarray(within, dtype=np.int64)
        es = np.asarray(elems, dtype=np.int64)
        ok = (self.exps[np.ix_(pool, es)] == 0).all(axis=1)
        return tuple(int(x) for x in pool[ok])

    def is_isotropic(self, h):
        hs = np.asarray(h, dtype=np.int64)
        return bool((self.exps[np.ix_(hs, hs)] == 0).all())

    def _require_nondegenerate(self):
        rad = self.radical()
        if len(rad) != 1:
            raise Degenerate("X has a radical of order %d" % len(rad), rad)


def symplectic_basis(x):
    """Pairs (t_i, t_i') with X(t_i, t_i') a primitive m_i-th root, m_1 | m_2 | ..."""
    x._require_nondegenerate()
    a = x.group
    rest = tuple(range(a.n))
    pairs = []
    while len(rest) > 1:
        t = max(rest, key=lambda e: (a.order_of(e), -e))
        m = a.order_of(t)
        partner = None
        for u in rest:
            val = x.exponent(t, u)
            if val.denominator == m:
                partner = u
                break
        if partner is None:
            raise Degenerate("no partner for element %d of order %d" % (t, m), x.radical())
        pairs.append((t, partner, m))
        rest = x.orthogonal([t, partner], within=rest)
    return tuple(reversed(pairs))


def maximal_isotropic(x, seed=None):
    """H = H^perp grown from <seed> by adjoining least-id orthogonal elements."""
    x._require_nondegenerate()
    a = x.group
    h = generated(a, [] if seed is None else [seed])
    while True:
        perp = x.orthogonal(h)
        hs = set(h)
        extra = [e for e in perp if e not in hs]
        if not extra:
            break
        h = generated(a, h + (extra[0],))
    if len(h) ** 2 != a.n:
        raise Degenerate("isotropic subgroup of order %d in a group of order %d" % (len(h), a.n),
                         x.radical())
    return h


def maximal_isotropics(x):
    """Every maximal isotropic subgroup."""
    x._require_nondegenerate()
    return [h for h in all_subgroups(x.group) if len(h) ** 2 == x.group.n and x.is_isotropic(h)]


#########################################################
################### Construction
#########################################################

def closure(identity, gens, mul, key=lambda e: e, labels=None, name=''):
    """Breadth-first closure of `gens` under `mul`; returns a FiniteGroup.

    Columns of the table are filled from right multiplication by generators,
    so only n * len(gens) products are evaluated directly.
    """
    elems = [identity]
    index = {key(identity): 0}
    right = [[] for _ in gens]
    parent = [None]
    i = 0
    while i < len(elems):
        e = elems[i]
        for k, s in enumerate(gens):
            y = mul(e, s)
            ky = key(y)
            if ky not in index:
                if len(elems) >= MAX_ORDER:
                    raise TooLarge("closure of %s exceeds %d elements" % (name or 'the generators', MAX_ORDER))
                index[ky] = len(elems)
                elems.append(y)
                parent.append((i, k))
            right[k].append(index[ky])
        i += 1
    n = len(elems)
    R = [np.asarray(r, dtype=np.int32) for r in right]
    table = np.zeros((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for j in range(1, n):
        pi, k = parent[j]
        table[:, j] = R[k][table[:, pi]]
    lab = [labels(e) for e in elems] if labels is not None else [str(e) for e in elems]
    return FiniteGroup(table, lab, name)


def cyclic(n):
    return closure(0, [1 % n], lambda a, b: (a + b) % n, name='C%d' % n)


def abelian(*ms):
    ms = tuple(int(m) for m in ms)
    zero = tuple(0 for _ in ms)
    gens = [tuple((1 % m) if i == j else 0 for j, m in enumerate(ms)) for i in range(len(ms))]
    mul = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, ms))
    name = 'x'.join('C%d' % m for m in ms)
    return closure(zero, gens, mul, name=name)


def dihedral(n):
    """Order n group <a, b | a^{n/2} = b^2 = e, b a b^-1 = a^-1>."""
    if n % 2 or n < 4:
        raise ValueError("dihedral groups here have even order >= 4, got %d" % n)
    r = n // 2

    def mul(x, y):
        return ((x[0] + (-1) ** x[1] * y[0]) % r, (x[1] + y[1]) % 2)
    return closure((0, 0), [(1 % r, 0), (0, 1)], mul, name='D%d' % n)


def quaternion(n=8):
    """Generalized quaternion <a, b | a^{n/2} = 1, b^2 = a^{n/4}, b a b^-1 = a^-1>."""
    if n < 8 or n & (n - 1):
        raise ValueError("generalized quaternion order must be a power of 2 >= 8, got %d" % n)
    r, half = n // 2, n // 4

    def mul(x, y):
        if x[1] == 0:
            return ((x[0] + y[0]) % r, y[1])
        if y[1] == 0:
            return ((x[0] - y[0]) % r, 1)
        return ((x[0] - y[0] + half) % r, 0)
    return closure((0, 0), [(1, 0), (0, 1)], mul, name='Q%d' % n)


def _require_prime(p):
    if not sympy.isprime(p):
        raise InvalidPrime("%d is not a prime" % p)


def heis(p):
    """Upper unitriangular 3x3 matrices over Z/p, as (x, y, z)."""
    _require_prime(p)

    def mul(a, b):
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2] + a[0] * b[1]) % p)
    return closure((0, 0, 0), [(1, 0, 0), (0, 1, 0)], mul, name='Heis(%d)' % p)


def extraspecial(p):
    """<a, b | a^{p^2} = b^p = 1, b a b^-1 = a^{1+p}>, order p^3 and exponent p^2."""
    _require_prime(p)
    p2 = p * p

    def mul(x, y):
        return ((x[0] + y[0] * pow(1 + p, x[1], p2)) % p2, (x[1] + y[1]) % p)
    return closure((0, 0), [(1, 0), (0, 1)], mul, name='ExtraSpecial(%d)' % p)


def symmetric3():
    g = dihedral(6)
    g.name = 'S3'
    return g


def direct_product(g1, g2):
    n1, n2 = g1.n, g2.n
    a = np.arange(n1 * n2)
    i, j = a // n2, a % n2
    table = g1.table[i[:, None], i[None, :]] * n2 + g2.table[j[:, None], j[None, :]]
    labels = ['(%s,%s)' % (g1.labels[x], g2.labels[y]) for x, y in zip(i, j)]
    return FiniteGroup(table, labels, '%sx%s' % (g1.name, g2.name), check=False)


def permutation_group(cycles_text):
    """Closure of permutations written as '(1 2 3)(4 5);(1 2)' (1-based)."""
    gens = []
    for part in cycles_text.split(';'):
        cyc = [[int(v) - 1 for v in c.split()] for c in re.findall(r'\(([^)]*)\)', part)]
        if not cyc:
            raise ParseError("no cycles in %r" % part)
        gens.append(Permutation(cyc))
    size = max(p.size for p in gens)
    gens = [Permutation(p.array_form + list(range(p.size, size))) for p in gens]
    order = PermutationGroup(gens).order()
    if order > MAX_ORDER:
        raise TooLarge("permutation group of order %d exceeds %d" % (order, MAX_ORDER))
    return closure(Permutation(list(range(size))), gens, lambda a, b: a * b,
                   key=lambda e: tuple(e.array_form), labels=lambda e: str(e.cyclic_form),
                   name='perm')


def read_cayley(path):
    with open(path) as f:
        try:
            rows = [[int(v) for v in row] for row in csv.reader(f) if row]
        except ValueError as err:
            raise ParseError("bad Cayley table %s: %s" % (path, err))
    return FiniteGroup(np.asarray(rows), name='cayley')


_NAMED = {
    'D8': lambda: dihedral(8),
    'Q8': lambda: quaternion(8),
    'S3': symmetric3,
}

_GROUP_RE = (
    (re.compile(r'^C(\d+)$'), lambda m: cyclic(int(m.group(1)))),
    (re.compile(r'^C(\d+)\s*[x×]\s*C(\d+)$'), lambda m: abelian(int(m.group(1)), int(m.group(2)))),
    (re.compile(r'^D(\d+)$'), lambda m: dihedral(int(m.group(1)))),
    (re.compile(r'^Q(\d+)$'), lambda m: quaternion(int(m.group(1)))),
    (re.compile(r'^heis\((\d+)\)$', re.I), lambda m: heis(int(m.group(1)))),
    (re.compile(r'^extraspecial\((\d+)\)$', re.I), lambda m: extraspecial(int(m.group(1)))),
    (re.compile(r'^abelian\(([\d,\s]+)\)$'), lambda m: abelian(*(int(v) for v in m.group(1).split(',')))),
)


def build_group(spec):
    """FiniteGroup from 'D8', 'heis(3)', 'C2xC4', 'perm:(1 2);(1 2 3)', 'cayley:<file>', ...

    A leading 'group:' is ignored.
    """
    s = spec.strip()
    if s.startswith('group:'):
        s = s[len('group:'):]
    if s.startswith('perm:'):
        return permutation_group(s[len('perm:'):])
    if s.startswith('cayley:'):
        return read_cayley(s[len('cayley:'):])
    if s in _NAMED:
        return _NAMED[s]()
    for rx, make in _GROUP_RE:
        m = rx.match(s)
        if m is not None:
            try:
                return make(m)
            except LocalEpsError:
                raise
            except ValueError as err:
                raise ParseError(str(err))
    raise ParseError("unknown group spec %r" % spec)
