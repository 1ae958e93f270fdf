"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Verification suites.  Each suite maps a RunConfig to a list of CheckReport;
run_suites fans the suites out over a process pool and returns plain,
picklable SuiteResult rows sorted by suite name.
"""
import logging
import multiprocessing as mp
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from math import gcd, isqrt

import numpy as np
import sympy

from localEps import group_core as gc
from localEps.cyclo import parse, sqrt_q, zeta
from localEps.epsilon import (CheckReport, W, check_additive_shift, check_functional_equation,
                              check_mod_p_power_roots, check_unit_independence, lamprecht_tate,
                              lamprecht_tate_closed_form)
from localEps.errors import LocalEpsError, ParseError
from localEps.finite_field import (characters, gauss_sum, get_field, lift_and_check_davenport_hasse,
                                   quadratic_character, quadratic_gauss_closed_form,
                                   quadratic_square_sum)
from localEps.heisenberg import (ExtensionData, UIsotropicDatum, check_deligne_henniart,
                                 check_determinants, check_h_independence, check_minimal_w,
                                 check_x_eta, conductor_formulas, dim_gate, dimension_equivalent,
                                 heisenberg_data, minimal_W, optimal_chi0_order, twisted_conductor)
from localEps.lambdas import Q2_EXPECTED, lambda_identity_suite, lambda_q2_table
from localEps.local_field import (LocalFieldDesc, canonical_psi, qp, qp_characters, qp_psi,
                                  qp_unit_characters, tame_character, trivial_character)
from localEps.mini_utils import check_arg_trueFalse, prime_power
from localEps.reports import fmt_value, status

logger = logging.getLogger(__name__)

FAULTS = ('q2_table', 'gauss')
FORMATS = ('md', 'csv')

# unset grid bounds follow q_max (gauss, lambda), q_max^2 (Davenport-Hasse)
# and conductor_max (Lamprecht-Tate)
GRID_BOUNDS = ('gauss_q_max', 'dh_max', 'lambda_q_max', 'lt_conductor_max', 'group_order_max')

ACCEPTANCE = {
    'q_max': 13,
    'p_max': 5,
    'conductor_max': 4,
    'gauss_q_max': 2000,
    'dh_max': 3000,
    'lambda_q_max': 1000,
    'lt_conductor_max': 6,
    'group_order_max': 128,
}


@dataclass(frozen=True)
class RunConfig:
    command: str = 'verify'
    q_max: int = 13
    p_max: int = 5
    conductor_max: int = 3
    format: str = 'md'
    seed: int = 1
    numThreads: int = 1
    verbose: int = 1
    output: str = None
    inject_fault: str = None
    stable_names: bool = False
    gauss_q_max: int = None
    dh_max: int = None
    lambda_q_max: int = None
    lt_conductor_max: int = None
    group_order_max: int = 54

    def __post_init__(self):
        for name in ('q_max', 'p_max', 'conductor_max', 'numThreads') + GRID_BOUNDS:
            value = getattr(self, name)
            if value is not None and int(value) < 1:
                raise ParseError("%s must be positive, got %s" % (name, value))
        if self.format not in FORMATS:
            raise ParseError("format must be one of %s, got %r" % (FORMATS, self.format))
        if self.inject_fault is not None and self.inject_fault not in FAULTS:
            raise ParseError("unknown fault %r, expected one of %s" % (self.inject_fault, FAULTS))
        try:
            object.__setattr__(self, 'stable_names', check_arg_trueFalse(self.stable_names))
        except ValueError as err:
            raise ParseError("stable_names: %s" % err)

    @classmethod
    def from_mapping(cls, values, base=None):
        """Overlay `values` (strings from a config file or parsed options) on base."""
        base = base or cls()
        types = {f.name: f.type for f in fields(cls)}
        kw = {}
        for k, v in values.items():
            if k not in types:
                raise ParseError("unknown configuration key %r" % k)
            if v is None:
                continue
            if types[k] in (int, 'int'):
                try:
                    v = int(v)
                except ValueError:
                    raise ParseError("%s must be an integer, got %r" % (k, v))
            kw[k] = v
        return replace(base, **kw)

    @classmethod
    def acceptance(cls, **overrides):
        """The full acceptance grids (slow: minutes on one core)."""
        values = dict(ACCEPTANCE)
        values.update(overrides)
        return cls.from_mapping(values)

    @property
    def gauss_bound(self):
        return self.gauss_q_max or self.q_max

    @property
    def dh_bound(self):
        return self.dh_max or self.q_max ** 2

    @property
    def lambda_bound(self):
        return self.lambda_q_max or self.q_max

    @property
    def lt_bound(self):
        return self.lt_conductor_max or self.conductor_max


@dataclass(frozen=True)
class SuiteResult:
    """rows: (check, detail, lhs, rhs, PASS/FAIL) strings."""
    name: str
    rows: tuple
    failures: int


def _prime_powers(q_max, odd=False):
    out = []
    for q in range(2, q_max + 1):
        try:
            p, s = prime_power(q)
        except ValueError:
            continue
        if p != 2 or not odd:
            out.append((q, p, s))
    return out


#########################################################
################### Suites
#########################################################

def suite_cyclo(config):
    reports = []
    for q, p, s in _prime_powers(config.q_max):
        r = sqrt_q(q)
        reports.append(CheckReport('sqrt_q_squared', r * r, q, r * r == q, 'q=%d' % q))
    for N in range(1, config.q_max + 1):
        z = zeta(N) + zeta(N, N - 1) * Fraction(1, 3) - 2
        back = parse(str(z))
        reports.append(CheckReport('parse_inverts_str', back, z, back == z, 'N=%d' % N))
    return reports


def suite_gauss(config):
    reports = []
    for i, (q, p, s) in enumerate(_prime_powers(config.gauss_bound, odd=True)):
        field = get_field(p, s)
        g = gauss_sum(quadratic_character(field), 1)
        closed = quadratic_gauss_closed_form(p, s)
        if config.inject_fault == 'gauss' and i == 0:
            closed = closed * -1
        reports.append(CheckReport('quadratic_closed_form', g, closed, g == closed, 'q=%d' % q))
        sq = quadratic_square_sum(field)
        reports.append(CheckReport('square_sum', sq, g, sq == g, 'q=%d' % q))
    dh = config.dh_bound
    for q, p, s in _prime_powers(isqrt(dh)):
        field = get_field(p, s)
        t = 2
        while q ** t <= dh:
            for chi in characters(field):
                rep = lift_and_check_davenport_hasse(chi, t)
                reports.append(CheckReport('davenport_hasse', rep.lhs, rep.rhs, rep.equal,
                                           'q=%d s=%d %s' % (q, t, chi)))
            t += 1
    return reports


def suite_epsilon(config):
    reports = []
    for p in sympy.primerange(2, config.p_max + 1):
        p = int(p)
        psi = qp_psi(p)
        for chi in qp_characters(p, config.conductor_max):
            a = chi.conductor
            reports.append(check_functional_equation(chi, psi))
            reports.append(check_additive_shift(chi, psi, p))
            if a <= 2:
                reports.append(check_unit_independence(chi, psi))
        for chi in qp_characters(p, config.lt_bound):
            a = chi.conductor
            if a < 2:
                continue
            w = W(chi, psi)
            for m in range(0, a // 2 + 1):
                lt = lamprecht_tate(chi, psi, m).value
                reports.append(CheckReport('lamprecht_tate', lt, w, lt == w,
                                           'p=%d a=%d m=%d' % (p, a, m)))
            cf = lamprecht_tate_closed_form(chi, psi).value
            reports.append(CheckReport('closed_form', cf, w, cf == w, 'p=%d a=%d' % (p, a)))
            reports.append(check_mod_p_power_roots(chi, psi))
    return reports


def suite_q2_table(config):
    expected = Q2_EXPECTED
    if config.inject_fault == 'q2_table':
        (d, k), rest = expected[0], expected[1:]
        expected = ((d, (k + 2) % 4),) + rest
    table = lambda_q2_table(expected)
    reports = [CheckReport('q2_lambda', r.value.value, r.expected.value, r.ok, 'd=%d' % r.d)
               for r in table.rows]
    reports.append(CheckReport('q2_product', table.product.value, 1, table.product_ok))
    return reports


def suite_lambda(config):
    return lambda_identity_suite(config.lambda_bound)


def _group_catalogue():
    return [gc.cyclic(8), gc.abelian(2, 4), gc.dihedral(8), gc.quaternion(8), gc.heis(3),
            gc.extraspecial(3), gc.symmetric3(), gc.dihedral(12),
            gc.direct_product(gc.dihedral(8), gc.cyclic(3)),
            gc.direct_product(gc.heis(3), gc.cyclic(2))]


def _abelian_chains(limit, low=2, prod=1):
    """Invariant factor chains m_1 | m_2 | ... with product <= limit."""
    out = []
    m = low
    while prod * m <= limit:
        out.append((m,))
        for rest in _abelian_chains(limit, m, prod * m):
            if rest[0] % m == 0:
                out.append((m,) + rest)
        m += 1
    return out


def _two_step_groups(order_max):
    """Order p^3 groups of both exponents (p = 3, 5) times abelian groups, |G| <= order_max."""
    out = []
    for base in (gc.heis(3), gc.extraspecial(3), gc.heis(5), gc.extraspecial(5)):
        if base.n > order_max:
            continue
        out.append(base)
        for chain in _abelian_chains(order_max // base.n):
            out.append(gc.direct_product(base, gc.abelian(*chain)))
    return out


def _transfer_law_reports(g, rng):
    """T(x) = x^d for odd index, central correction, transversal independence."""
    name = g.name or str(g)
    comm = gc.commutator_subgroup(g)
    reports = []
    dd = gc.derived_data(g)
    if not dd.is_two_step_nilpotent:
        return reports
    ok, bad = gc.check_two_step_identities(g)
    reports.append(CheckReport('two_step_identities', len(bad), 0, ok, name))
    z = set(dd.center)
    for h in gc.all_subgroups(g):
        if len(h) == g.n or not gc.is_normal(g, h) or not set(comm) <= set(h) \
                or not gc.restrict(g, h).is_abelian():
            continue
        d = g.n // len(h)
        detail = '%s |H|=%d' % (name, len(h))
        if d % 2:
            bad = [x for x in range(g.n) if gc.transfer(g, h, x) != g.power(x, d)]
            reports.append(CheckReport('transfer_is_power', len(bad), 0, not bad, detail))
        phis = [gc.transfer_correction(g, h, x) for x in range(g.n)]
        bad = [x for x, f in zip(range(g.n), phis) if f not in z or g.power(f, 2) != 0]
        reports.append(CheckReport('transfer_correction_central', len(bad), 0, not bad, detail))
        tv = gc.random_transversal(g, h, rng)
        bad = [x for x in range(g.n) if gc.transfer(g, h, x, tv) != gc.transfer(g, h, x)]
        reports.append(CheckReport('transfer_transversal_free', len(bad), 0, not bad, detail))
    return reports


def suite_groups(config):
    rng = np.random.RandomState(config.seed)
    reports = []
    seen = set()
    for g in _group_catalogue():
        name = g.name or str(g)
        comm = gc.commutator_subgroup(g)
        bad = [x for x in range(g.n) if gc.transfer(g, comm, x) != 0]
        reports.append(CheckReport('transfer_to_derived_trivial', len(bad), 0, not bad, name))
        reports.extend(_transfer_law_reports(g, rng))
        seen.add(name)
    for g in _two_step_groups(config.group_order_max):
        if g.name not in seen:
            reports.extend(_transfer_law_reports(g, rng))
            seen.add(g.name)
    for m in range(1, 13):
        want, got = gc.bicyclic_counts(m), gc.bicyclic_brute(m)
        reports.append(CheckReport('bicyclic_counts', got, want, got == want, 'm=%d' % m))
    for chain in _abelian_chains(64):
        a = gc.abelian(*chain)
        involutions = np.nonzero(a.orders == 2)[0]
        want = int(involutions[0]) if len(involutions) == 1 else 0
        got = gc.miller_product(a)
        reports.append(CheckReport('miller_product', a.labels[got], a.labels[want], got == want,
                                   'x'.join('C%d' % m for m in chain)))
    return reports


DETERMINANT_GROUPS = ('D8', 'Q8', 'heis(3)', 'heis(5)', 'extraspecial(3)', 'extraspecial(5)',
                      'C2xC2', 'C4')


def suite_determinants(config):
    reports = []
    for spec in DETERMINANT_GROUPS:
        for d in heisenberg_data(gc.build_group(spec)):
            reports.append(check_determinants(d))
            reports.append(check_h_independence(d))
    return reports


def _delta_indices(q):
    """Residue indices of the tame Delta: trivial, and quadratic for odd q."""
    return (0, (q - 1) // 2) if q % 2 else (0,)


def suite_u_isotropic(config):
    reports = []
    for q, p, s in _prime_powers(config.q_max):
        field = LocalFieldDesc(p, 1, s)
        k = field.residue_field()
        psi = canonical_psi(field)
        for eta in characters(k):
            reports.extend(check_x_eta(UIsotropicDatum(field, eta)))
        for m in sympy.divisors(q - 1):
            eta = characters(k)[((q - 1) // m) % (q - 1)]
            for theta in characters(k):
                for di in _delta_indices(q):
                    delta = tame_character(field, di)
                    det = tame_character(field, theta.index + di)
                    u = UIsotropicDatum(field, eta, theta, delta, det)
                    reports.append(check_minimal_w(u, psi, 1))
            if m == 1:
                for theta in characters(k)[1:]:
                    chi = tame_character(field, theta.index)
                    u = UIsotropicDatum(field, eta, theta, trivial_character(field), chi)
                    got = minimal_W(u, psi, 1, 1, 1).W
                    want = W(chi, psi)
                    reports.append(CheckReport('minimal_w_dimension_one', got, want, got == want,
                                               'q=%d theta=%s' % (q, theta)))
        for dim in range(1, config.q_max + 1):
            gate = dim_gate(q, dim)
            if gate.divides:
                eq = dimension_equivalent(q, dim)
                reports.append(CheckReport('dimension_gate', eq, True, eq, 'q=%d dim=%d' % (q, dim)))
            mq = optimal_chi0_order(q, dim)
            rest = (q - 1) // mq
            ok = (q - 1) % mq == 0 and all(rest % int(l) for l in sympy.primefactors(dim))
            reports.append(CheckReport('optimal_chi0_order', mq, mq, ok, 'q=%d m=%d' % (q, dim)))
    for p in sympy.primerange(2, config.p_max + 1):
        p = int(p)
        for up in qp_unit_characters(p, 2):
            reports.extend(check_x_eta(UIsotropicDatum(qp(p), up)))
        for m in range(1, 5):
            if gcd(m, p) != 1:
                continue
            for a_eta in range(1, config.conductor_max + 1):
                cd = conductor_formulas(m, a_eta, ExtensionData(m - 1, m - 1, m), p)
                for a_chi in range(config.conductor_max + 1):
                    tc = twisted_conductor(m, cd.a_rho, a_chi)
                    want = max(m * a_chi, cd.a_rho)
                    reports.append(CheckReport('twisted_conductor', tc, want, tc == want,
                                               'p=%d m=%d a=%d' % (p, m, a_eta)))
    psi = qp_psi(3)
    for chi_F in [c for c in qp_characters(3, 2) if c.conductor == 2][:2]:
        for m in (1, 2):
            reports.append(check_deligne_henniart(chi_F, m, psi))
    return reports


SUITES = {
    'cyclo': suite_cyclo,
    'gauss': suite_gauss,
    'epsilon': suite_epsilon,
    'q2_table': suite_q2_table,
    'lambda': suite_lambda,
    'groups': suite_groups,
    'determinants': suite_determinants,
    'u_isotropic': suite_u_isotropic,
}


#########################################################
################### Driver
#########################################################

def _row(r):
    return (r.name, r.detail, fmt_value(r.lhs), fmt_value(r.rhs), status(r.equal))


def _run_suite(name, config):
    try:
        reports = SUITES[name](config)
    except LocalEpsError as err:
        logger.error("suite %s aborted: %s", name, err)
        reports = [CheckReport('suite_error', type(err).__name__, '', False, str(err))]
    rows = tuple(_row(r) for r in reports)
    failures = sum(1 for r in reports if not r.equal)
    logger.info("%s: %d checks, %d failures", name, len(rows), failures)
    for r in reports:
        if not r.equal:
            logger.debug("%s failed (%s): %s != %s", r.name, r.detail, r.lhs, r.rhs)
    return SuiteResult(name, rows, failures)


def run_suites(config, names=None):
    """Run the named suites (default: all); numThreads > 1 uses a process pool."""
    names = sorted(SUITES) if names is None else sorted(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ParseError("unknown suites %s" % unknown)
    numThreads = min([max(mp.cpu_count() - 1, 1), config.numThreads, len(names)])
    if numThreads <= 1:
        results = [_run_suite(n, config) for n in names]
    else:
        pool = mp.Pool(processes = numThreads)
        pending = [pool.apply_async(_run_suite, args=(n, config)) for n in names]
        pool.close()
        pool.join()
        results = [d.get() for d in pending]
    return sorted(results, key=lambda r: r.name)
