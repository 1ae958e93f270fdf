#!/usr/bin/env python
"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Command line front end.  One sub-command per verb; every verb renders its
result as a table (markdown or csv) on stdout or into --output.

Exit codes: 0 success, 1 mismatch or computation error, 2 usage error,
3 unsupported model.
"""
import argparse
import logging
import sys
from fractions import Fraction
from os.path import join as _join

from localEps import group_core as gc
from localEps import reports
from localEps.cyclo import human
from localEps.epsilon import (CheckReport, W, check_functional_equation, check_unit_independence,
                              lamprecht_tate, lamprecht_tate_closed_form)
from localEps.errors import LocalEpsError, ParseError
from localEps.finite_field import (FFMultChar, gauss_sum, get_field, quadratic_character,
                                   quadratic_gauss_closed_form)
from localEps.heisenberg import (ExtensionData, UIsotropicDatum, build_rho, conductor_formulas,
                                 det_brute, det_invariant, extend_chi, gallagher_det,
                                 heisenberg_data, minimal_W)
from localEps.lambdas import (ClassifierContext, lambda_classifier, lambda_klein4,
                              lambda_q2_table, lambda_tame_quadratic,
                              lambda_tame_quadratic_gauss)
from localEps.local_field import (LocalFieldDesc, LocalMultChar, canonical_psi, qp_characters,
                                  qp_psi, tame_character)
from localEps.mini_utils import TimeStamp, prime_power, save_text
from localEps.verify import GRID_BOUNDS, RunConfig, run_suites

logger = logging.getLogger(__name__)

CONFIG_KEYS = ('q_max', 'p_max', 'conductor_max', 'format', 'seed', 'numThreads', 'verbose') + GRID_BOUNDS
LOG_FORMAT = '%(asctime)s %(name)s %(levelname)s: %(message)s'


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors raised as ParseError instead of exiting."""

    def error(self, message):
        raise ParseError('%s: %s' % (self.prog, message))


#########################################################
################### Configuration
#########################################################

def read_config(path):
    """key=value lines; blank lines and # comments are skipped."""
    values = {}
    try:
        with open(path) as fid:
            lines = fid.readlines()
    except OSError as err:
        raise ParseError("cannot read config file %s: %s" % (path, err))
    for n, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ParseError("%s:%d: expected key=value, got %r" % (path, n, line))
        k, v = (s.strip() for s in line.split('=', 1))
        if k not in CONFIG_KEYS:
            raise ParseError("%s:%d: unknown configuration key %r" % (path, n, k))
        values[k] = v
    return values


def build_config(params):
    """RunConfig from the config file overlaid with the command-line values."""
    file_values = read_config(params['config']) if params.get('config') else {}
    base = RunConfig.acceptance() if params.get('acceptance') else None
    config = RunConfig.from_mapping(file_values, base=base)
    cli = {k: params.get(k) for k in CONFIG_KEYS}
    cli.update(command=params['command'], output=params.get('output'),
               inject_fault=params.get('inject_fault'),
               stable_names=params.get('stable_names'))
    return RunConfig.from_mapping(cli, base=config)


def setup_logging(verbose):
    level = logging.WARNING if verbose <= 0 else (logging.INFO if verbose == 1 else logging.DEBUG)
    root = logging.getLogger()
    for h in list(root.handlers):
        root.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)


def emit(text, config):
    if config.output:
        save_text(config.output, text)
        logger.info("wrote %s", config.output)
    else:
        sys.stdout.write(text)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("expected a rational number, got %r" % text)


#########################################################
################### Verbs
#########################################################

def cmd_q2_table(params, config):
    table = lambda_q2_table()
    emit(reports.q2_table(table).render(config.format), config)
    return 0 if table.ok else 1


def cmd_gauss(params, config):
    p, s = params['p'], params['s']
    field = get_field(p, s)
    chi = quadratic_character(field) if params['chi'] is None else FFMultChar(field, params['chi'])
    g = gauss_sum(chi, params['b'] % field.q)
    footer = ['G = %s' % human(g)]
    ok = True
    if p != 2 and chi == quadratic_character(field) and params['b'] == 1:
        closed = quadratic_gauss_closed_form(p, s)
        ok = closed == g
        footer.append('closed form %s: %s' % (human(closed), reports.status(ok)))
    t = reports.Table('gauss', ('q', 'chi', 'b', 'G', 'value'), footer=footer)
    t.add(field.q, chi, params['b'], human(g), g)
    emit(t.render(config.format), config)
    return 0 if ok else 1


def tame_lambda_table(q_max=None, p=None, s=None):
    if q_max is None:
        fields = [(p ** s, p, s)]
    else:
        fields = []
        for q in range(3, q_max + 1, 2):
            try:
                fields.append((q,) + prime_power(q))
            except ValueError:
                continue
    t = reports.Table('tame_lambda', ('q', 'closed_form', 'gauss_sum', 'klein4', 'agree'))
    for q, p, s in fields:
        field = LocalFieldDesc(p, 1, s)
        a, b = lambda_tame_quadratic(field), lambda_tame_quadratic_gauss(field)
        t.add(q, a, b, lambda_klein4(q), reports.status(a == b))
    return t


def cmd_tame_lambda(params, config):
    t = tame_lambda_table(params['q_max'], params['p'], params['s'])
    emit(t.render(config.format), config)
    return 0 if all(r[-1] == 'PASS' for r in t.rows) else 1


def _pick_character(p, a, k, pi_exp):
    chars = [c for c in qp_characters(p, a) if c.conductor == a]
    if not 0 <= k < len(chars):
        raise ParseError("--k must lie in 0..%d for conductor %d over Q_%d" % (len(chars) - 1, a, p))
    chi = chars[k]
    return LocalMultChar(chi.field, chi.conductor, pi_exp, chi.unit_part)


def cmd_epsilon(params, config):
    p, a = params['p'], params['a']
    psi = qp_psi(p)
    if params['action'] == 'eval':
        chi = _pick_character(p, a, params['k'], params['pi'])
        w = W(chi, psi)
        t = reports.Table('epsilon', ('chi', 'W', 'value'))
        t.add(chi, human(w), w)
        emit(t.render(config.format), config)
        return 0
    checks = []
    for chi in qp_characters(p, a):
        checks.append(check_functional_equation(chi, psi))
        checks.append(check_unit_independence(chi, psi))
        if chi.conductor >= 2:
            w = W(chi, psi)
            for m in range(1, chi.conductor // 2 + 1):
                lt = lamprecht_tate(chi, psi, m).value
                checks.append(CheckReport('lamprecht_tate', lt, w, lt == w, 'm=%d %s' % (m, chi)))
            cf = lamprecht_tate_closed_form(chi, psi).value
            checks.append(CheckReport('closed_form', cf, w, cf == w, str(chi)))
    emit(reports.check_table('epsilon_verify', checks).render(config.format), config)
    return 0 if all(c.equal for c in checks) else 1


def cmd_lambda(params, config):
    action = params['action']
    if action == 'q2-table':
        return cmd_q2_table(params, config)
    if action == 'tame':
        return cmd_tame_lambda(params, config)
    if action == 'klein4':
        if params['q'] is None:
            raise ParseError("lambda klein4 needs --q")
        lam = lambda_klein4(params['q'])
        t = reports.Table('klein4', ('q', 'lambda'))
        t.add(params['q'], lam)
        emit(t.render(config.format), config)
        return 0
    if params['group'] is None:
        raise ParseError("lambda classify needs --group")
    g = gc.build_group(params['group'])
    ctx = ClassifierContext(params['q']) if params['q'] is not None else None
    res = lambda_classifier(g, ctx)
    t = reports.Table('classify', ('group', 'case', 'sylow2', 'formula', 'lambda'))
    t.add(params['group'], res.case, res.sylow, res.formula,
          res.value if res.value is not None else 'undetermined')
    emit(t.render(config.format), config)
    return 0


def group_info_table(g, spec):
    dd = gc.derived_data(g)
    t = reports.Table('group_info', ('property', 'value'))
    t.add('group', spec)
    t.add('order', g.n)
    t.add('exponent', g.exponent())
    t.add('abelian', g.is_abelian())
    t.add('|Z(G)|', len(dd.center))
    t.add('|[G,G]|', len(dd.commutator))
    t.add('two-step nilpotent', dd.is_two_step_nilpotent)
    t.add('sylow2', gc.sylow2_type(g))
    if g.is_abelian():
        ed = gc.elementary_divisors(g)
        t.add('invariant factors', ' x '.join('C%d' % m for m in ed.factors) or 'trivial')
        t.add('miller product', g.labels[gc.miller_product(g)])
    return t


def cmd_group(params, config):
    g = gc.build_group(params['group'])
    if params['action'] == 'info':
        emit(group_info_table(g, params['group']).render(config.format), config)
        return 0
    if params['subgroup']:
        try:
            h = [int(v) for v in params['subgroup'].split(',')]
        except ValueError:
            raise ParseError("--subgroup takes comma separated element ids, got %r" % params['subgroup'])
        h = gc.generated(g, h)
    else:
        h = gc.center(g)
    d = g.n // len(h)
    t = reports.Table('transfer', ('x', 'T(x)', 'x^d', 'correction'),
                      footer=('[G:H] = %d' % d,))
    abelian = gc.restrict(g, h).is_abelian()
    for x in range(g.n):
        corr = g.labels[gc.transfer_correction(g, h, x)] if abelian else '-'
        t.add(g.labels[x], g.labels[gc.transfer(g, h, x)], g.labels[g.power(x, d)], corr)
    emit(t.render(config.format), config)
    return 0


def determinant_rows(d):
    ext = extend_chi(d)
    rep = build_rho(d, ext)
    return [(x, det_brute(rep, x), det_invariant(d, x), gallagher_det(d, ext, x))
            for x in range(d.g.n)]


def cmd_heisenberg(params, config):
    action = params['action']
    if action == 'det':
        if params['group'] is None:
            raise ParseError("heisenberg det needs --group")
        g = gc.build_group(params['group'])
        data = heisenberg_data(g)
        if not data:
            raise ParseError("%s carries no Heisenberg datum" % params['group'])
        k = params['chi']
        if not 0 <= k < len(data):
            raise ParseError("--chi must lie in 0..%d for %s" % (len(data) - 1, params['group']))
        t = reports.determinant_table(g, determinant_rows(data[k]))
        emit(t.render(config.format), config)
        return 0 if all(r[-1] == 'PASS' for r in t.rows) else 1
    if action == 'conductors':
        m, a_eta = params['m'], params['a_eta']
        d = m - 1 if params['d'] is None else params['d']
        cd = conductor_formulas(m, a_eta, ExtensionData(d, d, m), params['p'])
        t = reports.Table('conductors', ('m', 'a_eta', 'd', 'sw', 'a_rho', 'a_chi_E', 'a_chi_E1', 'a_chi_K'))
        t.add(m, a_eta, d, cd.sw, cd.a_rho, cd.a_chi_E, cd.a_chi_E1, cd.a_chi_K)
        emit(t.render(config.format), config)
        return 0
    p, s, m = params['p'], params['s'], params['m']
    if m < 1:
        raise ParseError("--m must be a positive divisor of q - 1, got %d" % m)
    field = LocalFieldDesc(p, 1, s)
    k = field.residue_field()
    if (k.q - 1) % m:
        raise ParseError("--m must divide q - 1 = %d" % (k.q - 1))
    eta = FFMultChar(k, (k.q - 1) // m)
    theta = FFMultChar(k, params['theta'])
    di = (k.q - 1) // 2 if params['delta'] == 'quadratic' else 0
    u = UIsotropicDatum(field, eta, theta, tame_character(field, di),
                        tame_character(field, theta.index + di))
    psi = canonical_psi(field)
    t = reports.Table('minimal_w', ('c_unit', 'R', 'L', 'W'))
    for c_unit in range(1, k.q):
        mw = minimal_W(u, psi, 1 + psi.conductor, c_unit, 1)
        t.add(c_unit, human(mw.R), human(mw.L), human(mw.W))
    emit(t.render(config.format), config)
    return 0


def cmd_verify(params, config):
    results = run_suites(config)
    emit(reports.suite_summary(results).render(config.format), config)
    return 0 if all(r.failures == 0 for r in results) else 1


def cmd_report(params, config):
    output_dir = config.output or _join('reports', TimeStamp())
    results = run_suites(config)
    tables = [reports.q2_table(lambda_q2_table()),
              tame_lambda_table(config.q_max),
              reports.suite_summary(results)]
    for res in results:
        tables.append(reports.Table('suite_%s' % res.name,
                                    ('check', 'detail', 'lhs', 'rhs', 'status'), res.rows))
    for spec in ('D8', 'Q8', 'heis(3)'):
        g = gc.build_group(spec)
        t = reports.determinant_table(g, determinant_rows(heisenberg_data(g)[0]))
        t.name = 'determinants_%s' % spec.replace('(', '').replace(')', '')
        tables.append(t)
    paths = reports.write_tables(tables, output_dir, config.stable_names)
    sys.stdout.write(''.join('%s\n' % p for p in paths))
    return 0 if all(r.failures == 0 for r in results) else 1


VERBS = {
    'q2-table': cmd_q2_table,
    'gauss': cmd_gauss,
    'tame-lambda': cmd_tame_lambda,
    'epsilon': cmd_epsilon,
    'lambda': cmd_lambda,
    'group': cmd_group,
    'heisenberg': cmd_heisenberg,
    'verify': cmd_verify,
    'report': cmd_report,
}


#########################################################
################### Parser
#########################################################

def make_parser():
    common = _Parser(add_help=False)
    common.add_argument('--format', type = str, action = 'store', default = None, choices = ('md', 'csv'))
    common.add_argument('--seed', type = int, action = 'store', default = None)
    common.add_argument('--verbose', type = int, action = 'store', default = None,
                        help = '0: warnings only, 1: suite summaries, 2: every failing case')
    common.add_argument('--config', type = str, action = 'store', default = None,
                        help = 'key=value file; command-line values take precedence')
    common.add_argument('--output', type = str, action = 'store', default = None,
                        help = 'Output file (report: output directory). Defaults to stdout.')

    parser = _Parser(prog = 'localEps', description = 'Exact epsilon factors, lambda-functions and Heisenberg determinants.')
    sub = parser.add_subparsers(dest = 'command', parser_class = _Parser)
    sub.required = True

    sub.add_parser('q2-table', parents = [common], help = 'lambda-functions of the quadratic extensions of Q_2')

    sp = sub.add_parser('gauss', parents = [common], help = 'Gauss sum over F_{p^s}')
    sp.add_argument('--p', type = int, action = 'store', required = True)
    sp.add_argument('--s', type = int, action = 'store', default = 1)
    sp.add_argument('--chi', type = int, action = 'store', default = None, help = 'character index; default quadratic')
    sp.add_argument('--b', type = int, action = 'store', default = 1, help = 'additive shift code')

    sp = sub.add_parser('tame-lambda', parents = [common], help = 'tame quadratic lambda, closed form vs Gauss sum')
    sp.add_argument('--p', type = int, action = 'store', default = 3)
    sp.add_argument('--s', type = int, action = 'store', default = 1)
    sp.add_argument('--q-max', dest = 'q_max', type = int, action = 'store', default = None)

    sp = sub.add_parser('epsilon', parents = [common], help = 'epsilon factors of characters of Q_p^x')
    sp.add_argument('action', choices = ('eval', 'verify'))
    sp.add_argument('--p', type = int, action = 'store', required = True)
    sp.add_argument('--a', type = int, action = 'store', required = True, help = 'conductor')
    sp.add_argument('--k', type = int, action = 'store', default = 0, help = 'index among characters of conductor a')
    sp.add_argument('--pi', type = _fraction, action = 'store', default = Fraction(0), help = 'chi(p) = exp(2 pi i t)')

    sp = sub.add_parser('lambda', parents = [common], help = 'lambda-functions')
    sp.add_argument('action', choices = ('q2-table', 'tame', 'klein4', 'classify'))
    sp.add_argument('--p', type = int, action = 'store', default = 3)
    sp.add_argument('--s', type = int, action = 'store', default = 1)
    sp.add_argument('--q', type = int, action = 'store', default = None)
    sp.add_argument('--q-max', dest = 'q_max', type = int, action = 'store', default = None)
    sp.add_argument('--group', type = str, action = 'store', default = None)

    sp = sub.add_parser('group', parents = [common], help = 'finite group structure and transfer')
    sp.add_argument('action', choices = ('info', 'transfer'))
    sp.add_argument('--group', type = str, action = 'store', required = True,
                    help = "e.g. D8, Q8, C2xC4, heis(3), perm:(1 2);(1 2 3), cayley:<file>")
    sp.add_argument('--subgroup', type = str, action = 'store', default = None,
                    help = 'generating element ids of H, comma separated; default Z(G)')

    sp = sub.add_parser('heisenberg', parents = [common], help = 'Heisenberg representations')
    sp.add_argument('action', choices = ('det', 'conductors', 'minimal-w'))
    sp.add_argument('--group', type = str, action = 'store', default = None)
    sp.add_argument('--chi', type = int, action = 'store', default = 0, help = 'index of the Heisenberg datum')
    sp.add_argument('--p', type = int, action = 'store', default = 3)
    sp.add_argument('--s', type = int, action = 'store', default = 1)
    sp.add_argument('--m', type = int, action = 'store', default = 2)
    sp.add_argument('--a-eta', dest = 'a_eta', type = int, action = 'store', default = 1)
    sp.add_argument('--d', type = int, action = 'store', default = None)
    sp.add_argument('--theta', type = int, action = 'store', default = 1)
    sp.add_argument('--delta', type = str, action = 'store', default = 'trivial', choices = ('trivial', 'quadratic'))

    for name, text in (('verify', 'run every verification suite'),
                       ('report', 'write every table as md and csv')):
        sp = sub.add_parser(name, parents = [common], help = text)
        sp.add_argument('--q-max', dest = 'q_max', type = int, action = 'store', default = None)
        sp.add_argument('--p-max', dest = 'p_max', type = int, action = 'store', default = None)
        sp.add_argument('--conductor-max', dest = 'conductor_max', type = int, action = 'store', default = None)
        sp.add_argument('--numThreads', type = int, action = 'store', default = None)
        sp.add_argument('--inject-fault', dest = 'inject_fault', type = str, action = 'store', default = None,
                        help = 'corrupt one catalogue value (q2_table or gauss) to exercise failure reporting')
        sp.add_argument('--stable-names', dest = 'stable_names', type = str, action = 'store', default = 'false',
                        help = 'report: omit the time stamp prefix from file names')
        sp.add_argument('--acceptance', action = 'store_true', default = False,
                        help = 'run the full acceptance grids (gauss q <= 2000, Davenport-Hasse q^s <= 3000, '
                               'Lamprecht-Tate a <= 6, tame lambda q <= 1000, groups |G| <= 128)')
    return parser


def run(argv):
    params = vars(make_parser().parse_args(argv))
    config = build_config(params)
    setup_logging(config.verbose)
    logger.debug("running %s with %s", config.command, config)
    return VERBS[config.command](params, config)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except LocalEpsError as err:
        logger.error("%s: %s", type(err).__name__, err)
        sys.stderr.write('localEps: %s: %s\n' % (type(err).__name__, err))
        return err.exit_code


if __name__ == '__main__':
    sys.exit(main())
