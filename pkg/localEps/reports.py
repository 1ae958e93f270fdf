"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0

Table emitters.  Every table is a header tuple plus rows of strings, rendered
as markdown or csv; exact values carry a human-readable column next to their
serialization.
"""
import csv
import io
import logging
from os.path import join as _join

from localEps.cyclo import Cyclotomic, ScaledCyclotomic, human
from localEps.mini_utils import TimeStamp, mkdir, save_text

logger = logging.getLogger(__name__)

FORMATS = ('md', 'csv')


def fmt_value(v):
    """Table notation of a value: human form for exact numbers, str otherwise."""
    if isinstance(v, (Cyclotomic, ScaledCyclotomic)):
        return human(v)
    return str(v)


def status(ok):
    return 'PASS' if ok else 'FAIL'


class Table(object):
    def __init__(self, name, header, rows=None, footer=()):
        self.name = name
        self.header = tuple(header)
        self.rows = [tuple(str(c) for c in r) for r in (rows or [])]
        self.footer = tuple(footer)

    def add(self, *row):
        if len(row) != len(self.header):
            raise ValueError("table %s has %d columns, got a row of %d"
                             % (self.name, len(self.header), len(row)))
        self.rows.append(tuple(str(c) for c in row))

    def render(self, fmt='md'):
        if fmt == 'md':
            return render_md(self)
        if fmt == 'csv':
            return render_csv(self)
        raise ValueError("unknown format %r, expected one of %s" % (fmt, FORMATS))


def render_md(table):
    lines = ['| ' + ' | '.join(table.header) + ' |',
             '|' + '|'.join('---' for _ in table.header) + '|']
    for r in table.rows:
        lines.append('| ' + ' | '.join(c.replace('|', '\\|') for c in r) + ' |')
    lines.extend(table.footer)
    return '\n'.join(lines) + '\n'


def render_csv(table):
    out = io.StringIO()
    w = csv.writer(out, lineterminator='\n')
    w.writerow(table.header)
    w.writerows(table.rows)
    for line in table.footer:
        w.writerow(['# ' + line])
    return out.getvalue()


def write_tables(tables, output_dir, stable_names=False):
    """Write every table as md and csv; returns the written paths."""
    mkdir(output_dir)
    prefix = '' if stable_names else TimeStamp()
    paths = []
    for t in tables:
        for fmt in FORMATS:
            path = _join(output_dir, '%s%s.%s' % (prefix, t.name, fmt))
            save_text(path, t.render(fmt))
            paths.append(path)
    logger.info("wrote %d report files to %s", len(paths), output_dir)
    return paths


#########################################################
################### Tables
#########################################################

def q2_table(table):
    """Rows of a lambdas.Q2Table with a PASS/FAIL column."""
    t = Table('q2_lambda', ('d', 'conductor', 'lambda', 'value', 'expected', 'status'),
              footer=('product = 1: %s' % status(table.product_ok),))
    for r in table.rows:
        t.add(r.d, r.conductor, fmt_value(r.value), r.value.value, fmt_value(r.expected), status(r.ok))
    return t


def check_table(name, reports):
    """One row per CheckReport."""
    t = Table(name, ('check', 'detail', 'lhs', 'rhs', 'status'))
    for r in reports:
        t.add(r.name, r.detail, fmt_value(r.lhs), fmt_value(r.rhs), status(r.equal))
    return t


def suite_summary(results):
    """results: SuiteResult objects sorted by name."""
    t = Table('verify', ('suite', 'checks', 'failures', 'status'))
    total = 0
    for res in results:
        t.add(res.name, len(res.rows), res.failures, status(res.failures == 0))
        total += res.failures
    t.footer = ('all suites: %s' % status(total == 0),)
    return t


def determinant_table(g, rows):
    """rows: (element id, det_brute, det_invariant, gallagher)."""
    t = Table('determinants', ('g', 'det_brute', 'det_invariant', 'gallagher', 'agree'))
    for x, a, b, c in rows:
        t.add(g.labels[x], fmt_value(a), fmt_value(b), fmt_value(c), status(a == b == c))
    return t
