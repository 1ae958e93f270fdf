import os

import pytest

from localEps import reports
from localEps.cyclo import ScaledCyclotomic, scaled, zeta
from localEps.epsilon import CheckReport
from localEps.lambdas import lambda_q2_table
from localEps.verify import SuiteResult


def _table():
    t = reports.Table('demo', ('a', 'b'), footer=('total: PASS',))
    t.add(1, 'x|y')
    t.add(zeta(4), None)
    return t


def test_fmt_value():
    assert reports.fmt_value(zeta(4)) == 'i'
    assert reports.fmt_value(-zeta(4)) == '-i'
    assert reports.fmt_value(scaled(-1)) == '-1'
    assert reports.fmt_value(ScaledCyclotomic(5, 1, 1)) == 'sqrt(5)'
    assert reports.fmt_value(ScaledCyclotomic(5, 1, -1)) == '-sqrt(5)'
    assert reports.fmt_value(7) == '7'
    assert reports.status(True) == 'PASS' and reports.status(False) == 'FAIL'


def test_render_md():
    text = _table().render('md')
    assert text.splitlines() == ['| a | b |', '|---|---|', '| 1 | x\\|y |',
                                 '| %s | None |' % zeta(4), 'total: PASS']


def test_render_csv():
    text = _table().render('csv')
    lines = text.splitlines()
    assert lines[0] == 'a,b'
    assert lines[1] == '1,x|y'
    assert lines[-1] == '# total: PASS'


def test_table_shape_errors():
    t = reports.Table('demo', ('a', 'b'))
    with pytest.raises(ValueError):
        t.add(1)
    with pytest.raises(ValueError):
        t.render('html')


def test_write_tables(tmp_path):
    out = tmp_path / 'r'
    paths = reports.write_tables([_table()], str(out), stable_names=True)
    assert sorted(os.path.basename(p) for p in paths) == ['demo.csv', 'demo.md']
    assert (out / 'demo.md').read_text().startswith('| a | b |')
    stamped = reports.write_tables([_table()], str(out))
    assert all(os.path.basename(p) != 'demo.md' for p in stamped)
    assert all(os.path.exists(p) for p in stamped)


def test_q2_table_rows():
    t = reports.q2_table(lambda_q2_table())
    assert len(t.rows) == 7
    assert t.footer == ('product = 1: PASS',)
    by_d = {r[0]: r for r in t.rows}
    assert by_d['-10'][2] == '-i' and by_d['-10'][-1] == 'PASS'
    assert by_d['5'][1] == '0'


def test_check_and_summary_tables():
    checks = [CheckReport('same', 1, 1, True), CheckReport('differ', zeta(4), -1, False, 'q=5')]
    t = reports.check_table('checks', checks)
    assert t.rows[1] == ('differ', 'q=5', 'i', '-1', 'FAIL')
    summary = reports.suite_summary([SuiteResult('a', (('x',),) * 3, 0),
                                     SuiteResult('b', (('y',),), 1)])
    assert summary.rows == [('a', '3', '0', 'PASS'), ('b', '1', '1', 'FAIL')]
    assert summary.footer == ('all suites: FAIL',)
