import logging
import os

import pytest

from localEps.analyze import build_config, main, make_parser, read_config, setup_logging
from localEps.errors import ParseError

SMALL = ['--q-max', '5', '--p-max', '3', '--conductor-max', '2']


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_q2_table(capsys):
    code, out, _ = _run(capsys, 'q2-table')
    assert code == 0
    assert 'product = 1: PASS' in out
    assert '| -10 | 3 | -i |' in out
    assert 'FAIL' not in out


def test_q2_table_csv_to_file(tmp_path, capsys):
    path = tmp_path / 'q2.csv'
    code, out, _ = _run(capsys, 'q2-table', '--format', 'csv', '--output', str(path))
    assert code == 0 and out == ''
    lines = path.read_text().splitlines()
    assert lines[0] == 'd,conductor,lambda,value,expected,status'
    assert lines[-1] == '# product = 1: PASS'


def test_gauss_over_f9(capsys):
    code, out, _ = _run(capsys, 'gauss', '--p', '3', '--s', '2')
    assert code == 0
    assert 'G = 3' in out
    assert 'closed form 3: PASS' in out


def test_gauss_sign_for_p_3_mod_4(capsys):
    code, out, _ = _run(capsys, 'gauss', '--p', '7')
    assert code == 0 and 'G = i*sqrt(7)' in out


def test_gauss_without_quadratic_character(capsys):
    code, _, err = _run(capsys, 'gauss', '--p', '2', '--s', '2')
    assert code == 1 and 'InvalidPrime' in err


def test_tame_lambda(capsys):
    code, out, _ = _run(capsys, 'tame-lambda', '--q-max', '13')
    assert code == 0
    assert out.count('PASS') == 6


@pytest.mark.parametrize('argv, row', [
    (('lambda', 'klein4', '--q', '5'), '| 5 | -1 |'),
    (('lambda', 'klein4', '--q', '7'), '| 7 | 1 |'),
    (('lambda', 'classify', '--group', 'Q8'), '| Q8 | 3 |'),
    (('lambda', 'classify', '--group', 'abelian(2,2,2)'), '| abelian(2,2,2) | 4 |'),
    (('lambda', 'classify', '--group', 'D8', '--q', '5'), '| D8 | 3 |'),
])
def test_lambda_verbs(capsys, argv, row):
    code, out, _ = _run(capsys, *argv)
    assert code == 0 and row in out


def test_epsilon_verbs(capsys):
    code, out, _ = _run(capsys, 'epsilon', 'eval', '--p', '3', '--a', '2', '--pi', '1/2')
    assert code == 0 and '| chi | W | value |' in out
    code, out, _ = _run(capsys, 'epsilon', 'verify', '--p', '3', '--a', '2')
    assert code == 0 and 'lamprecht_tate' in out and 'FAIL' not in out
    code, _, err = _run(capsys, 'epsilon', 'eval', '--p', '3', '--a', '2', '--k', '99')
    assert code == 2 and '--k' in err


def test_group_verbs(capsys):
    code, out, _ = _run(capsys, 'group', 'info', '--group', 'D8')
    assert code == 0
    assert '| order | 8 |' in out and r'| \|Z(G)\| | 2 |' in out
    assert '| two-step nilpotent | True |' in out
    code, out, _ = _run(capsys, 'group', 'transfer', '--group', 'Q8')
    assert code == 0 and '[G:H] = 4' in out
    code, _, _ = _run(capsys, 'group', 'transfer', '--group', 'Q8', '--subgroup', 'a,b')
    assert code == 2


def test_heisenberg_verbs(capsys):
    code, out, _ = _run(capsys, 'heisenberg', 'det', '--group', 'D8')
    assert code == 0 and '| g | det_brute | det_invariant | gallagher | agree |' in out
    assert 'FAIL' not in out
    code, out, _ = _run(capsys, 'heisenberg', 'conductors', '--m', '2', '--a-eta', '2', '--p', '3')
    assert code == 0 and '| 2 | 2 | 1 | 2 | 4 | 3 | 2 | 3 |' in out
    code, out, _ = _run(capsys, 'heisenberg', 'minimal-w', '--p', '5', '--m', '4', '--theta', '1')
    assert code == 0 and out.count('\n') == 2 + 4
    code, _, err = _run(capsys, 'heisenberg', 'det', '--group', 'S3')
    assert code == 2 and 'Heisenberg' in err


@pytest.mark.parametrize('argv', [
    ('bogus',), ('gauss',), ('q2-table', '--format', 'html'), ('lambda', 'klein4'),
    ('group', 'info', '--group', 'D7'), ('heisenberg', 'minimal-w', '--p', '5', '--m', '3')])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert 'localEps: ParseError' in err


@pytest.mark.parametrize('m', ['0', '-2'])
def test_minimal_w_rejects_nonpositive_m(capsys, m):
    code, _, err = _run(capsys, 'heisenberg', 'minimal-w', '--p', '5', '--m', m)
    assert code == 2
    assert 'localEps: ParseError' in err and 'positive divisor' in err


def test_computation_errors_exit_1(capsys):
    code, _, err = _run(capsys, 'heisenberg', 'conductors', '--m', '0')
    assert code == 1 and 'InconsistentExtensionData' in err


@pytest.mark.parametrize('argv, error', [
    (('lambda', 'klein4', '--q', '6'), 'NotPrimePower'),
    (('tame-lambda', '--p', '4'), 'InvalidPrime'),
    (('epsilon', 'eval', '--p', '4', '--a', '1'), 'InvalidPrime'),
    (('heisenberg', 'minimal-w', '--p', '6'), 'InvalidPrime'),
    (('group', 'info', '--group', 'heis(4)'), 'InvalidPrime')])
def test_composite_primes_exit_1(capsys, argv, error):
    code, _, err = _run(capsys, *argv)
    assert code == 1
    assert 'localEps: %s' % error in err


def test_config_file(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text('# bounds\nq_max = 7\n\nformat = csv  # tables\nnumThreads=2\n')
    assert read_config(str(path)) == {'q_max': '7', 'format': 'csv', 'numThreads': '2'}
    params = vars(make_parser().parse_args(['verify', '--config', str(path), '--q-max', '9']))
    config = build_config(params)
    assert (config.q_max, config.format, config.numThreads) == (9, 'csv', 2)
    assert config.command == 'verify' and config.stable_names is False


def test_acceptance_flag_and_grid_keys(tmp_path):
    path = tmp_path / 'grid.cfg'
    path.write_text('lt_conductor_max = 5\ngauss_q_max = 500\n')
    params = vars(make_parser().parse_args(['verify', '--acceptance', '--config', str(path)]))
    config = build_config(params)
    assert (config.gauss_bound, config.lt_bound, config.dh_bound) == (500, 5, 3000)
    assert config.group_order_max == 128
    params = vars(make_parser().parse_args(['verify', '--config', str(path)]))
    assert build_config(params).dh_bound == 13 ** 2


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / 'bad.cfg'
    bad.write_text('q_max = 5\ncolour = red\n')
    with pytest.raises(ParseError):
        read_config(str(bad))
    code, _, err = _run(capsys, 'verify', '--config', str(bad))
    assert code == 2 and 'colour' in err
    bad.write_text('q_max 5\n')
    with pytest.raises(ParseError):
        read_config(str(bad))
    with pytest.raises(ParseError):
        read_config(str(tmp_path / 'missing.cfg'))


def test_setup_logging_levels():
    for verbose, level in ((0, logging.WARNING), (1, logging.INFO), (3, logging.DEBUG)):
        setup_logging(verbose)
        assert logging.getLogger().level == level
        assert len(logging.getLogger().handlers) == 1


def test_verify_reports_injected_fault(capsys):
    code, out, _ = _run(capsys, 'verify', *SMALL, '--inject-fault', 'q2_table', '--verbose', '0')
    assert code == 1
    assert '| q2_table | 8 | 1 | FAIL |' in out
    assert 'all suites: FAIL' in out


def test_report_writes_tables(tmp_path, capsys):
    out_dir = tmp_path / 'reports'
    code, out, _ = _run(capsys, 'report', *SMALL, '--output', str(out_dir),
                        '--stable-names', 'true', '--verbose', '0')
    assert code == 0
    written = set(os.listdir(out_dir))
    for name in ('q2_lambda', 'tame_lambda', 'verify', 'suite_groups', 'determinants_D8',
                 'determinants_heis3'):
        assert {name + '.md', name + '.csv'} <= written
    assert len(out.splitlines()) == len(written)
