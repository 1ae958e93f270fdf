import numpy as np
import pytest

from localEps.errors import ParseError
from localEps.verify import (FAULTS, SUITES, RunConfig, _transfer_law_reports, _two_step_groups,
                             run_suites)

SMALL = dict(q_max=5, p_max=3, conductor_max=2)


def test_run_config_defaults_and_overlay():
    c = RunConfig()
    assert (c.q_max, c.p_max, c.conductor_max, c.format, c.numThreads) == (13, 5, 3, 'md', 1)
    c = RunConfig.from_mapping({'q_max': '7', 'format': 'csv', 'verbose': None})
    assert (c.q_max, c.format, c.verbose) == (7, 'csv', 1)
    c = RunConfig.from_mapping({'p_max': 2}, base=c)
    assert (c.q_max, c.p_max) == (7, 2)
    assert RunConfig(stable_names='true').stable_names is True


@pytest.mark.parametrize('values', [
    {'q_max': 0}, {'numThreads': -1}, {'format': 'html'}, {'inject_fault': 'lambda'},
    {'q_max': 'many'}, {'colour': 'red'}, {'stable_names': 'perhaps'}])
def test_run_config_rejects(values):
    with pytest.raises(ParseError):
        RunConfig.from_mapping(values)


def test_small_suites_pass():
    results = run_suites(RunConfig(**SMALL), ['cyclo', 'gauss', 'q2_table', 'lambda', 'epsilon'])
    assert [r.name for r in results] == ['cyclo', 'epsilon', 'gauss', 'lambda', 'q2_table']
    for r in results:
        assert r.rows and r.failures == 0, [row for row in r.rows if row[-1] == 'FAIL']


@pytest.mark.parametrize('fault', FAULTS)
def test_injected_fault_is_reported(fault):
    res, = run_suites(RunConfig(inject_fault=fault, **SMALL), [fault])
    assert res.failures == 1
    failing = [row for row in res.rows if row[-1] == 'FAIL']
    assert len(failing) == 1


def test_pool_matches_serial():
    names = ['cyclo', 'q2_table']
    serial = run_suites(RunConfig(**SMALL), names)
    pooled = run_suites(RunConfig(numThreads=2, **SMALL), names)
    assert serial == pooled


def test_unknown_suite():
    with pytest.raises(ParseError):
        run_suites(RunConfig(), ['cyclo', 'nope'])
    assert set(SUITES) == {'cyclo', 'gauss', 'epsilon', 'q2_table', 'lambda', 'groups',
                           'determinants', 'u_isotropic'}


def test_grid_bounds_follow_the_small_bounds():
    c = RunConfig(q_max=7, conductor_max=2)
    assert (c.gauss_bound, c.dh_bound, c.lambda_bound, c.lt_bound) == (7, 49, 7, 2)
    c = RunConfig.from_mapping({'gauss_q_max': '31', 'lt_conductor_max': '4'}, base=c)
    assert (c.gauss_bound, c.lt_bound, c.lambda_bound) == (31, 4, 7)
    with pytest.raises(ParseError):
        RunConfig(dh_max=0)


def test_acceptance_preset():
    c = RunConfig.acceptance()
    assert (c.gauss_bound, c.dh_bound, c.lambda_bound, c.lt_bound) == (2000, 3000, 1000, 6)
    assert (c.p_max, c.conductor_max, c.group_order_max) == (5, 4, 128)
    assert RunConfig.acceptance(numThreads='4').numThreads == 4


def test_two_step_groups():
    groups = _two_step_groups(128)
    orders = sorted(g.n for g in groups)
    assert orders[0] == 27 and orders[-1] == 125 and max(orders) <= 128
    names = {g.name for g in groups}
    assert {'Heis(5)', 'Heis(3)xC4', 'Heis(3)xC2xC2'} <= names
    assert len(names) == len(groups)


@pytest.mark.slow
def test_transfer_grid():
    rng = np.random.RandomState(1)
    count = 0
    for g in _two_step_groups(128):
        for r in _transfer_law_reports(g, rng):
            assert r.equal, (r.name, r.detail)
            count += r.name == 'transfer_is_power'
    assert count


@pytest.mark.slow
def test_acceptance_suites_pass():
    for r in run_suites(RunConfig.acceptance()):
        assert r.rows and r.failures == 0, [row for row in r.rows if row[-1] == 'FAIL'][:5]
