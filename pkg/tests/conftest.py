import pytest

from localEps import group_core as gc
from localEps.finite_field import get_field
from localEps.local_field import q2_quadratic_catalogue

NAMED_GROUPS = ('D8', 'Q8', 'heis(3)', 'extraspecial(3)', 'C2xC4', 'S3')
SMALL_FIELDS = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1))


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full acceptance grids (deselect with -m "not slow")')


@pytest.fixture(scope='session')
def named_groups():
    return {spec: gc.build_group(spec) for spec in NAMED_GROUPS}


@pytest.fixture(params=SMALL_FIELDS, ids=lambda ps: 'F%d^%d' % ps)
def small_field(request):
    return get_field(*request.param)


@pytest.fixture(scope='session')
def q2_catalogue():
    return {r.d: r for r in q2_quadratic_catalogue()}
