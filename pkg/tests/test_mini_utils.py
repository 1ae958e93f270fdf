from fractions import Fraction

import pytest

from localEps import errors
from localEps.mini_utils import (TimeStamp, check_arg_trueFalse, lcm, p_valuation, prime_power,
                                 split_part)


@pytest.mark.parametrize('text', ['t', 'T', 'true', 'True', '1', True])
def test_true_strings(text):
    assert check_arg_trueFalse(text) is True


@pytest.mark.parametrize('text', ['f', 'FALSE', 'false', '0', False])
def test_false_strings(text):
    assert check_arg_trueFalse(text) is False


@pytest.mark.parametrize('bad', ['yes', '', 3])
def test_bad_boolean_raises(bad):
    with pytest.raises(ValueError):
        check_arg_trueFalse(bad)


def test_arithmetic_helpers():
    assert lcm(4, 6) == 12
    assert lcm() == 1
    assert p_valuation(Fraction(18, 5), 3) == 2
    assert p_valuation(Fraction(2, 9), 3) == -2
    assert prime_power(9) == (3, 2)
    assert prime_power(2) == (2, 1)
    assert split_part(24, 2) == (8, 3)
    with pytest.raises(ValueError):
        p_valuation(0, 2)
    with pytest.raises(errors.NotPrimePower):
        prime_power(12)
    with pytest.raises(errors.InvalidPrime):
        prime_power(1)


def test_time_stamp_is_file_name_safe():
    stamp = TimeStamp()
    assert '/' not in stamp and ':' not in stamp and ' ' not in stamp


def test_exit_codes():
    assert errors.UnsupportedModel.exit_code == 3
    assert errors.OpenProblem.exit_code == 3
    assert errors.ParseError.exit_code == 2
    assert errors.NotARoot.exit_code == 1
    assert issubclass(errors.Degenerate, errors.LocalEpsError)
    assert issubclass(errors.LocalEpsError, ValueError)
