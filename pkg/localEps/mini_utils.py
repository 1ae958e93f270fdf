"""
Copyright (C) 2026 The localEps developers
Licensed under the Open Software License version 3.0
See COPYING or http://opensource.org/licenses/OSL-3.0
"""
import time
from fractions import Fraction
from functools import reduce
from math import gcd
from os import makedirs as _makedirs
from os.path import exists as _exists

import sympy

from localEps.errors import NotPrimePower

#####################
### Generic Functions
#####################

def mkdir(path):
    if len(path)>1 and _exists(path)==0:
        _makedirs(path)


def TimeStamp():
    """can be used inside of file names"""
    return time.strftime("%m-%d-%Y__%Hh_%Mm_%Ss_", time.localtime(time.time()))+str(time.time()%1)[10:]


def save_text(path, text):
    with open(path, 'w') as fid:
        fid.write(text)


def check_arg_trueFalse(a):
    """ Check boolean command line / config options

    True for '1' and all lower/upper case versions of 't' or 'true'
    False for '0' and all lower/upper case versions of 'f' or 'false'
    """
    if isinstance(a, bool):
        return a
    try:
        a = a.lower()
    except AttributeError:
        raise ValueError("Supplied argument %r must be a string indicating true or false" % (a,))
    if a in ('t', 'true', '1'):
        return True
    if a in ('f', 'false', '0'):
        return False
    raise ValueError("Supplied argument %r must be a string indicating true or false" % (a,))


#########################
### Arithmetic helpers
#########################

def lcm(*args):
    return reduce(lambda a, b: a * b // gcd(a, b), args, 1)


def p_valuation(x, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def prime_power(q):
    """Split q = p^f, raising if q is not a prime power."""
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise NotPrimePower("%d is not a prime power" % q)
    (p, f), = fac.items()
    return int(p), int(f)


def split_part(n, p):
    """n = p^k * rest with p not dividing rest; returns (p^k, rest)."""
    pk = 1
    while n % p == 0:
        n //= p
        pk *= p
    return pk, n


def frac_mod1(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)
