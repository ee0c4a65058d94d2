"""Exact rational scalars.

Everything downstream works over these; gmpy2 only swaps in a faster
implementation of the same arithmetic.
"""
from __future__ import annotations

import math

try:
    from gmpy2 import mpq as QQ
except ImportError:
    from fractions import Fraction as QQ


ZERO = QQ(0)
ONE = QQ(1)


def qq(num, den=None):
    """Build a rational from ints, a string like '3/4', or pass one through."""
    if den is not None:
        return QQ(num) / QQ(den)
    if isinstance(num, str):
        return QQ(num)
    return QQ(num)


def is_rat(x) -> bool:
    return isinstance(x, (int, type(ZERO)))


def num_den(q) -> tuple[int, int]:
    q = QQ(q)
    return int(q.numerator), int(q.denominator)


def rat_sqrt(q):
    """Exact square root in Q, or None if q is not a rational square."""
    n, d = num_den(q)
    if n < 0:
        return None
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return QQ(rn) / QQ(rd)


def qq_str(q) -> str:
    n, d = num_den(q)
    return str(n) if d == 1 else f"{n}/{d}"
