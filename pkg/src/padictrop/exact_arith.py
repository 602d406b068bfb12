"""Exact rationals and p-adic valuations.

Rationals are :class:`fractions.Fraction`.  The valuation of zero is the
singleton :data:`INF`, which absorbs addition and compares above every
rational.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from math import isqrt
from numbers import Rational as _RationalABC
from typing import Union

from .errors import NonPrime

Rational = Fraction


@total_ordering
class _Infinity:
    """The valuation of 0: greater than every rational, absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("padictrop.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        if other is self or isinstance(other, (_RationalABC, int)):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, (_RationalABC, int)):
            return True
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, (_RationalABC, int)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ExtValuation = Union[Fraction, _Infinity]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(x)


@lru_cache(maxsize=4096)
def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def check_prime(p) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise NonPrime(f"{p!r} is not a prime")
    return p


def _int_ord(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(q, p: int) -> ExtValuation:
    """Exponent of ``p`` in ``q``; :data:`INF` when ``q == 0``."""
    check_prime(p)
    q = as_rational(q)
    if q == 0:
        return INF
    return Fraction(_int_ord(q.numerator, p) - _int_ord(q.denominator, p))


def ord_by_division(q, p: int) -> ExtValuation:
    """Same as :func:`ord_p`, by repeatedly dividing or multiplying the
    fraction itself by ``p`` until it is a p-adic unit."""
    check_prime(p)
    q = as_rational(q)
    if q == 0:
        return INF
    k = 0
    while q.numerator % p == 0:
        q /= p
        k += 1
    while q.denominator % p == 0:
        q *= p
        k -= 1
    return Fraction(k)


def vadd(*vals: ExtValuation) -> ExtValuation:
    total: ExtValuation = Fraction(0)
    for v in vals:
        total = total + v
    return total


def vmin(*vals: ExtValuation) -> ExtValuation:
    return min(vals)


def vscale(k, v: ExtValuation) -> ExtValuation:
    """``k * v`` for a rational ``k``; ``0 * INF`` is rejected."""
    k = as_rational(k)
    if v is INF:
        if k <= 0:
            raise ValueError("only positive multiples of INF are defined")
        return INF
    return k * v


def parse_rational(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise TypeError(f"cannot parse {s!r} as a rational")
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"decimal notation is not accepted: {s!r}")
    return Fraction(s)


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_valuation(v: ExtValuation) -> str:
    return "inf" if v is INF else format_rational(v)


def parse_valuation(s) -> ExtValuation:
    if s == "inf" or s is INF:
        return INF
    return parse_rational(s)
