"""Multiprecision plumbing shared by every numeric path in the package.

All arithmetic here is either exact (Python ints / fractions.Fraction) or
mpmath floating point with an explicit bit budget.  mpmath keeps global
precision state in its ``mp`` and ``iv`` contexts, and its interval context
has no ``workprec`` and cannot convert ``Fraction`` directly, so the scoped
precision managers and the conversion helpers live here and are used
everywhere instead of ad-hoc context fiddling.

Conversions round at most once at the requested precision; equal Fractions
therefore always convert to bit-identical mpf values, which several
determinism and dilation-identity checks rely on.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import iv, mp


class PrecisionError(ArithmeticError):
    """An interval enclosure is too wide to certify the promised error bound."""


@contextmanager
def mp_prec(bits: int):
    """Scoped working precision for the scalar context."""
    with mp.workprec(bits):
        yield mp


@contextmanager
def iv_prec(bits: int):
    """Scoped working precision for the interval context (no native workprec)."""
    old = iv.prec
    iv.prec = bits
    try:
        yield iv
    finally:
        iv.prec = old


def to_mpf(value):
    """Convert int/float/Fraction/mpf to mpf at the current working precision.

    Fractions are converted as numerator/denominator with a single rounding,
    so equal Fractions give identical mpf values at equal precision.
    """
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / mp.mpf(value.denominator)
    return mp.mpf(value)


def to_iv(value):
    """Enclose int/float/Fraction/mpf in an interval at the current iv precision."""
    if isinstance(value, Fraction):
        return iv.mpf(value.numerator) / iv.mpf(value.denominator)
    if isinstance(value, mpmath.mpf):
        return iv.mpf(value._mpf_)
    return iv.mpf(value)


def iv_endpoints(x):
    """Exact lower/upper endpoints of an interval as plain mpf values."""
    a, b = x._mpi_
    return mp.make_mpf(a), mp.make_mpf(b)


def iv_abs_width(x, bits: int = 64):
    """Upper bound for the absolute width b - a of an interval."""
    a, b = iv_endpoints(x)
    with mp_prec(bits):
        return mp.mpf(b) - mp.mpf(a)  # rounding up is not needed: checks add margin


def iv_midpoint(x, bits: int):
    """Interval midpoint rounded to ``bits`` of precision."""
    a, b = iv_endpoints(x)
    with mp_prec(bits + 16):
        m_ = (mp.mpf(a) + mp.mpf(b)) / 2
    with mp_prec(bits):
        return +m_


def certified_midpoint(x, bits: int, max_rel_error: Fraction = Fraction(1, 2**64)):
    """Midpoint of an interval whose relative width certifies ``max_rel_error``.

    Raises PrecisionError when the interval straddles zero (unless it is the
    exact point 0) or is too wide relative to its smallest endpoint modulus.
    """
    a, b = iv_endpoints(x)
    if a == b:
        with mp_prec(bits):
            return +mp.mpf(a)
    if a <= 0 <= b:
        raise PrecisionError("enclosure straddles zero; no relative bound certifiable")
    with mp_prec(bits + 16):
        lo = min(abs(mp.mpf(a)), abs(mp.mpf(b)))
        width = mp.mpf(b) - mp.mpf(a)
        if width > lo * to_mpf(max_rel_error):
            raise PrecisionError(
                "relative enclosure width %s exceeds the certification bound" % mp.nstr(width / lo, 8)
            )
    return iv_midpoint(x, bits)


def half_log_of_int(n: int, bits: int):
    """ln(n)/2 for a positive integer n, rounded correctly to ``bits``.

    Recomputes with growing guard precision until two successive roundings
    agree, so the returned value is the correctly rounded one except with
    probability on the order of 2**-128.
    """
    if n <= 0:
        raise ValueError("positive integer required")
    prev = None
    for guard in (32, 64, 128, 256):
        with mp_prec(bits + guard):
            v = mp.log(mp.mpf(n)) / 2
        with mp_prec(bits):
            r = +v
        if prev is not None and r == prev:
            return r
        prev = r
    return prev


def log_of_int(n: int, bits: int):
    """ln(n) for a positive integer, with one guard-and-compare rounding pass."""
    if n <= 0:
        raise ValueError("positive integer required")
    with mp_prec(bits + 32):
        v = mp.log(mp.mpf(n))
    with mp_prec(bits):
        return +v
