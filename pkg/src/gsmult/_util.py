"""Small cross-cutting helpers: ordered parallel map, least squares, and
the exact-string formats used by every file-emitting code path."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath

from .precision import mp_prec, to_mpf


def pmap(fn, items, threads: int = 1):
    """Map preserving input order; fans out over a thread pool when threads > 1.

    Results are identical to the sequential map regardless of thread count,
    which keeps every emitted file byte-deterministic.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def ols_slope(xs, ys, bits: int = 128):
    """Ordinary least squares slope of ys against xs at ``bits`` precision."""
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two points for a slope")
    with mp_prec(bits):
        xm = [to_mpf(x) for x in xs]
        ym = [to_mpf(y) for y in ys]
        mean_x = sum(xm) / n
        mean_y = sum(ym) / n
        sxx = sum((x - mean_x) ** 2 for x in xm)
        sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xm, ym))
        return sxy / sxx


def parse_fraction(text: str) -> Fraction:
    """Parse 'p/q', an integer string, or a decimal string into a Fraction."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    if "." in text or "e" in text or "E" in text:
        return Fraction(text)
    return Fraction(int(text))


def format_fraction(q: Fraction) -> str:
    """Canonical exact string for a rational: 'p' or 'p/q'."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def format_mpf(x, digits: int = 24) -> str:
    """Deterministic decimal string for an mpf value."""
    if x == mpmath.inf:
        return "inf"
    if x == mpmath.ninf:
        return "-inf"
    return mpmath.nstr(x, digits)
