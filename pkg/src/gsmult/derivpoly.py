"""Derivative polynomials of exponential monomials exp(lam*x**m/m).

Repeated differentiation of g(x) = exp(lam * x**m / m), m >= 2, gives

    d^k/dx^k g(x) = p_k(x) * g(x)

where p_k is a polynomial of degree k*(m-1).  Ordered by descending x-power
its nonzero terms follow a rigid pattern:

    p_k(x) = sum_{n=0}^{floor(k*(m-1)/m)} lam**(k-n) * x**((m-1)*k - n*m) * C[k][n]

with coefficients C[k][n] that are positive integers depending on m alone
(for m = 2, lam = -2 they reduce to Hermite polynomial coefficients up to
sign and powers of two).  Differentiating the pattern once more yields the
convolution step used to build the whole table:

    C[k+1][n] = C[k][n] + C[k][n-1] * ((m-1)*k - m*(n-1))

where out-of-range entries are read as zero.  Reading them as zero makes the
two boundary cases of the step (top index present or absent, depending on
whether m divides k) a single uniform formula; the oracle module certifies
the result against two independent constructions.

Magnitudes |p_k(x)| for lam = +/- i*m are evaluated exactly in Gaussian
integers whenever x is a nonnegative integer; for other x an interval
enclosure certifies the returned log-magnitude to 2**-32 absolute error.
|D^k g| = |d^k/dx^k g| since D = i^{-1} d/dx only changes the phase, so all
magnitude-level results hold for either normalization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import mpmath
from mpmath import mp

from .precision import (
    PrecisionError,
    half_log_of_int,
    iv_abs_width,
    iv_midpoint,
    iv_prec,
    mp_prec,
    to_iv,
)

MIN_EVAL_PRECISION_BITS = 64
_LOG_ABS_ERROR_BOUND = Fraction(1, 2**32)


def row_length(m: int, k: int) -> int:
    """Number of table entries for order k: floor(k*(m-1)/m) + 1."""
    return k * (m - 1) // m + 1


def default_precision_bits(m: int, k: int, theta) -> int:
    """Working-precision budget for evaluating |p_k| at x = k**theta.

    ceil(k * (log2(m) + theta*(m-1)*log2(max(k, 2)))) + 128: enough bits to
    hold the dominant term exactly, plus guard room for sums and logs.
    """
    t = float(theta)
    need = math.ceil(k * (math.log2(m) + t * (m - 1) * math.log2(max(k, 2))))
    return max(MIN_EVAL_PRECISION_BITS, need + 128)


@dataclass(frozen=True)
class CoeffTable:
    """Triangular table of the positive integer coefficients C[k][n].

    rows[k-1] holds the row for derivative order k, of length
    floor(k*(m-1)/m) + 1.  Immutable after construction; safe to share.
    """

    m: int
    k_max: int
    rows: tuple[tuple[int, ...], ...]

    def row(self, k: int) -> tuple[int, ...]:
        if not 1 <= k <= self.k_max:
            raise ValueError("order %d outside table range 1..%d" % (k, self.k_max))
        return self.rows[k - 1]

    def coeff(self, k: int, n: int) -> int:
        row = self.row(k)
        if not 0 <= n < len(row):
            raise ValueError("index n=%d outside row of length %d" % (n, len(row)))
        return row[n]

    def to_json_dict(self) -> dict:
        """Exact export: coefficients as decimal strings."""
        return {
            "m": self.m,
            "k_max": self.k_max,
            "rows": [[str(c) for c in row] for row in self.rows],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoeffTable":
        rows = tuple(tuple(int(c) for c in row) for row in data["rows"])
        table = cls(m=int(data["m"]), k_max=int(data["k_max"]), rows=rows)
        table.validate()
        return table

    def validate(self) -> None:
        """Structural invariants: row lengths, positivity, leading ones."""
        if self.m < 2:
            raise ValueError("degree m must be >= 2")
        if len(self.rows) != self.k_max:
            raise ValueError("row count %d does not match k_max %d" % (len(self.rows), self.k_max))
        for k, row in enumerate(self.rows, start=1):
            if len(row) != row_length(self.m, k):
                raise ValueError("row %d has length %d, expected %d" % (k, len(row), row_length(self.m, k)))
            if row[0] != 1:
                raise ValueError("row %d does not start with 1" % k)
            if any(c <= 0 for c in row):
                raise ValueError("row %d contains a nonpositive entry" % k)


def build_coeff_table(m: int, k_max: int) -> CoeffTable:
    """Build the coefficient table for degree m up to derivative order k_max."""
    if not isinstance(m, int) or m < 2:
        raise ValueError("degree m must be an integer >= 2, got %r" % (m,))
    if not isinstance(k_max, int) or k_max < 1:
        raise ValueError("k_max must be an integer >= 1, got %r" % (k_max,))
    rows = [(1,)]
    for k in range(1, k_max):
        prev = rows[-1]
        new_len = row_length(m, k + 1)
        row = []
        for n in range(new_len):
            c = prev[n] if n < len(prev) else 0
            if n >= 1:
                c += prev[n - 1] * ((m - 1) * k - m * (n - 1))
            row.append(c)
        rows.append(tuple(row))
    table = CoeffTable(m=m, k_max=k_max, rows=tuple(rows))
    table.validate()
    return table


@dataclass(frozen=True)
class DerivPoly:
    """Structured view of p_k: coefficient row plus the exponent pattern.

    Term n carries lam**(k-n) * x**((m-1)*k - n*m); coefficients are shared
    with the table, never copied.
    """

    m: int
    k: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return (self.m - 1) * self.k

    def exponent(self, n: int) -> int:
        return (self.m - 1) * self.k - n * self.m

    def lambda_power(self, n: int) -> int:
        return self.k - n

    def terms(self) -> Iterator[tuple[int, int, int, int]]:
        """Yield (n, lambda_power, x_exponent, coefficient) by ascending n."""
        for n, c in enumerate(self.coeffs):
            yield n, self.k - n, self.exponent(n), c


def derivative_poly(table: CoeffTable, k: int) -> DerivPoly:
    """The order-k polynomial as a view into the table; k = 0 is the constant 1."""
    if k == 0:
        return DerivPoly(m=table.m, k=0, coeffs=(1,))
    return DerivPoly(m=table.m, k=k, coeffs=table.row(k))


@dataclass(frozen=True)
class LogMagnitude:
    """Natural log of |p_k(x)| with provenance of how it was computed.

    When ``exact`` is set the value was rounded from an exact Gaussian
    integer modulus squared; otherwise an interval enclosure certified the
    absolute error below 2**-32.  log_mag is -inf when the value is 0.
    """

    log_mag: mpmath.mpf
    arg: Optional[mpmath.mpf]
    exact: bool
    precision_bits: int


def gaussian_parts(poly: DerivPoly, lambda_sign: int, x: int) -> tuple[int, int]:
    """Exact real/imaginary parts of p_k(x) for lam = lambda_sign * i * m, x integer.

    Powers of (+/-i) cycle with period four; everything else is integer
    multiplication, so the result is exact for any size of k and x.
    """
    if lambda_sign not in (1, -1):
        raise ValueError("lambda_sign must be +1 or -1")
    if not isinstance(x, int) or x < 0:
        raise ValueError("exact evaluation requires a nonnegative integer x")
    m, k = poly.m, poly.k
    n_top = len(poly.coeffs) - 1
    re = im = 0
    x_step = x**m
    x_pow = x ** poly.exponent(n_top)
    m_pow = m ** (k - n_top)
    for n in range(n_top, -1, -1):
        t = poly.coeffs[n] * m_pow * x_pow
        j = k - n
        if lambda_sign < 0 and j % 2 == 1:
            t = -t
        q = j % 4
        if q == 0:
            re += t
        elif q == 1:
            im += t
        elif q == 2:
            re -= t
        else:
            im -= t
        if n:
            x_pow *= x_step
            m_pow *= m
    return re, im


def _interval_log_magnitude(poly: DerivPoly, lambda_sign: int, x, bits: int) -> LogMagnitude:
    m, k = poly.m, poly.k
    n_top = len(poly.coeffs) - 1
    with iv_prec(bits):
        xi = to_iv(x)
        x_step = xi**m
        x_pow = xi ** poly.exponent(n_top)
        m_pow = mpmath.iv.mpf(m ** (k - n_top))
        re = mpmath.iv.mpf(0)
        im = mpmath.iv.mpf(0)
        for n in range(n_top, -1, -1):
            t = mpmath.iv.mpf(poly.coeffs[n]) * m_pow * x_pow
            j = k - n
            if lambda_sign < 0 and j % 2 == 1:
                t = -t
            q = j % 4
            if q == 0:
                re += t
            elif q == 1:
                im += t
            elif q == 2:
                re -= t
            else:
                im -= t
            if n:
                x_pow *= x_step
                m_pow *= mpmath.iv.mpf(m)
        mag2 = re * re + im * im
        if 0 in mag2:
            raise PrecisionError("modulus enclosure touches zero; raise precision_bits")
        log_iv = mpmath.iv.log(mag2) / 2
        if iv_abs_width(log_iv) > mp.mpf(_LOG_ABS_ERROR_BOUND.numerator) / mp.mpf(_LOG_ABS_ERROR_BOUND.denominator):
            raise PrecisionError("log enclosure wider than 2^-32; raise precision_bits")
        phase_iv = mpmath.iv.atan2(im, re)
    log_mag = iv_midpoint(log_iv, bits)
    arg = iv_midpoint(phase_iv, bits)
    return LogMagnitude(log_mag=log_mag, arg=arg, exact=False, precision_bits=bits)


def eval_log_magnitude(
    poly: DerivPoly,
    lambda_sign: int,
    x,
    precision_bits: Optional[int] = None,
    exact: Optional[bool] = None,
) -> LogMagnitude:
    """ln |p_k(x)| for lam = lambda_sign * i * m, with a certified error budget.

    Integer x (including Fractions with denominator one) goes through exact
    Gaussian-integer arithmetic; the log is then correctly rounded at the
    working precision.  Other x is evaluated by interval arithmetic and must
    certify absolute error below 2**-32, else PrecisionError is raised.
    ``exact`` forces a path: True rejects non-integer x, False forces the
    interval path even for integers (used by agreement tests).
    """
    if lambda_sign not in (1, -1):
        raise ValueError("lambda_sign must be +1 or -1")
    x_int = None
    if isinstance(x, int):
        x_int = x
    elif isinstance(x, Fraction) and x.denominator == 1:
        x_int = x.numerator
    if x_int is not None and x_int < 0 or x_int is None and not (float(x) >= 0):
        raise ValueError("x must be nonnegative")

    if precision_bits is None:
        ref = max(float(x), 2.0)
        need = math.ceil(poly.k * (math.log2(poly.m) + (poly.m - 1) * math.log2(ref)))
        bits = max(MIN_EVAL_PRECISION_BITS, need + 128)
    else:
        if precision_bits < MIN_EVAL_PRECISION_BITS:
            raise ValueError("precision_bits must be >= %d" % MIN_EVAL_PRECISION_BITS)
        bits = precision_bits

    use_exact = x_int is not None if exact is None else exact
    if use_exact:
        if x_int is None:
            raise ValueError("exact evaluation requires an integer x")
        re, im = gaussian_parts(poly, lambda_sign, x_int)
        mag2 = re * re + im * im
        if mag2 == 0:
            with mp_prec(bits):
                return LogMagnitude(log_mag=mp.mpf("-inf"), arg=None, exact=True, precision_bits=bits)
        log_mag = half_log_of_int(mag2, bits)
        with mp_prec(bits):
            arg = mp.atan2(mp.mpf(im), mp.mpf(re))
        return LogMagnitude(log_mag=log_mag, arg=arg, exact=True, precision_bits=bits)
    return _interval_log_magnitude(poly, lambda_sign, x, bits)


@dataclass(frozen=True)
class KjSequence:
    """Orders k_j where the alternating real part of p_k is provably dominant.

    entries[j-1] is the smallest integer in [4j*m/(m-1), (4j+1)*m/(m-1)];
    the interval has length m/(m-1) > 1 so it always contains one.  Along
    these orders floor(k_j*(m-1)/m) lands in {4j, 4j+1}, which is what makes
    |p_k(k**theta)| >= (1/2) * m**k * k**(theta*k*(m-1)) provable term by term.
    """

    m: int
    entries: tuple[int, ...]

    def k(self, j: int) -> int:
        if not 1 <= j <= len(self.entries):
            raise ValueError("j=%d outside stored range 1..%d" % (j, len(self.entries)))
        return self.entries[j - 1]


def kj_sequence(m: int, j_max: int) -> KjSequence:
    """The k_j sequence for degree m, for j = 1..j_max, with invariant checks."""
    if not isinstance(m, int) or m < 2:
        raise ValueError("degree m must be an integer >= 2")
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    entries = []
    for j in range(1, j_max + 1):
        kj = -((-4 * j * m) // (m - 1))  # ceil(4j*m/(m-1))
        if not 4 * j * m <= kj * (m - 1) or not kj * (m - 1) <= (4 * j + 1) * m:
            raise AssertionError("k_%d=%d escaped its defining interval" % (j, kj))
        floor_idx = kj * (m - 1) // m
        if not 4 * j <= floor_idx <= 4 * j + 1:
            raise AssertionError("floor index %d for k_%d=%d outside [4j, 4j+1]" % (floor_idx, j, kj))
        if floor_idx // 2 != 2 * j:
            raise AssertionError("half floor index for k_%d=%d is not 2j" % (j, kj))
        entries.append(kj)
    return KjSequence(m=m, entries=tuple(entries))
