"""Independent ground-truth computations certifying the coefficient table.

Three constructions of C[k][n] that share no code with the convolution in
``derivpoly``:

* ``coeff_oracle`` -- a composition-sum formula.  Expanding the k-th
  derivative of exp(lam*x**m/m) by the chain rule over compositions
  k_1 + ... + k_{k-n} = k with 1 <= k_l <= m gives

      C[k][n] = k! / (m**(k-n) * (k-n)!) * S,
      S = sum over compositions of prod_l binom(m, k_l),

  and S is exactly the coefficient of y**k in ((1+y)**m - 1)**(k-n), so it
  is extracted from an exact integer polynomial power instead of enumerating
  compositions (whose count explodes).  The rational prefactor times S must
  be an integer; anything else indicates a bug.

* ``symbolic_recursion_oracle`` -- builds p_k literally as a sparse
  polynomial in (lam, x) by k applications of
  p_{k+1} = lam*x**(m-1)*p_k + p_k', then reads coefficients off the
  exponent pattern, verifying no stray monomials appear.

* ``hermite_oracle`` -- for m = 2 only: the classical Hermite recurrence
  H_{k+1} = 2x*H_k - 2k*H_{k-1} gives C[k][n] = k!/(2**n * n! * (k-2n)!),
  recovered from the integer coefficients of H_k.

Everything here is exact integer/rational arithmetic; no floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from ._util import pmap
from .derivpoly import CoeffTable, row_length


class NonIntegralCoefficientError(ArithmeticError):
    """The composition-sum prefactor failed to divide exactly (bug indicator)."""


class MonomialPatternError(ArithmeticError):
    """A symbolically built polynomial violated the exponent pattern (bug indicator)."""


@lru_cache(maxsize=None)
def _binomial_row(m: int) -> tuple[int, ...]:
    row = [1]
    for j in range(m):
        row.append(row[-1] * (m - j) // (j + 1))
    return tuple(row)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


@lru_cache(maxsize=None)
def _gf_power(m: int, power: int) -> tuple[int, ...]:
    """Exact coefficient vector of ((1+y)**m - 1)**power."""
    base = (0,) + _binomial_row(m)[1:]
    if power == 0:
        return (1,)
    if power == 1:
        return base
    half = _gf_power(m, power // 2)
    out = _poly_mul(half, half)
    if power % 2:
        out = _poly_mul(out, base)
    return out


def gf_coefficient(m: int, power: int, degree: int) -> int:
    """[y**degree] ((1+y)**m - 1)**power, exactly."""
    if power < 0 or degree < 0:
        raise ValueError("power and degree must be nonnegative")
    coeffs = _gf_power(m, power)
    return coeffs[degree] if degree < len(coeffs) else 0


def coeff_oracle(m: int, k: int, n: int) -> int:
    """C[k][n] from the composition-sum formula, exactly."""
    if m < 2:
        raise ValueError("degree m must be >= 2")
    if k < 1:
        raise ValueError("order k must be >= 1")
    if not 0 <= n <= k * (m - 1) // m:
        raise ValueError("index n=%d outside 0..%d" % (n, k * (m - 1) // m))
    s = gf_coefficient(m, k - n, k)
    numerator = factorial(k) * s
    denominator = m ** (k - n) * factorial(k - n)
    value, rem = divmod(numerator, denominator)
    if rem:
        raise NonIntegralCoefficientError(
            "prefactor does not divide at (m=%d, k=%d, n=%d)" % (m, k, n)
        )
    return value


def symbolic_recursion_oracle(m: int, k: int) -> dict[int, int]:
    """C[k][.] by literal symbolic differentiation, keyed by the term index n.

    The polynomial is a dict (lam_power, x_power) -> coefficient, started at
    the constant 1 and pushed through the recursion k times.
    """
    if m < 2:
        raise ValueError("degree m must be >= 2")
    if k < 1:
        raise ValueError("order k must be >= 1")
    poly: dict[tuple[int, int], int] = {(0, 0): 1}
    for _ in range(k):
        nxt: dict[tuple[int, int], int] = {}
        for (a, b), c in poly.items():
            key = (a + 1, b + m - 1)  # lam * x**(m-1) * term
            nxt[key] = nxt.get(key, 0) + c
            if b >= 1:  # term'
                key = (a, b - 1)
                nxt[key] = nxt.get(key, 0) + c * b
        poly = {key: c for key, c in nxt.items() if c}
    out: dict[int, int] = {}
    for (a, b), c in poly.items():
        n = k - a
        if not 0 <= n <= k * (m - 1) // m or b != (m - 1) * k - n * m or c <= 0:
            raise MonomialPatternError(
                "stray monomial lam**%d x**%d (coeff %d) at m=%d, k=%d" % (a, b, c, m, k)
            )
        out[n] = c
    if sorted(out) != list(range(row_length(m, k))):
        raise MonomialPatternError("missing term indices at m=%d, k=%d" % (m, k))
    return out


@lru_cache(maxsize=None)
def _hermite_coeffs(k: int) -> tuple[int, ...]:
    """Integer coefficient vector of the physicists' Hermite polynomial H_k."""
    if k == 0:
        return (1,)
    if k == 1:
        return (0, 2)
    prev2, prev1 = _hermite_coeffs(k - 2), _hermite_coeffs(k - 1)
    out = [0] * (k + 1)
    for i, c in enumerate(prev1):  # 2x * H_{k-1}
        out[i + 1] += 2 * c
    for i, c in enumerate(prev2):  # -2(k-1) * H_{k-2}
        out[i] -= 2 * (k - 1) * c
    return tuple(out)


def hermite_oracle(k: int) -> dict[int, int]:
    """C[k][.] for m = 2 from the classical Hermite recurrence.

    H_k's coefficient of x**(k-2n) equals (-1)**n * 2**(k-n) * C[k][n]; the
    division and the sign pattern are asserted exactly.
    """
    if k < 1:
        raise ValueError("order k must be >= 1")
    coeffs = _hermite_coeffs(k)
    out: dict[int, int] = {}
    for n in range(k // 2 + 1):
        c = coeffs[k - 2 * n]
        expected_sign = -1 if n % 2 else 1
        if c == 0 or (c > 0) != (expected_sign > 0):
            raise MonomialPatternError("Hermite sign pattern broken at k=%d, n=%d" % (k, n))
        value, rem = divmod(abs(c), 2 ** (k - n))
        if rem:
            raise NonIntegralCoefficientError("Hermite coefficient not divisible at k=%d, n=%d" % (k, n))
        out[n] = value
    return out


@dataclass(frozen=True)
class OracleReport:
    """Outcome of certifying a table; empty discrepancies means certified equal.

    Each discrepancy is (k, n, table_value, oracle_value) with the values as
    decimal strings.
    """

    m: int
    k_range: tuple[int, int]
    discrepancies: tuple[tuple[int, int, str, str], ...]

    @property
    def certified(self) -> bool:
        return not self.discrepancies

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "k_range": list(self.k_range),
            "certified": self.certified,
            "discrepancies": [list(d) for d in self.discrepancies],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)


def certify(table: CoeffTable, threads: int = 1) -> OracleReport:
    """Compare every table entry against every applicable oracle.

    A cell is reported at most once, with the first disagreeing oracle's
    value.  Discrepancies are data, not errors: fault-injection tests rely
    on getting a report back rather than an exception.
    """
    m = table.m

    def check_order(k: int) -> list[tuple[int, int, str, str]]:
        found = []
        symbolic = symbolic_recursion_oracle(m, k)
        hermite = hermite_oracle(k) if m == 2 else None
        for n, value in enumerate(table.row(k)):
            oracle_values = [coeff_oracle(m, k, n), symbolic[n]]
            if hermite is not None:
                oracle_values.append(hermite[n])
            for ov in oracle_values:
                if value != ov:
                    found.append((k, n, str(value), str(ov)))
                    break
        return found

    per_order = pmap(check_order, range(1, table.k_max + 1), threads=threads)
    discrepancies = tuple(d for sub in per_order for d in sub)
    return OracleReport(m=m, k_range=(1, table.k_max), discrepancies=discrepancies)
