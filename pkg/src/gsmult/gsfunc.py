"""High-order derivative engines for <x>**t and exp(-<x>**(1/theta)),
empirical verification of their factorial derivative bounds, and truncated
Gelfand-Shilov seminorm estimation.

Here <x> = (1 + x**2)**(1/2).  Derivatives of the bracket power satisfy

    d^k/dx^k <x>**t = q_k(x) * (1+x**2)**(t/2 - k)

with polynomials q_k built by the exact recursion

    q_0 = 1,   q_{k+1} = q_k' * (1+x**2) + (t - 2k) * x * q_k,

whose coefficients stay rational for rational t.  (The leading coefficient
is the falling factorial t(t-1)...(t-k+1), so for small nonnegative integer
t the literal degree drops below k; rows are stored with degree bound k.)

Derivatives of f(x) = exp(-<x>**(1/theta)) = exp(h(x)) with h = -<x>**(1/theta)
are produced by the Leibniz recursion

    f^(k+1) = sum_{i=0}^{k} binom(k, i) * h^(i+1) * f^(k-i),

mathematically identical to the partition-sum expansion of the chain rule
but O(k^2) instead of exponential.  The whole recursion runs in interval
arithmetic and each returned value is certified to relative error below
2**-64, else PrecisionError is raised.

Seminorm estimators are truncated suprema over finitely many derivative
orders, power orders and grid points, hence certified *lower* bounds of the
true seminorms; no extrapolation to the full supremum is claimed.  Grids
default to geometric spacing in |x| up to 2 * k_max**theta because the
maximizing x of order k grows with k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence

from mpmath import iv, mp

from ._util import format_fraction, ols_slope
from .derivpoly import build_coeff_table
from .identities import CheckResult, _result
from .precision import certified_midpoint, iv_prec, mp_prec, to_iv, to_mpf


@dataclass(frozen=True)
class BracketDerivPoly:
    """q_k with d^k/dx^k <x>**t = q_k(x) * (1+x**2)**(t/2-k); exact coefficients."""

    t: Fraction
    k: int
    coeffs: tuple[Fraction, ...]  # length k+1, ascending powers

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


@lru_cache(maxsize=None)
def _bracket_rows(t: Fraction, k_max: int) -> tuple[tuple[Fraction, ...], ...]:
    rows = [(Fraction(1),)]
    for k in range(k_max):
        q = rows[-1]
        nxt = [Fraction(0)] * (k + 2)
        for i in range(1, len(q)):  # q' and q' * x**2
            nxt[i - 1] += i * q[i]
            nxt[i + 1] += i * q[i]
        for i in range(len(q)):  # (t - 2k) * x * q
            nxt[i + 1] += (t - 2 * k) * q[i]
        rows.append(tuple(nxt))
    return tuple(rows)


def _as_fraction_t(t) -> Fraction:
    # floats such as 2.5 convert exactly; reject anything non-rational
    return Fraction(t)


def bracket_derivative(t, k: int) -> BracketDerivPoly:
    """The exact polynomial part of the k-th derivative of <x>**t."""
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    tf = _as_fraction_t(t)
    return BracketDerivPoly(t=tf, k=k, coeffs=_bracket_rows(tf, k)[k])


def bracket_derivative_series(t, k_max: int) -> tuple[BracketDerivPoly, ...]:
    """All orders 0..k_max at once (one recursion pass)."""
    tf = _as_fraction_t(t)
    rows = _bracket_rows(tf, k_max)
    return tuple(BracketDerivPoly(t=tf, k=k, coeffs=rows[k]) for k in range(k_max + 1))


def bracket_eval(t, k: int, x, precision_bits: int = 192):
    """d^k/dx^k <x>**t at x, as an mpf at the given precision."""
    poly = bracket_derivative(t, k)
    tf = poly.t
    with mp_prec(precision_bits):
        xm = to_mpf(x)
        qv = mp.mpf(0)
        for c in reversed(poly.coeffs):
            qv = qv * xm + to_mpf(c)
        base = 1 + xm * xm
        return qv * mp.exp((to_mpf(tf) / 2 - k) * mp.log(base))


def uniform_grid(lo: Fraction, hi: Fraction, points: int) -> tuple[Fraction, ...]:
    """Uniform rational grid with ``points`` samples, endpoints included."""
    lo, hi = Fraction(lo), Fraction(hi)
    if points < 2:
        raise ValueError("need at least two grid points")
    step = (hi - lo) / (points - 1)
    return tuple(lo + i * step for i in range(points))


def geometric_grid(x_max, points: int = 25) -> tuple[Fraction, ...]:
    """{0} plus ``points`` halvings of x_max: geometric coverage of [0, x_max]."""
    x_max = Fraction(x_max)
    if x_max <= 0 or points < 1:
        raise ValueError("x_max must be positive, points >= 1")
    return (Fraction(0),) + tuple(x_max / 2**j for j in reversed(range(points)))


def verify_bracket_bound(t, k_max: int, grid: Optional[Sequence] = None, precision_bits: int = 192) -> CheckResult:
    """Empirical constant for |d^k <x>**t| <= C * 8**k * k! * <x>**(t-k).

    The ratio simplifies to |q_k(x)| * (1+x**2)**(-k/2) / (8**k * k!), which
    is evaluated on the grid; the check asserts the maximum is finite and
    reports it as the empirical C_t.
    """
    tf = _as_fraction_t(t)
    if grid is None:
        grid = uniform_grid(Fraction(-10), Fraction(10), 81)
    polys = bracket_derivative_series(tf, k_max)
    max_ratio = None
    witnesses = []
    with mp_prec(precision_bits):
        for x in grid:
            xf = Fraction(x)
            base = to_mpf(1 + xf * xf)
            log_base = mp.log(base)
            for k in range(k_max + 1):
                qv = polys[k](xf)
                if qv == 0:
                    continue
                log_ratio = mp.log(to_mpf(abs(qv))) - k * log_base / 2 - k * mp.log(8) - mp.log(mp.factorial(k))
                ratio = mp.exp(log_ratio)
                if not mp.isfinite(ratio):
                    witnesses.append((k, format_fraction(xf)))
                elif max_ratio is None or ratio > max_ratio:
                    max_ratio = ratio
    params = {"t": format_fraction(tf), "k_max": k_max, "grid_points": len(tuple(grid))}
    return _result("bracket-derivative-bound", params, witnesses, max_ratio)


MIN_GS_PRECISION_BITS = 128
_GS_REL_ERROR = Fraction(1, 2**64)


def gs_derivative_series(theta, k_max: int, x, precision_bits: int = 256):
    """Certified values of d^k/dx^k exp(-<x>**(1/theta)) for k = 0..k_max.

    Runs the h'-Leibniz recursion in interval arithmetic and certifies each
    returned midpoint to relative error < 2**-64 (exact zeros are returned
    as exact); raises PrecisionError otherwise.
    """
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    if precision_bits < MIN_GS_PRECISION_BITS:
        raise ValueError("precision_bits must be >= %d" % MIN_GS_PRECISION_BITS)
    t = 1 / theta
    rows = _bracket_rows(t, max(k_max, 1))
    with iv_prec(precision_bits):
        xi = to_iv(x)
        base = 1 + xi * xi
        log_base = iv.log(base)
        half_t = to_iv(t / 2)
        bracket_pow = iv.exp(half_t * log_base)  # <x>**t
        f0 = iv.exp(-bracket_pow)
        # h^(i) = -q_i(x) * (1+x**2)**(t/2 - i), i >= 1
        h = [None]
        power = iv.exp((half_t - 1) * log_base)
        for i in range(1, k_max + 1):
            qv = iv.mpf(0)
            for c in reversed(rows[i]):
                qv = qv * xi + to_iv(c)
            h.append(-(qv * power))
            power = power / base
        f = [f0]
        for j in range(k_max):
            acc = iv.mpf(0)
            b = 1
            for i in range(j + 1):  # b = binom(j, i)
                acc += iv.mpf(b) * h[i + 1] * f[j - i]
                b = b * (j - i) // (i + 1)
            f.append(acc)
    return [certified_midpoint(fk, precision_bits, _GS_REL_ERROR) for fk in f]


def gs_derivative(theta, k: int, x, precision_bits: int = 256):
    """Certified value of the k-th derivative of exp(-<x>**(1/theta)) at x."""
    return gs_derivative_series(theta, k, x, precision_bits)[k]


def verify_gs_bound(
    theta,
    k_max: int,
    grid: Optional[Sequence] = None,
    precision_bits: int = 256,
    slope_tol: float = 1e-3,
) -> CheckResult:
    """Empirical constant for |f^(k)| <= C**k * k! * f(x) * <x>**(k*max(1/theta-1,0)).

    C_emp(k) is the grid maximum of the normalized ratio taken to the 1/k
    power.  The check asserts C_emp stays bounded: the least-squares slope
    of log C_emp against k over the top half of the orders must not exceed
    ``slope_tol``.

    Calibration constraint: a bounded C_emp with an algebraic prefactor
    approaches its limit like k**(-a/k), whose log-slope transient is about
    a*ln(k)/k**2 (a is typically <= 2 here).  For short sweeps (k_max ~ 30)
    that transient is ~5e-3, so slope_tol must budget for it; the 1e-3
    default only discriminates once k_max is ~100 or larger.
    """
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    if k_max < 4:
        raise ValueError("need k_max >= 4 for a slope over the top half")
    if grid is None:
        grid = geometric_grid(2 * Fraction(k_max) ** math.ceil(theta), 25)
    tau = max(1 / theta - 1, Fraction(0))
    best_log = [None] * (k_max + 1)
    with mp_prec(precision_bits):
        for x in grid:
            series = gs_derivative_series(theta, k_max, x, precision_bits)
            xf = Fraction(x)
            log_bracket = mp.log(to_mpf(1 + xf * xf)) / 2
            log_f0 = mp.log(series[0])
            for k in range(1, k_max + 1):
                if series[k] == 0:
                    continue
                lr = mp.log(abs(series[k])) - mp.log(mp.factorial(k)) - log_f0 - k * to_mpf(tau) * log_bracket
                if best_log[k] is None or lr > best_log[k]:
                    best_log[k] = lr
        orders = [k for k in range(1, k_max + 1) if best_log[k] is not None]
        log_c_emp = {k: best_log[k] / k for k in orders}
        tail = [k for k in orders if k >= orders[-1] // 2 + 1]
        slope = ols_slope(tail, [log_c_emp[k] for k in tail], bits=precision_bits)
        c_max = mp.exp(max(log_c_emp.values()))
    witnesses = [] if slope <= slope_tol else [("slope", mp.nstr(slope, 10))]
    params = {
        "theta": format_fraction(theta),
        "k_max": k_max,
        "grid_points": len(tuple(grid)),
        "slope": mp.nstr(slope, 10),
        "slope_tol": slope_tol,
    }
    return _result("gs-derivative-bound", params, witnesses, c_max)


class GSFunction:
    """f(x) = exp(-<x>**(1/theta)): derivatives from the certified engine."""

    def __init__(self, theta):
        self.theta = Fraction(theta)
        self.name = "gs_function(theta=%s)" % format_fraction(self.theta)

    def derivatives(self, x, k_max: int, precision_bits: int):
        return gs_derivative_series(self.theta, k_max, x, max(precision_bits, MIN_GS_PRECISION_BITS))


class Gaussian:
    """f(x) = exp(-x**2): derivatives via the m = 2 coefficient table at lam = -2."""

    name = "gaussian"

    def __init__(self):
        self._table = None

    def derivatives(self, x, k_max: int, precision_bits: int):
        if self._table is None or self._table.k_max < max(k_max, 1):
            self._table = build_coeff_table(2, max(k_max, 1))
        xf = Fraction(x)
        with mp_prec(precision_bits):
            fx = mp.exp(to_mpf(-xf * xf))
            out = [fx]
            for k in range(1, k_max + 1):
                row = self._table.row(k)
                acc = Fraction(0)  # p_k(x) for lam = -2, exact
                for n, c in enumerate(row):
                    acc += Fraction(-2) ** (k - n) * xf ** (k - 2 * n) * c
                out.append(to_mpf(acc) * fx)
        return out


class SampledDerivatives:
    """Derivative values supplied externally as a {(x, order): value} mapping."""

    def __init__(self, samples: dict, name: str = "sampled"):
        self.samples = dict(samples)
        self.name = name

    def derivatives(self, x, k_max: int, precision_bits: int):
        try:
            return [self.samples[(x, k)] for k in range(k_max + 1)]
        except KeyError as exc:
            raise ValueError("no sampled derivative for point %r" % (exc.args[0],)) from exc


@dataclass(frozen=True)
class SeminormEstimate:
    """Truncated supremum of a seminorm: a certified lower bound of the true value.

    Deterministic for a fixed truncation, and monotone nondecreasing as the
    truncation (derivative orders, power orders, grid) grows.
    """

    kind: str
    params: dict[str, str]
    truncation: dict[str, Any]
    value: Any
    is_lower_bound: bool = True


def _weight_log(a: Fraction, theta: Fraction, x: Fraction, bits: int):
    """a * |x|**(1/theta) as an mpf exponent; exact Fraction path when 1/theta is integral."""
    inv = 1 / theta
    xa = abs(Fraction(x))
    if xa == 0:
        return mp.mpf(0)
    if inv.denominator == 1:
        return to_mpf(a * xa ** inv.numerator)
    return to_mpf(a) * mp.exp(to_mpf(inv) * mp.log(to_mpf(xa)))


def seminorm_cells(
    kind: str,
    f_spec,
    *,
    theta,
    s,
    a=None,
    h=None,
    max_deriv: int = 10,
    max_power: int = 10,
    grid: Optional[Sequence] = None,
    precision_bits: int = 192,
):
    """Per-(order, point) summands of a truncated seminorm.

    Returns (beta, x, value) triples: for kind "a" the value is
    exp(a*|x|**(1/theta)) * beta!**(-s) * a**beta * |f^(beta)(x)|; for kind
    "h" it is the maximum over alpha <= max_power of
    |x**alpha * f^(beta)(x)| / (h**(alpha+beta) * alpha!**theta * beta!**s).
    The seminorm estimate is the maximum over all cells.
    """
    theta = Fraction(theta)
    s = Fraction(s)
    if theta <= 0 or s <= 0:
        raise ValueError("theta and s must be positive")
    if kind == "a":
        if a is None:
            raise ValueError("kind 'a' requires the exponential weight a")
        a = Fraction(a)
        if a <= 0:
            raise ValueError("a must be positive")
    elif kind == "h":
        if h is None:
            raise ValueError("kind 'h' requires the geometric weight h")
        h = Fraction(h)
        if h <= 0:
            raise ValueError("h must be positive")
    else:
        raise ValueError("kind must be 'a' or 'h'")
    if grid is None:
        grid = geometric_grid(2 * Fraction(max(max_deriv, 1)) ** math.ceil(theta), 25)
    grid = tuple(Fraction(g) for g in grid)

    cells = []
    with mp_prec(precision_bits):
        log_fact = [mp.mpf(0)]
        for k in range(1, max(max_deriv, max_power) + 1):
            log_fact.append(log_fact[-1] + mp.log(k))
        for x in grid:
            derivs = f_spec.derivatives(x, max_deriv, precision_bits)
            for beta in range(max_deriv + 1):
                fv = abs(derivs[beta])
                if fv == 0:
                    cells.append((beta, x, mp.mpf(0)))
                    continue
                if kind == "a":
                    log_cell = (
                        _weight_log(a, theta, x, precision_bits)
                        - to_mpf(s) * log_fact[beta]
                        + beta * mp.log(to_mpf(a))
                        + mp.log(fv)
                    )
                    cells.append((beta, x, mp.exp(log_cell)))
                else:
                    log_x = mp.log(to_mpf(abs(x))) if x != 0 else None
                    best = None
                    for alpha in range(max_power + 1):
                        if alpha > 0 and log_x is None:
                            continue  # x**alpha = 0 at x = 0
                        log_cell = (
                            (alpha * log_x if alpha else mp.mpf(0))
                            + mp.log(fv)
                            - (alpha + beta) * mp.log(to_mpf(h))
                            - to_mpf(theta) * log_fact[alpha]
                            - to_mpf(s) * log_fact[beta]
                        )
                        cell = mp.exp(log_cell)
                        if best is None or cell > best:
                            best = cell
                    cells.append((beta, x, best))
    return cells


def seminorm(
    kind: str,
    f_spec,
    *,
    theta,
    s,
    a=None,
    h=None,
    max_deriv: int = 10,
    max_power: int = 10,
    grid: Optional[Sequence] = None,
    precision_bits: int = 192,
) -> SeminormEstimate:
    """Truncated Gelfand-Shilov seminorm of f_spec.

    kind "a": sup over orders beta <= max_deriv and grid x of
        exp(a*|x|**(1/theta)) * beta!**(-s) * a**beta * |f^(beta)(x)|.
    kind "h": sup over alpha <= max_power, beta <= max_deriv and grid x of
        |x**alpha * f^(beta)(x)| / (h**(alpha+beta) * alpha!**theta * beta!**s).

    |D^beta f| = |f^(beta)| throughout (the normalizations differ by a phase).
    """
    cells = seminorm_cells(
        kind,
        f_spec,
        theta=theta,
        s=s,
        a=a,
        h=h,
        max_deriv=max_deriv,
        max_power=max_power,
        grid=grid,
        precision_bits=precision_bits,
    )
    theta = Fraction(theta)
    s = Fraction(s)
    with mp_prec(precision_bits):
        value = max((c for _, _, c in cells), default=mp.mpf(0))
    params = {"theta": format_fraction(theta), "s": format_fraction(s), "f": f_spec.name}
    if kind == "a":
        params["a"] = format_fraction(Fraction(a))
    else:
        params["h"] = format_fraction(Fraction(h))
    grid_used = tuple(sorted({x for _, x, _ in cells}))
    truncation = {"max_deriv": max_deriv, "max_power": max_power if kind == "h" else 0, "grid": grid_used}
    return SeminormEstimate(kind=kind, params=params, truncation=truncation, value=value)


def seminorm_equivalence_table(
    f_spec,
    *,
    theta,
    s,
    pairs: Sequence[tuple[Fraction, Fraction]] = ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1), Fraction(1, 4))),
    max_deriv: int = 10,
    max_power: int = 10,
    grid: Optional[Sequence] = None,
    precision_bits: int = 192,
):
    """Diagnostic table pairing a-family and h-family estimates.

    One row (a, h, value_a, value_h) per pair; finiteness of both columns is
    the only assertable content (the families generate the same topology but
    the pairing constants are existential).
    """
    rows = []
    for a_val, h_val in pairs:
        est_a = seminorm("a", f_spec, theta=theta, s=s, a=a_val, max_deriv=max_deriv, grid=grid, precision_bits=precision_bits)
        est_h = seminorm("h", f_spec, theta=theta, s=s, h=h_val, max_deriv=max_deriv, max_power=max_power, grid=grid, precision_bits=precision_bits)
        rows.append((Fraction(a_val), Fraction(h_val), est_a.value, est_h.value))
    return rows
