"""Growth probe: the quantity |(D^k g)(x_k) * f(x_k)| that drives the
discontinuity mechanism, its Gevrey-rate estimate, and the multiplier
criterion divergence check.

For g(x) = exp(+/- i x**m) and f(x) = exp(-<x>**(1/nu)) the probe evaluates,
at x_k = k**theta,

    log |(D^k g)(x_k) f(x_k)| = log |p_k(x_k)| - <x_k>**(1/nu)

with |p_k| from the exact Gaussian-integer evaluator whenever theta is an
integer.  Along k the leading behaviour is

    log|p_k(x_k)| = k log m + theta (m-1) k log k + o(k),

so a factorial-scale bound k!**s on the product forces s to be at least
theta*(m-1); the probe quantifies this two ways:

* ``estimate_rate`` regresses the logged product against k*log(k); since
  the decay term is ~ -k when nu = theta, the slope estimates theta*(m-1)
  with a finite-k correction of about (log m - 1)/log k.
* ``criterion_check`` tracks Delta(j) = log|p_{k_j}(k_j**theta)| -
  s*k_j*log(k_j) along the k_j orders: for s below theta*(m-1) it grows
  superlinearly in k_j, which no geometric factor h**k or linear-in-k
  exponential allowance can absorb.

The probe reports the product (D^k g) * f, not D^k(g*f): the former is the
pivot quantity of the argument and needs no Leibniz expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
from mpmath import mp

from ._util import format_fraction, ols_slope
from .derivpoly import (
    CoeffTable,
    build_coeff_table,
    default_precision_bits,
    derivative_poly,
    eval_log_magnitude,
    kj_sequence,
)
from .identities import CheckResult, _result
from .precision import mp_prec, to_mpf

RATE_BITS = 128


@dataclass(frozen=True)
class ProbeConfig:
    """One growth experiment: evaluation exponent theta, decay exponent nu.

    nu = theta probes the borderline decay; nu < theta is the configuration
    used against the stronger (all-weights) topology.  theta must satisfy
    theta >= 2/m and nu > 2/m for the lower-bound mechanism to apply.
    k_values may be any orders, e.g. range(1, 51) or a k_j subsequence.
    """

    m: int
    lambda_sign: int
    theta: Fraction
    nu: Fraction
    k_values: tuple[int, ...]
    precision_bits: Optional[int] = None  # None: per-order default budget

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("degree m must be >= 2")
        if self.lambda_sign not in (1, -1):
            raise ValueError("lambda_sign must be +1 or -1")
        theta = Fraction(self.theta)
        nu = Fraction(self.nu)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "nu", nu)
        if theta * self.m < 2:
            raise ValueError("hypothesis violated: theta=%s < 2/m" % theta)
        if nu > theta:
            raise ValueError("decay exponent nu=%s must not exceed theta=%s" % (nu, theta))
        if nu < theta and nu * self.m <= 2:
            # strict nu > 2/m is what the separated-exponent experiment needs
            raise ValueError("hypothesis violated: nu=%s <= 2/m with nu < theta" % nu)
        if nu * self.m < 2:
            raise ValueError("hypothesis violated: nu=%s < 2/m" % nu)
        object.__setattr__(self, "k_values", tuple(int(k) for k in self.k_values))
        if any(k < 1 for k in self.k_values):
            raise ValueError("orders must be >= 1")


@dataclass(frozen=True)
class ProbeRecord:
    """One sample: order k, point x_k, logged product, running rate estimate.

    rate = (log_dkg_f + <x_k>**(1/nu)) / (k*log k) is the per-record point
    estimate of the growth exponent (0 for k < 2 where the scale vanishes).
    """

    k: int
    x: object
    log_dkg_f: mpmath.mpf
    rate: mpmath.mpf
    exact: bool


def _decay(x, nu: Fraction, bits: int):
    """<x>**(1/nu) = (1 + x**2)**(1/(2 nu)) at the working precision."""
    with mp_prec(bits):
        if isinstance(x, int):
            base = to_mpf(1 + x * x)
        else:
            xm = to_mpf(x)
            base = 1 + xm * xm
        return mp.exp(to_mpf(1 / (2 * nu)) * mp.log(base))


def probe_series(cfg: ProbeConfig, table: Optional[CoeffTable] = None) -> list[ProbeRecord]:
    """Evaluate the logged product per order; deterministic for a fixed config."""
    if not cfg.k_values:
        return []
    k_top = max(cfg.k_values)
    if table is None:
        table = build_coeff_table(cfg.m, k_top)
    elif table.m != cfg.m or table.k_max < k_top:
        raise ValueError("table does not cover m=%d up to k=%d" % (cfg.m, k_top))
    theta_int = cfg.theta.denominator == 1
    records = []
    for k in cfg.k_values:
        bits = cfg.precision_bits or default_precision_bits(cfg.m, k, cfg.theta)
        if theta_int:
            x = k ** cfg.theta.numerator
        else:
            with mp_prec(bits):
                x = mp.exp(to_mpf(cfg.theta) * mp.log(k))
        lm = eval_log_magnitude(derivative_poly(table, k), cfg.lambda_sign, x, precision_bits=bits)
        decay = _decay(x, cfg.nu, bits)
        with mp_prec(bits):
            log_prod = lm.log_mag - decay
            if k >= 2:
                rate = (log_prod + decay) / (k * mp.log(k))
            else:
                rate = mp.mpf(0)
        with mp_prec(RATE_BITS):
            records.append(
                ProbeRecord(k=k, x=x, log_dkg_f=+log_prod, rate=+rate, exact=lm.exact)
            )
    return records


def estimate_rate(
    records: Sequence[ProbeRecord],
    tail_fraction: float = 0.5,
    min_records: int = 8,
):
    """Least-squares slope of log_dkg_f against k*log(k) over the trailing records.

    Estimates theta*(m-1): the decay term contributes ~ -k (for nu equal to
    the evaluation exponent), so together with the k*log(m) term the
    finite-k bias of the slope is about (log m - 1)/log k.  Requires at
    least ``min_records`` records in the tail (relax explicitly for short
    deterministic subsequences such as the k_j orders).
    """
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail_fraction must be in (0, 1]")
    if min_records < 2:
        raise ValueError("min_records must be >= 2")
    records = list(records)
    count = max(1, int(len(records) * tail_fraction + 0.5))
    tail = records[-count:]
    if len(tail) < min_records:
        raise ValueError("too few records in the tail: %d < %d" % (len(tail), min_records))
    with mp_prec(RATE_BITS):
        xs = [r.k * mp.log(r.k) for r in tail]
        ys = [r.log_dkg_f for r in tail]
        return ols_slope(xs, ys, bits=RATE_BITS)


def criterion_check(
    m: int,
    theta: int,
    s: Fraction,
    j_max: int,
    lambda_sign: int = 1,
    table: Optional[CoeffTable] = None,
) -> CheckResult:
    """Divergence of Delta(j) = log|p_{k_j}(k_j**theta)| - s*k_j*log(k_j).

    For 0 < s < (m-1)*theta the multiplier criterion would need
    C*h**k * k**(s k) * e**(c k) to dominate |p_k(k**theta)| along k_j, but
    Delta grows superlinearly: the check asserts Delta is strictly
    increasing and Delta(j_max) - Delta(1) > k_{j_max}, which no admissible
    constants can absorb.  theta must be a positive integer so the
    evaluations are exact.
    """
    if not isinstance(theta, int) or theta < 1:
        raise ValueError("theta must be a positive integer for exact evaluation")
    if m * theta < 2:
        raise ValueError("hypothesis violated: theta < 2/m")
    s = Fraction(s)
    if not 0 < s < (m - 1) * Fraction(theta):
        raise ValueError("hypothesis violated: need 0 < s < (m-1)*theta, got s=%s" % s)
    if j_max < 2:
        raise ValueError("j_max must be >= 2 to compare increments")
    seq = kj_sequence(m, j_max)
    k_top = seq.k(j_max)
    if table is None:
        table = build_coeff_table(m, k_top)
    deltas = []
    for j in range(1, j_max + 1):
        k = seq.k(j)
        bits = default_precision_bits(m, k, theta)
        lm = eval_log_magnitude(derivative_poly(table, k), lambda_sign, k**theta, precision_bits=bits)
        with mp_prec(RATE_BITS):
            deltas.append(+(lm.log_mag - to_mpf(s) * k * mp.log(k)))
    witnesses = []
    for j in range(1, j_max):
        if not deltas[j] > deltas[j - 1]:
            witnesses.append(("not-increasing", j + 1, mp.nstr(deltas[j], 12)))
    if not deltas[-1] - deltas[0] > k_top:
        witnesses.append(("growth-below-linear", j_max, mp.nstr(deltas[-1] - deltas[0], 12)))
    params = {
        "m": m,
        "theta": theta,
        "s": format_fraction(s),
        "j_max": j_max,
        "lambda_sign": lambda_sign,
    }
    with mp_prec(RATE_BITS):
        spread = deltas[-1] - deltas[0]
    return _result("multiplier-criterion-divergence", params, witnesses, spread)
