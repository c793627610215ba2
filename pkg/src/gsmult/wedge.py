"""Classification of (theta, s) parameter points for the multiplier
exp(i*q(x)) with deg q = m, and for the conjugate propagator, on the
Roumieu/Beurling function space scales.

All comparisons are exact rational, so open/closed boundaries are decided,
never fuzzy.  The decision rules, applied in order:

(a) triviality: the Roumieu-type space is nonzero iff s + theta >= 1, the
    Beurling-type space iff s + theta > 1; otherwise the question is empty
    and the verdict is TrivialSpace.
(b) continuity wedge: s >= (m-1)*theta and (m-1)*theta >= 1 gives
    Continuous -- except the single Beurling corner point
    (theta, s) = (1/(m-1), 1), which is genuinely open and returns Unknown
    with boundary_excluded set.
(c) discontinuity strip (dimension one only): Roumieu when
    1 <= s < m*theta - max(theta, 1) (and theta >= 1 if m = 3); Beurling
    when 1 < s < m*theta - max(theta, 1) (and theta > 1 if m = 3).
(d) pure-monomial criterion (dimension one only): when the phase is exactly
    +/- x**m, additionally NotContinuous for 0 < s < (m-1)*theta with
    theta >= 2/m.
(e) anything else is Unknown: the strip's upper edge m*theta - max(theta,1)
    sits strictly below the wedge edge (m-1)*theta when theta < 1, and the
    gap between them is genuinely undecided, as is the excluded corner.

Verdicts depend on the polynomial only through its degree m, so no
coefficients are modeled.  The propagator exp(-i*t*p(D)) is the Fourier
conjugate of a multiplier, which swaps the roles of theta and s; t = 0 is
the identity and always continuous.

Rule identifiers (the ``citation`` strings) are stable output, used in CSV:
"nontrivial-threshold", "continuity-wedge", "open-boundary-point",
"discontinuity-strip", "monomial-criterion", "identity-operator", and the
"index-swap:" prefix for propagator verdicts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ._util import format_fraction, pmap
from .identities import CheckResult, _result


class Space(enum.Enum):
    ROUMIEU = "roumieu"
    BEURLING = "beurling"


class Mode(enum.Enum):
    GENERAL_POLYNOMIAL = "general_polynomial"
    PURE_MONOMIAL = "pure_monomial"


class Operator(enum.Enum):
    MULTIPLIER = "multiplier"
    PROPAGATOR = "propagator"


class Verdict(enum.Enum):
    CONTINUOUS = "Continuous"
    NOT_CONTINUOUS = "NotContinuous"
    TRIVIAL_SPACE = "TrivialSpace"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class WedgeQuery:
    theta: Fraction
    s: Fraction
    m: int
    space: Space
    d: int = 1
    mode: Mode = Mode.GENERAL_POLYNOMIAL
    operator: Operator = Operator.MULTIPLIER
    t_nonzero: bool = True

    def __post_init__(self):
        theta = Fraction(self.theta)
        s = Fraction(self.s)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "s", s)
        if theta <= 0 or s <= 0:
            raise ValueError("theta and s must be positive")
        if self.m < 2:
            raise ValueError("degree m must be >= 2")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")


@dataclass(frozen=True)
class WedgeVerdict:
    verdict: Verdict
    citation: str
    boundary_excluded: bool = False

    def __post_init__(self):
        if self.verdict is not Verdict.UNKNOWN and not self.citation:
            raise ValueError("decided verdicts require a citation")


def space_is_trivial(space: Space, theta: Fraction, s: Fraction) -> bool:
    if space is Space.ROUMIEU:
        return s + theta < 1
    return s + theta <= 1


def in_continuity_wedge(theta: Fraction, s: Fraction, m: int) -> bool:
    return s >= (m - 1) * theta and (m - 1) * theta >= 1


def is_open_boundary_point(theta: Fraction, s: Fraction, m: int) -> bool:
    return theta == Fraction(1, m - 1) and s == 1


def in_discontinuity_strip(space: Space, theta: Fraction, s: Fraction, m: int) -> bool:
    upper = m * theta - max(theta, Fraction(1))
    if space is Space.ROUMIEU:
        if m == 3 and theta < 1:
            return False
        return 1 <= s < upper
    if m == 3 and theta <= 1:
        return False
    return 1 < s < upper


def monomial_discontinuous(theta: Fraction, s: Fraction, m: int) -> bool:
    return 0 < s < (m - 1) * theta and m * theta >= 2


def classify_multiplier(q: WedgeQuery) -> WedgeVerdict:
    """Verdict for the multiplier operator; rules applied in the order above."""
    theta, s, m = q.theta, q.s, q.m
    if space_is_trivial(q.space, theta, s):
        return WedgeVerdict(Verdict.TRIVIAL_SPACE, "nontrivial-threshold")
    if in_continuity_wedge(theta, s, m):
        if q.space is Space.BEURLING and is_open_boundary_point(theta, s, m):
            return WedgeVerdict(Verdict.UNKNOWN, "open-boundary-point", boundary_excluded=True)
        return WedgeVerdict(Verdict.CONTINUOUS, "continuity-wedge")
    if q.d == 1:
        if in_discontinuity_strip(q.space, theta, s, m):
            return WedgeVerdict(Verdict.NOT_CONTINUOUS, "discontinuity-strip")
        if q.mode is Mode.PURE_MONOMIAL and monomial_discontinuous(theta, s, m):
            return WedgeVerdict(Verdict.NOT_CONTINUOUS, "monomial-criterion")
    return WedgeVerdict(Verdict.UNKNOWN, "")


def classify_propagator(q: WedgeQuery) -> WedgeVerdict:
    """Verdict for the propagator: identity when t = 0, index swap otherwise."""
    if not q.t_nonzero:
        return WedgeVerdict(Verdict.CONTINUOUS, "identity-operator")
    swapped = replace(q, theta=q.s, s=q.theta, operator=Operator.MULTIPLIER)
    inner = classify_multiplier(swapped)
    citation = "index-swap:%s" % inner.citation if inner.citation else ""
    return WedgeVerdict(inner.verdict, citation, inner.boundary_excluded)


def classify(q: WedgeQuery) -> WedgeVerdict:
    if q.operator is Operator.PROPAGATOR:
        return classify_propagator(q)
    return classify_multiplier(q)


@dataclass(frozen=True)
class GridSpec:
    """Rational rectangular grid over the (theta, s) quadrant, endpoints included."""

    theta_start: Fraction
    theta_stop: Fraction
    theta_step: Fraction
    s_start: Fraction
    s_stop: Fraction
    s_step: Fraction

    def __post_init__(self):
        for name in ("theta_start", "theta_stop", "theta_step", "s_start", "s_stop", "s_step"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.theta_start <= 0 or self.s_start <= 0:
            raise ValueError("grid must stay in the open positive quadrant")
        if self.theta_step <= 0 or self.s_step <= 0:
            raise ValueError("grid steps must be positive")
        if self.theta_stop < self.theta_start or self.s_stop < self.s_start:
            raise ValueError("grid stop must not precede start")

    def theta_values(self) -> list[Fraction]:
        return _arange(self.theta_start, self.theta_stop, self.theta_step)

    def s_values(self) -> list[Fraction]:
        return _arange(self.s_start, self.s_stop, self.s_step)


def _arange(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    out = []
    value = start
    while value <= stop:
        out.append(value)
        value += step
    return out


_VERDICT_COLORS = {
    Verdict.CONTINUOUS: "#4daf4a",
    Verdict.NOT_CONTINUOUS: "#e41a1c",
    Verdict.TRIVIAL_SPACE: "#377eb8",
    Verdict.UNKNOWN: "#cccccc",
}


def _grid_verdicts(m, space, grid, mode, threads):
    thetas = grid.theta_values()
    svals = grid.s_values()

    def classify_column(theta):
        return [
            (theta, s, classify_multiplier(WedgeQuery(theta=theta, s=s, m=m, space=space, mode=mode)))
            for s in svals
        ]

    return [cell for col in pmap(classify_column, thetas, threads=threads) for cell in col]


def render_region_csv(m: int, space: Space, grid: GridSpec, mode: Mode = Mode.GENERAL_POLYNOMIAL, threads: int = 1) -> str:
    """Deterministic CSV of verdicts over the grid; header theta,s,verdict,citation."""
    lines = ["theta,s,verdict,citation"]
    for theta, s, v in _grid_verdicts(m, space, grid, mode, threads):
        lines.append("%s,%s,%s,%s" % (format_fraction(theta), format_fraction(s), v.verdict.value, v.citation))
    return "\n".join(lines) + "\n"


def render_region_svg(m: int, space: Space, grid: GridSpec, mode: Mode = Mode.GENERAL_POLYNOMIAL, threads: int = 1) -> str:
    """Deterministic SVG: one rect per grid cell colored by verdict class,
    the boundary lines s = (m-1)*theta and s = m*theta - 1, and (for the
    Beurling scale) an open circle at the excluded point (1/(m-1), 1)."""
    width, height, margin = 640, 640, 60
    t_lo, t_hi = grid.theta_start, grid.theta_stop + grid.theta_step
    s_lo, s_hi = grid.s_start, grid.s_stop + grid.s_step

    def sx(theta):
        return margin + float((theta - t_lo) / (t_hi - t_lo)) * (width - 2 * margin)

    def sy(s):
        return height - margin - float((s - s_lo) / (s_hi - s_lo)) * (height - 2 * margin)

    cell_w = float(grid.theta_step / (t_hi - t_lo)) * (width - 2 * margin)
    cell_h = float(grid.s_step / (s_hi - s_lo)) * (height - 2 * margin)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (width, height, width, height),
        '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (width, height),
    ]
    for theta, s, v in _grid_verdicts(m, space, grid, mode, threads):
        parts.append(
            '<rect x="%.3f" y="%.3f" width="%.3f" height="%.3f" fill="%s"/>'
            % (sx(theta), sy(s) - cell_h, cell_w, cell_h, _VERDICT_COLORS[v.verdict])
        )

    def clip_line(slope: Fraction, intercept: Fraction) -> Optional[tuple]:
        # s = slope*theta + intercept clipped to the plotted box
        pts = []
        for t_edge in (t_lo, t_hi):
            s_val = slope * t_edge + intercept
            if s_lo <= s_val <= s_hi:
                pts.append((t_edge, s_val))
        for s_edge in (s_lo, s_hi):
            if slope != 0:
                t_val = (s_edge - intercept) / slope
                if t_lo <= t_val <= t_hi:
                    pts.append((t_val, s_edge))
        pts = sorted(set(pts))
        return (pts[0], pts[-1]) if len(pts) >= 2 else None

    for slope, intercept, dash in ((Fraction(m - 1), Fraction(0), ""), (Fraction(m), Fraction(-1), ' stroke-dasharray="6,3"')):
        seg = clip_line(slope, intercept)
        if seg:
            (t0, s0), (t1, s1) = seg
            parts.append(
                '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="black" stroke-width="1.5"%s/>'
                % (sx(t0), sy(s0), sx(t1), sy(s1), dash)
            )
    excluded_theta = Fraction(1, m - 1)
    if space is Space.BEURLING and t_lo <= excluded_theta <= t_hi and s_lo <= 1 <= s_hi:
        parts.append(
            '<circle cx="%.3f" cy="%.3f" r="5" fill="white" stroke="black" stroke-width="1.5"/>'
            % (sx(excluded_theta), sy(Fraction(1)))
        )
    parts.append(
        '<text x="%.3f" y="%.3f" font-size="14">theta</text>' % (width - margin + 8, height - margin + 4)
    )
    parts.append('<text x="%.3f" y="%.3f" font-size="14">s</text>' % (margin - 14, margin - 12))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_region_grid(
    m: int,
    space: Space,
    grid: GridSpec,
    fmt: str,
    out_path,
    mode: Mode = Mode.GENERAL_POLYNOMIAL,
    threads: int = 1,
) -> Path:
    """Write the region file (CSV or SVG); same arguments give identical bytes."""
    out_path = Path(out_path)
    if fmt == "csv":
        content = render_region_csv(m, space, grid, mode, threads)
    elif fmt == "svg":
        content = render_region_svg(m, space, grid, mode, threads)
    else:
        raise ValueError("format must be 'csv' or 'svg'")
    out_path.write_text(content, encoding="utf-8")
    return out_path


def audit_rule_disjointness(
    m: int,
    space: Space,
    grid: GridSpec,
    mode: Mode = Mode.PURE_MONOMIAL,
    threads: int = 1,
) -> CheckResult:
    """No grid point may satisfy both a continuity and a discontinuity rule.

    Evaluates every rule independently (ignoring the classifier's rule
    order) and reports conflicting points; auditing in pure-monomial mode
    covers the larger discontinuity region.
    """
    thetas = grid.theta_values()
    svals = grid.s_values()

    def audit_column(theta):
        found = []
        for s in svals:
            if space_is_trivial(space, theta, s):
                continue
            cont = in_continuity_wedge(theta, s, m)
            disc = in_discontinuity_strip(space, theta, s, m) or (
                mode is Mode.PURE_MONOMIAL and monomial_discontinuous(theta, s, m)
            )
            if cont and disc:
                found.append((format_fraction(theta), format_fraction(s)))
        return found

    conflicts = [w for col in pmap(audit_column, thetas, threads=threads) for w in col]
    params = {
        "m": m,
        "space": space.value,
        "mode": mode.value,
        "cells": len(thetas) * len(svals),
    }
    return _result("wedge-rule-disjointness", params, conflicts)
