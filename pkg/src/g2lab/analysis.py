"""Classical-inequality classification and amplitude optimisation.

A classical (c-number) intensity correlation obeys

    g2_c(0) >= 1,   g2_c(0) >= g2_c(τ),   |g2_c(0) - 1| > |g2_c(τ) - 1|.

``classify`` scans a g2 curve, locates every crossing of g2(0) and of its
mirror 2 - g2(0), refines them by bisection, finds the interior minimum by
golden-section search and reports where the last two inequalities fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy import optimize

from .coherence import (
    _scaled_terms,
    g2_asymptote,
    g2_curve,
    g2_displaced_thermal_curve,
)
from .errors import ExistenceViolation, InvalidParameter, NegativeDiscriminant
from .gaussian import ROTATED, GaussianParams, _require_squeeze, amplitude_coefficients

DEFAULT_GRID = 4096
ROOT_XTOL = 1e-10
MIN_XTOL = 1e-10

# Labels for the two lag-dependent classical inequalities.
ABOVE_ZERO_LAG = "above_zero_lag"          # g2(τ) > g2(0)
FARTHER_FROM_UNITY = "farther_from_unity"  # |g2(τ) - 1| > |g2(0) - 1|


class ViolationInterval(NamedTuple):
    lo: float
    hi: float
    which: str


@dataclass(frozen=True)
class RegimeReport:
    g2_zero: float
    sub_poissonian: bool
    crossings_g2zero: tuple
    crossings_mirror: tuple
    minimum: tuple | None
    asymptote: float
    violation_intervals: tuple
    axis: str = "omega_tau"
    scan_max: float = math.nan
    # targets ("g2_zero" / "mirror") whose crossing lies beyond the scanned range
    unresolved_tail: tuple = field(default_factory=tuple)

    @property
    def classical(self) -> bool:
        return not self.sub_poissonian and not self.violation_intervals

    def as_dict(self) -> dict:
        return {
            "axis": self.axis,
            "scan_max": self.scan_max,
            "g2_zero": self.g2_zero,
            "sub_poissonian": self.sub_poissonian,
            "crossings_g2zero": list(self.crossings_g2zero),
            "crossings_mirror": list(self.crossings_mirror),
            "minimum": None if self.minimum is None else list(self.minimum),
            "asymptote": self.asymptote,
            "violation_intervals": [iv._asdict() for iv in self.violation_intervals],
            "unresolved_tail": list(self.unresolved_tail),
        }


@dataclass(frozen=True)
class AlphaOptimum:
    alpha_mag: float
    g2_min: float
    branch_valid: bool


@dataclass(frozen=True)
class AlphaCoefficients:
    """Coefficients of g2 - 1 = (a + y b) / ((c + y)(e + y d)) with y = |α|², θ = 2φ."""

    a: float
    b: float
    c: float
    d: float
    e: float

    @property
    def discriminant(self) -> float:
        return self.d * (self.a * self.d - self.b * self.e) * (self.a - self.b * self.c)


def _tol(v: float) -> float:
    return 64 * np.finfo(float).eps * max(1.0, abs(v))


def _sign(v, tol):
    return np.where(v > tol, 1, np.where(v < -tol, -1, 0))


def _crossings(curve, xs, gs, target, tol, skip_first):
    """Refined abscissae where the curve crosses ``target``, ascending."""
    sg = _sign(gs - target, tol)
    out = []
    last = None
    start = 1 if skip_first else 0
    for i in range(start, len(xs)):
        if sg[i] == 0:
            continue
        if last is not None and sg[i] != sg[last]:
            root = optimize.bisect(lambda x: float(curve(x)) - target, xs[last], xs[i],
                                   xtol=ROOT_XTOL, maxiter=200)
            out.append(float(root))
        last = i
    return out, (sg[last] if last is not None else 0)


def _interior_minimum(curve, xs, gs, tol):
    best = None
    for i in range(1, len(xs) - 1):
        if gs[i] + tol < gs[i - 1] and gs[i] <= gs[i + 1]:
            if best is None or gs[i] < gs[best]:
                best = i
    if best is None:
        return None
    res = optimize.minimize_scalar(lambda x: float(curve(x)), method="golden",
                                   bracket=(xs[best - 1], xs[best], xs[best + 1]),
                                   options={"xtol": MIN_XTOL})
    x = float(res.x)
    return x, float(curve(x))


def _pieces(boundaries, x_max):
    pts = [0.0] + sorted(boundaries) + [x_max]
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1) if pts[i + 1] > pts[i]]


def _violations(curve, which, violated, boundaries, x_max, tail_violated, tail_open):
    """Merge consecutive violating pieces into intervals; decide the far end."""
    intervals = []
    for lo, hi in _pieces(boundaries, x_max):
        if not violated(float(curve(0.5 * (lo + hi)))):
            continue
        if intervals and intervals[-1][1] == lo:
            intervals[-1][1] = hi
        else:
            intervals.append([lo, hi])
    if intervals and intervals[-1][1] == x_max and tail_violated and not tail_open:
        intervals[-1][1] = math.inf
    elif tail_violated and tail_open and not (intervals and intervals[-1][1] == x_max):
        # starts somewhere beyond the scan and persists
        intervals.append([x_max, math.inf])
    return [ViolationInterval(lo, hi, which) for lo, hi in intervals]


def _scan(curve: Callable, x_max: float, grid: int, asymptote: float, axis: str) -> RegimeReport:
    if not x_max > 0:
        raise InvalidParameter(f"scan range must be positive, got {x_max!r}")
    if grid < 64:
        raise InvalidParameter(f"grid >= 64 violated: grid={grid}")
    xs = np.linspace(0.0, x_max, grid)
    gs = np.asarray(curve(xs), dtype=float)
    g0 = float(gs[0])
    tol = _tol(g0)
    mirror = 2.0 - g0

    cross0, end0 = _crossings(curve, xs, gs, g0, tol, skip_first=True)
    if abs(mirror - g0) <= tol:
        cross_m, end_m = [], end0
    else:
        cross_m, end_m = _crossings(curve, xs, gs, mirror, tol, skip_first=False)

    unresolved = []
    inf0 = int(_sign(asymptote - g0, tol))
    infm = int(_sign(asymptote - mirror, tol))
    if end0 != 0 and inf0 != 0 and end0 != inf0:
        unresolved.append("g2_zero")
    if cross_m or end_m != 0:
        if end_m != 0 and infm != 0 and end_m != infm:
            unresolved.append("mirror")

    spread0 = abs(g0 - 1.0)

    def above(v):
        return v - g0 > tol

    def farther(v):
        return abs(v - 1.0) - spread0 > tol

    intervals = _violations(curve, ABOVE_ZERO_LAG, above, cross0, x_max,
                            above(asymptote), "g2_zero" in unresolved)
    intervals += _violations(curve, FARTHER_FROM_UNITY, farther, cross0 + cross_m, x_max,
                             farther(asymptote), bool(unresolved))
    return RegimeReport(
        g2_zero=g0,
        sub_poissonian=bool(g0 < 1.0 - tol),
        crossings_g2zero=tuple(cross0),
        crossings_mirror=tuple(cross_m),
        minimum=_interior_minimum(curve, xs, gs, tol),
        asymptote=float(asymptote),
        violation_intervals=tuple(intervals),
        axis=axis,
        scan_max=float(x_max),
        unresolved_tail=tuple(unresolved),
    )


def classify(g: GaussianParams, omega_tau_max: float, grid: int = DEFAULT_GRID,
             form: str = ROTATED) -> RegimeReport:
    """Regime report for the squeezed (r > 0) correlation over 0 <= Ωτ <= omega_tau_max."""
    _require_squeeze(g.r)

    def curve(x):
        return g2_curve(g, x, form)[0]

    return _scan(curve, omega_tau_max, grid, g2_asymptote(g, form), "omega_tau")


def classify_displaced_thermal(nbar: float, alpha_mag: float, tau_over_t_max: float,
                               grid: int = DEFAULT_GRID) -> RegimeReport:
    """Regime report for the r = 0 correlation over 0 <= τ/t <= tau_over_t_max."""

    def curve(t):
        return g2_displaced_thermal_curve(nbar, alpha_mag, t)[0]

    asymptote = 1.0 if alpha_mag > 0 else 2.0
    return _scan(curve, tau_over_t_max, grid, asymptote, "tau_over_t")


def alpha_coefficients(nbar: float, r: float, omega_tau: float,
                       form: str = ROTATED) -> AlphaCoefficients:
    """Coefficients of g2 as a rational function of |α|² for θ = 2φ."""
    _require_squeeze(r)
    if omega_tau < 0:
        raise InvalidParameter(f"omega_tau >= 0 violated: omega_tau={omega_tau}")
    x = float(omega_tau)
    n, s, e = (float(v) for v in _scaled_terms(nbar, r, x, 0.0))
    p, q = (complex(v) for v in amplitude_coefficients(r, x, form))
    return AlphaCoefficients(
        a=n * n + s * s,
        b=2.0 * (p.real + q.real) * (n - s),
        c=nbar * math.cosh(2 * r) + math.sinh(r) ** 2,
        d=abs(p + q) ** 2,
        e=e,
    )


def alpha_squared_roots(nbar: float, r: float, omega_tau: float,
                        form: str = ROTATED) -> tuple[float, float]:
    """Both stationary points (upper-sign, lower-sign) in |α|²; diagnostic only.

    Returns NaN for a root when the discriminant is negative.
    """
    k = alpha_coefficients(nbar, r, omega_tau, form)
    disc = k.discriminant
    if disc < 0:
        return math.nan, math.nan
    root = math.sqrt(disc)
    return -(k.a * k.d + root) / (k.b * k.d), -(k.a * k.d - root) / (k.b * k.d)


def minimize_over_alpha(nbar: float, r: float, omega_tau: float,
                        form: str = ROTATED) -> AlphaOptimum:
    """|α| minimising g2 at fixed (nbar, r, Ωτ) with amplitude squeezing θ = 2φ.

    A minimum exists only when the linear coefficient b is negative, which
    happens exactly when r > ln(2 nbar + 1)/2 (n - s changes sign there).
    """
    k = alpha_coefficients(nbar, r, omega_tau, form)
    if not k.b < 0:
        return AlphaOptimum(alpha_mag=math.nan, g2_min=math.nan, branch_valid=False)
    disc = k.discriminant
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc!r} < 0 at nbar={nbar}, r={r}, "
                                   f"omega_tau={omega_tau}")
    y = -(k.a * k.d + math.sqrt(disc)) / (k.b * k.d)
    alpha_mag = math.sqrt(y)
    g = GaussianParams.amplitude_squeezed(nbar=nbar, r=r, alpha_mag=alpha_mag)
    g2_min = float(g2_curve(g, float(omega_tau), form)[0])
    return AlphaOptimum(alpha_mag=alpha_mag, g2_min=g2_min, branch_valid=True)


def existence_threshold(nbar: float) -> float:
    """Smallest squeeze for which an amplitude minimum exists."""
    return 0.5 * math.log1p(2.0 * nbar)


def alpha_optimum_tau0(nbar: float, r: float) -> AlphaOptimum:
    """Zero-lag optimal amplitude in closed form."""
    if not r > existence_threshold(nbar):
        raise ExistenceViolation(
            f"no amplitude minimum: r={r} <= ln(2 nbar + 1)/2 = {existence_threshold(nbar)}")
    m = 2.0 * nbar + 1.0
    num = m * math.expm1(4 * r) * (2.0 * nbar * math.exp(2 * r) + math.expm1(2 * r))
    den = math.expm1(2 * r) - 2.0 * nbar
    alpha_mag = 0.5 * math.sqrt(num / den)
    g = GaussianParams.amplitude_squeezed(nbar=nbar, r=r, alpha_mag=alpha_mag)
    return AlphaOptimum(alpha_mag=alpha_mag, g2_min=float(g2_curve(g, 0.0)[0]),
                        branch_valid=True)


def vacuum_optimal_squeeze(alpha_mag: float) -> float:
    """Squeeze r at which ``alpha_mag`` is the zero-lag optimal amplitude (nbar = 0)."""
    return 0.25 * math.log1p(4.0 * alpha_mag * alpha_mag)


def g2_min_vacuum(alpha_mag: float) -> float:
    """Zero-lag g2 of squeezed vacuum displaced by its optimal amplitude.

    The squeeze is the one for which ``alpha_mag`` minimises g2(0) over |α|.
    """
    if not alpha_mag > 0:
        raise InvalidParameter(f"alpha_mag > 0 violated: alpha_mag={alpha_mag}")
    r = vacuum_optimal_squeeze(alpha_mag)
    y = alpha_mag * alpha_mag
    sh = math.sinh(2 * r)
    den = (2.0 * math.sinh(r) ** 2 + 2.0 * y) ** 2
    return 2.0 + (sh * (sh - 4.0 * y) - 4.0 * y * y) / den


def probe_existence_condition(samples: int = 2000, seed: int = 0, form: str = ROTATED,
                              omega_tau_max: float = 5.0) -> list:
    """Random check that b < 0 coincides with r > ln(2 nbar + 1)/2 for τ >= 0.

    Returns the counterexamples found as (nbar, r, omega_tau) triples.
    """
    rng = np.random.default_rng(seed)
    bad = []
    for _ in range(samples):
        nbar = float(rng.uniform(0.0, 3.0))
        r = float(rng.uniform(0.01, 2.0))
        x = float(rng.uniform(0.0, omega_tau_max))
        thr = existence_threshold(nbar)
        if abs(r - thr) < 1e-9:
            continue
        b_neg = alpha_coefficients(nbar, r, x, form).b < 0
        if b_neg != (r > thr):
            bad.append((nbar, r, x))
    return bad
