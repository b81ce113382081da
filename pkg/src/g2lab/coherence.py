"""Closed-form photon numbers and second-order coherence g2(tau).

Conventions: ``x`` / ``omega_tau`` is the dimensionless lag Ωτ = (τ/t) r.
Thermal combinations are written without cancellation,

    (nbar + 1/2) cosh(2r + x) - cosh(x)/2 = nbar cosh(2r + x) + sinh(r + x) sinh(r)
    (nbar + 1/2) cosh(2y) - 1/2          = nbar cosh(2y) + sinh(y)^2

so the r -> 0 limit stays accurate.  Once 2r + x exceeds ``OVERFLOW_ARG``
every first-order quantity is multiplied by e^{-x} (second-order by e^{-2x})
before the ratio is taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, ZeroDenominator
from .gaussian import (
    ROTATED,
    GaussianParams,
    _require_squeeze,
    amplitude_coefficients,
    abs_A_squared,
    conjugate_phase,
    displaced_amplitude_A,
)

OVERFLOW_ARG = 300.0


@dataclass(frozen=True)
class CoherencePoint:
    omega_tau: float
    tau_over_t: float
    g2: float
    mean_n: float


@dataclass(frozen=True)
class HyperbolicHelpers:
    """n(τ), s(τ), u(τ), v(τ) and u·n − v·s evaluated two independent ways."""

    n_tau: float
    s_tau: float
    u_tau: float
    v_tau: float
    un_minus_vs_direct: float
    un_minus_vs_closed: float


def _check_lag(x) -> None:
    if np.any(np.asarray(x) < 0):
        raise InvalidParameter(f"omega_tau >= 0 violated: {x!r}")


def _ch(y, m):
    return 0.5 * (np.exp(y - m) + np.exp(-y - m))


def _sh(y, m):
    return 0.5 * (np.exp(y - m) - np.exp(-y - m))


def _zero_lag_number(nbar, r, alpha_mag):
    return nbar * math.cosh(2 * r) + math.sinh(r) ** 2 + alpha_mag ** 2


def _scaled_terms(nbar, r, x, m):
    """n, s (times e^{-m}) and the thermal part of ⟨n(τ)⟩ (times e^{-2m})."""
    sr = math.sinh(r)
    n = nbar * _ch(2 * r + x, m) + _sh(r + x, m) * sr
    s = nbar * _sh(2 * r + x, m) + _ch(r + x, m) * sr
    thermal = nbar * _ch(2 * (r + x), 2 * m) + _sh(r + x, m) ** 2
    return n, s, thermal


def _ratio(nbar, r, alpha_mag, delta, n, s, thermal, p, q):
    """g2 and scaled ⟨n(τ)⟩ from (possibly scaled) building blocks.

    With z = A/alpha = P + e^{iδ} Q:  u = 2|α|² Re z,  v = 2|α|² Re(e^{-iδ} P + Q).
    """
    y = alpha_mag ** 2
    z = p + np.exp(1j * delta) * q
    u = 2.0 * y * z.real
    v = 2.0 * y * (p * math.cos(delta) + np.real(q))
    n_tau = thermal + y * np.abs(z) ** 2
    n0 = _zero_lag_number(nbar, r, alpha_mag)
    if n0 == 0:
        raise ZeroDenominator("zero-lag photon number vanishes")
    g2 = 1.0 + (n * n + s * s + u * n - v * s) / (n0 * n_tau)
    return g2, n_tau


def g2_curve(g: GaussianParams, omega_tau, form: str = ROTATED):
    """Vectorised g2 over an array of lags; returns (g2, mean_n) arrays."""
    _require_squeeze(g.r)
    conjugate_phase(form)
    x = np.asarray(omega_tau, dtype=float)
    _check_lag(x)
    m = np.where(x + 2 * g.r > OVERFLOW_ARG, x, 0.0)
    n, s, thermal = _scaled_terms(g.nbar, g.r, x, m)
    p, q = amplitude_coefficients(g.r, x, form, scale=m)
    g2, n_scaled = _ratio(g.nbar, g.r, g.alpha_mag, g.phase_difference,
                          n, s, thermal, p, q)
    with np.errstate(over="ignore"):
        mean_n = n_scaled * np.exp(2 * m)
    return g2, mean_n


def g2(g: GaussianParams, omega_tau: float, form: str = ROTATED) -> CoherencePoint:
    """Normalised two-time intensity correlation of the prepared Gaussian state."""
    val, mean_n = g2_curve(g, float(omega_tau), form)
    return CoherencePoint(omega_tau=float(omega_tau), tau_over_t=float(omega_tau) / g.r,
                          g2=float(val), mean_n=float(mean_n))


def mean_photon_number(g: GaussianParams, omega_tau: float, form: str = ROTATED) -> float:
    """⟨a†(τ) a(τ)⟩ = (nbar + 1/2) cosh[2(r + Ωτ)] − 1/2 + |A(τ)|²."""
    _check_lag(omega_tau)
    _require_squeeze(g.r)
    y = g.r + omega_tau
    return g.nbar * math.cosh(2 * y) + math.sinh(y) ** 2 + abs_A_squared(g, omega_tau, form)


def helpers(g: GaussianParams, omega_tau: float, form: str = ROTATED) -> HyperbolicHelpers:
    """Evaluate n, s, u, v with A(τ) from the generator route.

    ``un_minus_vs_closed`` uses the expanded trigonometric form in θ − 2φ and
    never touches the complex amplitude; it must agree with the direct product.
    """
    _check_lag(omega_tau)
    _require_squeeze(g.r)
    x = float(omega_tau)
    n, s, _ = _scaled_terms(g.nbar, g.r, x, 0.0)
    n, s = float(n), float(s)
    a = displaced_amplitude_A(g, x, form)
    alpha = g.alpha
    u = 2.0 * (alpha * a.conjugate()).real
    v = 2.0 * (alpha * a * np.exp(-1j * g.theta)).real
    direct = u * n - v * s

    y = g.alpha_mag ** 2
    d = g.phase_difference
    k = 1.0 / math.tanh(0.5 * g.r)
    sh = math.sinh(x)
    cm1 = 2.0 * math.sinh(0.5 * x) ** 2
    first = 1.0 + math.cosh(x) + k * sh
    if form == ROTATED:
        closed = y * (first * (n - s * math.cos(d))
                      + (sh - k * cm1) * (n * math.cos(d) - s)
                      + 2.0 * n * sh * math.sin(d))
    else:
        closed = y * (first * (n - s * math.cos(d))
                      - (sh + k * cm1) * (n * math.cos(d) - s))
    return HyperbolicHelpers(n_tau=n, s_tau=s, u_tau=u, v_tau=v,
                             un_minus_vs_direct=direct, un_minus_vs_closed=closed)


def g2_displaced_thermal_curve(nbar: float, alpha_mag: float, tau_over_t):
    """Vectorised r = 0 correlation; returns (g2, mean_n) arrays over τ/t."""
    y = alpha_mag ** 2
    if y + nbar <= 0:
        raise ZeroDenominator("|alpha| = nbar = 0: no photons to correlate")
    w = np.asarray(tau_over_t, dtype=float) + 1.0
    if np.any(w < 1.0):
        raise InvalidParameter(f"tau_over_t >= 0 violated: {tau_over_t!r}")
    mean_n = y * w * w + nbar
    g2 = 1.0 + nbar / (y + nbar) * (2.0 * y * w + nbar) / mean_n
    return g2, mean_n


def g2_displaced_thermal(nbar: float, alpha_mag: float, tau_over_t: float) -> CoherencePoint:
    """r -> 0 limit: power-law relaxation in τ/t towards the coherent value 1."""
    val, mean_n = g2_displaced_thermal_curve(nbar, alpha_mag, float(tau_over_t))
    return CoherencePoint(omega_tau=0.0, tau_over_t=float(tau_over_t), g2=float(val),
                          mean_n=float(mean_n))


def g2_squeezed_thermal_curve(nbar: float, r: float, omega_tau):
    x = np.asarray(omega_tau, dtype=float)
    _check_lag(x)
    c0 = nbar * math.cosh(2 * r) + math.sinh(r) ** 2
    if c0 == 0:
        raise ZeroDenominator("r = nbar = 0: vacuum has no photons")
    m = np.where(x + 2 * r > OVERFLOW_ARG, x, 0.0)
    n = nbar * _ch(2 * r + x, m) + _sh(r + x, m) * math.sinh(r)
    s = nbar * _sh(2 * r + x, m) + _ch(r + x, m) * math.sinh(r)
    e = nbar * _ch(2 * r + 2 * x, 2 * m) + _sh(r + x, m) ** 2
    with np.errstate(over="ignore"):
        mean_n = e * np.exp(2 * m)
    return 1.0 + (n * n + s * s) / (c0 * e), mean_n


def g2_squeezed_thermal(nbar: float, r: float, omega_tau: float) -> CoherencePoint:
    """α = 0 limit; never drops below 1."""
    val, mean_n = g2_squeezed_thermal_curve(nbar, r, float(omega_tau))
    tau_over_t = float(omega_tau) / r if r > 0 else (0.0 if omega_tau == 0 else math.nan)
    return CoherencePoint(omega_tau=float(omega_tau), tau_over_t=tau_over_t, g2=float(val),
                          mean_n=float(mean_n))


def g2_asymptote(g: GaussianParams, form: str = ROTATED) -> float:
    """lim g2 for Ωτ -> ∞ from the leading e^{Ωτ} / e^{2Ωτ} coefficients."""
    _require_squeeze(g.r)
    kappa = conjugate_phase(form)
    r, nbar = g.r, g.nbar
    k = 1.0 / math.tanh(0.5 * r)
    # e^{-x} cosh(y + x), e^{-x} sinh(y + x) -> e^{y}/2
    n = 0.5 * (nbar * math.exp(2 * r) + math.exp(r) * math.sinh(r))
    thermal = 0.5 * nbar * math.exp(2 * r) + 0.25 * math.exp(2 * r)
    p = 0.25 * (1.0 + k)
    q = 0.5 * kappa + 0.25 * (1.0 - k)
    val, _ = _ratio(nbar, r, g.alpha_mag, g.phase_difference, n, n, thermal, p, q)
    return float(val)


def g2_large_r_limit(check_points, alpha_mag: float = 0.8, nbar: float = 0.1,
                     r: float = 20.0, form: str = ROTATED) -> float:
    """Max |g2 − 3| at large squeezing over the given lags (a limit probe)."""
    pts = np.asarray(list(check_points), dtype=float)
    if pts.size == 0:
        raise InvalidParameter("check_points must be non-empty")
    g = GaussianParams.amplitude_squeezed(nbar=nbar, r=r, alpha_mag=alpha_mag)
    vals, _ = g2_curve(g, pts, form)
    return float(np.max(np.abs(vals - 3.0)))
