"""Brute-force truncated Fock-space oracle for g2(τ).

Nothing here uses the closed forms.  The DPA Hamiltonian is built as a dense
matrix, diagonalised, and used to prepare the Gaussian state from the thermal
state and to evolve the field; g2 then follows from its trace definition

    g2(τ) = Tr[ρ_G a† a†(τ) a(τ) a] / (Tr[ρ_G a† a] Tr[ρ_G a†(τ) a(τ)]).

The thermal state is unravelled into its (diagonal) number-state components,
so each trace is a sum of vector norms:

    Tr[ρ_G a† a†(τ) a(τ) a] = Σ_n p_n ‖a U(τ) a U(t) |n⟩‖²,   U(s) = e^{-iHs}.

Truncation is adaptive: the basis is doubled until the population in the top
``TAIL_LEVELS`` levels stays below ``TAIL_TOL`` along the whole trajectory
(sampled at intermediate times, so a wave packet reflected by the truncation
edge cannot hide).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import DimensionTooSmall, EigenFailure, OutsideEnvelope, TruncationError
from .gaussian import DpaParams, GaussianParams, invert_to_dpa

MIN_DIM = 4
START_DIM = 32
DEFAULT_DIM_MAX = 1024
DIM_MAX_ENV = "G2LAB_ORACLE_DIM_MAX"
TAIL_LEVELS = 8
TAIL_TOL = 1e-10
TRAJECTORY_SAMPLES = 16
UNITARITY_TOL = 1e-10

# Verification envelope; beyond it the basis size explodes while the closed
# form needs no help.
ENVELOPE = {"r": 1.0, "alpha_mag": 2.0, "nbar": 2.0, "omega_tau": 3.0}


@dataclass(frozen=True, eq=False)
class FockOperator:
    dim: int
    entries: np.ndarray

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.dim, self.entries @ other.entries)

    @property
    def dag(self) -> "FockOperator":
        return FockOperator(self.dim, self.entries.conj().T)

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dim: int
    entries: np.ndarray

    def expect(self, op: FockOperator) -> complex:
        return complex(np.trace(self.entries @ op.entries))

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def mean_photon_number(self) -> float:
        return float(np.real(np.diagonal(self.entries)) @ np.arange(self.dim))

    def eigenvalues(self) -> np.ndarray:
        return linalg.eigvalsh(0.5 * (self.entries + self.entries.conj().T))

    def tail_population(self, levels: int = TAIL_LEVELS) -> float:
        return float(np.sum(np.real(np.diagonal(self.entries))[-levels:]))

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    diff = a.entries - b.entries
    return 0.5 * float(np.sum(np.abs(linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))


def _check_dim(dim: int) -> None:
    if dim < MIN_DIM:
        raise DimensionTooSmall(f"dim >= {MIN_DIM} violated: dim={dim}")


def annihilation(dim: int) -> FockOperator:
    _check_dim(dim)
    return FockOperator(dim, np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex))


def creation(dim: int) -> FockOperator:
    return annihilation(dim).dag


def number(dim: int) -> FockOperator:
    _check_dim(dim)
    return FockOperator(dim, np.diag(np.arange(dim, dtype=float)).astype(complex))


def build_hamiltonian(d: DpaParams, dim: int) -> FockOperator:
    """H = c a†² + c* a² + b a + b* a† on the first ``dim`` number states (hbar = 1)."""
    a = annihilation(dim).entries
    ad = a.conj().T
    c, b = d.c, d.b
    h = c * (ad @ ad) + np.conj(c) * (a @ a) + b * a + np.conj(b) * ad
    return FockOperator(dim, h)


def thermal_weights(nbar: float, dim: int) -> np.ndarray:
    """Number-state populations of the thermal state, renormalised on the truncated basis."""
    _check_dim(dim)
    if nbar == 0:
        w = np.zeros(dim)
        w[0] = 1.0
        return w
    ratio = nbar / (nbar + 1.0)
    w = ratio ** np.arange(dim, dtype=float)
    return w / w.sum()


def thermal_density(nbar: float, dim: int) -> DensityMatrix:
    return DensityMatrix(dim, np.diag(thermal_weights(nbar, dim)).astype(complex))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition H = V diag(w) V† used to build e^{-iHs}."""

    w: np.ndarray
    v: np.ndarray

    def unitary(self, s: float) -> np.ndarray:
        return (self.v * np.exp(-1j * self.w * s)) @ self.v.conj().T


def spectrum(h: FockOperator) -> Spectrum:
    try:
        w, v = linalg.eigh(h.entries, driver="evd")
    except linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return Spectrum(w, v)


def _checked_unitary(eig: Spectrum, s: float) -> np.ndarray:
    u = eig.unitary(s)
    resid = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if resid > UNITARITY_TOL:
        raise EigenFailure(f"unitarity residual {resid:.3e} exceeds {UNITARITY_TOL}")
    return u


def evolve_operator(h: FockOperator, x: FockOperator, tau: float) -> FockOperator:
    """Heisenberg-picture operator e^{iHτ} X e^{-iHτ}."""
    if h.dim != x.dim:
        raise ValueError(f"dimension mismatch: {h.dim} vs {x.dim}")
    if tau == 0:
        return FockOperator(x.dim, x.entries.copy())
    u = _checked_unitary(spectrum(h), tau)
    return FockOperator(x.dim, u.conj().T @ x.entries @ u)


def displacement_operator(alpha: complex, dim: int) -> FockOperator:
    """D(α) = exp(α a† − α* a) by scaling-and-squaring."""
    a = annihilation(dim).entries
    return FockOperator(dim, linalg.expm(alpha * a.conj().T - np.conj(alpha) * a))


def squeeze_operator(xi: complex, dim: int) -> FockOperator:
    """S(ξ) = exp(−ξ a†²/2 + ξ* a²/2) by scaling-and-squaring."""
    a = annihilation(dim).entries
    ad = a.conj().T
    return FockOperator(dim, linalg.expm(-0.5 * xi * (ad @ ad) + 0.5 * np.conj(xi) * (a @ a)))


def dim_max_default() -> int:
    raw = os.environ.get(DIM_MAX_ENV)
    if raw is None:
        return DEFAULT_DIM_MAX
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"{DIM_MAX_ENV} must be an integer, got {raw!r}") from None
    _check_dim(val)
    return val


def _dims(dim_max: int):
    d = START_DIM
    while d <= dim_max:
        yield d
        d *= 2


def _gaussian_density_at(g: GaussianParams, dim: int, construction: str) -> DensityMatrix:
    rho0 = thermal_density(g.nbar, dim).entries
    if construction == "hamiltonian":
        u = _checked_unitary(spectrum(build_hamiltonian(invert_to_dpa(g), dim)), g.prep_time)
    elif construction == "displace_squeeze":
        u = displacement_operator(g.alpha, dim).entries @ squeeze_operator(g.xi, dim).entries
    else:
        raise ValueError(f"unknown construction {construction!r}")
    return DensityMatrix(dim, u @ rho0 @ u.conj().T)


def gaussian_density(g: GaussianParams, dim: int | None = None,
                     construction: str = "hamiltonian",
                     dim_max: int | None = None) -> DensityMatrix:
    """Displaced-squeezed thermal state on a truncated basis.

    ``construction="hamiltonian"`` evolves the thermal state for the
    preparation time under the DPA Hamiltonian; ``"displace_squeeze"`` applies
    D(α) S(ξ) directly.  With ``dim=None`` the basis grows until the top
    levels are empty to ``TAIL_TOL``.
    """
    if dim is not None:
        return _gaussian_density_at(g, dim, construction)
    dim_max = dim_max_default() if dim_max is None else dim_max
    rho = None
    for d in _dims(dim_max):
        rho = _gaussian_density_at(g, d, construction)
        if rho.tail_population() < TAIL_TOL:
            return rho
    tail = math.nan if rho is None else rho.tail_population()
    raise TruncationError(f"top-level population {tail:.3e} >= {TAIL_TOL} at dim_max={dim_max}")


@dataclass(frozen=True)
class OracleResult:
    g2: float
    dim: int
    tail: float
    mean_n0: float
    mean_n_tau: float


def _oracle_at(g: GaussianParams, omega_tau: float, dim: int) -> OracleResult:
    d = invert_to_dpa(g)
    eig = spectrum(build_hamiltonian(d, dim))
    v, w = eig.v, eig.w
    vh = v.conj().T
    t = g.prep_time
    tau = omega_tau / d.omega

    p = thermal_weights(g.nbar, dim)
    keep = np.nonzero(p > 1e-20 * p[0])[0]
    psi = np.zeros((dim, keep.size), dtype=complex)
    psi[keep, np.arange(keep.size)] = np.sqrt(p[keep])

    def apply_a(m):
        out = np.zeros_like(m)
        out[:-1] = np.sqrt(np.arange(1, dim))[:, None] * m[1:]
        return out

    def tail_along(coeffs, t0, t1):
        # population of the top levels of V e^{-iws} coeffs for s in (t0, t1]
        top = v[-TAIL_LEVELS:]
        worst = 0.0
        for s in np.linspace(t0, t1, TRAJECTORY_SAMPLES + 1)[1:]:
            block = top @ (np.exp(-1j * w * s)[:, None] * coeffs)
            worst = max(worst, float(np.sum(np.abs(block) ** 2)))
        return worst

    c0 = vh @ psi
    state_t = v @ (np.exp(-1j * w * t)[:, None] * c0)
    state_tau = v @ (np.exp(-1j * w * (t + tau))[:, None] * c0)
    kicked = apply_a(state_t)
    n0 = float(np.sum(np.abs(kicked) ** 2))
    c1 = vh @ kicked
    after = v @ (np.exp(-1j * w * tau)[:, None] * c1)
    n_tau = float(np.sum(np.abs(apply_a(state_tau)) ** 2))
    num = float(np.sum(np.abs(apply_a(after)) ** 2))

    tail = tail_along(c0, 0.0, t + tau)
    if tau > 0 and n0 > 0:
        tail = max(tail, tail_along(c1, 0.0, tau) / n0)
    return OracleResult(g2=num / (n0 * n_tau), dim=dim, tail=tail, mean_n0=n0, mean_n_tau=n_tau)


def g2_oracle_detailed(g: GaussianParams, omega_tau: float, dim: int | None = None,
                       dim_max: int | None = None) -> OracleResult:
    """g2 by brute force; adaptive basis when ``dim`` is None."""
    if omega_tau < 0:
        raise ValueError(f"omega_tau >= 0 violated: omega_tau={omega_tau}")
    if dim is not None:
        _check_dim(dim)
        return _oracle_at(g, omega_tau, dim)
    dim_max = dim_max_default() if dim_max is None else dim_max
    res = None
    for d in _dims(dim_max):
        res = _oracle_at(g, omega_tau, d)
        if res.tail < TAIL_TOL:
            return res
    tail = math.nan if res is None else res.tail
    raise TruncationError(
        f"trajectory top-level population {tail:.3e} >= {TAIL_TOL} at dim_max={dim_max}")


def g2_oracle(g: GaussianParams, omega_tau: float, dim: int | None = None,
              dim_max: int | None = None) -> float:
    return g2_oracle_detailed(g, omega_tau, dim, dim_max).g2


def g2_oracle_thermal_frame(g: GaussianParams, omega_tau: float, dim: int) -> float:
    """Diagnostic: same correlation built from operators evolved out of the thermal state.

    Uses a(t) and a(t + τ) from ``evolve_operator`` and traces against ρ_0, i.e.
    the stationary-frame definition before the trace is cycled onto ρ_G.
    """
    d = invert_to_dpa(g)
    h = build_hamiltonian(d, dim)
    a = annihilation(dim)
    tau = omega_tau / d.omega
    a_t = evolve_operator(h, a, g.prep_time).entries
    a_tt = evolve_operator(h, a, g.prep_time + tau).entries
    rho0 = thermal_density(g.nbar, dim).entries
    n_t = a_t.conj().T @ a_t
    n_tt = a_tt.conj().T @ a_tt
    num = np.trace(rho0 @ a_t.conj().T @ n_tt @ a_t).real
    return float(num / (np.trace(rho0 @ n_t).real * np.trace(rho0 @ n_tt).real))


def check_envelope(g: GaussianParams, omega_tau: float) -> None:
    """Raise OutsideEnvelope if the request lies outside the verification envelope."""
    bad = [f"{name}={val} > {ENVELOPE[name]}"
           for name, val in (("r", g.r), ("alpha_mag", g.alpha_mag), ("nbar", g.nbar),
                             ("omega_tau", omega_tau))
           if val > ENVELOPE[name]]
    if bad:
        raise OutsideEnvelope("outside the oracle verification envelope (r <= 1, |alpha| <= 2, "
                              "nbar <= 2, omega_tau <= 3): " + ", ".join(bad))
