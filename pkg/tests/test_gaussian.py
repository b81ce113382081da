import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2lab.errors import DegenerateSqueeze, InvalidParameter
from g2lab.gaussian import (
    HEISENBERG,
    ROTATED,
    DpaParams,
    GaussianParams,
    abs_A_squared,
    alpha_of_tau,
    displaced_amplitude_A,
    invert_to_dpa,
    round_trip,
    xi_of_tau,
)

FIG1 = GaussianParams.amplitude_squeezed(nbar=0.1, r=0.3, alpha_mag=0.8)

phases = st.floats(0.0, 2 * math.pi)


@pytest.mark.parametrize("kw, msg", [
    (dict(nbar=-0.1, r=0.3), "nbar >= 0"),
    (dict(nbar=0.1, r=-0.3), "r >= 0"),
    (dict(nbar=0.1, r=0.3, alpha_mag=-1), "alpha_mag >= 0"),
    (dict(nbar=0.1, r=0.3, prep_time=0), "prep_time > 0"),
    (dict(nbar=math.nan, r=0.3), "finite"),
])
def test_invalid_params_name_the_invariant(kw, msg):
    with pytest.raises(InvalidParameter, match=msg):
        GaussianParams(**kw)


def test_phases_reduced_and_phi_canonical():
    g = GaussianParams(nbar=0, r=0.2, theta=-0.5, alpha_mag=1, phi=7.0)
    assert 0 <= g.theta < 2 * math.pi and g.theta == pytest.approx(2 * math.pi - 0.5)
    assert g.phi == pytest.approx(7.0 - 2 * math.pi)
    assert GaussianParams(nbar=0, r=0.2, phi=1.3).phi == 0.0
    assert GaussianParams(nbar=0, r=0.2, theta=-1e-300).theta == 0.0


def test_invert_alpha_zero():
    d = invert_to_dpa(GaussianParams(nbar=0, r=0.3))
    assert d.tc == pytest.approx(-0.15j, abs=1e-15)
    assert d.tb == 0


def test_invert_fig1_tb():
    d = invert_to_dpa(FIG1)
    assert d.tb == pytest.approx(-0.15j * 0.8 * (1 + 1 / math.tanh(0.15)), rel=1e-14)


@given(r=st.floats(0.01, 3), t=st.floats(0.1, 10), theta=phases)
def test_omega_t_equals_r_and_phase_link(r, t, theta):
    g = GaussianParams(nbar=0.2, r=r, theta=theta, alpha_mag=0.5, prep_time=t)
    d = invert_to_dpa(g)
    assert d.omega * t == pytest.approx(r, rel=1e-15)
    assert abs(cmath.exp(1j * theta) - 1j * cmath.exp(1j * d.chi)) < 1e-12
    assert 2 * abs(d.c) == pytest.approx(d.omega, rel=1e-14)


def test_degenerate_squeeze_refused():
    with pytest.raises(DegenerateSqueeze):
        invert_to_dpa(GaussianParams(nbar=0, r=1e-9, alpha_mag=1))
    with pytest.raises(DegenerateSqueeze):
        displaced_amplitude_A(GaussianParams(nbar=0, r=0, alpha_mag=1), 0.1)


def test_xi_of_tau():
    d = invert_to_dpa(FIG1)
    assert xi_of_tau(d, 0.0) == 0
    assert xi_of_tau(d, 1.0) == pytest.approx(FIG1.xi, abs=1e-15)
    assert abs(xi_of_tau(d, 2.0)) == pytest.approx(0.6, rel=1e-15)
    with pytest.raises(InvalidParameter):
        xi_of_tau(d, -1.0)


def test_alpha_of_tau():
    d = invert_to_dpa(FIG1)
    assert alpha_of_tau(d, 0.0) == 0
    assert alpha_of_tau(d, 1.0) == pytest.approx(0.8, abs=1e-14)
    no_b = DpaParams(tc=-0.15j, tb=0j, chi=0.0, omega=0.3, prep_time=1.0)
    for tau in (0.1, 1.0, 7.0):
        assert alpha_of_tau(no_b, tau) == 0


@pytest.mark.parametrize("form", [ROTATED, HEISENBERG])
def test_A_anchors(form):
    assert displaced_amplitude_A(FIG1, 0.0, form) == FIG1.alpha
    g0 = GaussianParams(nbar=0.4, r=0.7, theta=1.0)
    for x in (0.0, 0.4, 3.0):
        assert displaced_amplitude_A(g0, x, form) == 0
        assert abs_A_squared(g0, x, form) == 0
    assert abs_A_squared(FIG1, 0.0, form) == pytest.approx(0.64, rel=1e-15)


@pytest.mark.parametrize("x", [0.3, 0.5])
def test_A_squared_two_routes_fig1(x):
    a = displaced_amplitude_A(FIG1, x)
    assert abs(a) ** 2 == pytest.approx(abs_A_squared(FIG1, x), rel=1e-12)


def test_forms_differ_only_off_anchor():
    g = GaussianParams(nbar=0.1, r=0.3, theta=0.4, alpha_mag=0.8, phi=1.1)
    assert abs_A_squared(g, 1.0, ROTATED) != pytest.approx(abs_A_squared(g, 1.0, HEISENBERG))
    with pytest.raises(InvalidParameter):
        displaced_amplitude_A(g, 1.0, "nonsense")


@settings(max_examples=300, deadline=None)
@given(r=st.floats(0.05, 3), a=st.floats(0, 4), theta=phases, phi=phases,
       x=st.floats(0, 5), form=st.sampled_from([ROTATED, HEISENBERG]))
def test_A_squared_routes_agree(r, a, theta, phi, x, form):
    g = GaussianParams(nbar=0.3, r=r, theta=theta, alpha_mag=a, phi=phi)
    direct = abs(displaced_amplitude_A(g, x, form)) ** 2
    closed = abs_A_squared(g, x, form)
    assert direct == pytest.approx(closed, rel=1e-12, abs=1e-12 * (1 + a * a))


def _same(g, h, tol=1e-10):
    assert h.r == pytest.approx(g.r, abs=tol)
    assert h.alpha_mag == pytest.approx(g.alpha_mag, abs=tol)
    assert abs(cmath.exp(1j * h.theta) - cmath.exp(1j * g.theta)) < tol
    assert abs(h.alpha - g.alpha) < tol


def test_round_trip_examples():
    _same(FIG1, round_trip(FIG1))
    g = GaussianParams(nbar=0.5, r=1.0, theta=math.pi / 3, alpha_mag=2.0, phi=math.pi / 7)
    _same(g, round_trip(g))
    h = round_trip(GaussianParams(nbar=0.5, r=0.4, theta=2.0))
    assert h.alpha_mag == 0 and h.phi == 0


@settings(max_examples=300, deadline=None)
@given(r=st.floats(0.01, 3), a=st.floats(0, 4), theta=phases, phi=phases,
       t=st.floats(0.1, 10))
def test_round_trip_identity(r, a, theta, phi, t):
    g = GaussianParams(nbar=1.0, r=r, theta=theta, alpha_mag=a, phi=phi, prep_time=t)
    _same(g, round_trip(g))


def test_with_phase_difference():
    g = GaussianParams.with_phase_difference(0.1, 0.3, 0.8, 2.5)
    assert g.phase_difference == pytest.approx(2.5)
    assert GaussianParams.amplitude_squeezed(0.1, 0.3, 0.8, phi=1.0).phase_difference == \
        pytest.approx(0.0, abs=1e-15)
    assert np.isclose(FIG1.xi, 0.3)
