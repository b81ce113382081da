import math

import numpy as np
import pytest
from scipy import optimize

from g2lab.analysis import (
    ABOVE_ZERO_LAG,
    FARTHER_FROM_UNITY,
    alpha_coefficients,
    alpha_optimum_tau0,
    alpha_squared_roots,
    classify,
    classify_displaced_thermal,
    existence_threshold,
    g2_min_vacuum,
    minimize_over_alpha,
    probe_existence_condition,
    vacuum_optimal_squeeze,
)
from g2lab.coherence import g2_curve, g2_displaced_thermal_curve
from g2lab.errors import DegenerateSqueeze, ExistenceViolation, InvalidParameter
from g2lab.gaussian import FORMS, HEISENBERG, GaussianParams

FIG1 = GaussianParams.amplitude_squeezed(0.1, 0.3, 0.8)
FIG2 = GaussianParams.amplitude_squeezed(0.0, 0.3, 0.4)
FIG3 = GaussianParams.amplitude_squeezed(1.0, 0.3, 1.0)
FIG5 = GaussianParams(nbar=1.0, r=0.2)


def _g2(g, x, form="rotated"):
    return float(g2_curve(g, x, form)[0])


def _check_report_invariants(g, rep, form="rotated"):
    for x in rep.crossings_g2zero:
        assert abs(_g2(g, x, form) - rep.g2_zero) <= 1e-9
    for x in rep.crossings_mirror:
        assert abs(_g2(g, x, form) - (2 - rep.g2_zero)) <= 1e-9
    assert list(rep.crossings_g2zero) == sorted(rep.crossings_g2zero)
    if rep.minimum is not None:
        x, v = rep.minimum
        assert _g2(g, x + 1e-4, form) >= v and _g2(g, max(0.0, x - 1e-4), form) >= v


def test_fig1_report():
    rep = classify(FIG1, 3.0)
    _check_report_invariants(FIG1, rep)
    assert rep.sub_poissonian is True and not rep.classical
    assert rep.minimum[0] == pytest.approx(0.0300, abs=5e-4)
    assert rep.crossings_g2zero[0] == pytest.approx(0.0674, abs=5e-4)
    assert rep.crossings_mirror[0] == pytest.approx(0.593, abs=5e-3)
    mirror = [iv for iv in rep.violation_intervals if iv.which == FARTHER_FROM_UNITY]
    assert len(mirror) == 2
    assert mirror[0].lo == 0 and mirror[0].hi == pytest.approx(0.0674, abs=5e-4)
    assert mirror[1].lo == pytest.approx(0.593, abs=5e-3) and mirror[1].hi == math.inf
    above = [iv for iv in rep.violation_intervals if iv.which == ABOVE_ZERO_LAG]
    assert len(above) == 1 and above[0].hi == math.inf


def test_fig2_report():
    rep = classify(FIG2, 5.0)
    _check_report_invariants(FIG2, rep)
    assert rep.minimum[0] == pytest.approx(0.264, abs=2e-3)
    assert rep.minimum[1] == pytest.approx(1.211, abs=2e-3)
    assert rep.crossings_g2zero == pytest.approx((3.113,), abs=1e-2)
    assert not rep.sub_poissonian


def test_unresolved_tail_when_scan_short():
    rep = classify(FIG2, 2.0)
    assert "g2_zero" in rep.unresolved_tail
    above = [iv for iv in rep.violation_intervals if iv.which == ABOVE_ZERO_LAG]
    assert above == [(2.0, math.inf, ABOVE_ZERO_LAG)]


def test_fig3_blue_classical():
    rep = classify(FIG3, 3.0)
    _check_report_invariants(FIG3, rep)
    assert rep.violation_intervals == () and rep.classical


def test_fig5_violations():
    rep = classify(FIG5, 3.0)
    _check_report_invariants(FIG5, rep)
    assert rep.crossings_g2zero == pytest.approx((0.794,), abs=5e-3)
    for which in (ABOVE_ZERO_LAG, FARTHER_FROM_UNITY):
        ivs = [iv for iv in rep.violation_intervals if iv.which == which]
        assert len(ivs) == 1 and ivs[0].lo == 0 and ivs[0].hi == pytest.approx(0.794, abs=5e-3)


def test_heisenberg_form_report_runs():
    rep = classify(FIG1, 3.0, form=HEISENBERG)
    _check_report_invariants(FIG1, rep, HEISENBERG)
    assert rep.sub_poissonian


def test_multiple_crossings_ascending():
    # a curve crossing the zero-lag value several times
    rep = classify(GaussianParams.with_phase_difference(0.0, 0.3, 0.4, 0.0), 5.0)
    assert list(rep.crossings_g2zero) == sorted(rep.crossings_g2zero)


def test_classify_errors():
    with pytest.raises(DegenerateSqueeze):
        classify(GaussianParams(nbar=1, r=0.0), 1.0)
    with pytest.raises(InvalidParameter):
        classify(FIG1, 0.0)
    with pytest.raises(InvalidParameter):
        classify(FIG1, 1.0, grid=10)


def test_displaced_thermal_reports():
    rep = classify_displaced_thermal(1.0, 1.0, 10.0)
    assert rep.violation_intervals == () and rep.g2_zero == 1.75 and rep.asymptote == 1.0
    coh = classify_displaced_thermal(0.0, 0.7, 10.0)
    assert coh.crossings_g2zero == () and coh.crossings_mirror == ()
    assert coh.violation_intervals == () and coh.g2_zero == 1.0
    ts = np.linspace(0, 10, 200)
    assert np.all(np.abs(g2_displaced_thermal_curve(1e4, 1.0, ts)[0] - 2.0) <= 1e-2)
    red = classify_displaced_thermal(0.1, 0.8, 10.0)
    vals = g2_displaced_thermal_curve(0.1, 0.8, ts)[0]
    assert red.violation_intervals == () and np.all(np.diff(vals) < 0)
    assert red.as_dict()["sub_poissonian"] is False


def test_report_as_dict_is_json_ready():
    import json
    json.dumps(classify(FIG1, 3.0).as_dict())


def test_vacuum_optimum_closed_form():
    opt = minimize_over_alpha(0.0, 0.5, 0.0)
    assert opt.branch_valid
    assert opt.alpha_mag == pytest.approx(0.5 * math.sqrt(math.e ** 2 - 1), abs=1e-12)
    assert alpha_optimum_tau0(0.0, 0.5).alpha_mag == pytest.approx(
        0.5 * math.sqrt(math.e ** 2 - 1), abs=1e-12)
    small = [alpha_optimum_tau0(0.0, r).alpha_mag for r in (1e-2, 1e-4, 1e-6)]
    assert small == sorted(small, reverse=True) and small[-1] < 2e-3


def test_branch_gate():
    assert existence_threshold(0.2) == pytest.approx(0.5 * math.log(1.4))
    opt = minimize_over_alpha(0.2, 0.1, 0.0)
    assert not opt.branch_valid and math.isnan(opt.alpha_mag)
    with pytest.raises(ExistenceViolation):
        alpha_optimum_tau0(0.2, 0.1)


@pytest.mark.parametrize("form", FORMS)
@pytest.mark.parametrize("nbar, r, x", [(0.1, 0.5, 0.0), (0.3, 0.8, 0.7), (0.0, 0.3, 2.0)])
def test_optimum_is_local_minimum(nbar, r, x, form):
    opt = minimize_over_alpha(nbar, r, x, form)
    assert opt.branch_valid

    def at(a):
        return _g2(GaussianParams.amplitude_squeezed(nbar, r, a), x, form)

    assert at(opt.alpha_mag) == pytest.approx(opt.g2_min, rel=1e-14)
    for delta in (1e-3, -1e-3):
        assert at(opt.alpha_mag + delta) >= opt.g2_min


def test_lower_root_is_diagnostic_only():
    hi, lo = alpha_squared_roots(0.1, 0.5, 0.0)
    assert minimize_over_alpha(0.1, 0.5, 0.0).alpha_mag == pytest.approx(math.sqrt(hi))
    assert hi != lo


def test_tau0_paths_agree_randomized():
    rng = np.random.default_rng(3)
    for _ in range(200):
        nbar = rng.uniform(0, 2)
        r = existence_threshold(nbar) + rng.uniform(1e-3, 1.5)
        a = alpha_optimum_tau0(nbar, r).alpha_mag
        b = minimize_over_alpha(nbar, r, 0.0).alpha_mag
        assert a == pytest.approx(b, rel=1e-10)


def test_coefficients_reproduce_curve():
    k = alpha_coefficients(0.3, 0.6, 0.8)
    for a in (0.2, 1.0, 2.5):
        y = a * a
        model = 1 + (k.a + y * k.b) / ((k.c + y) * (k.e + y * k.d))
        assert model == pytest.approx(_g2(GaussianParams.amplitude_squeezed(0.3, 0.6, a), 0.8),
                                      rel=1e-13)


def test_vacuum_minimum_pair():
    r = vacuum_optimal_squeeze(0.5)
    assert r == pytest.approx(0.1733, abs=1e-4)
    assert alpha_optimum_tau0(0.0, r).alpha_mag == pytest.approx(0.5, rel=1e-12)
    for a in (0.1, 0.5, 1.0, 2.0):
        r = vacuum_optimal_squeeze(a)
        assert g2_min_vacuum(a) == pytest.approx(
            _g2(GaussianParams.amplitude_squeezed(0.0, r, a), 0.0), rel=1e-12)


def test_vacuum_minimum_is_minimum_over_amplitude():
    # at the paired squeeze, |alpha| minimises g2(0): a golden search over |alpha| agrees
    a0 = 1.0
    r = vacuum_optimal_squeeze(a0)
    res = optimize.minimize_scalar(
        lambda a: _g2(GaussianParams.amplitude_squeezed(0.0, r, a), 0.0),
        bracket=(0.5, 1.0, 1.5), method="golden", options={"xtol": 1e-10})
    assert res.x == pytest.approx(a0, abs=1e-6)
    assert res.fun == pytest.approx(g2_min_vacuum(a0), abs=1e-6)


def test_vacuum_minimum_small_amplitude_limit():
    # series: g2_min ~ 4|alpha|^2 as |alpha| -> 0 (strong antibunching, not thermal 2)
    for a in (1e-2, 1e-3):
        assert g2_min_vacuum(a) == pytest.approx(4 * a * a, rel=1e-2)
    with pytest.raises(InvalidParameter):
        g2_min_vacuum(0.0)


@pytest.mark.parametrize("form", FORMS)
def test_existence_condition_probe(form):
    assert probe_existence_condition(samples=500, seed=11, form=form) == []
