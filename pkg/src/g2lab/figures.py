"""Reference curves and checkpoints for five standard parameter sets.

Each figure is a fixed parameter set swept over a fixed range (1000 points).
Checkpoints are known reference values (minima, crossings, asymptotes); each
carries the tolerance it is judged against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import ABOVE_ZERO_LAG, classify, classify_displaced_thermal
from .coherence import g2_asymptote, g2_curve, g2_displaced_thermal_curve
from .errors import InvalidParameter
from .gaussian import GaussianParams

POINTS = 1000
FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5")


@dataclass(frozen=True)
class Checkpoint:
    name: str
    value: float
    expected: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(abs(self.value - self.expected) <= self.tolerance)

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "expected": self.expected,
                "tolerance": self.tolerance, "passed": self.passed}


@dataclass(frozen=True, eq=False)
class FigureData:
    figure_id: str
    axis: str
    columns: tuple
    data: np.ndarray  # shape (POINTS, len(columns))
    checkpoints: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checkpoints)


FIG1 = GaussianParams.amplitude_squeezed(nbar=0.1, r=0.3, alpha_mag=0.8)
FIG2 = GaussianParams.amplitude_squeezed(nbar=0.0, r=0.3, alpha_mag=0.4)
FIG3_BLUE = GaussianParams.amplitude_squeezed(nbar=1.0, r=0.3, alpha_mag=1.0)
FIG5 = GaussianParams(nbar=1.0, r=0.2)


def _nth(seq, i):
    return seq[i] if len(seq) > i else math.nan


def _first_violation_end(report, which):
    for iv in report.violation_intervals:
        if iv.which == which:
            return iv.hi
    return math.nan


def _fig1():
    xs = np.linspace(0.0, 3.0, POINTS)
    rep = classify(FIG1, 3.0)
    cps = (
        Checkpoint("g2_zero", rep.g2_zero, 0.961, 1e-3),
        Checkpoint("min_omega_tau", rep.minimum[0] if rep.minimum else math.nan, 0.0300, 5e-4),
        Checkpoint("crossing_g2zero", _nth(rep.crossings_g2zero, 0), 0.0674, 5e-4),
        Checkpoint("crossing_mirror", _nth(rep.crossings_mirror, 0), 0.593, 5e-3),
        Checkpoint("asymptote", rep.asymptote, 1.238, 1e-3),
    )
    return FigureData("fig1", "omega_tau", ("axis_value", "g2"),
                      np.column_stack([xs, g2_curve(FIG1, xs)[0]]), cps)


def _fig2():
    xs = np.linspace(0.0, 5.0, POINTS)
    rep = classify(FIG2, 5.0)
    cross = _nth(rep.crossings_g2zero, 0)
    cps = (
        Checkpoint("g2_zero", rep.g2_zero, 1.590, 2e-3),
        Checkpoint("min_omega_tau", rep.minimum[0] if rep.minimum else math.nan, 0.264, 2e-3),
        Checkpoint("min_g2", rep.minimum[1] if rep.minimum else math.nan, 1.211, 2e-3),
        Checkpoint("crossing_g2zero", cross, 3.113, 1e-2),
        Checkpoint("g2_at_crossing", float(g2_curve(FIG2, cross)[0]) if cross == cross
                   else math.nan, 1.590, 2e-3),
        Checkpoint("asymptote", rep.asymptote, 1.624, 2e-3),
    )
    return FigureData("fig2", "omega_tau", ("axis_value", "g2"),
                      np.column_stack([xs, g2_curve(FIG2, xs)[0]]), cps)


def _red_blue(nbar_red, alpha_red, blue):
    ts = np.linspace(0.0, 10.0, POINTS)
    red = g2_displaced_thermal_curve(nbar_red, alpha_red, ts)[0]
    bl = g2_curve(blue, blue.r * ts)[0]
    return ts, np.column_stack([ts, red, bl])


def _fig3():
    ts, data = _red_blue(1.0, 1.0, FIG3_BLUE)
    red = classify_displaced_thermal(1.0, 1.0, 10.0)
    blue = classify(FIG3_BLUE, 3.0)
    cps = (
        Checkpoint("red_g2_zero", red.g2_zero, 1.750, 1e-3),
        Checkpoint("red_asymptote", red.asymptote, 1.0, 0.0),
        Checkpoint("red_violations", float(len(red.violation_intervals)), 0.0, 0.0),
        Checkpoint("blue_g2_zero", blue.g2_zero, 1.615, 1e-3),
        Checkpoint("blue_asymptote", blue.asymptote, 1.586, 1e-3),
        Checkpoint("blue_violations", float(len(blue.violation_intervals)), 0.0, 0.0),
    )
    return FigureData("fig3", "tau_over_t", ("axis_value", "g2_red", "g2_blue"), data, cps)


def _fig4():
    ts, data = _red_blue(0.1, 0.8, FIG1)
    red = classify_displaced_thermal(0.1, 0.8, 10.0)
    blue = classify(FIG1, 3.0)
    r = FIG1.r
    cps = (
        Checkpoint("red_g2_zero", red.g2_zero, 1.252, 1e-3),
        Checkpoint("red_violations", float(len(red.violation_intervals)), 0.0, 0.0),
        Checkpoint("blue_g2_zero", blue.g2_zero, 0.961, 1e-3),
        Checkpoint("blue_asymptote", blue.asymptote, 1.238, 1e-3),
        Checkpoint("blue_min_tau_over_t",
                   blue.minimum[0] / r if blue.minimum else math.nan, 0.1002, 1e-3),
        Checkpoint("blue_crossing_g2zero_tau_over_t",
                   _nth(blue.crossings_g2zero, 0) / r, 0.2249, 1e-3),
        Checkpoint("blue_crossing_mirror_tau_over_t",
                   _nth(blue.crossings_mirror, 0) / r, 1.978, 1e-2),
    )
    return FigureData("fig4", "tau_over_t", ("axis_value", "g2_red", "g2_blue"), data, cps)


def _fig5():
    xs = np.linspace(0.0, 3.0, POINTS)
    rep = classify(FIG5, 3.0)
    cross = _nth(rep.crossings_g2zero, 0)
    cps = (
        Checkpoint("g2_zero", rep.g2_zero, 2.301, 1e-3),
        Checkpoint("crossing_g2zero", cross, 0.794, 5e-3),
        Checkpoint("g2_at_crossing", float(g2_curve(FIG5, cross)[0]) if cross == cross
                   else math.nan, 2.301, 2e-3),
        Checkpoint("asymptote", g2_asymptote(FIG5), 2.203, 1e-3),
        Checkpoint("violation_end", _first_violation_end(rep, ABOVE_ZERO_LAG), 0.794, 5e-3),
    )
    return FigureData("fig5", "omega_tau", ("axis_value", "g2"),
                      np.column_stack([xs, g2_curve(FIG5, xs)[0]]), cps)


_BUILDERS = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5}


def figure(figure_id: str) -> FigureData:
    try:
        build = _BUILDERS[figure_id]
    except KeyError:
        raise InvalidParameter(
            f"figure id must be one of {', '.join(FIGURE_IDS)}; got {figure_id!r}") from None
    return build()
