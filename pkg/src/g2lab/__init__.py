"""Second-order coherence g2(τ) of displaced-squeezed thermal light.

Closed-form evaluation, classical-inequality analysis, amplitude optimisation
and a truncated Fock-space oracle for cross-checking.
"""

from .analysis import RegimeReport, classify, classify_displaced_thermal, minimize_over_alpha
from .coherence import (
    CoherencePoint,
    g2,
    g2_asymptote,
    g2_curve,
    g2_displaced_thermal,
    g2_squeezed_thermal,
    mean_photon_number,
)
from .gaussian import HEISENBERG, ROTATED, DpaParams, GaussianParams, invert_to_dpa

__version__ = "0.1.0"

__all__ = [
    "CoherencePoint", "DpaParams", "GaussianParams", "HEISENBERG", "ROTATED", "RegimeReport",
    "classify", "classify_displaced_thermal", "g2", "g2_asymptote", "g2_curve",
    "g2_displaced_thermal", "g2_squeezed_thermal", "invert_to_dpa", "mean_photon_number",
    "minimize_over_alpha",
]
