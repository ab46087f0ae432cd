"""Geometric frequency of multi-phase electrical signals.

An n-phase waveform is treated as a curve in n-dimensional space; its moving
frame, curvatures and Darboux bivector give an instantaneous and
cycle-averaged angular frequency.
"""

__version__ = "0.1.0"

from .curves import (  # noqa: E402
    HarmonicSpec,
    SampledSignal,
    balanced_sinusoid,
    distorted_three_phase,
    fit_sampled,
    harmonic_multiphase,
    unbalanced_sinusoid,
)
from .darboux import average_bivector, darboux_at, geometric_frequency_series, omega1_direct  # noqa: E402
from .frames import build_frame, frame_at  # noqa: E402
from .ga import Bivector, dot, left_contract, wedge  # noqa: E402
