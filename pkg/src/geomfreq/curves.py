"""Differentiable multi-phase curve models.

A curve model maps time to a point in n-dimensional signal space and exposes
its t-derivatives. Closed-form generators (balanced, unbalanced and harmonic
multi-phase sinusoids) give exact derivatives of any order; sampled data is
turned into a model by a per-phase quintic spline.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import UnivariateSpline, make_interp_spline

from .errors import DegenerateCurveError, SignalDataError

__all__ = [
    "AnalyticCurve",
    "CurveModel",
    "HarmonicSpec",
    "SampledSignal",
    "SplineCurve",
    "TrigCurve",
    "balanced_sinusoid",
    "distorted_three_phase",
    "fit_sampled",
    "harmonic_multiphase",
    "two_circle_curve",
    "unbalanced_sinusoid",
]

# |a ^ b| / max(|a|, |b|)^2 below this: the ellipse has collapsed to a segment
_DEGENERATE_TOL = 1e-12


class CurveModel:
    """Base class for curves v(t) in ``dim`` dimensions.

    Subclasses implement ``_eval(t, order)`` for a 1-D array of times and
    return an array of shape ``(len(t), dim)``.

    Attributes
    ----------
    dim : int
        Number of phases n.
    max_order : float
        Highest t-derivative order available (``math.inf`` for closed forms).
    domain : tuple of float
        Interval of times where the model is meant to be evaluated.
    time_scale : float
        Characteristic time of the signal, used to size finite-difference steps.
    """

    dim: int
    max_order: float = math.inf
    domain: tuple[float, float] = (-math.inf, math.inf)
    time_scale: float = 1.0

    def eval(self, t, order: int = 0) -> np.ndarray:
        """Evaluate d^order v / dt^order at scalar or array ``t``."""
        order = int(order)
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if order > self.max_order:
            raise ValueError(
                f"order {order} exceeds the model's max_order {self.max_order}"
            )
        t_arr = np.asarray(t, dtype=float)
        out = self._eval(np.atleast_1d(t_arr).ravel(), order)
        if t_arr.ndim == 0:
            return out[0]
        return out.reshape(t_arr.shape + (self.dim,))

    def derivs(self, t: float, m: int) -> list[np.ndarray]:
        """The stack [v'(t), ..., v^(m)(t)]."""
        return [self.eval(t, k) for k in range(1, m + 1)]

    def _eval(self, t: np.ndarray, order: int) -> np.ndarray:
        raise NotImplementedError


class TrigCurve(CurveModel):
    """v(t) = sum_j cos(w_j t) a_j + sin(w_j t) b_j with exact derivatives."""

    def __init__(self, freqs, cos_vecs, sin_vecs):
        self.freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
        self.cos_vecs = np.atleast_2d(np.asarray(cos_vecs, dtype=float))
        self.sin_vecs = np.atleast_2d(np.asarray(sin_vecs, dtype=float))
        if not (
            self.cos_vecs.shape == self.sin_vecs.shape
            and self.cos_vecs.shape[0] == self.freqs.shape[0]
        ):
            raise ValueError("need one (a, b) vector pair per frequency")
        if np.any(self.freqs <= 0):
            raise ValueError("angular frequencies must be positive")
        if not (np.all(np.isfinite(self.cos_vecs)) and np.all(np.isfinite(self.sin_vecs))):
            raise ValueError("non-finite coefficients")
        self.dim = self.cos_vecs.shape[1]
        if self.dim < 2:
            raise ValueError("need at least 2 phases")
        self.time_scale = 1.0 / float(self.freqs.max())

    def _eval(self, t, order):
        phase = np.outer(t, self.freqs) + order * (np.pi / 2)
        scale = self.freqs**order
        return (np.cos(phase) * scale) @ self.cos_vecs + (np.sin(phase) * scale) @ self.sin_vecs


class EllipseCurve(TrigCurve):
    """Single-frequency curve cos(wt) a + sin(wt) b."""

    def __init__(self, a, b, omega: float):
        super().__init__([omega], [a], [b])
        self.a = self.cos_vecs[0].copy()
        self.b = self.sin_vecs[0].copy()
        self.omega = float(omega)


class AnalyticCurve(CurveModel):
    """Curve from a user callable ``fn(t_array, order) -> (len(t), dim)``."""

    def __init__(self, fn: Callable[[np.ndarray, int], np.ndarray], dim: int,
                 max_order: float = math.inf, time_scale: float = 1.0,
                 domain=(-math.inf, math.inf)):
        self._fn = fn
        self.dim = int(dim)
        self.max_order = max_order
        self.time_scale = float(time_scale)
        self.domain = tuple(domain)

    def _eval(self, t, order):
        return np.asarray(self._fn(t, order), dtype=float).reshape(len(t), self.dim)


def _check_ellipse(a: np.ndarray, b: np.ndarray) -> None:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    area2 = max(na * na * nb * nb - float(a @ b) ** 2, 0.0)
    if math.sqrt(area2) <= _DEGENERATE_TOL * max(na, nb) ** 2:
        raise DegenerateCurveError(
            "vectors a and b are linearly dependent: the curve is a segment, "
            "not an ellipse"
        )


def balanced_sinusoid(n: int, V: float, omega: float) -> EllipseCurve:
    """Balanced n-phase sinusoid V cos(wt - 2 pi m / n) on phase m + 1."""
    if n < 2:
        raise DegenerateCurveError("a balanced signal needs at least 2 phases")
    if V <= 0 or omega <= 0:
        raise ValueError("amplitude and angular frequency must be positive")
    angles = 2 * np.pi * np.arange(n) / n
    a = V * np.cos(angles)
    b = V * np.sin(angles)
    # n = 2 puts both phases in antiphase: a straight segment
    _check_ellipse(a, b)
    return EllipseCurve(a, b, omega)


def unbalanced_sinusoid(amplitudes: Sequence[float], phases: Sequence[float],
                        omega: float) -> EllipseCurve:
    """Phase m carries V_m cos(wt - phi_m); ``phases`` in radians."""
    amps = np.asarray(amplitudes, dtype=float)
    phis = np.asarray(phases, dtype=float)
    if amps.shape != phis.shape or amps.ndim != 1:
        raise ValueError("amplitudes and phases must be 1-D and of equal length")
    if amps.shape[0] < 2:
        raise ValueError("need at least 2 phases")
    if np.any(amps < 0) or not np.all(np.isfinite(amps)):
        raise ValueError("amplitudes must be finite and non-negative")
    if np.count_nonzero(amps) < 2:
        raise DegenerateCurveError("at least two amplitudes must be non-zero")
    if omega <= 0:
        raise ValueError("angular frequency must be positive")
    a = amps * np.cos(phis)
    b = amps * np.sin(phis)
    _check_ellipse(a, b)
    return EllipseCurve(a, b, omega)


@dataclass(frozen=True)
class HarmonicSpec:
    """Per-phase harmonic content.

    ``harmonics`` holds (order, rms amplitude, phase offset in rad) triples;
    the waveform of the reference phase is sum sqrt(2) A sin(h w t + phi).
    """

    harmonics: tuple[tuple[int, float, float], ...]
    omega: float

    def __post_init__(self):
        if not self.harmonics:
            raise ValueError("harmonic list is empty")
        for h, amp, phi in self.harmonics:
            if int(h) != h or h < 1:
                raise ValueError(f"harmonic order must be a positive integer, got {h}")
            if not (math.isfinite(amp) and math.isfinite(phi)):
                raise ValueError("non-finite harmonic amplitude or phase")
        if not self.omega > 0:
            raise ValueError("angular frequency must be positive")


def harmonic_multiphase(spec: HarmonicSpec, n: int = 3,
                        phase_step: float | None = None) -> TrigCurve:
    """Phase m gets sum_h sqrt(2) A_h sin(h (w t - m step) + phi_h).

    ``phase_step`` defaults to 2 pi / n.
    """
    if n < 2:
        raise ValueError("need at least 2 phases")
    step = 2 * np.pi / n if phase_step is None else float(phase_step)
    m = np.arange(n)
    freqs, cos_vecs, sin_vecs = [], [], []
    for h, amp, phi in spec.harmonics:
        # sin(h w t + c) = sin(c) cos(h w t) + cos(c) sin(h w t)
        c = phi - h * m * step
        freqs.append(h * spec.omega)
        cos_vecs.append(math.sqrt(2) * amp * np.sin(c))
        sin_vecs.append(math.sqrt(2) * amp * np.cos(c))
    return TrigCurve(freqs, cos_vecs, sin_vecs)


def distorted_three_phase(omega: float) -> TrigCurve:
    """Three-phase preset with 200 V fundamental, 20 V 2nd and -30 V 7th harmonic."""
    spec = HarmonicSpec(((1, 200.0, 0.0), (2, 20.0, 0.0), (7, -30.0, 0.0)), omega)
    return harmonic_multiphase(spec, 3)


def two_circle_curve(r1: float = 1.0, w1: float = 1.0, r2: float = 0.5,
                     w2: float = math.sqrt(2)) -> TrigCurve:
    """4-D curve made of two circles in orthogonal planes (non-planar)."""
    return TrigCurve(
        [w1, w2],
        [[r1, 0, 0, 0], [0, 0, r2, 0]],
        [[0, r1, 0, 0], [0, 0, 0, r2]],
    )


@dataclass(frozen=True)
class SampledSignal:
    """Uniform (or at least strictly increasing) samples of an n-phase signal."""

    times: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.ndim != 1:
            raise SignalDataError("times must be 1-D")
        if values.ndim != 2 or values.shape[0] != times.shape[0]:
            raise SignalDataError("values must have one row per time")
        if np.any(np.diff(times) <= 0):
            raise SignalDataError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def rate(self) -> float:
        """Mean sample rate in Hz."""
        if len(self.times) < 2:
            return math.nan
        return (len(self.times) - 1) / (self.times[-1] - self.times[0])

    def __len__(self):
        return len(self.times)


class SplineCurve(CurveModel):
    """Per-phase quintic spline through (or near) sampled data."""

    max_order = 4
    degree = 5
    trim = 2

    def __init__(self, signal: SampledSignal, smoothing: float = 0.0):
        self.signal = signal
        self.smoothing = float(smoothing)
        self.dim = signal.dim
        t = signal.times
        self.domain = (float(t[self.trim]), float(t[-1 - self.trim]))
        self.time_scale = float(np.median(np.diff(t)))
        if self.smoothing == 0:
            spl = make_interp_spline(t, signal.values, k=self.degree, axis=0)
            self._parts = [[spl.derivative(k) if k else spl]
                           for k in range(self.max_order + 1)]
        else:
            per_phase = [UnivariateSpline(t, signal.values[:, j], k=self.degree,
                                          s=self.smoothing)
                         for j in range(self.dim)]
            self._parts = [[s.derivative(k) if k else s for s in per_phase]
                           for k in range(self.max_order + 1)]

    def _eval(self, t, order):
        parts = self._parts[order]
        if len(parts) == 1:
            return np.asarray(parts[0](t)).reshape(len(t), self.dim)
        return np.column_stack([p(t) for p in parts])

    def interior_mask(self) -> np.ndarray:
        """Which sample times fall inside the trimmed domain."""
        t = self.signal.times
        return (t >= self.domain[0]) & (t <= self.domain[1])


def fit_sampled(signal: SampledSignal, smoothing: float = 0.0) -> SplineCurve:
    """Fit a quintic spline per phase.

    Parameters
    ----------
    signal : SampledSignal
        At least 8 samples at strictly increasing times.
    smoothing : float
        0 interpolates the samples exactly. A positive value is the bound on
        the sum of squared residuals per phase (FITPACK's ``s``).

    Returns
    -------
    SplineCurve
        Model with continuous derivatives up to order 4 whose ``domain`` drops
        two samples at each edge, where spline end derivatives are unreliable.
    """
    if smoothing < 0 or not math.isfinite(smoothing):
        raise ValueError("smoothing must be a finite, non-negative number")
    if len(signal) < 8:
        raise SignalDataError(
            f"too few samples for a quintic fit: need >= 8, got {len(signal)}"
        )
    return SplineCurve(signal, smoothing)
