"""Darboux bivector, its blades and the geometric frequency of a curve.

The canonical angular-velocity bivector of the moving frame is

    Omega = sum_i k_i e_i ^ e_{i+1}

with k_i the scaled curvatures (rad/s). Its first blade
Omega_1 = k_1 e_1 ^ e_2 = v' ^ v'' / s'^2 is the grid angular velocity blade,
whose norm is the instantaneous geometric frequency.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RegularityError
from .frames import FrameState, frame_at, frame_time_derivative
from .derivatives import REG_EPS
from .ga import Bivector, left_contract, wedge, wedge_rows

__all__ = [
    "AveragedBivector",
    "DarbouxResult",
    "GeomFreqSample",
    "average_bivector",
    "darboux_at",
    "darboux_blades",
    "darboux_from_frame",
    "darboux_from_frame_derivs",
    "darboux_from_u",
    "darboux_result",
    "geometric_frequency_series",
    "omega1_direct",
    "rotation_relation_check",
]


def _check_sizes(frame_len: int, k_len: int) -> None:
    if frame_len < 2:
        raise ValueError("need a frame of at least two vectors")
    if k_len != frame_len - 1:
        raise ValueError(f"{frame_len} frame vectors need {frame_len - 1} curvatures, got {k_len}")


def darboux_from_frame(e, k) -> Bivector:
    """Omega = sum_i k_i e_i ^ e_{i+1}."""
    e = np.asarray(e, dtype=float)
    _check_sizes(len(e), len(k))
    out = Bivector.zero(e.shape[1])
    for i, ki in enumerate(k):
        out = out + ki * wedge(e[i], e[i + 1])
    return out


def darboux_from_u(u, s_prime: float) -> Bivector:
    """Omega = s' sum_i (u_i ^ u_{i+1}) / |u_i|^2, from the unnormalised frame."""
    u = np.asarray(u, dtype=float)
    _check_sizes(len(u), len(u) - 1)
    out = Bivector.zero(u.shape[1])
    for i in range(len(u) - 1):
        out = out + wedge(u[i], u[i + 1]) / float(u[i] @ u[i])
    return s_prime * out


def darboux_from_frame_derivs(e, e_dot, s_prime: float) -> Bivector:
    """Omega = (s'/2) sum_i e_i ^ e._i with arc-length derivatives e._i."""
    e = np.asarray(e, dtype=float)
    out = Bivector.zero(e.shape[1])
    for ei, edi in zip(e, e_dot):
        out = out + wedge(ei, edi)
    return 0.5 * s_prime * out


def darboux_blades(e, k) -> list[Bivector]:
    """Blades Omega_1 .. Omega_m whose sum is 2 Omega.

    Omega_1 = k_1 e_1 ^ e_2, the middle blades couple neighbouring planes and
    the closing blade is k_{m-1} e_{m-1} ^ e_m.
    """
    e = np.asarray(e, dtype=float)
    _check_sizes(len(e), len(k))
    planes = [k[i] * wedge(e[i], e[i + 1]) for i in range(len(k))]
    blades = [planes[0]]
    for i in range(1, len(k)):
        blades.append(planes[i - 1] + planes[i])
    blades.append(planes[-1])
    return blades


def omega1_direct(v1, v2, s_prime: float | None = None, scale: float | None = None) -> Bivector:
    """Omega_1 = v' ^ v'' / s'^2 without building a frame."""
    v1 = np.asarray(v1, dtype=float)
    if s_prime is None:
        s_prime = float(np.linalg.norm(v1))
    floor = 0.0 if scale is None else REG_EPS * scale
    if not math.isfinite(s_prime) or s_prime <= floor:
        raise RegularityError(f"curve speed s'={s_prime:.3e} is too small for Omega_1")
    return wedge(v1, v2) / (s_prime * s_prime)


def rotation_relation_check(e, e_prime, omega: Bivector) -> float:
    """max_i |e_i' - e_i _| Omega| / max(1, |Omega|), time-domain form."""
    worst = 0.0
    for ei, epi in zip(e, e_prime):
        worst = max(worst, float(np.linalg.norm(epi - left_contract(ei, omega))))
    return worst / max(1.0, omega.norm())


@dataclass(frozen=True)
class DarbouxResult:
    t: float
    omega: Bivector
    omega1: Bivector
    omega1_norm: float
    blades: tuple
    planar_residual: float
    frame: FrameState = field(repr=False)


def darboux_result(frame: FrameState) -> DarbouxResult:
    dim = len(frame.e[0])
    if frame.m < 2:
        # straight motion: the frame never turns
        zero = Bivector.zero(dim)
        return DarbouxResult(frame.t, zero, zero, 0.0, (), 0.0, frame)
    omega = darboux_from_frame(frame.e, frame.k)
    blades = darboux_blades(frame.e, frame.k)
    omega1 = blades[0]
    return DarbouxResult(
        t=frame.t,
        omega=omega,
        omega1=omega1,
        omega1_norm=abs(float(frame.k[0])),
        blades=tuple(blades),
        planar_residual=(omega - omega1).norm(),
        frame=frame,
    )


def darboux_at(model, t: float, **frame_kw) -> DarbouxResult:
    return darboux_result(frame_at(model, t, **frame_kw))


def darboux_fd(model, t: float, h: float | None = None, **frame_kw) -> tuple[DarbouxResult, Bivector, np.ndarray]:
    """Canonical result at ``t`` plus the finite-difference Omega and e_i'."""
    frame, e_prime = frame_time_derivative(model, t, h, **frame_kw)
    fd_omega = darboux_from_frame_derivs(frame.e, e_prime / frame.s_prime, frame.s_prime)
    return darboux_result(frame), fd_omega, e_prime


@dataclass(frozen=True)
class AveragedBivector:
    """Time average of Omega_1 over ``window``.

    ``mean_norm`` is the norm of the averaged bivector; ``norm_mean`` is the
    average of the instantaneous norms.
    """

    window: tuple[float, float]
    mean: Bivector
    mean_norm: float
    norm_mean: float
    steps: int


def average_bivector(model, t0: float, t1: float, steps: int = 1024) -> AveragedBivector:
    """Composite trapezoidal average of Omega_1(t) on [t0, t1]."""
    if steps < 16:
        raise ValueError("averaging needs at least 16 quadrature steps")
    if not t1 > t0:
        raise ValueError("empty averaging window")
    ts = np.linspace(t0, t1, steps + 1)
    v1 = model.eval(ts, 1)
    v2 = model.eval(ts, 2)
    speed = np.linalg.norm(v1, axis=1)
    floor = REG_EPS * speed.max()
    bad = np.flatnonzero(~(speed > floor))
    if bad.size:
        t_bad = float(ts[bad[0]])
        raise RegularityError(f"curve is stationary at t={t_bad} inside the window", t=t_bad)
    comps = wedge_rows(v1, v2) / (speed**2)[:, None]
    mean = Bivector(model.dim, np.trapezoid(comps, ts, axis=0) / (t1 - t0))
    norm_mean = float(np.trapezoid(np.linalg.norm(comps, axis=1), ts) / (t1 - t0))
    return AveragedBivector((float(t0), float(t1)), mean, mean.norm(), norm_mean, steps)


@dataclass
class GeomFreqSample:
    """Per-instant output of the pipeline. Flagged samples carry NaNs."""

    t: float
    s_prime: float
    k: tuple
    omega1_norm: float
    omega: Bivector | None
    omega1: Bivector | None
    planar_residual: float
    m: int
    flags: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.flags


def geometric_frequency_series(model, times, method: str = "mgs",
                               order: int | None = None) -> list[GeomFreqSample]:
    """Run the full pipeline at each time; irregular instants are flagged
    ``"irregular"`` rather than dropped, and output order matches ``times``."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if times.size == 0:
        raise ValueError("no sample times given")
    scale = float(np.linalg.norm(model.eval(times, 1), axis=-1).max())
    out = []
    for t in times:
        try:
            res = darboux_at(model, float(t), order=order, method=method, scale=scale)
        except RegularityError:
            out.append(GeomFreqSample(float(t), math.nan, (), math.nan, None, None,
                                      math.nan, 0, ["irregular"]))
            continue
        out.append(GeomFreqSample(
            t=float(t),
            s_prime=res.frame.s_prime,
            k=tuple(float(x) for x in res.frame.k),
            omega1_norm=res.omega1_norm,
            omega=res.omega,
            omega1=res.omega1,
            planar_residual=res.planar_residual,
            m=res.frame.m,
        ))
    return out
