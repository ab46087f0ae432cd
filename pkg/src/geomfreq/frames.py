"""Moving frames along a curve and their curvature coefficients.

The local frame is obtained by orthogonalising the arc-length derivatives
v., v.., ... with one of three Gram-Schmidt variants:

* ``cgs``  classical: every projection uses the original input vector
* ``mgs``  modified: projections are removed one after another from the
  running remainder (the default, far better conditioned)
* ``gags`` geometric-algebra: the remainder is the rejection of the input from
  the blade spanned by the previous inputs, (x ^ A) A^-1

A remainder shorter than ``rank_tol`` times its input vector ends the frame,
so planar curves give exactly two frame vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .derivatives import ArcData, arc_data, tderiv_stack
from .errors import ComparabilityError, RegularityError, UnsupportedError

__all__ = [
    "FrameState",
    "ORTHOGONALIZERS",
    "RANK_TOL",
    "build_frame",
    "curvatures",
    "frame_at",
    "frame_time_derivative",
    "frenet_curvatures_check",
    "orthogonality_residual",
    "orthogonalize",
    "orthogonalize_cgs",
    "orthogonalize_gags",
    "orthogonalize_mgs",
]

RANK_TOL = 1e-10
GAGS_MAX_VECTORS = 4


def _first_vector(x: np.ndarray, scale) -> None:
    nx = float(np.linalg.norm(x))
    floor = 0.0 if scale is None else RANK_TOL * scale
    if not math.isfinite(nx) or nx <= floor:
        raise RegularityError("first frame vector vanishes")


def _prepare(vs) -> list[np.ndarray]:
    vs = [np.asarray(v, dtype=float) for v in vs]
    if not vs:
        raise ValueError("need at least one vector")
    if len({v.shape for v in vs}) != 1:
        raise ValueError("vectors must share a dimension")
    return vs


def orthogonalize_cgs(vs, rank_tol: float = RANK_TOL, scale=None) -> list[np.ndarray]:
    vs = _prepare(vs)
    _first_vector(vs[0], scale)
    us: list[np.ndarray] = []
    for x in vs:
        u = x.copy()
        for uj in us:
            u -= (float(x @ uj) / float(uj @ uj)) * uj
        if us and np.linalg.norm(u) <= rank_tol * np.linalg.norm(x):
            break
        us.append(u)
    return us


def orthogonalize_mgs(vs, rank_tol: float = RANK_TOL, scale=None) -> list[np.ndarray]:
    vs = _prepare(vs)
    _first_vector(vs[0], scale)
    us: list[np.ndarray] = []
    for x in vs:
        u = x.copy()
        for uj in us:
            u -= (float(u @ uj) / float(uj @ uj)) * uj
        if us and np.linalg.norm(u) <= rank_tol * np.linalg.norm(x):
            break
        us.append(u)
    return us


# Blades are dicts mapping sorted index tuples to coefficients. For J sorted
# and k in J, e_k ^ e_{J\k} = (-1)^pos(k, J) e_J.

def _wedge_vec_blade(x: np.ndarray, blade: dict, grade: int) -> dict:
    """x ^ A for a grade-``grade`` blade A."""
    out = {}
    for J in combinations(range(len(x)), grade + 1):
        acc = 0.0
        for pos, k in enumerate(J):
            coef = blade.get(J[:pos] + J[pos + 1:], 0.0)
            if coef:
                acc += (-1) ** pos * x[k] * coef
        if acc:
            out[J] = acc
    return out


def _rejection(outer: dict, blade: dict, dim: int) -> np.ndarray:
    """(x ^ A) A^-1 given ``outer`` = x ^ A; this is a vector."""
    norm2 = sum(c * c for c in blade.values())
    u = np.zeros(dim)
    for J, bj in outer.items():
        for pos, k in enumerate(J):
            coef = blade.get(J[:pos] + J[pos + 1:], 0.0)
            if coef:
                u[k] += (-1) ** pos * bj * coef
    return u / norm2


def orthogonalize_gags(vs, rank_tol: float = RANK_TOL, scale=None) -> list[np.ndarray]:
    vs = _prepare(vs)
    if len(vs) > GAGS_MAX_VECTORS:
        raise UnsupportedError(
            f"GAGS supports at most {GAGS_MAX_VECTORS} vectors; use 'mgs' instead"
        )
    _first_vector(vs[0], scale)
    dim = vs[0].shape[0]
    us = [vs[0].copy()]
    blade = {(k,): float(c) for k, c in enumerate(vs[0]) if c}
    for grade, x in enumerate(vs[1:], start=1):
        outer = _wedge_vec_blade(x, blade, grade)
        u = _rejection(outer, blade, dim) if outer else np.zeros(dim)
        if np.linalg.norm(u) <= rank_tol * np.linalg.norm(x):
            break
        us.append(u)
        # x ^ A spans the next subspace; sign and scale cancel in the rejection
        blade = outer
    return us


ORTHOGONALIZERS = {
    "cgs": orthogonalize_cgs,
    "mgs": orthogonalize_mgs,
    "gags": orthogonalize_gags,
}


def orthogonalize(vs, method: str = "mgs", **kwargs) -> list[np.ndarray]:
    try:
        fn = ORTHOGONALIZERS[method]
    except KeyError:
        raise ValueError(
            f"unknown orthogonalizer {method!r}; choose from {sorted(ORTHOGONALIZERS)}"
        ) from None
    return fn(vs, **kwargs)


def orthogonality_residual(e) -> float:
    """max |e_i . e_j| over i != j."""
    e = np.asarray(e)
    if len(e) < 2:
        return 0.0
    gram = e @ e.T
    np.fill_diagonal(gram, 0.0)
    return float(np.abs(gram).max())


def curvatures(u, s_prime: float) -> tuple[np.ndarray, np.ndarray]:
    """Curvatures kappa_i = |u_{i+1}| / |u_i| and scaled k_i = s' kappa_i."""
    norms = np.array([np.linalg.norm(ui) for ui in u])
    kappa = norms[1:] / norms[:-1]
    return kappa, s_prime * kappa


@dataclass(frozen=True)
class FrameState:
    """Everything known about the moving frame at one instant.

    ``u`` are the orthogonal (unnormalised) vectors, ``e`` the orthonormal
    frame, ``kappa`` the curvatures per unit arc length and ``k`` the same
    rates per unit time (rad/s).
    """

    t: float
    arc: ArcData
    u: tuple
    e: np.ndarray
    kappa: np.ndarray
    k: np.ndarray
    method: str

    @property
    def m(self) -> int:
        return len(self.u)

    @property
    def s_prime(self) -> float:
        return self.arc.s_prime


def build_frame(arc: ArcData, method: str = "mgs", rank_tol: float = RANK_TOL) -> FrameState:
    u = orthogonalize(arc.sdot, method, rank_tol=rank_tol)
    e = np.array([ui / np.linalg.norm(ui) for ui in u])
    kappa, k = curvatures(u, arc.s_prime)
    return FrameState(arc.t, arc, tuple(u), e, kappa, k, method)


def default_order(model) -> int:
    return int(min(model.dim, model.max_order))


def frame_at(model, t: float, order: int | None = None, method: str = "mgs",
             scale: float | None = None, rank_tol: float = RANK_TOL) -> FrameState:
    """Frame of ``model`` at ``t`` from s-derivatives up to ``order``
    (default: one per dimension, capped by the model's smoothness)."""
    order = default_order(model) if order is None else order
    td = tderiv_stack(model, t, order)
    return build_frame(arc_data(td, order, scale), method, rank_tol)


def _aligned(e_ref: np.ndarray, e: np.ndarray) -> np.ndarray:
    signs = np.where(np.einsum("ij,ij->i", e_ref, e) < 0, -1.0, 1.0)
    return e * signs[:, None]


def frame_time_derivative(model, t: float, h: float | None = None, **frame_kw):
    """Central-difference time derivatives e_i'(t) of the frame.

    Frames at t +- h are sign-aligned with the frame at t before
    differencing. Returns ``(frame, e_prime)`` with ``e_prime`` shaped like
    ``frame.e``.
    """
    h = 1e-6 * model.time_scale if h is None else h
    mid = frame_at(model, t, **frame_kw)
    plus = frame_at(model, t + h, **frame_kw)
    minus = frame_at(model, t - h, **frame_kw)
    if not (plus.m == mid.m == minus.m):
        raise ComparabilityError(
            f"frame size changes around t={t}: {minus.m}, {mid.m}, {plus.m}"
        )
    e_prime = (_aligned(mid.e, plus.e) - _aligned(mid.e, minus.e)) / (2 * h)
    return mid, e_prime


def frenet_curvatures_check(model, t: float, h: float | None = None, **frame_kw) -> np.ndarray:
    """|e._i . e_{i+1} - kappa_i| for each i, with e._i = e_i' / s' by finite
    differences."""
    frame, e_prime = frame_time_derivative(model, t, h, **frame_kw)
    e_dot = e_prime / frame.s_prime
    fd_kappa = np.einsum("ij,ij->i", e_dot[:-1], frame.e[1:])
    return np.abs(fd_kappa - frame.kappa)
