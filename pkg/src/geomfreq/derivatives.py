"""Arc-length quantities from t-derivatives of a curve.

Closed-form expressions cover s', ..., s'''' and the first four arc-length
derivatives of v. Orders above four go through truncated Taylor series
arithmetic (``jet_arc_data``), which is exact up to rounding and is also used
as an independent check of the closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RegularityError

__all__ = [
    "ArcData",
    "TDerivStack",
    "REG_EPS",
    "arc_data",
    "arc_speed_derivs",
    "component_chain_rule_check",
    "jet_arc_data",
    "s_derivs",
    "second_sderiv_norm",
    "tderiv_stack",
]

# relative regularity threshold, applied to a window-wide scale of |v'|
REG_EPS = 1e-12


@dataclass(frozen=True)
class TDerivStack:
    """t-derivatives at one instant: ``d[k - 1]`` is v^(k)(t)."""

    t: float
    d: tuple

    @property
    def order(self) -> int:
        return len(self.d)

    @property
    def dim(self) -> int:
        return len(self.d[0])


@dataclass(frozen=True)
class ArcData:
    """Speed derivatives ``sd = [s', s'', ...]`` and s-derivatives
    ``sdot = [v., v.., ...]`` of the same length."""

    t: float
    sd: np.ndarray
    sdot: tuple

    @property
    def s_prime(self) -> float:
        return float(self.sd[0])


def tderiv_stack(model, t: float, m: int) -> TDerivStack:
    return TDerivStack(float(t), tuple(model.derivs(t, m)))


def _check_regular(sp: float, t, scale) -> None:
    threshold = REG_EPS * scale if scale is not None else 0.0
    if not math.isfinite(sp) or sp <= threshold:
        raise RegularityError(
            f"curve speed s'={sp:.3e} at t={t} is below the regularity "
            f"threshold {threshold:.3e}; the moving frame is undefined",
            t=t,
        )


def arc_speed_derivs(td: TDerivStack, scale: float | None = None) -> np.ndarray:
    """s', s'', s''' and s'''' (as many as ``td`` supports, at most four).

    ``scale`` is a representative |v'| for the analysis window; the point is
    treated as stationary when s' <= 1e-12 * scale. Without a scale only an
    exactly vanishing speed is rejected.
    """
    d = td.d
    m = min(len(d), 4)
    if m < 1:
        raise ValueError("need at least v'")
    v1 = d[0]
    s1 = math.sqrt(float(v1 @ v1))
    _check_regular(s1, td.t, scale)
    out = [s1]
    if m >= 2:
        v2 = d[1]
        s2 = float(v1 @ v2) / s1
        out.append(s2)
    if m >= 3:
        v3 = d[2]
        s3 = (float(v2 @ v2) + float(v1 @ v3) - s2 * s2) / s1
        out.append(s3)
    if m >= 4:
        v4 = d[3]
        s4 = (3 * float(v2 @ v3) + float(v1 @ v4) - 3 * s2 * s3) / s1
        out.append(s4)
    return np.array(out)


def s_derivs(td: TDerivStack, sd) -> list[np.ndarray]:
    """Arc-length derivatives v., v.., v..., v.... from t-derivatives."""
    d = td.d
    m = min(len(d), len(sd), 4)
    s1 = sd[0]
    _check_regular(s1, td.t, None)
    v1 = d[0]
    out = [v1 / s1]
    if m >= 2:
        s2 = sd[1]
        v2 = d[1]
        out.append((s1 * v2 - s2 * v1) / s1**3)
    if m >= 3:
        s3 = sd[2]
        v3 = d[2]
        out.append((s1**2 * v3 - 3 * s1 * s2 * v2 - (s1 * s3 - 3 * s2**2) * v1) / s1**5)
    if m >= 4:
        s4 = sd[3]
        v4 = d[3]
        out.append(
            (
                s1**3 * v4
                - 6 * s1**2 * s2 * v3
                - (4 * s1**2 * s3 - 15 * s1 * s2**2) * v2
                + (10 * s1 * s2 * s3 - 15 * s2**3 - s1**2 * s4) * v1
            )
            / s1**7
        )
    return out


def second_sderiv_norm(td: TDerivStack, sd) -> float:
    """|v..| from t-quantities without forming the vector."""
    v1, v2 = td.d[0], td.d[1]
    s1, s2 = sd[0], sd[1]
    inner = float(v2 @ v2) - 2 * (s2 / s1) * float(v1 @ v2) + s2 * s2
    return math.sqrt(max(inner, 0.0)) / s1**2


# -- truncated Taylor series ("jets") ---------------------------------------
# A jet holds coefficients c_j = f^(j)(t) / j!, j = 0..N, along axis 0.

def _jet_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cauchy product of a scalar jet ``a`` with a scalar or vector jet ``b``."""
    n = min(len(a), len(b))
    out = np.zeros((n,) + b.shape[1:])
    for j in range(n):
        for i in range(j + 1):
            out[j] = out[j] + a[i] * b[j - i]
    return out


def _jet_dot(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = min(len(x), len(y))
    return np.array([sum(float(x[i] @ y[j - i]) for i in range(j + 1)) for j in range(n)])


def _jet_sqrt(q: np.ndarray) -> np.ndarray:
    r = np.zeros_like(q)
    r[0] = math.sqrt(q[0])
    for j in range(1, len(q)):
        acc = sum(r[i] * r[j - i] for i in range(1, j))
        r[j] = (q[j] - acc) / (2 * r[0])
    return r


def _jet_recip(s: np.ndarray) -> np.ndarray:
    r = np.zeros_like(s)
    r[0] = 1.0 / s[0]
    for j in range(1, len(s)):
        r[j] = -sum(s[i] * r[j - i] for i in range(1, j + 1)) / s[0]
    return r


def _jet_deriv(c: np.ndarray) -> np.ndarray:
    k = np.arange(1, len(c)).reshape((-1,) + (1,) * (c.ndim - 1))
    return c[1:] * k


def jet_arc_data(td: TDerivStack, m: int | None = None,
                 scale: float | None = None) -> ArcData:
    """s-derivatives of any order by Taylor arithmetic on v'(t + tau).

    Uses ``td.d[:m]``; returns ``m`` speed derivatives and ``m`` s-derivatives.
    """
    m = td.order if m is None else m
    if m > td.order:
        raise ValueError(f"need {m} t-derivatives, stack has {td.order}")
    vjet = np.array([td.d[j] / math.factorial(j) for j in range(m)])
    sjet = _jet_sqrt(_jet_dot(vjet, vjet))
    _check_regular(float(sjet[0]), td.t, scale)
    sd = np.array([sjet[j] * math.factorial(j) for j in range(m)])
    rjet = _jet_recip(sjet)
    w = _jet_mul(rjet, vjet)
    sdot = [w[0].copy()]
    for _ in range(1, m):
        w = _jet_mul(rjet, _jet_deriv(w))
        sdot.append(w[0].copy())
    return ArcData(td.t, sd, tuple(sdot))


def arc_data(td: TDerivStack, order: int | None = None,
             scale: float | None = None) -> ArcData:
    """Speed derivatives and s-derivatives up to ``order``.

    Orders 1-4 use the closed-form expressions; higher orders come from
    ``jet_arc_data``.
    """
    order = td.order if order is None else order
    if order > td.order:
        raise ValueError(f"need {order} t-derivatives, stack has {td.order}")
    sd = arc_speed_derivs(td, scale)[:order]
    sdot = s_derivs(td, sd)[:order]
    if order > 4:
        jet = jet_arc_data(td, order, scale)
        sd = np.concatenate([sd, jet.sd[4:]])
        sdot = sdot + list(jet.sdot[4:])
    return ArcData(td.t, np.asarray(sd), tuple(sdot))


def component_chain_rule_check(model, t: float) -> float:
    """Largest deviation between per-component chain-rule formulas (orders
    1-3) and the vector-level ``s_derivs`` output at time ``t``."""
    td = tderiv_stack(model, t, 3)
    sd = arc_speed_derivs(td)
    vec = s_derivs(td, sd)
    s1, s2, s3 = sd[:3]
    v1, v2, v3 = td.d
    worst = 0.0
    for i in range(td.dim):
        comp = (
            v1[i] / s1,
            (s1 * v2[i] - s2 * v1[i]) / s1**3,
            ((3 * s2**2 - s1 * s3) * v1[i] - 3 * s1 * s2 * v2[i] + s1**2 * v3[i]) / s1**5,
        )
        for k in range(3):
            worst = max(worst, abs(comp[k] - vec[k][i]))
    return worst
