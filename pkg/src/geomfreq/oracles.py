"""Closed-form reference values for the generator signals.

Nothing here touches the frame pipeline; these functions exist so numerical
results can be checked against independent expressions.
"""
from __future__ import annotations

import math

import numpy as np

from .ga import wedge


def balanced_ab(n: int, V: float) -> tuple[np.ndarray, np.ndarray]:
    angles = 2 * np.pi * np.arange(n) / n
    return V * np.cos(angles), V * np.sin(angles)


def balanced_speed(n: int, V: float, omega: float) -> float:
    return omega / math.sqrt(2) * math.sqrt(n) * V


def balanced_omega1(n: int, V: float, omega: float):
    """Constant Omega_1 = 2 w / (n V^2) a ^ b."""
    a, b = balanced_ab(n, V)
    return (2 * omega / (n * V * V)) * wedge(a, b)


def balanced_u(n: int, V: float, omega: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    """u_1 = v. and u_2 = v.. in terms of a and b."""
    a, b = balanced_ab(n, V)
    c, s = math.cos(omega * t), math.sin(omega * t)
    u1 = -math.sqrt(2) / (math.sqrt(n) * V) * (s * a - c * b)
    u2 = -2 / (n * V * V) * (c * a + s * b)
    return u1, u2


def ellipse_g2(a, b, omega: float, t):
    """g(t)^2, with s'(t) = w g(t) / sqrt(2)."""
    a2, b2, ab = float(a @ a), float(b @ b), float(a @ b)
    x = 2 * omega * np.asarray(t, dtype=float)
    return (b2 - a2) * np.cos(x) - 2 * ab * np.sin(x) + (b2 + a2)


def ellipse_h(a, b, omega: float, t):
    """Scaling factor h(t) with |Omega_1(t)| = h(t) w."""
    a2, b2, ab = float(a @ a), float(b @ b), float(a @ b)
    return 2 * math.sqrt(a2 * b2 - ab * ab) / ellipse_g2(a, b, omega, t)


def ellipse_k1(a, b, omega: float, t):
    return ellipse_h(a, b, omega, t) * omega


def ellipse_omega1(a, b, omega: float, t: float):
    """Omega_1(t) = 2 w / g(t)^2 a ^ b."""
    return (2 * omega / float(ellipse_g2(a, b, omega, t))) * wedge(a, b)


DISTORTED_PLANE = np.array([1.0, -1.0, 1.0])


def distorted_omega1_coef(omega: float, t):
    """Coefficient c(t) of Omega_1(t) = c(t) (s12 - s13 + s23) for the
    200/20/-30 V three-phase preset."""
    x = omega * np.asarray(t, dtype=float)
    num = 16 * np.cos(3 * x) + 672 * np.cos(6 * x) + 84 * np.cos(9 * x) - 691
    den = -160 * np.cos(3 * x) + 840 * np.cos(6 * x) + 168 * np.cos(9 * x) - 857
    return 5 * omega / math.sqrt(3) * num / den


def distorted_denominator(omega: float, t):
    x = omega * np.asarray(t, dtype=float)
    return -160 * np.cos(3 * x) + 840 * np.cos(6 * x) + 168 * np.cos(9 * x) - 857
