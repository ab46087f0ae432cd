import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from geomfreq import darboux, oracles, validation
from geomfreq.curves import (
    AnalyticCurve,
    TrigCurve,
    balanced_sinusoid,
    distorted_three_phase,
    two_circle_curve,
    unbalanced_sinusoid,
)
from geomfreq.darboux import (
    average_bivector,
    darboux_at,
    darboux_blades,
    darboux_fd,
    darboux_from_frame,
    darboux_from_u,
    geometric_frequency_series,
    omega1_direct,
    rotation_relation_check,
)
from geomfreq.errors import RegularityError
from geomfreq.ga import wedge, wedge_rows

W = 2 * math.pi * 50
PERIOD = 2 * math.pi / W


def _cusp():
    # v = (t^3, t^2): stationary at t = 0
    def fn(t, k):
        t = np.asarray(t, dtype=float)
        x = [t**3, 3 * t**2, 6 * t, np.full_like(t, 6.0)] + [np.zeros_like(t)] * 4
        y = [t**2, 2 * t, np.full_like(t, 2.0)] + [np.zeros_like(t)] * 5
        return np.column_stack([x[k], y[k]])
    return AnalyticCurve(fn, dim=2)


def _line():
    return AnalyticCurve(lambda t, k: np.outer(
        np.asarray(t, dtype=float) if k == 0 else np.full_like(t, float(k == 1)),
        [1.0, 2.0, -1.0]), dim=3)


def test_canonical_form_example():
    omega = darboux_from_frame(np.eye(3), [2.0, 3.0])
    assert_allclose(omega.comps, [2, 0, 3])


def test_size_mismatch():
    with pytest.raises(ValueError):
        darboux_from_frame(np.eye(3), [1.0])
    with pytest.raises(ValueError):
        darboux_blades(np.eye(3)[:1], [])


def test_blades_sum_to_twice_omega():
    q, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(4, 4)))
    e, k = q.T, [2.0, 3.0, 5.0]
    blades = darboux_blades(e, k)
    assert len(blades) == 4
    total = sum(blades[1:], blades[0])
    assert_allclose(total.comps, 2 * darboux_from_frame(e, k).comps, atol=1e-12)
    assert_allclose(blades[0].comps, 2.0 * wedge(e[0], e[1]).comps, atol=1e-15)
    assert_allclose(blades[-1].comps, 5.0 * wedge(e[2], e[3]).comps, atol=1e-15)


def test_u_form_matches_frame_form():
    for model, t in ((distorted_three_phase(W), 0.0023), (two_circle_curve(), 2.2)):
        res = darboux_at(model, t)
        u_form = darboux_from_u(res.frame.u, res.frame.s_prime)
        assert (u_form - res.omega).norm() <= 1e-10 * res.omega.norm()


@pytest.mark.parametrize("model, t", [
    (balanced_sinusoid(3, 1.0, W), 0.0017),
    (unbalanced_sinusoid([2, 1, 1], np.radians([0, -120, 120]), W), 0.0051),
    (two_circle_curve(), 0.9),
])
def test_finite_difference_form_and_rotation(model, t):
    res, fd_omega, e_prime = darboux_fd(model, t)
    assert (fd_omega - res.omega).norm() <= 1e-5 * res.omega.norm()
    assert rotation_relation_check(res.frame.e, e_prime, res.omega) < 1e-5


def test_omega1_direct_matches_frame():
    model = distorted_three_phase(W)
    for t in np.random.default_rng(2).uniform(0, PERIOD, 10):
        direct = omega1_direct(model.eval(t, 1), model.eval(t, 2))
        assert (direct - darboux_at(model, t).omega1).norm() <= 1e-10 * direct.norm()


def test_omega1_direct_rejects_stationary():
    with pytest.raises(RegularityError):
        omega1_direct([0.0, 0.0], [1.0, 0.0])
    with pytest.raises(RegularityError):
        omega1_direct([1e-15, 0.0], [1.0, 0.0], scale=1.0)


def test_straight_line_has_zero_bivector():
    res = darboux_at(_line(), 0.5)
    assert res.frame.m == 1
    assert res.omega.norm() == 0 and res.omega1_norm == 0
    assert omega1_direct([1.0, 2.0, -1.0], [0.0, 0.0, 0.0]).norm() == 0


class TestClosedForms:
    def test_balanced_constant(self):
        model = balanced_sinusoid(3, 1.0, W)
        ref = oracles.balanced_omega1(3, 1.0, W)
        for t in np.linspace(0, PERIOD, 9):
            res = darboux_at(model, t)
            assert res.omega1_norm == pytest.approx(W, rel=1e-13)
            assert_allclose(res.omega1.comps, ref.comps, atol=1e-10 * W)

    def test_unbalanced_pointwise(self):
        model = unbalanced_sinusoid([1.2, 0.8, 1.0], np.radians([0, -110, 125]), W)
        for t in np.random.default_rng(4).uniform(0, PERIOD, 16):
            ref = oracles.ellipse_omega1(model.a, model.b, W, t)
            assert (darboux_at(model, t).omega1 - ref).norm() <= 1e-11 * ref.norm()

    def test_harmonic_series_against_rational_form(self):
        model = distorted_three_phase(W)
        ts = np.linspace(0, PERIOD, 1000)
        series = geometric_frequency_series(model, ts)
        got = np.array([s.omega1.comps for s in series])
        coef = oracles.distorted_omega1_coef(W, ts)
        expected = coef[:, None] * oracles.DISTORTED_PLANE
        err = np.linalg.norm(got - expected, axis=1) / np.linalg.norm(expected, axis=1)
        assert err.max() < 1e-8
        assert all(s.ok and s.m == 2 for s in series)


class TestAverages:
    def test_balanced_mean_equals_constant(self):
        model = balanced_sinusoid(3, 1.0, W)
        avg = average_bivector(model, 0.0, PERIOD, 256)
        assert_allclose(avg.mean.comps, oracles.balanced_omega1(3, 1.0, W).comps,
                        rtol=1e-12)
        assert avg.norm_mean == pytest.approx(W, rel=1e-12)

    def test_half_cycle_scaling_averages_to_one(self):
        model = unbalanced_sinusoid([2, 1, 1], np.radians([0, -120, 120]), W)
        avg = average_bivector(model, 0.0, PERIOD / 2, 4096)
        assert avg.norm_mean / W == pytest.approx(1.0, abs=1e-6)

    def test_harmonic_full_cycle_is_four_omega(self):
        # the tangent of this curve turns four times per cycle
        avg = average_bivector(distorted_three_phase(W), 0.0, PERIOD, 4096)
        unit = oracles.DISTORTED_PLANE / math.sqrt(3)
        assert avg.mean_norm == pytest.approx(4 * W, rel=1e-9)
        assert avg.mean.comps @ unit == pytest.approx(4 * W, rel=1e-9)

    def test_bad_arguments(self):
        model = balanced_sinusoid(3, 1.0, W)
        with pytest.raises(ValueError):
            average_bivector(model, 0.0, PERIOD, 8)
        with pytest.raises(ValueError):
            average_bivector(model, PERIOD, 0.0)

    def test_stationary_point_in_window(self):
        with pytest.raises(RegularityError) as info:
            average_bivector(_cusp(), -1.0, 1.0, 64)
        assert info.value.t == 0.0


def test_planar_residual():
    res = darboux_at(distorted_three_phase(W), 0.0041)
    assert res.planar_residual <= 1e-9 * res.omega.norm()
    res = darboux_at(two_circle_curve(), 0.41)
    assert res.frame.m == 4
    assert res.planar_residual > 1e-3 * res.omega.norm()


def test_series_flags_cusp_and_keeps_neighbours():
    ts = [-0.2, -0.1, 0.0, 0.1, 0.2]
    series = geometric_frequency_series(_cusp(), ts)
    assert [s.t for s in series] == ts
    assert series[2].flags == ["irregular"] and math.isnan(series[2].omega1_norm)
    for s in series[:2] + series[3:]:
        assert s.ok and math.isfinite(s.omega1_norm)
        # v' ^ v'' = 6 t^2 e12, s'^2 = 9 t^4 + 4 t^2
        t = s.t
        assert s.omega1_norm == pytest.approx(6 * t * t / (9 * t**4 + 4 * t * t), rel=1e-12)


def test_series_rejects_empty():
    with pytest.raises(ValueError):
        geometric_frequency_series(balanced_sinusoid(3, 1.0, W), [])


def _random_rotation(dim, seed):
    q, r = np.linalg.qr(np.random.default_rng(seed).normal(size=(dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4]), st.integers(0, 10_000), st.floats(0.0, 5.0))
def test_rotation_covariance(dim, seed, t):
    rng = np.random.default_rng(seed)
    a, b, c = rng.normal(size=(3, dim))
    curve = TrigCurve([1.0, 2.3], [a, c], [b, rng.normal(size=dim)])
    rot = _random_rotation(dim, seed + 1)
    turned = TrigCurve(curve.freqs, [rot @ x for x in curve.cos_vecs],
                       [rot @ x for x in curve.sin_vecs])
    try:
        base = darboux_at(curve, t, order=2)
    except RegularityError:
        return
    moved = darboux_at(turned, t, order=2)
    assert moved.omega1_norm == pytest.approx(base.omega1_norm, rel=1e-9, abs=1e-12)
    expected = base.omega1.transformed(rot)
    assert (moved.omega1 - expected).norm() <= 1e-9 * max(1.0, base.omega1.norm())


def test_wedge_sign_mutation_is_caught(monkeypatch):
    """Flipping the outer-product sign must turn the orientation check red."""
    checks = {c.name: c for c in validation.harmonic_average()}
    orientation = next(c for n, c in checks.items() if "orientation" in n)
    assert orientation.passed

    monkeypatch.setattr(darboux, "wedge_rows", lambda a, b: -wedge_rows(a, b))
    checks = {c.name: c for c in validation.harmonic_average()}
    orientation = next(c for n, c in checks.items() if "orientation" in n)
    assert not orientation.passed
