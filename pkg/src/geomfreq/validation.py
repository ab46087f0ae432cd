"""Acceptance checks on the closed-form generator signals.

Each criterion returns a list of ``Check`` results carrying the measured
value and the tolerance it was held to. ``run`` executes a selection and the
``validate`` CLI command prints the outcome.
"""
from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import oracles
from .curves import (
    SampledSignal,
    balanced_sinusoid,
    distorted_three_phase,
    fit_sampled,
    two_circle_curve,
    unbalanced_sinusoid,
)
from .darboux import (
    average_bivector,
    darboux_at,
    darboux_fd,
    darboux_from_u,
    geometric_frequency_series,
    rotation_relation_check,
)
from .derivatives import arc_data, second_sderiv_norm, tderiv_stack
from .frames import frame_at, orthogonality_residual
from .ga import left_contract

OMEGA = 2 * np.pi * 50
SEED = 20240521


@dataclass
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool
    relation: str = "<"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"    [{status}] {self.name}: {self.measured:.3e} {self.relation} {self.tolerance:.1e}"


def _lt(name, measured, tol) -> Check:
    return Check(name, float(measured), tol, bool(measured < tol))


@dataclass
class Criterion:
    key: str
    number: int
    title: str
    tags: tuple
    fn: Callable[[], list]


def _rng(offset=0):
    return np.random.default_rng(SEED + offset)


def _models():
    return {
        "balanced": balanced_sinusoid(3, 1.0, OMEGA),
        "unbalanced": unbalanced_sinusoid([2, 1, 1], np.radians([0, -120, 120]), OMEGA),
        "harmonic": distorted_three_phase(OMEGA),
    }


def _sample_times(model, periods, count, rng):
    return rng.uniform(0, periods * 2 * np.pi / OMEGA, count)


def _spline_of(model, per_cycle=256, cycles=3):
    period = 2 * np.pi / OMEGA
    ts = np.arange(per_cycle * cycles) * period / per_cycle
    return fit_sampled(SampledSignal(ts, model.eval(ts, 0)))


def balanced_constant_frequency():
    rng = _rng(1)
    worst_a = worst_s = 0.0
    for n in (3, 4, 5, 7):
        for V in (1.0, 230.0):
            model = balanced_sinusoid(n, V, OMEGA)
            ts = _sample_times(model, 3, 128, rng)
            res = geometric_frequency_series(model, ts)
            worst_a = max(worst_a, max(abs(r.omega1_norm - OMEGA) / OMEGA for r in res))
            spline = _spline_of(model)
            lo, hi = spline.domain
            res = geometric_frequency_series(spline, rng.uniform(lo, hi, 128))
            worst_s = max(worst_s, max(abs(r.omega1_norm - OMEGA) / OMEGA for r in res))
    return [_lt("analytic |‖Ω₁‖−ω|/ω", worst_a, 1e-9),
            _lt("spline |‖Ω₁‖−ω|/ω", worst_s, 1e-3)]


def balanced_closed_forms():
    rng = _rng(2)
    err_s = err_k = err_o = 0.0
    for n in (3, 4, 5, 7):
        for V in (1.0, 230.0):
            model = balanced_sinusoid(n, V, OMEGA)
            expected_o = oracles.balanced_omega1(n, V, OMEGA)
            speed = oracles.balanced_speed(n, V, OMEGA)
            for t in _sample_times(model, 1, 16, rng):
                res = darboux_at(model, t)
                err_s = max(err_s, abs(res.frame.s_prime - speed) / speed)
                err_k = max(err_k, abs(res.frame.k[0] - OMEGA) / OMEGA)
                err_o = max(err_o, (res.omega1 - expected_o).norm() / expected_o.norm())
    return [_lt("s′ vs ω√n·V/√2 (rel)", err_s, 1e-10),
            _lt("k₁ vs ω (rel)", err_k, 1e-10),
            _lt("Ω₁ vs 2ω/(nV²)·a∧b (rel)", err_o, 1e-9)]


def unbalanced_scaling_law():
    rng = _rng(3)
    model = _models()["unbalanced"]
    ts = _sample_times(model, 1, 128, rng)
    res = geometric_frequency_series(model, ts)
    expected = oracles.ellipse_h(model.a, model.b, OMEGA, ts) * OMEGA
    got = np.array([r.omega1_norm for r in res])
    pointwise = float(np.max(np.abs(got - expected) / expected))
    avg = average_bivector(model, 0.0, np.pi / OMEGA, 4096)
    return [_lt("‖Ω₁(t)‖ vs h(t)ω (rel)", pointwise, 1e-9),
            _lt("|mean h − 1| over half cycle", abs(avg.norm_mean / OMEGA - 1), 1e-6)]


def harmonic_average():
    rng = _rng(4)
    model = _models()["harmonic"]
    avg = average_bivector(model, 0.0, 2 * np.pi / OMEGA, 4096)
    unit = oracles.DISTORTED_PLANE / np.linalg.norm(oracles.DISTORTED_PLANE)
    along = float(avg.mean.comps @ unit)
    cross = np.linalg.norm(avg.mean.comps - along * unit) / avg.mean_norm
    checks = [
        _lt("|‖Ω̄₁‖ − 3ω|/3ω", abs(avg.mean_norm - 3 * OMEGA) / (3 * OMEGA), 1e-6),
        _lt("Ω̄₁ cross-component residual", cross, 1e-8),
        Check("Ω̄₁ orientation along +(σ₁₂−σ₁₃+σ₂₃)", along / OMEGA, 0.0, along > 0, ">"),
    ]
    ts = _sample_times(model, 1, 64, rng)
    ts = ts[np.abs(oracles.distorted_denominator(OMEGA, ts)) > 1.0]
    worst = 0.0
    for t in ts:
        expected = oracles.distorted_omega1_coef(OMEGA, t) * oracles.DISTORTED_PLANE
        got = darboux_at(model, t).omega1.comps
        worst = max(worst, np.linalg.norm(got - expected) / np.linalg.norm(expected))
    checks.append(_lt("Ω₁(t) vs closed-form rational expression (rel)", worst, 1e-8))
    return checks


def definition_equivalence():
    rng = _rng(5)
    exact = fd = 0.0
    for model in _models().values():
        for t in _sample_times(model, 1, 32, rng):
            res, fd_omega, _ = darboux_fd(model, t)
            ref = res.omega.norm()
            u_form = darboux_from_u(res.frame.u, res.frame.s_prime)
            exact = max(exact, (u_form - res.omega).norm() / ref)
            fd = max(fd, (fd_omega - res.omega).norm() / ref)
    return [_lt("frame form vs u form (rel)", exact, 1e-10),
            _lt("frame form vs ½s′Σeᵢ∧ėᵢ by FD (rel)", fd, 1e-4)]


def rotation_consistency():
    rng = _rng(6)
    worst = 0.0
    for model in _models().values():
        for t in _sample_times(model, 1, 32, rng):
            res, _, e_prime = darboux_fd(model, t)
            worst = max(worst, rotation_relation_check(res.frame.e, e_prime, res.omega))
    return [_lt("max‖eᵢ′ − eᵢ⌋Ω‖ / max(1,‖Ω‖)", worst, 1e-4)]


def planarity():
    rng = _rng(7)
    model = _models()["harmonic"]
    worst_p = 0.0
    for t in _sample_times(model, 1, 32, rng):
        res = darboux_at(model, t)
        worst_p = max(worst_p, res.planar_residual / res.omega.norm())
    curve = two_circle_curve()
    worst_a = 0.0
    sizes = set()
    for t in rng.uniform(0, 20, 32):
        res = darboux_at(curve, t, order=4)
        sizes.add(res.frame.m)
        tangent = res.frame.arc.sdot[0]
        resid = left_contract(tangent, res.omega - res.omega1)
        worst_a = max(worst_a, np.linalg.norm(resid) / res.omega.norm())
    return [_lt("planar ‖Ω−Ω₁‖/‖Ω‖", worst_p, 1e-9),
            Check("non-planar frame size", float(min(sizes)), 4.0, sizes == {4}, "=="),
            _lt("‖v̇⌋(Ω−Ω₁)‖/‖Ω‖ (non-planar)", worst_a, 1e-9)]


def derivative_identities():
    rng = _rng(8)
    models = list(_models().values()) + [balanced_sinusoid(5, 230.0, OMEGA), two_circle_curve()]
    unit = orth = vdd = 0.0
    for i in range(256):
        model = models[i % len(models)]
        t = rng.uniform(0, 20 * model.time_scale * 2 * np.pi)
        td = tderiv_stack(model, t, 4)
        arc = arc_data(td)
        v1, v2 = arc.sdot[0], arc.sdot[1]
        n2 = np.linalg.norm(v2)
        unit = max(unit, abs(np.linalg.norm(v1) - 1))
        orth = max(orth, abs(v1 @ v2) / max(1.0, n2))
        vdd = max(vdd, abs(second_sderiv_norm(td, arc.sd) - n2) / n2)
    return [_lt("|‖v̇‖ − 1|", unit, 1e-10),
            _lt("|v̇·v̈| / max(1,‖v̈‖)", orth, 1e-10),
            _lt("‖v̈‖ closed form (rel)", vdd, 1e-10)]


def orthogonalizer_quality():
    rng = _rng(9)
    model = _models()["harmonic"]
    violations = 0
    worst_mgs = 0.0
    for t in _sample_times(model, 1, 32, rng):
        res_m = orthogonality_residual(frame_at(model, t, order=4, method="mgs").e)
        res_c = orthogonality_residual(frame_at(model, t, order=4, method="cgs").e)
        worst_mgs = max(worst_mgs, res_m)
        violations += res_m > res_c
    curve = two_circle_curve()
    agree = 0.0
    cond_max = 0.0
    for t in rng.uniform(0, 20, 32):
        frames = {m: frame_at(curve, t, order=4, method=m) for m in ("cgs", "mgs", "gags")}
        cond_max = max(cond_max, np.linalg.cond(np.array(frames["mgs"].arc.sdot)))
        for a, b in (("cgs", "mgs"), ("cgs", "gags"), ("mgs", "gags")):
            agree = max(agree, float(np.abs(frames[a].e - frames[b].e).max()))
    return [Check("t where MGS residual > CGS residual", float(violations), 0.0,
                  violations == 0, "=="),
            _lt("MGS orthogonality residual (4 derivatives)", worst_mgs, 1e-8),
            _lt("condition number of derivative set", cond_max, 1e6),
            _lt("CGS/MGS/GAGS frame agreement", agree, 1e-7)]


def cli_round_trip():
    from .cli import main
    import json

    with tempfile.TemporaryDirectory() as tmp:
        sig = os.path.join(tmp, "sig.csv")
        out = os.path.join(tmp, "out.json")
        code_g = main(["generate", "--model", "balanced", "--phases", "3", "--amp", "1",
                       "--freq", "50", "--rate", "12800", "--cycles", "3", "--out", sig])
        code_a = main(["analyze", sig, "--out", out])
        with open(out) as fh:
            records = json.load(fh)
    norms = [r["omega1_norm"] for r in records if r["record"] == "sample"]
    freq = float(np.mean(norms)) / (2 * np.pi)
    return [Check("generate/analyze exit codes", float(code_g + code_a), 0.0,
                  code_g == 0 and code_a == 0, "=="),
            _lt("|f_recovered − 50 Hz| / 50 Hz", abs(freq - 50) / 50, 1e-3)]


CRITERIA = [
    Criterion("balanced", 1, "balanced constant frequency", ("balanced",), balanced_constant_frequency),
    Criterion("balanced-closed-forms", 2, "balanced frame closed forms", ("balanced",), balanced_closed_forms),
    Criterion("unbalanced", 3, "unbalanced scaling law", ("unbalanced",), unbalanced_scaling_law),
    Criterion("harmonic", 4, "harmonic average", ("harmonic",), harmonic_average),
    Criterion("equivalence", 5, "Darboux definition equivalence", ("darboux",), definition_equivalence),
    Criterion("rotation", 6, "Frenet/rotation consistency", ("darboux",), rotation_consistency),
    Criterion("planarity", 7, "planarity and tangent annihilation", ("darboux",), planarity),
    Criterion("identities", 8, "arc-length derivative identities", ("derivatives",), derivative_identities),
    Criterion("orthogonalizers", 9, "orthogonalizer quality", ("frames",), orthogonalizer_quality),
    Criterion("cli", 10, "generate/analyze round trip", ("cli",), cli_round_trip),
]


def select(only=None) -> list[Criterion]:
    if not only:
        return list(CRITERIA)
    wanted = set(only)
    chosen = [c for c in CRITERIA
              if c.key in wanted or str(c.number) in wanted or wanted & set(c.tags)]
    if not chosen:
        raise KeyError(f"no criterion matches {sorted(wanted)}")
    return chosen


def run(only=None, echo=print) -> bool:
    """Run the selected criteria; return True when every check passes."""
    all_ok = True
    for crit in select(only):
        checks = crit.fn()
        ok = all(c.passed for c in checks)
        all_ok &= ok
        echo(f"[{'PASS' if ok else 'FAIL'}] C{crit.number} {crit.title}")
        for c in checks:
            echo(c.line())
    return all_ok
