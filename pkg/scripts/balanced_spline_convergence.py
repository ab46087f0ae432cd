"""Spline-path geometric frequency error against samples per cycle.

Samples a balanced three-phase signal, fits the quintic spline and reports
the worst relative deviation of |Omega_1| from w over the interior samples.

    python3 scripts/balanced_spline_convergence.py --per-cycle 32 64 128 256
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from geomfreq.curves import SampledSignal, balanced_sinusoid, fit_sampled
from geomfreq.darboux import geometric_frequency_series


@dataclass
class Config:
    phases: int = 3
    freq: float = 50.0
    cycles: int = 3
    per_cycle: tuple = (32, 64, 128, 256)


def worst_error(cfg: Config, per_cycle: int) -> float:
    omega = 2 * math.pi * cfg.freq
    model = balanced_sinusoid(cfg.phases, 1.0, omega)
    ts = np.arange(per_cycle * cfg.cycles) / (per_cycle * cfg.freq)
    spline = fit_sampled(SampledSignal(ts, model.eval(ts, 0)))
    series = geometric_frequency_series(spline, ts[spline.interior_mask()])
    return max(abs(s.omega1_norm - omega) / omega for s in series)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--phases", type=int, default=Config.phases)
    ap.add_argument("--per-cycle", type=int, nargs="+", default=list(Config.per_cycle))
    args = ap.parse_args(argv)
    cfg = Config(phases=args.phases, per_cycle=tuple(args.per_cycle))
    prev = None
    for n in cfg.per_cycle:
        err = worst_error(cfg, n)
        rate = "" if prev is None else f"  ratio {prev / err:6.1f}"
        print(f"{n:5d} samples/cycle  max rel error {err:.3e}{rate}")
        prev = err


if __name__ == "__main__":
    main()
