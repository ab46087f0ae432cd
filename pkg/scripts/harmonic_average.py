"""Cycle average of Omega_1 for the 200/20/-30 V distorted three-phase preset.

Prints the averaged norm in units of the fundamental for several quadrature
resolutions, next to an adaptive-quadrature value of the closed-form
coefficient and the winding number of the tangent.

    python3 scripts/harmonic_average.py --steps 256 1024 4096
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from geomfreq import oracles
from geomfreq.curves import distorted_three_phase
from geomfreq.darboux import average_bivector


@dataclass
class Config:
    freq: float = 50.0
    steps: tuple = (256, 1024, 4096)


def tangent_winding(model, period: float, samples: int = 20000) -> float:
    """Turns of v' in the plane orthogonal to (1,1,1) over one period."""
    ts = np.linspace(0.0, period, samples + 1)
    v1 = model.eval(ts, 1)
    x = np.array([1.0, -1.0, 0.0]) / math.sqrt(2)
    y = np.array([1.0, 1.0, -2.0]) / math.sqrt(6)
    ang = np.unwrap(np.arctan2(v1 @ y, v1 @ x))
    return (ang[-1] - ang[0]) / (2 * math.pi)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--freq", type=float, default=Config.freq)
    ap.add_argument("--steps", type=int, nargs="+", default=list(Config.steps))
    args = ap.parse_args(argv)
    cfg = Config(args.freq, tuple(args.steps))

    omega = 2 * math.pi * cfg.freq
    period = 1.0 / cfg.freq
    model = distorted_three_phase(omega)

    print(f"{'steps':>6}  {'|mean Omega_1| / w':>20}  {'mean |Omega_1| / w':>20}")
    for n in cfg.steps:
        avg = average_bivector(model, 0.0, period, n)
        print(f"{n:6d}  {avg.mean_norm / omega:20.12f}  {avg.norm_mean / omega:20.12f}")

    coef, _ = quad(lambda t: oracles.distorted_omega1_coef(omega, t), 0.0, period,
                   epsabs=0, epsrel=1e-12, limit=200)
    print(f"closed-form coefficient, adaptive quadrature: "
          f"{coef / period * math.sqrt(3) / omega:.12f} w")
    print(f"tangent winding number per cycle: {tangent_winding(model, period):.6f}")


if __name__ == "__main__":
    main()
