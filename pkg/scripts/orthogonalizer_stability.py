"""Loss of orthogonality of CGS, MGS and GAGS on nearly dependent inputs.

Sweeps the Lauchli parameter eps and prints max |e_i . e_j| for each method,
then repeats the comparison on the derivative frames of the two-circle curve.

    python3 scripts/orthogonalizer_stability.py
"""
import argparse
from dataclasses import dataclass

import numpy as np

from geomfreq.curves import two_circle_curve
from geomfreq.frames import ORTHOGONALIZERS, frame_at, orthogonality_residual

METHODS = ("cgs", "mgs", "gags")


@dataclass
class Config:
    eps_exponents: tuple = (2, 4, 6, 7, 8, 10)
    curve_samples: int = 200
    seed: int = 0


def lauchli(eps: float) -> list:
    return [np.array([1.0, eps, 0, 0]), np.array([1.0, 0, eps, 0]), np.array([1.0, 0, 0, eps])]


def residual(vs, method: str) -> float:
    u = ORTHOGONALIZERS[method](vs, rank_tol=0.0)
    return orthogonality_residual(np.array([x / np.linalg.norm(x) for x in u]))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=Config.curve_samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args(argv)
    cfg = Config(curve_samples=args.samples, seed=args.seed)

    print("Lauchli inputs")
    print(f"{'eps':>8}" + "".join(f"{m:>12}" for m in METHODS))
    for p in cfg.eps_exponents:
        vs = lauchli(10.0**-p)
        print(f"{'1e-%d' % p:>8}" + "".join(f"{residual(vs, m):12.2e}" for m in METHODS))

    ts = np.random.default_rng(cfg.seed).uniform(0, 20, cfg.curve_samples)
    curve = two_circle_curve()
    worst = {m: max(orthogonality_residual(frame_at(curve, t, method=m).e) for t in ts)
             for m in METHODS}
    print(f"\ntwo-circle curve, {cfg.curve_samples} instants, 4 derivatives")
    for m in METHODS:
        print(f"  {m:5s} worst residual {worst[m]:.2e}")


if __name__ == "__main__":
    main()
