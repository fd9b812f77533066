"""Distribution of the Fermi-ellipsoid capacity over random squeezed states.

Reports min / median / max of c(W_F) / (pi hbar) per mode count together
with the theoretical range [1, n].
"""

import argparse
from dataclasses import dataclass

import numpy as np

from qblob.fermi import fermi_capacity
from qblob.sampling import random_state


@dataclass
class Config:
    n_max: int = 5
    samples: int = 500
    seed: int = 0
    x_range: tuple = (0.2, 5.0)


def main(cfg):
    rng = np.random.default_rng(cfg.seed)
    print(f"{'n':>3} {'min':>8} {'median':>8} {'max':>8}  range")
    for n in range(1, cfg.n_max + 1):
        ratios = np.array(
            [fermi_capacity(random_state(n, rng, x_range=cfg.x_range)) / np.pi for _ in range(cfg.samples)]
        )
        print(f"{n:3d} {ratios.min():8.4f} {np.median(ratios):8.4f} {ratios.max():8.4f}  [1, {n}]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    main(Config(n_max=args.n_max, samples=args.samples, seed=args.seed))
