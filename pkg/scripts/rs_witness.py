"""How often do random covariances pass Robertson-Schrodinger but fail the PSD test?

Samples SPD covariance matrices, tabulates the four pass/fail combinations,
and prints one witness of the gap between the two conditions.
"""

import argparse
from collections import Counter
from dataclasses import dataclass

import numpy as np

from qblob.uncertainty import CovarianceMatrix, capacity_condition, random_spd, rs_check, sigma_psd_check


@dataclass
class Config:
    n: int = 2
    samples: int = 5000
    cond: float = 30.0
    seed: int = 0


def main(cfg):
    rng = np.random.default_rng(cfg.seed)
    counts = Counter()
    witness = None
    disagreements = 0
    for _ in range(cfg.samples):
        cov = CovarianceMatrix(cfg.n, 1.0, random_spd(2 * cfg.n, rng, cond=cfg.cond))
        rs = all(r.passed for r in rs_check(cov))
        psd, _ = sigma_psd_check(cov)
        disagreements += psd != capacity_condition(cov)[0]
        counts[(rs, psd)] += 1
        if rs and not psd and witness is None:
            witness = cov
    for (rs, psd), c in sorted(counts.items()):
        print(f"RS {'pass' if rs else 'fail'}  PSD {'pass' if psd else 'fail'}: {c}")
    print(f"PSD vs capacity disagreements: {disagreements}")
    if witness is not None:
        np.set_printoptions(precision=4, suppress=True)
        print("witness Sigma =")
        print(witness.Sigma)
        print("min eigenvalue of Sigma + (i hbar/2) J:", sigma_psd_check(witness)[1])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    main(Config(n=args.n, samples=args.samples, seed=args.seed))
