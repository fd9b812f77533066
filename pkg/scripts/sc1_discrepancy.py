"""Compare the literal Mobius-type parameter formula with the Wigner pushforward.

For a family of one-mode shears and random symplectic maps, prints the
literal M_S, the pushforward M_S, and the overlap of each with the
wavefunction produced by the metaplectic integral operator.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from qblob.errors import SingularityError
from qblob.gaussian import GaussianState, fiducial, metaplectic_apply_numeric, metaplectic_param_action, sample, sc1_literal
from qblob.symplectic import random_symplectic


@dataclass
class Config:
    shears: tuple = (0.25, 0.5, 1.0, 2.0)
    random_maps: int = 6
    seed: int = 0
    x_half_width: float = 14.0
    nodes: int = 1401


def overlap_with_oracle(S, state, M, cfg):
    x = np.linspace(-cfg.x_half_width, cfg.x_half_width, cfg.nodes)
    exact = metaplectic_apply_numeric(S, state, x)
    if M.real <= 0:
        return float("nan")
    cand = GaussianState(n=1, hbar=state.hbar, X=[[M.real]], Y=[[M.imag]], z0=S @ state.z0)
    return exact.overlap(sample(cand, x))


def main(cfg):
    state = fiducial(1)
    cases = [(f"shear b={b}", np.array([[1.0, b], [0.0, 1.0]])) for b in cfg.shears]
    rng = np.random.default_rng(cfg.seed)
    for k in range(cfg.random_maps):
        S = random_symplectic(1, int(rng.integers(2**31)), spread=0.8)
        if abs(S[0, 1]) > 0.1:
            cases.append((f"random #{k}", S))

    print(f"{'map':>14} {'literal':>22} {'pushforward':>22} {'ovl lit':>9} {'ovl push':>9}")
    for name, S in cases:
        push = complex(metaplectic_param_action(S, state).M[0, 0])
        try:
            lit = complex(sc1_literal(S, state.X, state.Y)[0, 0])
        except SingularityError:
            lit = complex("nan")
        print(
            f"{name:>14} {lit:>22.6f} {push:>22.6f} "
            f"{overlap_with_oracle(S, state, lit, cfg):9.6f} {overlap_with_oracle(S, state, push, cfg):9.6f}"
        )


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--random-maps", type=int, default=Config.random_maps)
    args = ap.parse_args()
    main(Config(seed=args.seed, random_maps=args.random_maps))
