"""Global phase of free-particle spreading: integral oracle vs the action integral.

The parameters (X_t, Y_t) from the exact flow agree with the integral
operator, but the carried phase (the action integral, identically zero for
quadratic Hamiltonians) misses the -arctan(t)/2 factor of the exact solution.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from qblob.dynamics import QuadraticHamiltonian, evolve_state, flow
from qblob.gaussian import fiducial, metaplectic_apply_numeric, sample


@dataclass
class Config:
    t_max: float = 4.0
    steps: int = 9
    hbar: float = 1.0
    x_half_width: float = 30.0
    nodes: int = 2401


def main(cfg):
    H = QuadraticHamiltonian(n=1, hbar=cfg.hbar, R=np.diag([0.0, 1.0]))
    psi0 = fiducial(1, cfg.hbar)
    x = np.linspace(-cfg.x_half_width, cfg.x_half_width, cfg.nodes)
    print(f"{'t':>6} {'|overlap|':>12} {'phase':>12} {'-atan(t)/2':>12} {'gamma_t':>10}")
    for t in np.linspace(cfg.t_max / cfg.steps, cfg.t_max, cfg.steps):
        r = evolve_state(psi0, H, t)
        ours = sample(r.state, x)
        exact = metaplectic_apply_numeric(flow(H, t), psi0, x)
        ip = np.trapezoid(np.conj(ours.values) * exact.values, x)
        print(f"{t:6.3f} {abs(ip):12.9f} {np.angle(ip):12.8f} {-0.5 * np.arctan(t):12.8f} {r.gamma_t:10.2e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-max", type=float, default=Config.t_max)
    ap.add_argument("--hbar", type=float, default=Config.hbar)
    args = ap.parse_args()
    main(Config(t_max=args.t_max, hbar=args.hbar))
