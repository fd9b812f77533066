"""Release criteria as runnable checks.

Each ``criterion_*`` function draws its own seeded inputs, measures the
quantity it is about, and returns a :class:`CriterionResult`. The pytest
module and the ``selftest`` subcommand both run these.
"""

import functools
import inspect
import time
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from ._linalg import symmetrize
from .blobs import (
    ball,
    blob_from_state,
    blob_transform,
    blob_volume,
    projection_area,
    section_area,
    state_from_blob,
)
from .dynamics import QuadraticHamiltonian, evolve_blob, evolve_state, flow, schrodinger_residual
from .errors import NumericalError
from .fermi import (
    fermi_capacity,
    fermi_contains_blob,
    fermi_ellipsoid,
    fermi_normal_form,
    fermi_operator_residual,
    harmonic_fermi_residual,
    hermite_fermi_residual,
)
from .gaussian import (
    GaussianState,
    fiducial,
    metaplectic_apply_numeric,
    metaplectic_param_action,
    sample,
    sc1_literal,
)
from .sampling import random_blob, random_hamiltonian, random_state
from .symplectic import (
    polar_S_from_G,
    pre_iwasawa,
    random_symplectic,
    standard_J,
)
from .uncertainty import (
    CovarianceMatrix,
    capacity_axiom_suite,
    capacity_condition,
    capacity_ellipsoid,
    covariance_from_state,
    find_rs_psd_witness,
    random_spd,
    rs_check,
    sigma_psd_check,
)
from .wigner import s_from_xy, wigner_gaussian, wigner_numeric


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        parts = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{status}] {self.number:2d}. {self.name} ({parts}) [{self.seconds:.2f}s]"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    return wrapper


WIGNER_BOX = 6.0
WIGNER_RES = 129


def _wave_nodes(h, lo, hi):
    """Nodes -WIGNER_BOX + k h covering [lo, hi] and the Wigner box."""
    kmin = int(np.floor((min(lo, -WIGNER_BOX) + WIGNER_BOX) / h))
    kmax = int(np.ceil((max(hi, WIGNER_BOX) + WIGNER_BOX) / h))
    return -WIGNER_BOX + h * np.arange(kmin, kmax + 1)


def _wigner_gap(state_or_grid, closed, hbar, res=WIGNER_RES):
    xs = np.linspace(-WIGNER_BOX, WIGNER_BOX, res)
    num = wigner_numeric(state_or_grid, xs, x=xs)
    exact = closed.on_grid(num.x, xs)
    return float(np.max(np.abs(num.values - exact)) * np.pi * hbar), num.max_imag


@_timed
def criterion_wigner_closed_form(seed=1, count=20):
    """Closed-form Gaussian Wigner function vs direct quadrature, n = 1."""
    rng = np.random.default_rng(seed)
    h = 2 * WIGNER_BOX / (WIGNER_RES - 1) / 2
    worst = 0.0
    for _ in range(count):
        s = random_state(1, rng, x_range=(0.5, 3.0), y_max=2.0, z_max=2.0)
        half = 11.0 * np.sqrt(s.hbar / s.X[0, 0])
        grid = sample(s, _wave_nodes(h, s.x0[0] - half, s.x0[0] + half))
        gap, _ = _wigner_gap(grid, wigner_gaussian(s), s.hbar)
        worst = max(worst, gap)
    return CriterionResult(1, "Wigner closed form vs quadrature", worst <= 1e-6, {"max_rel_err": worst})


@_timed
def criterion_blob_capacity(seed=2, count=100):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(count):
        n = 1 + k % 4
        b = random_blob(n, rng, spread=1.0)
        c = capacity_ellipsoid(b.ellipsoid())
        worst = max(worst, abs(c - np.pi * b.hbar) / (np.pi * b.hbar))
    return CriterionResult(2, "blob capacity equals pi hbar", worst <= 1e-9, {"max_rel_err": worst})


@_timed
def criterion_bijection(seed=3, count=100):
    rng = np.random.default_rng(seed)
    worst_rt = worst_rec = worst_rot = 0.0
    for k in range(count):
        n = 1 + k % 3
        s = random_state(n, rng)
        back = state_from_blob(blob_from_state(s))
        worst_rt = max(
            worst_rt,
            float(np.max(np.abs(back.X - s.X))),
            float(np.max(np.abs(back.Y - s.Y))),
            float(np.max(np.abs(back.z0 - s.z0))),
        )
        T = polar_S_from_G(blob_from_state(s).G)
        f = pre_iwasawa(T)
        worst_rec = max(worst_rec, float(np.max(np.abs(f.reassemble() - T))))
        U = f.U
        rot = max(
            float(np.max(np.abs(U.T @ U - np.eye(2 * n)))),
            float(np.max(np.abs(U.T @ standard_J(n) @ U - standard_J(n)))),
        )
        worst_rot = max(worst_rot, rot)
    ok = worst_rt <= 1e-9 and worst_rec <= 1e-10 and worst_rot <= 1e-10
    return CriterionResult(
        3,
        "state -> blob -> state roundtrip",
        ok,
        {"roundtrip": worst_rt, "reassembly": worst_rec, "rotation": worst_rot},
    )


def _evolution_sample(rng):
    """Random one-mode (state, H, t) whose evolved state suits the integral oracle."""
    while True:
        s = random_state(1, rng, x_range=(0.5, 2.0), y_max=1.0, z_max=1.5)
        H = random_hamiltonian(1, rng, scale=1.0)
        t = float(rng.uniform(0.0, 2.0))
        S = flow(H, t)
        if abs(S[0, 1]) < 0.1:
            continue
        r = evolve_state(s, H, t)
        if 0.2 <= r.X_t[0, 0] <= 5.0 and abs(r.Y_t[0, 0]) <= 3.0 and np.max(np.abs(r.z_t)) <= 4.0:
            return s, H, t, r


@_timed
def criterion_dynamics_diagram(seed=4, count=20):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(count):
        n = 1 + k % 3
        s = random_state(n, rng)
        H = random_hamiltonian(n, rng, scale=1.0)
        t = float(rng.uniform(0.0, 2.0))
        b1 = blob_from_state(evolve_state(s, H, t).state)
        b2 = evolve_blob(blob_from_state(s), H, t)
        worst = max(worst, float(np.max(np.abs(b1.G - b2.G))), float(np.max(np.abs(b1.center - b2.center))))

    h = 2 * WIGNER_BOX / 64 / 2
    wig = 0.0
    for _ in range(count):
        s, H, t, r = _evolution_sample(rng)
        xt, Xt = r.z_t[0], r.X_t[0, 0]
        half = 11.0 * np.sqrt(s.hbar / Xt)
        nodes = _wave_nodes(h, xt - half, xt + half)
        grid = metaplectic_apply_numeric(r.S_t, s, nodes)
        gap, _ = _wigner_gap(grid, wigner_gaussian(r.state), s.hbar, res=65)
        wig = max(wig, gap)
    ok = worst <= 1e-10 and wig <= 1e-4
    return CriterionResult(4, "dynamics commuting diagram", ok, {"matrix_gap": worst, "wigner_gap": wig})


@_timed
def criterion_schrodinger(times=(0.5, 1.0, 2.0)):
    x = np.linspace(-8.0, 8.0, 1025)
    s = fiducial(1)
    free = QuadraticHamiltonian.kinetic_plus_potential(1.0, [[0.0]])
    osc = QuadraticHamiltonian.kinetic_plus_potential(1.0, [[1.0]])
    worst = 0.0
    for t in times:
        for H in (free, osc):
            d, _ = schrodinger_residual(s, H, t, x)
            worst = max(worst, d)
    return CriterionResult(5, "Schrodinger residual", worst <= 1e-5, {"max_defect": worst})


@_timed
def criterion_sc1_regression():
    J = standard_J(1)
    M = np.array([[2.0]])
    lit_J = sc1_literal(J, M, np.zeros((1, 1)))[0, 0]
    auth_J = metaplectic_param_action(J, GaussianState(1, 1.0, M, [[0.0]], [0, 0])).M[0, 0]
    shear = np.array([[1.0, 1.0], [0.0, 1.0]])
    lit_sh = sc1_literal(shear, np.eye(1), np.zeros((1, 1)))[0, 0]
    auth_sh = metaplectic_param_action(shear, fiducial(1)).M[0, 0]
    agree_J = abs(lit_J - 0.5) <= 1e-12 and abs(auth_J - 0.5) <= 1e-12
    differ = abs(lit_sh - (1 + 1j)) <= 1e-12 and abs(auth_sh - (1 - 1j) / 2) <= 1e-12
    return CriterionResult(
        6,
        "literal Mobius formula regression",
        bool(agree_J and differ),
        {"J_literal": complex(lit_J), "shear_literal": complex(lit_sh), "shear_true": complex(auth_sh)},
    )


@_timed
def criterion_action_phase(seed=7, count=20):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(count):
        n = 1 + k % 3
        s = random_state(n, rng)
        H = random_hamiltonian(n, rng, scale=0.5)
        t = float(rng.uniform(0.0, 2.0))
        worst = max(worst, abs(evolve_state(s, H, t, quadrature_nodes=64).gamma_t))
    return CriterionResult(7, "action phase vanishes", worst <= 1e-12, {"max_abs_gamma": worst})


def _random_covariances(rng, count, hbar=1.0):
    out = []
    for k in range(count):
        n = 1 + k % 3
        if k % 2:
            Sigma = hbar * random_spd(2 * n, rng, cond=50.0)
        else:
            S = random_symplectic(n, int(rng.integers(2**31)), 0.7)
            nu = hbar * rng.uniform(0.25, 1.5, n)
            Sigma = S @ np.diag(np.concatenate([nu, nu])) @ S.T
        out.append(CovarianceMatrix(n, hbar, symmetrize(Sigma)))
    return out


@_timed
def criterion_uncertainty_equivalence(seed=8, count=200):
    rng = np.random.default_rng(seed)
    agree = excluded = 0
    n_pass = 0
    implication_ok = True
    for cov in _random_covariances(rng, count):
        psd_ok, m = sigma_psd_check(cov)
        cap_ok, _ = capacity_condition(cov)
        if psd_ok:
            implication_ok &= all(r.passed for r in rs_check(cov))
        if abs(m) <= 1e-9 * cov.hbar:
            excluded += 1
            continue
        agree += psd_ok == cap_ok
        n_pass += psd_ok
    compared = count - excluded
    witness = find_rs_psd_witness(seed)
    ok = agree == compared and witness is not None and implication_ok
    return CriterionResult(
        8,
        "PSD test <=> capacity test",
        ok,
        {"agreement": f"{agree}/{compared}", "psd_pass": n_pass, "witness": witness is not None},
    )


@_timed
def criterion_saturation(seed=9, count=100):
    rng = np.random.default_rng(seed)
    worst_eig = 0.0
    for k in range(count):
        s = random_state(1 + k % 3, rng)
        worst_eig = max(worst_eig, abs(sigma_psd_check(covariance_from_state(s))[1]))
    worst_rs = 0.0
    for k in range(count):
        n = 1 + k % 3
        if n == 1:
            s = random_state(1, rng)
        else:
            X = np.diag(rng.uniform(0.3, 3.0, n))
            s = GaussianState(n, 1.0, X, np.zeros((n, n)), rng.uniform(-2, 2, 2 * n))
        worst_rs = max(worst_rs, max(abs(r.slack) for r in rs_check(covariance_from_state(s))))
    fid = covariance_from_state(fiducial(3))
    prod = [float(np.sqrt(fid.Sigma[j, j] * fid.Sigma[3 + j, 3 + j])) for j in range(3)]
    fid_ok = all(abs(v - 0.5) <= 1e-15 for v in prod)
    ok = worst_eig <= 1e-9 and worst_rs <= 1e-12 and fid_ok
    return CriterionResult(9, "pure states saturate", ok, {"max_abs_min_eig": worst_eig, "max_rs_slack": worst_rs})


def monte_carlo_volume(blob, samples, rng):
    """Hit-or-miss volume estimate in the bounding box of the blob."""
    half = np.sqrt(blob.hbar * np.diag(np.linalg.inv(blob.G)))
    pts = blob.center + rng.uniform(-1.0, 1.0, (samples, half.size)) * half
    frac = np.mean(blob.contains(pts))
    return float(frac * np.prod(2 * half))


@_timed
def criterion_volume(seed=10, samples=1_000_000):
    worst = 0.0
    for n in range(1, 7):
        ratio = (2 * np.pi) ** n / blob_volume(n)
        worst = max(worst, abs(ratio - factorial(n) * 2**n) / (factorial(n) * 2**n))
    forty_eight = (2 * np.pi) ** 3 / blob_volume(3)
    rng = np.random.default_rng(seed)
    mc = 0.0
    for n in (1, 2):
        b = random_blob(n, rng, spread=0.5)
        est = monte_carlo_volume(b, samples, rng)
        mc = max(mc, abs(est - blob_volume(n)) / blob_volume(n))
    ok = worst <= 1e-12 and abs(forty_eight - 48) <= 48e-12 and mc <= 0.01
    return CriterionResult(10, "blob volume", ok, {"ratio_err": worst, "n3_ratio": forty_eight, "mc_rel_err": mc})


@_timed
def criterion_fermi(seed=11, count=100):
    rng = np.random.default_rng(seed)
    ok = True
    mfs = 0.0
    for k in range(count):
        n = 1 + k % 3
        s = random_state(n, rng)
        try:
            e = fermi_ellipsoid(s, tol=1e-9)
            c = fermi_capacity(s)
            fermi_contains_blob(s)
        except NumericalError:
            ok = False
            continue
        Sx = s_from_xy(s.X, s.Y)
        Z = np.zeros((n, n))
        mfs = max(mfs, float(np.max(np.abs(Sx.T @ np.block([[s.X, Z], [Z, s.X]]) @ Sx / np.trace(s.X) - e.M_F))))
        ok &= np.pi * s.hbar * (1 - 1e-12) <= c <= n * np.pi * s.hbar * (1 + 1e-12)
        if n == 1:
            ok &= abs(c - np.pi * s.hbar) <= 1e-9 * np.pi
        lam, tr = fermi_normal_form(s)
        ok &= bool(np.all(lam / tr <= 1.0))
    fid_ok = all(abs(fermi_capacity(fiducial(n)) - n * np.pi) <= 1e-12 * n for n in (1, 2, 3))

    x = np.linspace(-8.0, 8.0, 1025)
    res = max(
        harmonic_fermi_residual(fiducial(1), x),
        hermite_fermi_residual(x),
        fermi_operator_residual(GaussianState(1, 1.0, [[2.0]], [[1.0]], [0.0, 0.0]), x),
        fermi_operator_residual(random_state(1, rng), x),
    )
    ok = bool(ok and fid_ok and mfs <= 1e-9 and res <= 1e-8)
    return CriterionResult(11, "Fermi ellipsoid suite", ok, {"mfs_err": mfs, "max_residual": res})


@_timed
def criterion_capacity_axioms(seed=12):
    rep = capacity_axiom_suite(seed, trials=50)
    ok = all(v["passed"] for v in rep.values())
    measured = {k: next(val for key, val in v.items() if key != "passed") for k, v in rep.items()}
    return CriterionResult(12, "capacity axioms on ellipsoids", ok, measured)


@_timed
def criterion_sections(seed=13, count=100):
    rng = np.random.default_rng(seed)
    ineq_ok = True
    n1 = 0.0
    for k in range(count):
        n = 1 + k % 3
        b = random_blob(n, rng, spread=1.0)
        for j in range(1, n + 1):
            sa, pa = section_area(b, j), projection_area(b, j)
            ineq_ok &= sa <= np.pi * b.hbar * (1 + 1e-9) and pa >= np.pi * b.hbar * (1 - 1e-9)
            if n == 1:
                n1 = max(n1, abs(sa - np.pi) / np.pi, abs(pa - np.pi) / np.pi)
    I = np.eye(2)
    C = np.array([[0.0, 1.0], [1.0, 0.0]])
    S = np.block([[I, np.zeros((2, 2))], [C, I]])
    cb = blob_transform(np.linalg.inv(S), ball(2))
    cx_sec, cx_proj = section_area(cb, 1), projection_area(cb, 1)
    cx_ok = abs(cx_sec - np.pi / np.sqrt(2)) <= 1e-12 and abs(cx_proj - np.pi * np.sqrt(2)) <= 1e-12
    ok = bool(ineq_ok and n1 <= 1e-9 and cx_ok)
    return CriterionResult(
        13, "section <= pi hbar <= projection", ok, {"n1_err": n1, "cx_section": cx_sec, "cx_projection": cx_proj}
    )


ALL_CRITERIA = [
    criterion_wigner_closed_form,
    criterion_blob_capacity,
    criterion_bijection,
    criterion_dynamics_diagram,
    criterion_schrodinger,
    criterion_sc1_regression,
    criterion_action_phase,
    criterion_uncertainty_equivalence,
    criterion_saturation,
    criterion_volume,
    criterion_fermi,
    criterion_capacity_axioms,
    criterion_sections,
]

# the selftest subset: everything except the Monte-Carlo volume estimate
FAST_CRITERIA = [c for c in ALL_CRITERIA if c is not criterion_volume]


def run(criteria=None, seed_offset=0):
    """Run criteria in order; ``seed_offset`` shifts every criterion's default seed."""
    results = []
    for crit in criteria or ALL_CRITERIA:
        params = inspect.signature(crit).parameters
        kwargs = {}
        if seed_offset and "seed" in params:
            kwargs["seed"] = params["seed"].default + seed_offset
        results.append(crit(**kwargs))
    return results
