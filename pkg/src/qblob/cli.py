"""Command-line front end.

Exit status: 0 success, 1 invalid input, 2 numerical failure, 3 I/O failure.
The environment variable QBLOB_TOL overrides the certification tolerance
used for the exit-2 checks.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import io as qio
from .blobs import blob_from_state, section_boundary, state_from_blob
from .dynamics import evolve_state
from .errors import NumericalError
from .fermi import fermi_capacity, fermi_contains_blob, fermi_ellipsoid, fermi_normal_form
from .gaussian import sample
from .uncertainty import (
    capacity_condition,
    capacity_ellipsoid,
    covariance_from_state,
    rs_check,
    sigma_psd_check,
)
from .wigner import PhaseSpaceGrid, wigner_gaussian, wigner_numeric

DEFAULT_TOL = 1e-9
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


class InputError(ValueError):
    pass


def env_tolerance():
    raw = os.environ.get("QBLOB_TOL")
    if raw is None:
        return DEFAULT_TOL, False
    try:
        tol = float(raw)
    except ValueError as exc:
        raise InputError(f"QBLOB_TOL is not a number: {raw!r}") from exc
    if not tol > 0:
        raise InputError("QBLOB_TOL must be positive")
    return tol, True


def parse_range(text):
    """'lo:hi:num' -> (lo, hi, num)."""
    try:
        lo, hi, num = text.split(":")
        lo, hi, num = float(lo), float(hi), int(num)
    except ValueError as exc:
        raise InputError(f"range must look like lo:hi:num, got {text!r}") from exc
    if not lo < hi:
        raise InputError(f"range {text!r} is not increasing")
    if num < 3:
        raise InputError(f"range {text!r} needs at least 3 points")
    return lo, hi, num


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    output: str = None
    t: float = 1.0
    samples: int = 11
    x_range: tuple = (-4.0, 4.0, 129)
    p_range: tuple = (-4.0, 4.0, 129)
    numeric: bool = False
    mode: int = 1
    points: int = 256
    seed: int = 0
    hbar: float = None
    tol: float = DEFAULT_TOL

    def validate(self):
        if not math.isfinite(self.t):
            raise InputError("t must be finite")
        if self.samples < 1:
            raise InputError("samples must be at least 1")
        if self.points < 3:
            raise InputError("points must be at least 3")
        for r in (self.x_range, self.p_range):
            if not (r[0] < r[1] and r[2] >= 3):
                raise InputError(f"bad grid range {r}")
        if self.hbar is not None and not self.hbar > 0:
            raise InputError("hbar must be positive")


def _load(cfg, path):
    d = qio.load_json(path)
    if not isinstance(d, dict):
        raise InputError(f"{path}: expected a JSON object")
    if cfg.hbar is not None:
        d = dict(d, hbar=cfg.hbar)
    return d


def _kind(d):
    for key, kind in (("G", "blob"), ("X", "state"), ("Sigma", "covariance"), ("shape", "ellipsoid"), ("R", "hamiltonian")):
        if key in d:
            return kind
    raise InputError("cannot tell what the JSON object describes")


def _load_blob_or_state(cfg, path):
    d = _load(cfg, path)
    kind = _kind(d)
    if kind == "blob":
        return qio.blob_from_dict(d)
    if kind == "state":
        return blob_from_state(qio.state_from_dict(d))
    raise InputError(f"{path}: expected a blob or a state")


def cmd_blob_from_state(cfg):
    d = _load(cfg, cfg.inputs[0])
    return qio.blob_to_dict(blob_from_state(qio.state_from_dict(d)))


def cmd_state_from_blob(cfg):
    blob = qio.blob_from_dict(_load(cfg, cfg.inputs[0]))
    return qio.state_to_dict(state_from_blob(blob, tol=cfg.tol))


def cmd_capacity(cfg):
    d = _load(cfg, cfg.inputs[0])
    kind = _kind(d)
    if kind == "ellipsoid":
        e = qio.ellipsoid_from_dict(d)
    elif kind in ("blob", "state"):
        e = _load_blob_or_state(cfg, cfg.inputs[0]).ellipsoid()
    else:
        raise InputError("capacity takes a blob, state or ellipsoid")
    c = capacity_ellipsoid(e)
    return {"capacity": c, "hbar": e.hbar, "capacity_over_pi_hbar": c / (math.pi * e.hbar)}


def cmd_check(cfg):
    d = _load(cfg, cfg.inputs[0])
    kind = _kind(d)
    if kind == "covariance":
        cov = qio.covariance_from_dict(d)
    elif kind == "state":
        cov = covariance_from_state(qio.state_from_dict(d))
    else:
        raise InputError("check takes a state or a covariance matrix")
    psd, m = sigma_psd_check(cov)
    cap_ok, c = capacity_condition(cov)
    return {
        "rs": [
            {"mode": r.mode, "lhs": r.lhs, "rhs": r.rhs, "slack": r.slack, "pass": bool(r.passed)}
            for r in rs_check(cov)
        ],
        "sigma_psd": {"pass": bool(psd), "min_eig": m},
        "capacity": {"value": c, "pass": bool(cap_ok)},
    }


def cmd_evolve(cfg):
    state = qio.state_from_dict(_load(cfg, cfg.inputs[0]))
    ham = qio.hamiltonian_from_dict(_load(cfg, cfg.inputs[1]))
    if state.hbar != ham.hbar:
        raise InputError(f"state hbar {state.hbar} differs from Hamiltonian hbar {ham.hbar}")
    times = [cfg.t] if cfg.samples == 1 else np.linspace(0.0, cfg.t, cfg.samples)
    lines = []
    for t in times:
        r = evolve_state(state, ham, float(t))
        if r.drift > cfg.tol * max(1.0, np.linalg.norm(r.S_t, 2) ** 2):
            raise NumericalError(f"flow at t={t} drifted off Sp(2n) by {r.drift:.3e}")
        G = blob_from_state(r.state).G
        lines.append(
            {
                "t": float(t),
                "z_t": r.z_t.tolist(),
                "X_t": r.X_t.tolist(),
                "Y_t": r.Y_t.tolist(),
                "gamma_t": r.gamma_t,
                "G_t": G.tolist(),
            }
        )
    return lines


def cmd_fermi(cfg):
    state = qio.state_from_dict(_load(cfg, cfg.inputs[0]))
    e = fermi_ellipsoid(state, tol=cfg.tol)
    lam, tr = fermi_normal_form(state)
    c = fermi_capacity(state, tol=cfg.tol)
    return {
        "M_F": e.M_F.tolist(),
        "capacity": c,
        "normal_form_lambdas": lam.tolist(),
        "trace_X": tr,
        "bounds_ok": bool(fermi_contains_blob(state) and math.pi * state.hbar * (1 - cfg.tol) <= c),
    }


def cmd_wigner(cfg, out):
    state = qio.state_from_dict(_load(cfg, cfg.inputs[0]))
    if state.n != 1:
        raise InputError("wigner grids are emitted for one mode only")
    x = np.linspace(*cfg.x_range)
    p = np.linspace(*cfg.p_range)
    if cfg.numeric:
        h = x[1] - x[0]
        half = 12.0 * math.sqrt(state.hbar / np.linalg.eigvalsh(state.X)[0])
        k_lo = math.floor((min(x[0], state.x0[0] - half) - x[0]) / h)
        k_hi = math.ceil((max(x[-1], state.x0[0] + half) - x[0]) / h)
        nodes = x[0] + h * np.arange(k_lo, k_hi + 1)
        grid = wigner_numeric(sample(state, nodes), p, x=x)
    else:
        W = wigner_gaussian(state)
        grid = PhaseSpaceGrid(x=x, p=p, values=W.on_grid(x, p), hbar=state.hbar)
    qio.write_phase_space_csv(grid, out)


def cmd_ellipse(cfg, out):
    blob = _load_blob_or_state(cfg, cfg.inputs[0])
    pts = section_boundary(blob, cfg.mode, cfg.points)
    out.write("x,p\n")
    for x, p in pts:
        out.write(f"{float(x)!r},{float(p)!r}\n")


def cmd_selftest(cfg):
    from . import acceptance

    tol, overridden = env_tolerance()
    print(f"# qblob selftest seed={cfg.seed} cert_tol={tol:g}" + (" (QBLOB_TOL override)" if overridden else ""))
    results = acceptance.run(acceptance.FAST_CRITERIA, seed_offset=cfg.seed)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"# {len(results) - len(failed)}/{len(results)} passed")
    return EXIT_NUMERIC if failed else EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input validation failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _join_ranges(argv):
    """Glue '--x -4:4:129' into '--x=-4:4:129' so argparse does not read it as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--x", "--p"):
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def build_parser():
    p = _Parser(prog="qblob", description="Squeezed coherent states and quantum blobs.")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--hbar", type=float, help="override hbar of every input file")
    # the shared flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--hbar", type=float, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    for name, nargs, help_ in (
        ("blob-from-state", 1, "blob of a state JSON"),
        ("state-from-blob", 1, "state of a blob JSON"),
        ("capacity", 1, "symplectic capacity of a blob, state or ellipsoid"),
        ("check", 1, "uncertainty report for a state or covariance"),
        ("fermi", 1, "Fermi ellipsoid of a state"),
    ):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("inputs", nargs=nargs)

    sp = sub.add_parser("evolve", help="trajectory under a quadratic Hamiltonian (JSON lines)", parents=[common])
    sp.add_argument("inputs", nargs=2, metavar=("STATE", "HAMILTONIAN"))
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=11)

    sp = sub.add_parser("wigner", help="Wigner function on a grid (CSV)", parents=[common])
    sp.add_argument("inputs", nargs=1)
    sp.add_argument("--x", default="-4:4:129")
    sp.add_argument("--p", default="-4:4:129")
    sp.add_argument("--numeric", action="store_true", help="use the quadrature oracle instead of the closed form")

    sp = sub.add_parser("ellipse", help="boundary of the central section through a conjugate plane (CSV)", parents=[common])
    sp.add_argument("inputs", nargs=1)
    sp.add_argument("--mode", type=int, default=1)
    sp.add_argument("--points", type=int, default=256)

    sp = sub.add_parser("selftest", help="run the fast acceptance subset", parents=[common])
    sp.add_argument("--seed", type=int, default=0)
    return p


def config_from_args(args):
    tol, _ = env_tolerance()
    cfg = RunConfig(subcommand=args.subcommand, inputs=list(getattr(args, "inputs", [])), output=args.output)
    cfg = replace(cfg, hbar=args.hbar, tol=tol)
    if args.subcommand == "evolve":
        cfg = replace(cfg, t=args.t, samples=args.samples)
    elif args.subcommand == "wigner":
        cfg = replace(cfg, x_range=parse_range(args.x), p_range=parse_range(args.p), numeric=args.numeric)
    elif args.subcommand == "ellipse":
        cfg = replace(cfg, mode=args.mode, points=args.points)
    elif args.subcommand == "selftest":
        cfg = replace(cfg, seed=args.seed)
    cfg.validate()
    return cfg


JSON_COMMANDS = {
    "blob-from-state": cmd_blob_from_state,
    "state-from-blob": cmd_state_from_blob,
    "capacity": cmd_capacity,
    "check": cmd_check,
    "fermi": cmd_fermi,
}
STREAM_COMMANDS = {"wigner": cmd_wigner, "ellipse": cmd_ellipse}


def dispatch(cfg):
    if cfg.subcommand == "selftest":
        return cmd_selftest(cfg)
    if cfg.subcommand in JSON_COMMANDS:
        text = json.dumps(JSON_COMMANDS[cfg.subcommand](cfg)) + "\n"
    elif cfg.subcommand == "evolve":
        text = "".join(json.dumps(rec) + "\n" for rec in cmd_evolve(cfg))
    else:
        fn = STREAM_COMMANDS[cfg.subcommand]
        if cfg.output:
            with open(cfg.output, "w", newline="") as fh:
                fn(cfg, fh)
        else:
            fn(cfg, sys.stdout)
        return EXIT_OK
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_join_ranges(sys.argv[1:] if argv is None else list(argv)))
    try:
        return dispatch(config_from_args(args))
    except NumericalError as exc:
        print(f"qblob: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        print(f"qblob: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, TypeError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"qblob: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"qblob: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
