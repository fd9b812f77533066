"""JSON and CSV serialization of the package's value types.

JSON uses row-major nested lists of doubles; Python's float repr round-trips
bit for bit.
"""

import csv
import json

import numpy as np

from .blobs import PhaseSpaceEllipsoid, QuantumBlob
from .dynamics import QuadraticHamiltonian
from .errors import DomainError
from .gaussian import GaussianState, WavefunctionGrid
from .uncertainty import CovarianceMatrix


def _mat(a):
    return np.asarray(a, dtype=float).tolist()


def matrix_to_dict(M):
    M = np.asarray(M, dtype=float)
    return {"n": M.shape[0] // 2, "entries": _mat(M)}


def matrix_from_dict(d):
    M = np.array(d["entries"], dtype=float)
    if M.shape != (2 * d["n"], 2 * d["n"]):
        raise DomainError(f"entries must be {2 * d['n']}x{2 * d['n']}")
    return M


def state_to_dict(s):
    return {"n": s.n, "hbar": s.hbar, "X": _mat(s.X), "Y": _mat(s.Y), "z0": _mat(s.z0), "gamma": s.gamma}


def state_from_dict(d):
    return GaussianState(
        n=int(d["n"]), hbar=float(d.get("hbar", 1.0)), X=d["X"], Y=d["Y"], z0=d["z0"], gamma=float(d.get("gamma", 0.0))
    )


def blob_to_dict(b):
    return {"n": b.n, "hbar": b.hbar, "center": _mat(b.center), "G": _mat(b.G)}


def blob_from_dict(d):
    return QuantumBlob(n=int(d["n"]), hbar=float(d.get("hbar", 1.0)), center=d["center"], G=d["G"])


def ellipsoid_to_dict(e):
    return {"n": e.n, "hbar": e.hbar, "center": _mat(e.center), "shape": _mat(e.shape)}


def ellipsoid_from_dict(d):
    n = int(d["n"])
    return PhaseSpaceEllipsoid(n=n, hbar=float(d.get("hbar", 1.0)), center=d.get("center", [0.0] * (2 * n)), shape=d["shape"])


def hamiltonian_to_dict(H):
    return {"n": H.n, "hbar": H.hbar, "R": _mat(H.R)}


def hamiltonian_from_dict(d):
    return QuadraticHamiltonian(n=int(d["n"]), hbar=float(d.get("hbar", 1.0)), R=d["R"])


def covariance_to_dict(c):
    return {"n": c.n, "hbar": c.hbar, "Sigma": _mat(c.Sigma)}


def covariance_from_dict(d):
    return CovarianceMatrix(n=int(d["n"]), hbar=float(d.get("hbar", 1.0)), Sigma=d["Sigma"])


def load_json(path):
    with open(path) as f:
        return json.load(f)


def dumps(obj):
    return json.dumps(obj)


def write_wavefunction_csv(grid, fh):
    w = csv.writer(fh)
    w.writerow(["x", "re", "im"])
    for x, v in zip(grid.x, grid.values):
        w.writerow([repr(float(x)), repr(float(v.real)), repr(float(v.imag))])


def read_wavefunction_csv(fh, hbar=1.0):
    rows = list(csv.DictReader(fh))
    x = np.array([float(r["x"]) for r in rows])
    v = np.array([float(r["re"]) + 1j * float(r["im"]) for r in rows])
    return WavefunctionGrid(x=x, values=v, hbar=hbar)


def write_phase_space_csv(grid, fh):
    """Header comment with ranges and hbar, then columns x, p, w."""
    x, p = grid.x, grid.p
    fh.write(
        f"# x={float(x[0])!r}:{float(x[-1])!r}:{x.size} p={float(p[0])!r}:{float(p[-1])!r}:{p.size} hbar={float(grid.hbar)!r}\n"
    )
    w = csv.writer(fh)
    w.writerow(["x", "p", "w"])
    for i, xi in enumerate(x):
        for k, pk in enumerate(p):
            w.writerow([repr(float(xi)), repr(float(pk)), repr(float(grid.values[i, k]))])


def read_phase_space_csv(fh):
    """Returns (header dict, x, p, values)."""
    first = fh.readline()
    header = dict(item.split("=", 1) for item in first.lstrip("# ").split())
    rows = list(csv.DictReader(fh))
    x = np.unique([float(r["x"]) for r in rows])
    p = np.unique([float(r["p"]) for r in rows])
    vals = np.array([float(r["w"]) for r in rows]).reshape(x.size, p.size)
    return header, x, p, vals
