"""Brute-force ground truth used by the test and verification suites.

Everything here is deliberately simple and exhaustive: argmax over explicit
vertex lists, exhaustive subset scans, closed-form soft thresholding, and
sampled gauge bounds by linear programming.  These routines never call the
analytic paths they validate; only :mod:`ksupport.core` and plain numerics
are used.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Sequence

import numpy as np
from scipy import optimize as _sciopt

from .core import DEFAULT_TOL, InvalidInputError, ScaleLimitError, Tolerance, ZeroVectorError, as_vector

if TYPE_CHECKING:  # oracles depend only on core at runtime
    from .norms import NormSpec

__all__ = [
    "OracleReport",
    "brute_exposed_face",
    "brute_optimal_supports",
    "lasso_closed_form",
    "sampled_gauge_upper_bound",
    "sampled_exposed_face",
]


@dataclass(frozen=True)
class OracleReport:
    """Payload of a brute-force computation plus its reproducibility data."""

    payload: Any
    method: str
    params: dict


def brute_exposed_face(
    vertices: Sequence[Sequence[float]],
    y: Sequence[float],
    tol: Tolerance = DEFAULT_TOL,
) -> list[tuple[float, ...]]:
    """Vertices maximizing ``<v, y>`` within ``tol.abs`` of the maximum."""
    verts = [tuple(float(c) for c in v) for v in vertices]
    if not verts:
        raise InvalidInputError("empty vertex list")
    yv = [float(c) for c in y]
    scores = [sum(a * b for a, b in zip(v, yv)) for v in verts]
    best = max(scores)
    return [v for v, s in zip(verts, scores) if s >= best - tol.abs]


def _q_norm(vals: Sequence[float], q: float) -> float:
    if not vals:
        return 0.0
    if math.isinf(q):
        return max(abs(v) for v in vals)
    if q == 1:
        return sum(abs(v) for v in vals)
    m = max(abs(v) for v in vals)
    if m == 0.0:
        return 0.0
    return m * sum((abs(v) / m) ** q for v in vals) ** (1.0 / q)


def brute_optimal_supports(
    y: Sequence[float],
    spec: NormSpec,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[tuple[int, ...], ...]:
    """Exhaustive argmax of ``||pi_K y||_q`` over every K with 1 <= |K| <= k.

    Returns every maximizer within ``tol.abs`` (including non-minimal ones
    for q = inf, where the argmax family is closed upward).
    """
    arr = as_vector(y)
    d = arr.size
    if spec.k > d:
        raise InvalidInputError(f"k={spec.k} exceeds dimension {d}")
    if d > 16:
        raise ScaleLimitError("brute support scan limited to d <= 16")
    if float(np.abs(arr).max()) <= tol.abs:
        raise ZeroVectorError("optimal supports are undefined for the zero vector")
    scored: list[tuple[tuple[int, ...], float]] = []
    for r in range(1, spec.k + 1):
        for K in itertools.combinations(range(1, d + 1), r):
            vals = [arr[i - 1] for i in K]
            scored.append((K, _q_norm(vals, spec.q)))
    best = max(s for _, s in scored)
    return tuple(sorted(K for K, s in scored if s >= best - tol.abs))


def lasso_closed_form(a: Sequence[float], gamma: float) -> np.ndarray:
    """Minimizer of ``0.5 ||x - a||^2 + gamma ||x||_1``: soft thresholding."""
    arr = as_vector(a)
    if gamma < 0:
        raise InvalidInputError("gamma must be nonnegative")
    return np.sign(arr) * np.maximum(np.abs(arr) - gamma, 0.0)


def _sphere_points(rng: np.random.Generator, n: int, dim: int, p: float) -> np.ndarray:
    g = rng.standard_normal((n, dim))
    g[np.all(g == 0.0, axis=1)] = 1.0
    if math.isinf(p):
        scale = np.abs(g).max(axis=1)
    elif p == 1:
        scale = np.abs(g).sum(axis=1)
    else:
        scale = (np.abs(g) ** p).sum(axis=1) ** (1.0 / p)
    return g / scale[:, None]


def sampled_gauge_upper_bound(
    x: Sequence[float],
    spec: NormSpec,
    atom_samples: int = 20_000,
    seed: int = 0,
) -> OracleReport:
    """Upper bound on the k-support norm by a gauge LP over sampled atoms.

    Samples k-sparse points of the source-norm unit sphere, always including
    the signed coordinate vectors, and minimizes the total weight of a
    nonnegative combination reproducing ``x``.  Converges to the norm from
    above with sample density.  Desk scale: d <= 4.
    """
    arr = as_vector(x)
    d = arr.size
    if spec.k > d:
        raise InvalidInputError(f"k={spec.k} exceeds dimension {d}")
    if d > 4:
        raise ScaleLimitError("sampled gauge bound limited to d <= 4")
    params = {"d": d, "k": spec.k, "p": spec.p, "atom_samples": atom_samples, "seed": seed}
    if float(np.abs(arr).max()) == 0.0:
        return OracleReport(0.0, "sampled_gauge_lp", params)
    rng = np.random.default_rng(seed)
    supports = list(itertools.combinations(range(d), spec.k))
    per = max(1, atom_samples // len(supports))
    cols = []
    for K in supports:
        pts = _sphere_points(rng, per, spec.k, spec.p)
        block = np.zeros((pts.shape[0], d))
        block[:, list(K)] = pts
        cols.append(block)
    for i in range(d):
        e = np.zeros((2, d))
        e[0, i] = 1.0
        e[1, i] = -1.0
        cols.append(e)
    atoms = np.vstack(cols)
    res = _sciopt.linprog(
        np.ones(atoms.shape[0]),
        A_eq=atoms.T,
        b_eq=arr,
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0:
        raise InvalidInputError("gauge LP infeasible for the sampled atom set")
    value = float(res.fun)
    return OracleReport(value, "sampled_gauge_lp", params)


def sampled_exposed_face(
    y: Sequence[float],
    spec: NormSpec,
    n_atoms: int = 100_000,
    seed: int = 0,
    rounds: int = 10,
) -> OracleReport:
    """Brute-force face finder: argmax of ``<., y>`` over sampled sparse atoms.

    Allocates the atom budget across every size-k support and across
    progressively narrowing sampling rounds around the per-support incumbent
    (the objective restricted to one support is linear, hence unimodal on
    the sphere patch, so refinement cannot be trapped).  Returns the sampled
    argmax points of every support whose maximum ties the global one, plus
    the best value found.
    """
    arr = as_vector(y)
    d = arr.size
    if spec.k > d:
        raise InvalidInputError(f"k={spec.k} exceeds dimension {d}")
    if float(np.abs(arr).max()) == 0.0:
        raise ZeroVectorError("face sampling needs a nonzero dual vector")
    rng = np.random.default_rng(seed)
    supports = list(itertools.combinations(range(d), spec.k))
    per = max(30, n_atoms // (len(supports) * rounds))
    best_pts: list[np.ndarray | None] = [None] * len(supports)
    best_vals = np.full(len(supports), -np.inf)
    for j, K in enumerate(supports):
        yk = arr[list(K)]
        incumbent = None
        for t in range(rounds):
            if incumbent is None:
                pts = _sphere_points(rng, per, spec.k, spec.p)
            else:
                radius = 0.35**t
                pts = incumbent[None, :] + radius * rng.standard_normal((per, spec.k))
                if math.isinf(spec.p):
                    scale = np.abs(pts).max(axis=1)
                else:
                    scale = (np.abs(pts) ** spec.p).sum(axis=1) ** (1.0 / spec.p)
                scale[scale == 0.0] = 1.0
                pts = pts / scale[:, None]
            vals = pts @ yk
            i = int(np.argmax(vals))
            if vals[i] > best_vals[j]:
                best_vals[j] = float(vals[i])
                incumbent = pts[i]
        full = np.zeros(d)
        full[list(K)] = incumbent
        best_pts[j] = full
    top = float(best_vals.max())
    winners = [
        best_pts[j]
        for j in range(len(supports))
        if best_vals[j] >= top - 1e-7 * max(1.0, abs(top))
    ]
    points: list[np.ndarray] = []
    for w in winners:
        if all(float(np.max(np.abs(w - o))) > 1e-6 for o in points):
            points.append(w)
    params = {"d": d, "k": spec.k, "p": spec.p, "n_atoms": n_atoms, "seed": seed, "rounds": rounds}
    return OracleReport({"points": points, "value": top}, "sampled_face_argmax", params)
