"""Exposed faces and normal cones of k-support unit balls.

For a nonzero dual vector the optimal supports are the cardinality-at-most-k
index sets maximizing the dual norm of the projected vector; the exposed
face of the k-support ball (1 < p < inf) is the convex hull of the
Hoelder-equality points of the projections onto those supports.  A finite
atom-set engine provides the same face computation for arbitrary finite
atom collections.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    InvalidInputError,
    ScaleLimitError,
    Tolerance,
    ZeroVectorError,
    LevelIndexData,
    as_vector,
    level_index,
    project_support,
)
from .norms import NormSpec

__all__ = [
    "FaceDescription",
    "NormalConeDescription",
    "optimal_supports",
    "v_p",
    "exposed_face_sp",
    "normal_cone_membership",
    "normal_cone_of",
    "optimal_support_lattice_bounds",
    "atomset_face",
    "support_bound_from_dual",
]

_ENUMERATION_CAP = 200_000


@dataclass(frozen=True)
class FaceDescription:
    """Vertex description of an exposed face of the k-support unit ball.

    ``vertices`` and ``generating_supports`` correspond one to one (after
    deduplication each kept vertex carries its lexicographically smallest
    generating support); ``dual`` is the exposing vector.
    """

    vertices: tuple[np.ndarray, ...]
    generating_supports: tuple[tuple[int, ...], ...]
    dual: np.ndarray


@dataclass(frozen=True)
class NormalConeDescription:
    """Generator data of a normal cone: the unit base direction and its level sets."""

    base: np.ndarray
    level: LevelIndexData


def optimal_supports(
    y: Sequence[float],
    spec: NormSpec,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[tuple[int, ...], ...]:
    """All supports of cardinality <= k maximizing ``||pi_K y||_q``.

    For q < inf these are exactly the sets K with ``L_k(y) <= K <= Lbar_k(y)``
    that have k elements, except that when ``m_k(y) = 0`` any cardinality
    from ``|L_k|`` to k qualifies.  For q = inf (source norm l1) the argmax
    family is closed upward, so the inclusion-minimal representatives are
    returned: the singletons of the absolute-value argmax.  Ties are grouped
    within ``tol.abs``; output is in lexicographic order.
    """
    arr = as_vector(y)
    d = arr.size
    spec.check_dim(d)
    k = spec.k
    if float(np.abs(arr).max()) <= tol.abs:
        raise ZeroVectorError("optimal supports are undefined for the zero vector")
    if math.isinf(spec.q):
        top = float(np.abs(arr).max())
        winners = np.nonzero(np.abs(arr) >= top - tol.abs)[0]
        return tuple((int(i) + 1,) for i in winners)
    li = level_index(arr, k, tol)
    strict = set(li.strict)
    pool = sorted(set(li.weak) - strict)
    slots = k - len(strict)
    sizes = range(slots + 1) if li.m_k == 0.0 else (slots,)
    count = sum(math.comb(len(pool), j) for j in sizes)
    if count > _ENUMERATION_CAP:
        raise ScaleLimitError(f"{count} tied optimal supports exceed the enumeration cap")
    out = []
    for j in sizes:
        for extra in itertools.combinations(pool, j):
            out.append(tuple(sorted(strict.union(extra))))
    return tuple(sorted(out))


def v_p(y: Sequence[float], p: float) -> np.ndarray:
    """The unique point of the lp unit sphere exposed by ``y`` (1 < p < inf).

    Componentwise it carries the sign of ``y`` and the magnitude
    ``(|y_i| / ||y||_q)^{q/p}``, the equality case of Hoelder's inequality;
    for p = 2 this is just ``y / ||y||_2``.
    """
    arr = as_vector(y)
    if not 1 < p < math.inf:
        raise InvalidInputError("v_p requires 1 < p < inf")
    if float(np.abs(arr).max()) == 0.0:
        raise ZeroVectorError("v_p is undefined at the zero vector")
    q = p / (p - 1.0)
    a = np.abs(arr)
    m = a.max()
    nq = m * float(np.sum((a / m) ** q)) ** (1.0 / q)
    return np.sign(arr) * (a / nq) ** (q / p)


def exposed_face_sp(
    y: Sequence[float],
    spec: NormSpec,
    tol: Tolerance = DEFAULT_TOL,
) -> FaceDescription:
    """Exposed face of the k-support unit ball at dual vector ``y``.

    Vertices are ``v_p(pi_K y)`` over the optimal supports K, deduplicated
    by l-infinity distance below ``tol.abs`` (keeping the lexicographically
    smallest representative).  Only 1 < p < inf; the polytopal p = inf case
    lives in :mod:`ksupport.polytopes`.
    """
    arr = as_vector(y)
    if not 1 < spec.p < math.inf:
        raise InvalidInputError("exposed_face_sp requires 1 < p < inf")
    sups = optimal_supports(arr, spec, tol)
    raw: list[tuple[np.ndarray, tuple[int, ...]]] = []
    for K in sups:
        vk = v_p(project_support(arr, K), spec.p)
        raw.append((vk, K))
    kept: list[tuple[np.ndarray, tuple[int, ...]]] = []
    for vk, K in raw:
        merged = False
        for i, (vo, Ko) in enumerate(kept):
            if float(np.max(np.abs(vk - vo))) < tol.abs:
                rep = min((tuple(vo), Ko), (tuple(vk), K))
                kept[i] = (np.array(rep[0]), rep[1])
                merged = True
                break
        if not merged:
            kept.append((vk, K))
    kept.sort(key=lambda item: tuple(item[0]))
    return FaceDescription(
        vertices=tuple(v for v, _ in kept),
        generating_supports=tuple(K for _, K in kept),
        dual=arr.copy(),
    )


def normal_cone_membership(
    z: Sequence[float],
    y: Sequence[float],
    spec: NormSpec,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Does ``y`` generate the normal cone of the k-support ball based at ``z``?

    True iff some positive multiple y' of y satisfies
    ``pi_{Lbar_k(z)} y' = z`` and ``Lbar_k(y') = Lbar_k(z)``.  This is the
    pre-closure generator condition; boundary directions added by the
    closure are deliberately not decided here.  ``z`` must satisfy its own
    projection identity ``pi_{Lbar_k(z)} z = z`` (any positive scaling of
    ``z`` is accepted since membership is invariant under it).
    """
    zarr = as_vector(z)
    yarr = as_vector(y)
    spec.check_dim(zarr.size)
    if float(np.abs(zarr).max()) <= tol.abs:
        raise ZeroVectorError("cone base must be nonzero")
    li_z = level_index(zarr, spec.k, tol)
    off = sorted(set(range(1, zarr.size + 1)) - set(li_z.weak))
    if off and float(np.abs(project_support(zarr, off)).max()) > tol.abs:
        raise InvalidInputError("z fails its own projection identity pi_Lbar(z) z = z")
    if float(np.abs(yarr).max()) <= tol.abs:
        return False
    li_y = level_index(yarr, spec.k, tol)
    if set(li_y.weak) != set(li_z.weak):
        return False
    py = project_support(yarr, li_z.weak)
    denom = float(py @ py)
    if denom == 0.0:
        return False
    t = float(py @ zarr) / denom
    if t <= 0.0:
        return False
    scale = max(1.0, float(np.abs(zarr).max()))
    return float(np.max(np.abs(t * py - zarr))) <= tol.abs * scale


def normal_cone_of(
    y: Sequence[float],
    spec: NormSpec,
    tol: Tolerance = DEFAULT_TOL,
) -> NormalConeDescription:
    """Canonical generator data of the normal cone containing ``y``.

    The base is ``pi_{Lbar_k(y)} y`` scaled to unit Euclidean length.
    """
    arr = as_vector(y)
    li = level_index(arr, spec.k, tol)
    base = project_support(arr, li.weak)
    base = base / float(np.linalg.norm(base))
    return NormalConeDescription(base=base, level=level_index(base, spec.k, tol))


def optimal_support_lattice_bounds(
    y: Sequence[float],
    spec: NormSpec,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Intersection and union of the optimal supports of ``y``.

    For q < inf the union always equals the weak level set ``Lbar_k(y)``;
    the intersection equals the strict set ``L_k(y)`` whenever ``m_k = 0``
    or the level is tied (``|Lbar_k| > k``), and otherwise the single
    optimal support ``Lbar_k(y)`` itself.
    """
    sups = optimal_supports(y, spec, tol)
    inter = set(sups[0])
    union = set(sups[0])
    for K in sups[1:]:
        inter.intersection_update(K)
        union.update(K)
    return tuple(sorted(inter)), tuple(sorted(union))


def support_bound_from_dual(
    y: Sequence[float],
    spec: NormSpec,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[int, ...]:
    """Union of the optimal supports: a superset of the support of every
    point of the exposed face."""
    return optimal_support_lattice_bounds(y, spec, tol)[1]


# ---------------------------------------------------------------------------
# finite atom sets


def _dot(a: Sequence, b: Sequence):
    return sum(ai * bi for ai, bi in zip(a, b))


def _restrict(v: Sequence, K: tuple[int, ...], d: int) -> tuple:
    # 0 * v[i] keeps the coordinate type (Fraction stays Fraction)
    members = set(K)
    return tuple(v[i] if (i + 1) in members else 0 * v[i] for i in range(d))


def atomset_face(
    atoms: Sequence[Sequence],
    k: int,
    y: Sequence,
    tol: float | None = None,
):
    """Sparse-atom face of ``conv(union of pi_K(atoms))`` exposed by ``y``.

    Scans every support K with ``|K| <= k``: the optimal supports maximize
    ``max_{x in atoms} <x, pi_K y>`` and the returned points are the
    projections onto each optimal support of the atoms attaining that
    maximum.  The exposed face itself is the convex hull of the returned
    points.  Works on exact (Fraction) or float coordinates; ``tol=None``
    means exact comparisons.

    Returns ``(points, optimal_supports)``.
    """
    atoms = [tuple(a) for a in atoms]
    if not atoms:
        raise InvalidInputError("atom set must be nonempty")
    d = len(atoms[0])
    if any(len(a) != d for a in atoms) or len(y) != d:
        raise InvalidInputError("dimension mismatch between atoms and dual vector")
    if not 0 <= k <= d:
        raise InvalidInputError(f"k={k} outside [0, {d}]")
    y = tuple(y)
    slack = 0 if tol is None else tol

    subsets = []
    for j in range(k + 1):
        subsets.extend(itertools.combinations(range(1, d + 1), j))
    scores = {}
    for K in subsets:
        py = _restrict(y, K, d)
        scores[K] = max(_dot(a, py) for a in atoms)
    best = max(scores.values())
    winners = sorted(K for K, s in scores.items() if s >= best - slack)

    points: list[tuple] = []
    for K in winners:
        py = _restrict(y, K, d)
        smax = scores[K]
        for a in atoms:
            if _dot(a, py) >= smax - slack:
                pa = _restrict(a, K, d)
                if tol is None:
                    if pa not in points:
                        points.append(pa)
                else:
                    if all(
                        max(abs(u - v) for u, v in zip(pa, other)) > tol for other in points
                    ):
                        points.append(pa)
    return sorted(points), tuple(winners)
