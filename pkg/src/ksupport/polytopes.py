"""Exact combinatorics of the p = inf / q = 1 unit balls.

The top-(1,k) ball is the convex hull of the cross-polytope and the scaled
hypercube; its polar, the k-support ball for the sup source norm, is the
intersection of the scaled cross-polytope with the hypercube.  Everything
here runs in exact rational arithmetic: an incremental double-description
kernel provides vertex and facet enumeration, a Galois-closure of the
vertex/facet incidence yields brute-force face lattices, and the sign-vector
facet description plus the hypersimplex test and the normal-fan refinement
check are built on top.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import InvalidInputError, ScaleLimitError

__all__ = [
    "RationalPolytope",
    "FanRefinementReport",
    "top1k_ball",
    "ksup_inf_ball",
    "facet_from_sign_vector",
    "enumerate_proper_faces_top1k",
    "brute_face_lattice",
    "facet_enumeration",
    "vertex_enumeration",
    "is_hypersimplex",
    "fan_refinement_check",
]

Vec = tuple[Fraction, ...]
Halfspace = tuple[Vec, Fraction]

_MAX_DIM = 6


@dataclass(frozen=True)
class RationalPolytope:
    """V- and H-representation of a full-dimensional polytope with 0 interior.

    Facet inequalities are canonicalized to ``<n, x> <= 1``.
    """

    vertices: tuple[Vec, ...]
    facet_inequalities: tuple[Halfspace, ...]


@dataclass(frozen=True)
class FanRefinementReport:
    """Outcome of the sampled normal-fan refinement check."""

    directions: int
    generators: int
    violations: tuple
    ok: bool


def _frac_vec(seq: Iterable) -> Vec:
    return tuple(Fraction(a) for a in seq)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((ai * bi for ai, bi in zip(a, b)), Fraction(0))


def _rank(rows: Sequence[Sequence[Fraction]], d: int) -> int:
    m = [list(r) for r in rows]
    rank = 0
    for col in range(d):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                f = m[r][col] / prow[col]
                m[r] = [x - f * y for x, y in zip(m[r], prow)]
        rank += 1
    return rank


def affine_rank(points: Sequence[Vec]) -> int:
    """Dimension of the affine hull of exact rational points."""
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [tuple(x - y for x, y in zip(p, base)) for p in points[1:]]
    return _rank(rows, len(base))


# ---------------------------------------------------------------------------
# double-description kernel


def vertex_enumeration(
    halfspaces: Sequence[Halfspace], d: int, box: Fraction | int = 4
) -> tuple[Vec, ...]:
    """Vertices of ``{ x : <a, x> <= b for all (a, b) }`` (incremental DD).

    The polytope must be full-dimensional and strictly contained in the
    starting box ``[-box, box]^d``.  Each halfspace is inserted in turn; cut
    points arise on edges, detected exactly by the rank of the common active
    normals.
    """
    box = Fraction(box)
    hs: list[Halfspace] = []
    for i in range(d):
        e = [Fraction(0)] * d
        e[i] = Fraction(1)
        hs.append((tuple(e), box))
        e = [Fraction(0)] * d
        e[i] = Fraction(-1)
        hs.append((tuple(e), box))
    hs.extend((_frac_vec(n), Fraction(b)) for n, b in halfspaces)

    verts: list[Vec] = [
        tuple(Fraction(s) * box for s in signs) for signs in itertools.product((-1, 1), repeat=d)
    ]
    act: list[set[int]] = [
        {j for j in range(2 * d) if _dot(hs[j][0], v) == hs[j][1]} for v in verts
    ]

    for idx in range(2 * d, len(hs)):
        a, b = hs[idx]
        vals = [b - _dot(a, v) for v in verts]
        if all(v >= 0 for v in vals):
            for i, v in enumerate(vals):
                if v == 0:
                    act[i].add(idx)
            continue
        ins = [i for i, v in enumerate(vals) if v > 0]
        ons = [i for i, v in enumerate(vals) if v == 0]
        outs = [i for i, v in enumerate(vals) if v < 0]
        new_pts: list[Vec] = []
        new_act: list[set[int]] = []
        seen: set[Vec] = set()
        for i in ins:
            for j in outs:
                common = act[i] & act[j]
                if len(common) < d - 1:
                    continue
                if _rank([hs[c][0] for c in common], d) != d - 1:
                    continue
                u, w = verts[i], verts[j]
                lam = vals[i] / (vals[i] - vals[j])
                x = tuple(ut + lam * (wt - ut) for ut, wt in zip(u, w))
                if x in seen:
                    continue
                seen.add(x)
                tight = {c for c in range(idx + 1) if _dot(hs[c][0], x) == hs[c][1]}
                new_pts.append(x)
                new_act.append(tight)
        keep_idx = ins + ons
        verts = [verts[i] for i in keep_idx] + new_pts
        act = [act[i] | ({idx} if i in ons else set()) for i in keep_idx] + new_act

    for i, v in enumerate(verts):
        if any(j < 2 * d for j in act[i]):
            raise InvalidInputError("polytope is not strictly inside the starting box")
    return tuple(sorted(set(verts)))


def facet_enumeration(vertices: Sequence[Vec], box: Fraction | int = 16) -> tuple[Halfspace, ...]:
    """Facets ``<n, x> <= 1`` of ``conv(vertices)`` (0 must be interior).

    Works through polarity: the facet normals are the vertices of the polar
    polytope ``{ y : <v, y> <= 1 }``, enumerated by the DD kernel.  ``box``
    must exceed the sup-norm radius of the polar.
    """
    vertices = [_frac_vec(v) for v in vertices]
    d = len(vertices[0])
    polar_hs = [(v, Fraction(1)) for v in vertices]
    normals = vertex_enumeration(polar_hs, d, box=box)
    return tuple(sorted((n, Fraction(1)) for n in normals))


def brute_face_lattice(poly: RationalPolytope) -> tuple[tuple[tuple[Vec, ...], int], ...]:
    """All proper nonempty faces as (vertex list, dimension) records.

    Faces are the closure under intersection of the facet vertex sets
    (every proper face of a polytope is the intersection of the facets
    containing it).
    """
    verts = poly.vertices
    facet_sets = []
    for n, b in poly.facet_inequalities:
        members = frozenset(i for i, v in enumerate(verts) if _dot(n, v) == b)
        if members:
            facet_sets.append(members)
    faces: set[frozenset[int]] = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        nxt: set[frozenset[int]] = set()
        for F in frontier:
            for G in facet_sets:
                H = F & G
                if H and H not in faces:
                    faces.add(H)
                    nxt.add(H)
        frontier = nxt
    out = []
    for F in faces:
        pts = tuple(sorted(verts[i] for i in F))
        out.append((pts, affine_rank(pts)))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# the two polytope families


def _check_scale(d: int, k: int) -> None:
    if not 1 <= k <= d:
        raise InvalidInputError(f"need 1 <= k <= d, got k={k}, d={d}")
    if d > _MAX_DIM:
        raise ScaleLimitError(f"exact polytope routines are limited to d <= {_MAX_DIM}")


def _signed_units(d: int) -> list[Vec]:
    pts = []
    for i in range(d):
        for s in (1, -1):
            e = [Fraction(0)] * d
            e[i] = Fraction(s)
            pts.append(tuple(e))
    return pts


def _cube_corners(d: int) -> list[Vec]:
    return [tuple(Fraction(s) for s in signs) for signs in itertools.product((-1, 1), repeat=d)]


def top1k_ball(d: int, k: int) -> RationalPolytope:
    """The unit ball of the top-(1,k) norm: conv of the cross-polytope and
    the hypercube scaled by 1/k.

    Coincides with the hypercube at k = 1 and the cross-polytope at k = d.
    Redundant generator points (those two extremes) are pruned by the hull.
    """
    _check_scale(d, k)
    cand = _signed_units(d) + [tuple(c / k for c in corner) for corner in _cube_corners(d)]
    facets = facet_enumeration(cand, box=Fraction(4 * d))
    verts = vertex_enumeration(facets, d, box=Fraction(2))
    return RationalPolytope(verts, facets)


def ksup_inf_ball(d: int, k: int) -> RationalPolytope:
    """The k-support unit ball for the sup source norm: ``k B_1 \\cap B_inf``.

    H-description: ``|x_i| <= 1`` and ``||x||_1 <= k``; the polar of
    :func:`top1k_ball`.
    """
    _check_scale(d, k)
    hs: list[Halfspace] = [(u, Fraction(1)) for u in _signed_units(d)]
    hs += [(s, Fraction(k)) for s in _cube_corners(d)]
    verts = vertex_enumeration(hs, d, box=Fraction(2))
    facets = facet_enumeration(verts, box=Fraction(4 * d))
    return RationalPolytope(verts, facets)


# ---------------------------------------------------------------------------
# sign-vector face description


def _validate_sign_vector(s: Sequence[int], d: int, k: int) -> tuple[int, ...]:
    s = tuple(int(v) for v in s)
    if len(s) != d or any(v not in (-1, 0, 1) for v in s):
        raise InvalidInputError("sign vector must lie in {-1,0,1}^d")
    if sum(1 for v in s if v != 0) != k:
        raise InvalidInputError(f"sign vector must have exactly {k} nonzero entries")
    return s


def _cross_face(s: Sequence[int], d: int) -> list[Vec]:
    pts = []
    for i, si in enumerate(s):
        if si != 0:
            e = [Fraction(0)] * d
            e[i] = Fraction(si)
            pts.append(tuple(e))
    return pts


def _cube_face(s: Sequence[int], d: int) -> list[Vec]:
    free = [i for i, si in enumerate(s) if si == 0]
    pts = []
    for signs in itertools.product((-1, 1), repeat=len(free)):
        v = [Fraction(si) for si in s]
        for i, sg in zip(free, signs):
            v[i] = Fraction(sg)
        pts.append(tuple(v))
    return pts


def facet_from_sign_vector(s: Sequence[int], d: int, k: int) -> tuple[Vec, ...]:
    """Vertex list of the top-(1,k) facet exposed by a k-sparse sign vector.

    The facet is ``conv(F(beta, s) u (1/k) F(gamma, s))``.  At k = 1 the
    signed unit lies in the relative interior of the cube face, and at k = d
    the scaled corner lies inside the simplex face, so those points are
    dropped from the vertex list.
    """
    _check_scale(d, k)
    s = _validate_sign_vector(s, d, k)
    cross = _cross_face(s, d)
    cube = [tuple(c / k for c in v) for v in _cube_face(s, d)]
    if k == 1 and d > 1:
        pts = cube
    elif k == d and d > 1:
        pts = cross
    else:
        pts = cross + cube
    return tuple(sorted(set(pts)))


def enumerate_proper_faces_top1k(d: int, k: int) -> tuple[tuple[tuple[Vec, ...], int], ...]:
    """All proper faces of the top-(1,k) ball, built from sign vectors.

    For each k-sparse sign vector s the faces are ``conv(F u (1/k) G)`` with
    F, G exposed faces of the cross-polytope/cube faces of s, not both
    empty, and F full exactly when G is full.  Faces are deduplicated across
    sign vectors and tagged with their affine dimension.
    """
    _check_scale(d, k)
    if d > 5:
        raise ScaleLimitError("face-lattice enumeration is limited to d <= 5")
    faces: dict[tuple[Vec, ...], int] = {}
    supp_sets = itertools.combinations(range(d), k)
    for supp in supp_sets:
        for signs in itertools.product((-1, 1), repeat=k):
            s = [0] * d
            for i, sg in zip(supp, signs):
                s[i] = sg
            cross_full = _cross_face(s, d)
            cube_full = [tuple(c / k for c in v) for v in _cube_face(s, d)]
            free = [i for i in range(d) if s[i] == 0]
            # exposed faces of the simplex F(beta, s): all vertex subsets
            cross_subs = [
                [cross_full[i] for i in T]
                for r in range(k + 1)
                for T in itertools.combinations(range(k), r)
            ]
            # exposed faces of the subcube F(gamma, s): fix signs on any free subset
            cube_subs: list[list[Vec]] = [[]]
            for r in range(len(free) + 1):
                for U in itertools.combinations(range(len(free)), r):
                    for sigma in itertools.product((-1, 1), repeat=r):
                        sel = []
                        for v in cube_full:
                            if all(v[free[u]] * k == sg for u, sg in zip(U, sigma)):
                                sel.append(v)
                        cube_subs.append(sel)
            n_cross = len(cross_full)
            n_cube = len(cube_full)
            for F in cross_subs:
                for G in cube_subs:
                    if not F and not G:
                        continue
                    if (len(F) == n_cross) != (len(G) == n_cube):
                        continue
                    if len(F) == n_cross and len(G) == n_cube:
                        pts = facet_from_sign_vector(s, d, k)
                    else:
                        pts = tuple(sorted(set(F) | set(G)))
                    if pts not in faces:
                        faces[pts] = affine_rank(pts)
    return tuple(sorted((pts, dim) for pts, dim in faces.items()))


# ---------------------------------------------------------------------------
# hypersimplex recognition


def is_hypersimplex(face_vertices: Sequence[Sequence[float]], tol: float = 1e-9) -> bool:
    """Is this vertex set a hypersimplex up to the face normalization?

    The admissible normalization drops coordinates that are constant across
    the vertices, flips signs per coordinate, and rescales by the common
    magnitude; the result must be exactly the 0/1 vectors with a fixed
    number of ones.  A single point counts as a 0-dimensional hypersimplex.
    """
    pts = [tuple(float(c) for c in v) for v in face_vertices]
    if not pts:
        raise InvalidInputError("empty vertex list")
    uniq: list[tuple[float, ...]] = []
    for p in pts:
        if all(max(abs(a - b) for a, b in zip(p, o)) > tol for o in uniq):
            uniq.append(p)
    if len(uniq) == 1:
        return True
    d = len(uniq[0])
    varying = [
        j for j in range(d) if max(p[j] for p in uniq) - min(p[j] for p in uniq) > tol
    ]
    if not varying:
        return False
    rows = []
    for p in uniq:
        rows.append([p[j] for j in varying])
    # per-column consistent sign flip
    for cidx in range(len(varying)):
        col = [r[cidx] for r in rows]
        nz = [c for c in col if abs(c) > tol]
        if not nz:
            return False
        if any(c > tol for c in nz) and any(c < -tol for c in nz):
            return False
        if nz[0] < 0:
            for r in rows:
                r[cidx] = -r[cidx]
    mags = [c for r in rows for c in r if abs(c) > tol]
    scale = mags[0]
    if any(abs(c - scale) > tol * max(1.0, abs(scale)) for c in mags):
        return False
    bits = []
    for r in rows:
        row_bits = []
        for c in r:
            if abs(c) <= tol:
                row_bits.append(0)
            elif abs(c - scale) <= tol * max(1.0, abs(scale)):
                row_bits.append(1)
            else:
                return False
        bits.append(tuple(row_bits))
    ones = {sum(r) for r in bits}
    if len(ones) != 1:
        return False
    m = ones.pop()
    expected = set(itertools.combinations(range(len(varying)), m))
    got = {tuple(j for j, b in enumerate(r) if b) for r in bits}
    return len(got) == len(bits) and got == expected


# ---------------------------------------------------------------------------
# normal-fan refinement


def _top1k_exact(y: Sequence[Fraction], k: int) -> Fraction:
    mags = sorted((abs(c) for c in y), reverse=True)
    return sum(mags[:k], Fraction(0))


def fan_refinement_check(
    d: int,
    k: int,
    p: float,
    sample_count: int = 1000,
    seed: int = 0,
) -> FanRefinementReport:
    """Sampled check that the smooth-ball normal fan refines the polytopal one.

    For each sampled rational dual direction y the generator set of the
    normal cone of the k-support ball (1 < p < inf) at the face exposed by y
    is sampled, and every generator g is tested for membership in the normal
    cone of the sup-norm k-support ball spanned by one sign-vector facet s of
    the top-(1,k) ball: membership holds iff ``<s, g>`` equals the exact
    top-(1,k) norm of g.  The cone data does not depend on p.
    """
    _check_scale(d, k)
    if not 1 < p < math.inf:
        raise InvalidInputError("refinement concerns 1 < p < inf")
    rng = random.Random(seed)
    violations: list[tuple] = []
    generators = 0
    for _ in range(sample_count):
        y = [Fraction(0)] * d
        while all(c == 0 for c in y):
            mags = [rng.randint(0, 3) for _ in range(d)]
            y = [Fraction(rng.choice((-1, 1)) * m) for m in mags]
        mags_sorted = sorted((abs(c) for c in y), reverse=True)
        m_k = mags_sorted[k - 1]
        weak = [i for i in range(d) if abs(y[i]) >= m_k] if m_k > 0 else list(range(d))
        strict = [i for i in range(d) if abs(y[i]) > m_k]
        z = tuple(y[i] if i in set(weak) else Fraction(0) for i in range(d))
        # lexicographically first optimal support of size k, padded if m_k = 0
        if m_k > 0:
            pool = [i for i in weak if i not in set(strict)]
            kstar = sorted(strict + pool[: k - len(strict)])
        else:
            supp = [i for i in range(d) if z[i] != 0]
            pad = [i for i in range(d) if i not in set(supp)]
            kstar = sorted(supp + pad[: k - len(supp)])
        s = tuple(
            (1 if z[i] >= 0 else -1) if i in set(kstar) else 0 for i in range(d)
        )
        # generators of the cone at z: z itself, positive scalings, and
        # perturbations below the level off the weak set
        gens: list[Vec] = [z, tuple(2 * c for c in z), tuple(c / 3 for c in z)]
        if m_k > 0:
            off = [i for i in range(d) if i not in set(weak)]
            for _ in range(4):
                g = list(z)
                for i in off:
                    g[i] = m_k * Fraction(rng.randint(-3, 3), 4)
                scale = Fraction(rng.randint(1, 5), rng.randint(1, 3))
                gens.append(tuple(scale * c for c in g))
        for g in gens:
            generators += 1
            if _dot(s, g) != _top1k_exact(g, k):
                violations.append((tuple(y), s, g))
    return FanRefinementReport(
        directions=sample_count,
        generators=generators,
        violations=tuple(violations),
        ok=not violations,
    )
