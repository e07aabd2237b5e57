"""Vector/support primitives shared by the rest of the package.

Indices are 1-based everywhere in the public API (supports are sorted
tuples of integers in ``[1, d]``); conversion to 0-based numpy indexing
happens internally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "InvalidInputError",
    "ZeroVectorError",
    "ConvergenceError",
    "ScaleLimitError",
    "Tolerance",
    "DEFAULT_TOL",
    "LevelIndexData",
    "as_vector",
    "support_of",
    "l0",
    "project_support",
    "abs_sort_permutation",
    "level_index",
    "k_subsets",
]


class InvalidInputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class ZeroVectorError(InvalidInputError):
    """Raised when an operation requires a nonzero vector."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative routine exhausts its iteration cap."""


class ScaleLimitError(InvalidInputError):
    """Raised when a desk-scale routine is called beyond its size guard."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative comparison tolerances used throughout."""

    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self) -> None:
        if not (np.isfinite(self.abs) and np.isfinite(self.rel)):
            raise InvalidInputError("tolerances must be finite")
        if self.abs < 0 or self.rel < 0:
            raise InvalidInputError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class LevelIndexData:
    """k-th level value of ``|y|`` with the strict/weak index sets around it.

    ``m_k`` is the k-th largest absolute value, ``strict`` the indices with
    ``|y_i|`` strictly above it, ``weak`` the indices with ``|y_i|`` at or
    above it (all 1-based, tie-grouped by the tolerance used to build it).
    """

    m_k: float
    strict: tuple[int, ...]
    weak: tuple[int, ...]


def as_vector(x: Sequence[float] | np.ndarray) -> np.ndarray:
    """Validate and return ``x`` as a 1-d float array (finite, d >= 1)."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidInputError("expected a nonempty 1-d vector")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("vector entries must be finite")
    return arr


def _check_support(K: Iterable[int], d: int) -> tuple[int, ...]:
    K = tuple(int(i) for i in K)
    if any(i < 1 or i > d for i in K):
        raise InvalidInputError(f"support index out of range [1, {d}]: {K}")
    if len(set(K)) != len(K):
        raise InvalidInputError(f"support has duplicate indices: {K}")
    return tuple(sorted(K))


def support_of(x: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> tuple[int, ...]:
    """Indices j with ``|x_j| > tol.abs`` (1-based, sorted)."""
    arr = as_vector(x)
    return tuple(int(i) + 1 for i in np.nonzero(np.abs(arr) > tol.abs)[0])


def l0(x: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of entries with absolute value above ``tol.abs``."""
    return len(support_of(x, tol))


def project_support(x: Sequence[float], K: Iterable[int]) -> np.ndarray:
    """Zero out every coordinate of ``x`` outside the support set ``K``.

    ``K`` may be empty, in which case the zero vector is returned.  The
    mapping is idempotent and self-adjoint.
    """
    arr = as_vector(x)
    K = _check_support(K, arr.size)
    out = np.zeros_like(arr)
    if K:
        idx = np.array(K, dtype=int) - 1
        out[idx] = arr[idx]
    return out


def abs_sort_permutation(y: Sequence[float]) -> tuple[int, ...]:
    """Permutation nu with ``|y_nu(1)| >= ... >= |y_nu(d)|``.

    Ties are broken by ascending original index, so the output is
    deterministic.  Returned as a 1-based tuple.
    """
    arr = as_vector(y)
    order = sorted(range(arr.size), key=lambda i: (-abs(arr[i]), i))
    return tuple(i + 1 for i in order)


def level_index(y: Sequence[float], k: int, tol: Tolerance = DEFAULT_TOL) -> LevelIndexData:
    """Level data of a nonzero dual vector at sparsity budget ``k``.

    ``m_k`` is the k-th largest absolute value of ``y``.  ``strict`` collects
    the indices with ``|y_i| > m_k`` and ``weak`` those with ``|y_i| >= m_k``;
    comparisons are tol-grouped so that coordinates within ``tol.abs`` of the
    level count as tied.  When ``m_k`` is zero (fewer than ``k`` effectively
    nonzero entries) the weak set is all of ``{1..d}``.
    """
    arr = as_vector(y)
    d = arr.size
    if not 1 <= k <= d:
        raise InvalidInputError(f"k={k} outside [1, {d}]")
    a = np.abs(arr)
    if a.max() <= tol.abs:
        raise ZeroVectorError("level_index requires a nonzero vector")
    m = float(np.sort(a)[::-1][k - 1])
    if m <= tol.abs:
        strict = tuple(int(i) + 1 for i in np.nonzero(a > tol.abs)[0])
        return LevelIndexData(0.0, strict, tuple(range(1, d + 1)))
    strict = tuple(int(i) + 1 for i in np.nonzero(a > m + tol.abs)[0])
    weak = tuple(int(i) + 1 for i in np.nonzero(a >= m - tol.abs)[0])
    return LevelIndexData(m, strict, weak)


def k_subsets(d: int, k: int, at_most: bool = False) -> tuple[tuple[int, ...], ...]:
    """All supports of ``{1..d}`` with cardinality exactly (or at most) ``k``.

    Lexicographic order; with ``at_most=True`` the empty set comes first.
    """
    if not 0 <= k <= d:
        raise InvalidInputError(f"k={k} outside [0, {d}]")
    if at_most:
        subsets: list[tuple[int, ...]] = []
        for j in range(k + 1):
            subsets.extend(itertools.combinations(range(1, d + 1), j))
        return tuple(sorted(subsets))
    return tuple(itertools.combinations(range(1, d + 1), k))
