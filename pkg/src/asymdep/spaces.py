"""Finite metric spaces and product constructions.

A FiniteMetricSpace is a labeled point set with a full pairwise distance
matrix; optional Euclidean coordinates enable characteristic-function
operations. Distances are float64; probability weights elsewhere in the
package are exact rationals.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, InitVar
from numbers import Real
from typing import Sequence

import numpy as np

from .errors import InputError

COORD_DIST_TOL = 1e-12


class ProductMetricKind(enum.Enum):
    """Which product metric to put on E1 x E2: d1+d2 (SUM) or max(d1,d2) (MAX)."""

    SUM = "sum"
    MAX = "max"


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Labeled points with a full pairwise distance matrix.

    ``coords_euclidean`` records whether ``dist`` is the Euclidean metric of
    ``coords``; product spaces carry concatenated coordinates under a SUM/MAX
    metric, where that identity does not hold.
    """

    labels: tuple[str, ...]
    dist: np.ndarray
    coords: np.ndarray | None = None
    coords_euclidean: bool = True
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool) -> None:
        labels = tuple(str(x) for x in self.labels)
        dist = np.asarray(self.dist, dtype=float)
        coords = None if self.coords is None else np.asarray(self.coords, dtype=float)
        if coords is not None and coords.ndim == 1:
            coords = coords[:, None]
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "coords", coords)
        n = len(labels)
        if dist.shape != (n, n):
            raise InputError(f"distance matrix shape {dist.shape} does not match {n} labels")
        if coords is not None and coords.shape[0] != n:
            raise InputError("coords length must match label count")
        if validate:
            self._check(dist, coords)
        dist.setflags(write=False)
        if coords is not None:
            coords.setflags(write=False)

    def _check(self, dist: np.ndarray, coords: np.ndarray | None) -> None:
        n = len(self.labels)
        if not np.all(np.isfinite(dist)):
            raise InputError("distances must be finite")
        if np.any(np.diag(dist) != 0.0):
            raise InputError("distance matrix must have zero diagonal")
        if not np.array_equal(dist, dist.T):
            raise InputError("distance matrix must be symmetric")
        off = dist + np.eye(n)  # mask the diagonal for the positivity check
        if np.any(off <= 0.0):
            raise InputError("off-diagonal distances must be strictly positive")
        for k in range(n):
            if np.any(dist > dist[:, [k]] + dist[[k], :] + 1e-12):
                raise InputError("distance matrix violates the triangle inequality")
        if coords is not None and self.coords_euclidean:
            diffs = coords[:, None, :] - coords[None, :, :]
            euclid = np.sqrt((diffs ** 2).sum(axis=-1))
            if np.max(np.abs(euclid - dist)) > COORD_DIST_TOL:
                raise InputError("coords do not reproduce the distance matrix")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int | None:
        return None if self.coords is None else self.coords.shape[1]


def line_space(points: Sequence[Real], labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Points on the real line with |x - y| distance; always a valid metric."""
    pts = [float(p) for p in points]
    if len(set(pts)) != len(pts):
        raise InputError("line_space points must be distinct")
    if labels is None:
        elabels = tuple(str(p) for p in points)
    else:
        elabels = tuple(labels)
    arr = np.array(pts, dtype=float)
    dist = np.abs(arr[:, None] - arr[None, :])
    return FiniteMetricSpace(elabels, dist, coords=arr[:, None], validate=False)


def product_space(
    s1: FiniteMetricSpace, s2: FiniteMetricSpace, kind: ProductMetricKind
) -> FiniteMetricSpace:
    """Product of two spaces, row-major point order ((x0,y0),(x0,y1),...).

    SUM gives the metric d1+d2, MAX gives max(d1,d2); both metrize the
    product topology and satisfy r <= d <= 2r entrywise. Coordinates are
    concatenated when both factors carry them.
    """
    n1, n2 = len(s1), len(s2)
    d1 = s1.dist[:, None, :, None]
    d2 = s2.dist[None, :, None, :]
    if kind is ProductMetricKind.SUM:
        dist = (d1 + d2).reshape(n1 * n2, n1 * n2)
    elif kind is ProductMetricKind.MAX:
        dist = np.maximum(d1, d2).reshape(n1 * n2, n1 * n2)
    else:
        raise InputError(f"unknown product metric kind: {kind!r}")
    labels = tuple(f"({a},{b})" for a in s1.labels for b in s2.labels)
    coords = None
    if s1.coords is not None and s2.coords is not None:
        coords = np.hstack(
            [
                np.repeat(s1.coords, n2, axis=0),
                np.tile(s2.coords, (n1, 1)),
            ]
        )
    # triangle inequality is inherited from the factors; skip the O(N^3) check
    return FiniteMetricSpace(labels, dist, coords=coords, coords_euclidean=False, validate=False)
