"""Manifold models - points, tangent vectors and sampled curves on a ManifoldSpec"""

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from ..services.geometry import ManifoldSpec


def _frozen_vector(values) -> np.ndarray:
    array = np.array(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(array)):
        raise ValueError("Manifold coordinates must be finite")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ManifoldPoint:
    """
    A point of a manifold in the coordinates of its spec
    (ambient unit vector for the sphere, chart coordinates otherwise).
    """
    coords: np.ndarray
    spec: "ManifoldSpec"

    def __post_init__(self):
        coords = _frozen_vector(self.coords)
        self.spec.validate_point(coords)
        object.__setattr__(self, "coords", coords)


@dataclass(frozen=True, eq=False)
class TangentVector:
    """A tangent vector `vec` at `base`"""
    base: ManifoldPoint
    vec: np.ndarray

    def __post_init__(self):
        vec = _frozen_vector(self.vec)
        self.base.spec.validate_tangent(self.base.coords, vec)
        object.__setattr__(self, "vec", vec)

    @property
    def norm(self) -> float:
        return self.base.spec.norm(self.base.coords, self.vec)


@dataclass(frozen=True, eq=False)
class ManifoldCurve:
    """
    A manifold-valued curve sampled at the N+1 uniform grid times.

    Attributes:
        points: Array of shape (N+1, k) of point coordinates
        spec: Geometry shared by all samples
    """
    points: np.ndarray
    spec: "ManifoldSpec"

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim != 2 or points.shape[0] < 2:
            raise ValueError("Manifold curve needs at least 2 samples (N >= 1)")
        if not np.all(np.isfinite(points)):
            raise ValueError("Manifold coordinates must be finite")
        for index, point in enumerate(points):
            self.spec.validate_point(point, index)
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def n_intervals(self) -> int:
        return self.points.shape[0] - 1

    @property
    def start(self) -> ManifoldPoint:
        return ManifoldPoint(self.points[0], self.spec)
