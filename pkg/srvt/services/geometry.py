"""Geometry backends - the unit sphere S² in closed form and chart manifolds given by G and Γ"""

import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.optimize import root

from ..errors import CutLocusViolation, GeodesicLeftChart, SRVTError
from ..utils.grid import check_times, locate

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-10


class ManifoldBackend(Enum):
    """Available geometry backends"""
    SPHERE2 = "sphere2"
    CHART = "chart"


class ManifoldSpec(ABC):
    """
    A Riemannian manifold description exposing exp, log, distance and
    parallel transport on coordinate arrays.

    Points are coordinate vectors of length `point_dim`; tangent vectors use
    the same coordinates. T_⋆M is identified with R^dim through `frame`.
    """

    backend: ManifoldBackend
    point_dim: int
    dim: int

    @abstractmethod
    def validate_point(self, x: np.ndarray, index: Optional[int] = None):
        """Raise ValueError if x is not a point of the manifold"""

    @abstractmethod
    def validate_tangent(self, x: np.ndarray, v: np.ndarray):
        """Raise ValueError if v is not tangent at x"""

    @abstractmethod
    def inner(self, x: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
        """Riemannian inner product at x"""

    @abstractmethod
    def exp(self, x: np.ndarray, v: np.ndarray, t: float = 1.0) -> np.ndarray:
        """Riemannian exponential exp_x(t·v)"""

    @abstractmethod
    def log(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Inverse of exp_x on the complement of the cut locus of x"""

    @abstractmethod
    def cut_locus_check(self, x: np.ndarray, y: np.ndarray) -> bool:
        """True if y lies in the domain Ω_x where log_x is defined"""

    @abstractmethod
    def transport_along_geodesic(self, x: np.ndarray, y: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Parallel transport of v ∈ T_xM to T_yM along the minimal geodesic"""

    @abstractmethod
    def frame(self, star: np.ndarray) -> np.ndarray:
        """Orthonormal frame of T_⋆M as columns, shape (point_dim, dim)"""

    @abstractmethod
    def transport_to_star(self, x: np.ndarray, v: np.ndarray, star: np.ndarray) -> np.ndarray:
        """pt_⋆: frame coordinates in R^dim of v ∈ T_xM transported to ⋆"""

    @abstractmethod
    def transport_from_star(self, x: np.ndarray, w: np.ndarray, star: np.ndarray) -> np.ndarray:
        """b_⋆⁻¹: tangent vector at x obtained from frame coordinates w at ⋆"""

    @abstractmethod
    def transport_along_curve(self, points: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        """
        Parallel transport of vectors at points[0] along the sampled curve.

        Args:
            points: Curve samples (N+1, point_dim)
            vectors: Columns to transport, (point_dim, r)

        Returns:
            Array (N+1, point_dim, r)
        """

    def norm(self, x: np.ndarray, v: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(x, v, v), 0.0)))

    def distance(self, x: np.ndarray, y: np.ndarray) -> float:
        """Geodesic distance ‖log_x(y)‖"""
        return self.norm(x, self.log(x, y))

    def geodesic_point(self, x: np.ndarray, y: np.ndarray, s: float) -> np.ndarray:
        """Point at parameter s on the minimal geodesic from x to y"""
        return self.exp(x, self.log(x, y), s)

    def resample(self, points: np.ndarray, times) -> np.ndarray:
        """Evaluate a sampled curve at times, interpolating along geodesics"""
        index, fraction = locate(check_times(times), points.shape[0] - 1)
        return np.array([
            np.array(points[i]) if s == 0.0
            else np.array(points[i + 1]) if s == 1.0
            else self.geodesic_point(points[i], points[i + 1], s)
            for i, s in zip(index, fraction)
        ])


class Sphere2(ManifoldSpec):
    """
    The unit sphere in R³ with closed-form exp, log and transport.

    The cut locus of p is its antipode; points within `tol_cut` radians of
    it are rejected.
    """

    backend = ManifoldBackend.SPHERE2
    point_dim = 3
    dim = 2

    def __init__(self, tol_cut: float = 1e-3):
        self.tol_cut = tol_cut

    def __repr__(self) -> str:
        return f"Sphere2(tol_cut={self.tol_cut})"

    def validate_point(self, x: np.ndarray, index: Optional[int] = None):
        where = "" if index is None else f" at grid index {index}"
        if x.shape != (3,):
            raise ValueError(f"Sphere points need 3 coordinates{where}")
        if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
            raise ValueError(f"Sphere point is not a unit vector{where}")

    def validate_tangent(self, x: np.ndarray, v: np.ndarray):
        if v.shape != (3,):
            raise ValueError("Sphere tangent vectors need 3 coordinates")
        if abs(np.dot(v, x)) > UNIT_TOL * max(1.0, np.linalg.norm(v)):
            raise ValueError("Vector is not tangent to the sphere at the base point")

    def inner(self, x, u, v) -> float:
        return float(np.dot(u, v))

    def angle(self, x: np.ndarray, y: np.ndarray) -> float:
        """Great-circle angle between x and y"""
        return float(np.arctan2(np.linalg.norm(np.cross(x, y)), np.dot(x, y)))

    def exp(self, x, v, t: float = 1.0) -> np.ndarray:
        speed = np.linalg.norm(v)
        if speed == 0.0:
            return np.array(x, dtype=float)
        y = np.cos(t * speed) * x + np.sin(t * speed) * (v / speed)
        return y / np.linalg.norm(y)

    def cut_locus_check(self, x, y) -> bool:
        return self.angle(x, y) < np.pi - self.tol_cut

    def log(self, x, y) -> np.ndarray:
        """
        Raises:
            CutLocusViolation: if y is within tol_cut of the antipode of x
        """
        if not self.cut_locus_check(x, y):
            raise CutLocusViolation(detail="antipodal points")
        w = y - np.dot(x, y) * x
        sin_theta = np.linalg.norm(w)
        if sin_theta == 0.0:
            return np.zeros(3)
        theta = np.arctan2(sin_theta, np.dot(x, y))
        return (theta / sin_theta) * w

    def transport_along_geodesic(self, x, y, v) -> np.ndarray:
        """
        Rotate the component of v along the geodesic direction; keep the
        component orthogonal to the geodesic plane.
        """
        direction = self.log(x, y)
        theta = np.linalg.norm(direction)
        if theta == 0.0:
            return np.array(v, dtype=float)
        u = direction / theta
        along = np.dot(v, u)
        return v + along * ((np.cos(theta) - 1.0) * u - np.sin(theta) * x)

    def frame(self, star) -> np.ndarray:
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(star)))] = 1.0
        e1 = axis - np.dot(axis, star) * star
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(star, e1)
        return np.column_stack((e1, e2))

    def transport_to_star(self, x, v, star) -> np.ndarray:
        return self.frame(star).T @ self.transport_along_geodesic(x, star, v)

    def transport_from_star(self, x, w, star) -> np.ndarray:
        return self.transport_along_geodesic(star, x, self.frame(star) @ w)

    def transport_along_curve(self, points, vectors) -> np.ndarray:
        """Chain the closed-form transports between consecutive samples"""
        vectors = np.asarray(vectors, dtype=float)
        out = np.empty((points.shape[0],) + vectors.shape)
        out[0] = vectors
        for i in range(points.shape[0] - 1):
            if not self.cut_locus_check(points[i], points[i + 1]):
                raise CutLocusViolation(i, "consecutive samples are antipodal")
            for r in range(vectors.shape[1]):
                out[i + 1, :, r] = self.transport_along_geodesic(points[i], points[i + 1], out[i, :, r])
        return out


class ChartManifold(ManifoldSpec):
    """
    A manifold given in a single chart by its metric G(x) and Christoffel
    symbols Γ(x) with Γ[k, i, j] = Γ^k_ij.

    Geodesics solve ü = −Γ(u)(u̇, u̇), parallel fields v̇ = −Γ(u)(u̇, v); both are
    integrated with the explicit midpoint rule. The cut locus is not
    computed; log is only guaranteed inside the chart domain.
    """

    backend = ManifoldBackend.CHART

    def __init__(
        self,
        dim: int,
        metric: Callable[[np.ndarray], np.ndarray],
        christoffel: Callable[[np.ndarray], np.ndarray],
        domain: Optional[Callable[[np.ndarray], bool]] = None,
        name: str = "chart",
        substeps: int = 16
    ):
        if dim < 1:
            raise ValueError("Chart dimension must be positive")
        self.dim = dim
        self.point_dim = dim
        self.metric = metric
        self.christoffel = christoffel
        self.domain = domain or (lambda x: True)
        self.name = name
        self.substeps = substeps

    def __repr__(self) -> str:
        return f"ChartManifold(name={self.name!r}, dim={self.dim})"

    def in_domain(self, x: np.ndarray) -> bool:
        return bool(np.all(np.isfinite(x))) and bool(self.domain(x))

    def check_geometry(self, x: np.ndarray):
        """Verify G(x) is symmetric positive definite and Γ(x) symmetric in (i, j)"""
        g = np.asarray(self.metric(x), dtype=float)
        if g.shape != (self.dim, self.dim) or np.max(np.abs(g - g.T)) > 1e-12:
            raise ValueError(f"Metric of chart {self.name} is not symmetric at {x}")
        if np.min(np.linalg.eigvalsh(g)) <= 1e-12:
            raise ValueError(f"Metric of chart {self.name} is not positive definite at {x}")
        gamma = np.asarray(self.christoffel(x), dtype=float)
        if gamma.shape != (self.dim,) * 3:
            raise ValueError(f"Christoffel symbols of chart {self.name} have shape {gamma.shape}")
        if np.max(np.abs(gamma - np.swapaxes(gamma, 1, 2)), initial=0.0) > 1e-10:
            raise ValueError(f"Christoffel symbols of chart {self.name} are not symmetric at {x}")

    def validate_point(self, x: np.ndarray, index: Optional[int] = None):
        where = "" if index is None else f" at grid index {index}"
        if x.shape != (self.dim,):
            raise ValueError(f"Chart points need {self.dim} coordinates{where}")
        if not self.in_domain(x):
            raise ValueError(f"Point outside the domain of chart {self.name}{where}")
        self.check_geometry(x)

    def validate_tangent(self, x: np.ndarray, v: np.ndarray):
        if v.shape != (self.dim,):
            raise ValueError(f"Chart tangent vectors need {self.dim} coordinates")

    def inner(self, x, u, v) -> float:
        return float(u @ np.asarray(self.metric(x), dtype=float) @ v)

    def _accel(self, x, u, v) -> np.ndarray:
        """−Γ(x)(u, v); v may hold several columns"""
        gamma = np.asarray(self.christoffel(x), dtype=float)
        if v.ndim == 1:
            return -np.einsum("kij,i,j->k", gamma, u, v)
        return -np.einsum("kij,i,jr->kr", gamma, u, v)

    def _shoot(self, x, v, t: float = 1.0, vectors: Optional[np.ndarray] = None):
        """
        Integrate the geodesic with initial velocity v for time t, transporting
        the columns of `vectors` alongside.

        Raises:
            GeodesicLeftChart: if a substep leaves the chart domain
        """
        x = np.array(x, dtype=float)
        xd = np.array(v, dtype=float)
        carried = None if vectors is None else np.array(vectors, dtype=float)
        h = t / self.substeps
        for step in range(self.substeps):
            x_half = x + 0.5 * h * xd
            xd_half = xd + 0.5 * h * self._accel(x, xd, xd)
            if not self.in_domain(x_half):
                raise GeodesicLeftChart(step)
            if carried is not None:
                carried_half = carried + 0.5 * h * self._accel(x, xd, carried)
                carried = carried + h * self._accel(x_half, xd_half, carried_half)
            x, xd = x + h * xd_half, xd + h * self._accel(x_half, xd_half, xd_half)
            if not self.in_domain(x):
                raise GeodesicLeftChart(step)
        return x, xd, carried

    def exp(self, x, v, t: float = 1.0) -> np.ndarray:
        if not np.any(v) or t == 0.0:
            return np.array(x, dtype=float)
        return self._shoot(x, v, t)[0]

    def cut_locus_check(self, x, y) -> bool:
        return self.in_domain(np.asarray(x)) and self.in_domain(np.asarray(y))

    def log(self, x, y) -> np.ndarray:
        """
        Shooting solve exp_x(v) = y started from the chart difference y − x.

        Raises:
            CutLocusViolation: if an endpoint is outside the chart domain
            SRVTError: if the shooting solve does not converge
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if not self.cut_locus_check(x, y):
            raise CutLocusViolation(detail=f"outside chart {self.name}")
        if np.array_equal(x, y):
            return np.zeros(self.dim)
        scale = max(1.0, float(np.max(np.abs(y))))

        def residual(v):
            try:
                return self._shoot(x, v)[0] - y
            except GeodesicLeftChart:
                return np.full(self.dim, 1e6 * scale)

        guess = y - x
        if np.max(np.abs(residual(guess))) <= 64 * np.finfo(float).eps * scale:
            return guess
        result = root(residual, guess, method="hybr", options={"xtol": 1e-13})
        if np.max(np.abs(residual(result.x))) > 1e-9 * scale:
            logger.warning("chart log on %s did not converge: %s", self.name, result.message)
            raise SRVTError(f"Chart logarithm on {self.name} did not converge")
        return result.x

    def transport_matrix(self, x, y) -> np.ndarray:
        """Matrix of the parallel transport T_xM → T_yM along the geodesic"""
        _, _, carried = self._shoot(x, self.log(x, y), 1.0, np.eye(self.dim))
        return carried

    def transport_along_geodesic(self, x, y, v) -> np.ndarray:
        return self.transport_matrix(x, y) @ np.asarray(v, dtype=float)

    def _cholesky(self, star) -> np.ndarray:
        return np.linalg.cholesky(np.asarray(self.metric(star), dtype=float))

    def frame(self, star) -> np.ndarray:
        """Chart basis orthonormalized against G(⋆) (Gram-Schmidt, i.e. L⁻ᵀ)"""
        return np.linalg.inv(self._cholesky(star)).T

    def transport_to_star(self, x, v, star) -> np.ndarray:
        transported = np.linalg.solve(self.transport_matrix(star, x), np.asarray(v, dtype=float))
        return self._cholesky(star).T @ transported

    def transport_from_star(self, x, w, star) -> np.ndarray:
        return self.transport_matrix(star, x) @ (self.frame(star) @ np.asarray(w, dtype=float))

    def transport_along_curve(self, points, vectors) -> np.ndarray:
        """
        Integrate v̇ = −Γ(c)(ċ, v) along the chart-linear interpolant of the
        samples, one midpoint step per subinterval.

        Raises:
            GeodesicLeftChart: if a sample or midpoint leaves the chart domain
        """
        points = np.asarray(points, dtype=float)
        vectors = np.asarray(vectors, dtype=float)
        n = points.shape[0] - 1
        h = 1.0 / n
        out = np.empty((n + 1,) + vectors.shape)
        out[0] = vectors
        for i in range(n):
            velocity = n * (points[i + 1] - points[i])
            middle = 0.5 * (points[i] + points[i + 1])
            if not (self.in_domain(points[i]) and self.in_domain(middle)):
                raise GeodesicLeftChart(i)
            half = out[i] + 0.5 * h * self._accel(points[i], velocity, out[i])
            out[i + 1] = out[i] + h * self._accel(middle, velocity, half)
        if not self.in_domain(points[n]):
            raise GeodesicLeftChart(n)
        return out
