"""Manifold SRVT service - transport to a reference point ⋆, forward transform, numerical inverse"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from ..config import SRVTConfig
from ..errors import CutLocusViolation, DimensionMismatch
from ..models import (
    ManifoldCurve,
    ManifoldPoint,
    PExponent,
    SampledCurve,
    StepFunction,
    TangentVector,
)
from .calculus import CalculusService
from .geometry import ManifoldSpec
from .scaling import ScalingService

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TransportedSRVT:
    """
    The pair (ev_0, R) of a manifold curve.

    Attributes:
        start: Starting point c(0)
        q: SRVT values in frame coordinates of T_⋆M
    """
    start: ManifoldPoint
    q: StepFunction


class ManifoldSRVTService:
    """
    SRVT of curves in Ω_⋆ = M ∖ C(⋆):
    R(c) = sc(pt_⋆(ċ)), with pt_⋆ the inverse parallel transport along the
    minimal geodesic from ⋆ to c(t). The inverse solves α̇ = V(α, h) by
    geometric stepping.
    """

    def __init__(self, spec: ManifoldSpec, star, config: Optional[SRVTConfig] = None):
        config = config or SRVTConfig()
        self.spec = spec
        self.star = star if isinstance(star, ManifoldPoint) else ManifoldPoint(star, spec)
        self.scheme = config.inverse_scheme
        self.with_basepoint = config.with_basepoint
        self.scaling = ScalingService(zero_threshold=config.zero_threshold)
        self.calculus = CalculusService()

    @property
    def star_frame(self) -> np.ndarray:
        """Orthonormal frame of T_⋆M used for SRVT coordinates"""
        return self.spec.frame(self.star.coords)

    def riem_exp(self, p: ManifoldPoint, v: TangentVector, t: float = 1.0) -> ManifoldPoint:
        """exp_p(t·v)"""
        return ManifoldPoint(self.spec.exp(p.coords, v.vec, t), self.spec)

    def riem_log(self, p: ManifoldPoint, q: ManifoldPoint) -> TangentVector:
        """
        Raises:
            CutLocusViolation: if q lies on (or within tolerance of) the cut locus of p
        """
        return TangentVector(p, self.spec.log(p.coords, q.coords))

    def cut_locus_check(self, p: ManifoldPoint, q: ManifoldPoint) -> bool:
        return self.spec.cut_locus_check(p.coords, q.coords)

    def transport_along_geodesic(
        self,
        p: ManifoldPoint,
        q: ManifoldPoint,
        v: TangentVector
    ) -> TangentVector:
        """Parallel translation of v from p to q along the minimal geodesic"""
        return TangentVector(q, self.spec.transport_along_geodesic(p.coords, q.coords, v.vec))

    def transport_to_star(self, v: TangentVector) -> np.ndarray:
        """
        pt_⋆(v): frame coordinates in T_⋆M.

        Raises:
            CutLocusViolation: if the base point is in the cut locus of ⋆
        """
        if not self.spec.cut_locus_check(self.star.coords, v.base.coords):
            raise CutLocusViolation(detail="base point in the cut locus of the reference point")
        return self.spec.transport_to_star(v.base.coords, v.vec, self.star.coords)

    def transport_from_star(self, p: ManifoldPoint, w) -> TangentVector:
        """b_⋆⁻¹(p, w): tangent vector at p"""
        if not self.spec.cut_locus_check(self.star.coords, p.coords):
            raise CutLocusViolation(detail="point in the cut locus of the reference point")
        w = np.asarray(w, dtype=float)
        if w.shape != (self.spec.dim,):
            raise DimensionMismatch(f"Frame coordinates need {self.spec.dim} entries")
        return TangentVector(p, self.spec.transport_from_star(p.coords, w, self.star.coords))

    def parallel_transport_ode(self, curve: SampledCurve, v0) -> np.ndarray:
        """
        Transport v0 along a curve given in chart coordinates by integrating
        v̇ = −Γ(c)(ċ, v).

        Returns:
            Array (N+1, dim) of the transported vector at every grid point
        """
        v0 = np.asarray(v0, dtype=float).reshape(-1, 1)
        return self.spec.transport_along_curve(curve.values, v0)[:, :, 0]

    def _check_domain(self, points: np.ndarray):
        star = self.star.coords
        for index, point in enumerate(points):
            if not self.spec.cut_locus_check(star, point):
                raise CutLocusViolation(index)

    def velocities(self, curve: ManifoldCurve) -> np.ndarray:
        """Geodesic finite differences N·log(c_i, c_{i+1}), tangent at c_i"""
        n = curve.n_intervals
        return np.array([
            n * self.spec.log(curve.points[i], curve.points[i + 1]) for i in range(n)
        ])

    def transported_velocities(self, curve: ManifoldCurve) -> StepFunction:
        """pt_⋆ of the discrete velocity on each subinterval"""
        if curve.spec is not self.spec:
            raise ValueError("Curve belongs to a different manifold")
        self._check_domain(curve.points)
        star = self.star.coords
        velocities = self.velocities(curve)
        values = np.array([
            self.spec.transport_to_star(curve.points[i], velocities[i], star)
            for i in range(curve.n_intervals)
        ])
        return StepFunction(values)

    def srvt_manifold(self, curve: ManifoldCurve) -> TransportedSRVT:
        """
        (ev_0, R)(c) with R(c) = sc(pt_⋆(ċ)).

        Raises:
            CutLocusViolation: naming the first grid index outside Ω_⋆
        """
        q = self.scaling.scale(self.transported_velocities(curve))
        return TransportedSRVT(curve.start, q)

    def _step(self, point: np.ndarray, w: np.ndarray, h: float) -> np.ndarray:
        star = self.star.coords
        velocity = self.spec.transport_from_star(point, w, star)
        if self.scheme == "euler":
            return self.spec.exp(point, velocity, h)
        middle = self.spec.exp(point, velocity, 0.5 * h)
        if not self.spec.cut_locus_check(star, middle):
            raise CutLocusViolation(detail="midpoint stage left the domain")
        velocity_mid = self.spec.transport_from_star(middle, w, star)
        return self.spec.exp(point, self.spec.transport_along_geodesic(middle, point, velocity_mid), h)

    def srvt_manifold_inverse(self, q: StepFunction, alpha0) -> ManifoldCurve:
        """
        Solve α̇ = b_⋆⁻¹(α, sc⁻¹(q)) from α(0) = alpha0 with one geometric
        step per subinterval.

        Raises:
            CutLocusViolation: at the step where the iterate leaves Ω_⋆
        """
        if q.dim != self.spec.dim:
            raise DimensionMismatch(f"SRVT values need {self.spec.dim} components")
        start = alpha0.coords if isinstance(alpha0, ManifoldPoint) else np.asarray(alpha0, dtype=float)
        self.spec.validate_point(start)
        velocities = self.scaling.unscale(q).values
        n = q.n_intervals
        points = np.empty((n + 1, self.spec.point_dim))
        points[0] = start
        for i in range(n):
            if not self.spec.cut_locus_check(self.star.coords, points[i]):
                raise CutLocusViolation(i)
            points[i + 1] = self._step(points[i], velocities[i], 1.0 / n)
        if not self.spec.cut_locus_check(self.star.coords, points[n]):
            raise CutLocusViolation(n)
        logger.debug("manifold inverse (%s) over %d steps", self.scheme, n)
        return ManifoldCurve(points, self.spec)

    def resample(self, curve: ManifoldCurve, times) -> np.ndarray:
        """Evaluate the curve at times, interpolating along geodesics"""
        return self.spec.resample(curve.points, times)

    def resample_curve(self, curve: ManifoldCurve, n_intervals: int) -> ManifoldCurve:
        if n_intervals == curve.n_intervals:
            return curve
        return ManifoldCurve(self.resample(curve, np.linspace(0.0, 1.0, n_intervals + 1)), self.spec)

    def harmonize(self, curve1: ManifoldCurve, curve2: ManifoldCurve):
        n = max(curve1.n_intervals, curve2.n_intervals)
        return self.resample_curve(curve1, n), self.resample_curve(curve2, n)

    def manifold_distance(
        self,
        curve1: ManifoldCurve,
        curve2: ManifoldCurve,
        with_basepoint: Optional[bool] = None
    ) -> float:
        """
        ‖R(c1) − R(c2)‖_{L²}, plus d_M(c1(0), c2(0)) when the basepoint term is enabled.
        """
        curve1, curve2 = self.harmonize(curve1, curve2)
        value = self.calculus.lp_norm(
            self.srvt_manifold(curve1).q - self.srvt_manifold(curve2).q, 2.0
        )
        if self.with_basepoint if with_basepoint is None else with_basepoint:
            value += self.spec.distance(curve1.points[0], curve2.points[0])
        return value

    def section_norm(
        self,
        curve: ManifoldCurve,
        field: Union[np.ndarray, Sequence[np.ndarray]],
        p: Union[float, PExponent] = 2.0,
        kind: str = "L0"
    ) -> float:
        """
        Norm of a vector field along c, computed in T_{c(0)}M after
        transporting an orthonormal frame along c.

        Args:
            curve: Base curve
            field: N+1 vectors, entry i tangent at c_i
            p: Exponent
            kind: "L0" for the L^p norm of pointwise norms, "AC1" for
                ‖X(0)‖ + ‖∇_c X‖_p

        Returns:
            Nonnegative scalar
        """
        field = np.asarray(field, dtype=float)
        if field.shape != curve.points.shape:
            raise DimensionMismatch("Need one tangent vector per grid point")
        coordinates = self.transported_coordinates(curve, field)
        if kind == "L0":
            return self.calculus.lp_norm(StepFunction(coordinates[:-1]), p)
        if kind == "AC1":
            return self.calculus.ac_norm(SampledCurve(coordinates), p)
        raise ValueError(f"Unknown section norm kind {kind}")

    def transported_coordinates(self, curve: ManifoldCurve, field: np.ndarray) -> np.ndarray:
        """
        Coordinates of X(t_i) in the parallel frame along c started from an
        orthonormal frame of T_{c(0)}M.
        """
        frame0 = self.spec.frame(curve.points[0])
        frames = self.spec.transport_along_curve(curve.points, frame0)
        return np.array([
            [self.spec.inner(point, frames[i][:, r], field[i]) for r in range(frame0.shape[1])]
            for i, point in enumerate(curve.points)
        ])

    def geodesic(self, curve1: ManifoldCurve, curve2: ManifoldCurve, steps: int) -> List[ManifoldCurve]:
        """Linear interpolation of SRVTs; start points move along the geodesic between them"""
        if steps < 1:
            raise ValueError("Geodesic needs at least one step")
        curve1, curve2 = self.harmonize(curve1, curve2)
        q1, q2 = self.srvt_manifold(curve1).q, self.srvt_manifold(curve2).q
        path = []
        for j in range(steps + 1):
            s = j / steps
            if j == 0:
                path.append(curve1)
            elif j == steps:
                path.append(curve2)
            else:
                start = self.spec.geodesic_point(curve1.points[0], curve2.points[0], s)
                path.append(self.srvt_manifold_inverse((1.0 - s) * q1 + s * q2, start))
        return path
