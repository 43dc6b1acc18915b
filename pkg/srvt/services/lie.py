"""Lie group SRVT service - exp/log, right logarithmic derivative, Evol and the SRVT on SO(3)/SE(3)"""

import logging
from typing import List, Optional

import numpy as np

from ..config import SRVTConfig
from ..errors import GroupKindMismatch
from ..models import (
    AlgebraElement,
    AlgebraStepFunction,
    GroupCurve,
    GroupElement,
    GroupKind,
)
from ..models.group import invert_matrices
from ..utils.grid import check_times, locate
from ..utils.liealg import se3_exp, se3_log, so3_exp, so3_log
from .calculus import CalculusService
from .scaling import ScalingService

logger = logging.getLogger(__name__)


class LieSRVTService:
    """
    SRVT for curves in a matrix Lie group G, built from the right
    Maurer-Cartan form: R(γ) = sc(δʳγ) with δʳγ = γ̇·γ⁻¹.

    Inverse: q ↦ Evol(sc⁻¹(q)) started at a given element.
    """

    def __init__(self, kind: GroupKind, config: Optional[SRVTConfig] = None):
        config = config or SRVTConfig()
        self.kind = kind
        self.tol_branch = config.tol_branch
        self.weights = None
        if config.algebra_weights is not None:
            self.weights = np.asarray(config.algebra_weights, dtype=float)
            if self.weights.shape != (kind.algebra_dim,):
                raise ValueError(f"{kind.value} needs {kind.algebra_dim} algebra weights")
        self.scaling = ScalingService(self.weights, config.zero_threshold)
        self.calculus = CalculusService()

    def _check_kind(self, kind: GroupKind):
        if kind is not self.kind:
            raise GroupKindMismatch(f"Service handles {self.kind.value}, got {kind.value}")

    def exp_coords(self, coords: np.ndarray) -> np.ndarray:
        """Batch exponential of algebra coordinates (k, m) → matrices (k, n, n)"""
        return so3_exp(coords) if self.kind is GroupKind.SO3 else se3_exp(coords)

    def log_matrices(self, matrices: np.ndarray) -> np.ndarray:
        """Batch principal logarithm (k, n, n) → coordinates (k, m)"""
        if self.kind is GroupKind.SO3:
            return so3_log(matrices, self.tol_branch)
        return se3_log(matrices, self.tol_branch)

    def group_exp(self, xi: AlgebraElement, t: float = 1.0) -> GroupElement:
        """exp(t·ξ̂)"""
        self._check_kind(xi.kind)
        return GroupElement(self.exp_coords(t * xi.coords[None])[0], self.kind)

    def group_log(self, g: GroupElement) -> AlgebraElement:
        """
        Principal logarithm.

        Raises:
            AngleNearPi: if the rotation angle exceeds π − tol_branch
        """
        self._check_kind(g.kind)
        return AlgebraElement(self.log_matrices(g.matrix[None])[0], self.kind)

    def increments(self, curve: GroupCurve) -> np.ndarray:
        """Right quotients g_{i+1}·g_i⁻¹"""
        return curve.matrices[1:] @ invert_matrices(curve.matrices[:-1], self.kind)

    def right_log_derivative(self, curve: GroupCurve) -> AlgebraStepFunction:
        """
        Discrete δʳ: ξ_i = N·log(g_{i+1}·g_i⁻¹).

        Raises:
            AngleNearPi: naming the subinterval whose increment is too large
        """
        self._check_kind(curve.kind)
        coords = self.log_matrices(self.increments(curve))
        return AlgebraStepFunction(curve.n_intervals * coords, self.kind)

    def evolve(self, xi: AlgebraStepFunction, g0: GroupElement) -> GroupCurve:
        """
        Evol: g_0 = g0, g_{i+1} = exp(ξ_i/N)·g_i.

        Exact for piecewise-constant ξ.
        """
        self._check_kind(xi.kind)
        self._check_kind(g0.kind)
        steps = self.exp_coords(xi.values / xi.n_intervals)
        matrices = np.empty((xi.n_intervals + 1,) + g0.matrix.shape)
        matrices[0] = g0.matrix
        for i, step in enumerate(steps):
            matrices[i + 1] = step @ matrices[i]
        if self.kind is GroupKind.SE3:
            matrices[:, 3, :] = (0.0, 0.0, 0.0, 1.0)
        return GroupCurve(matrices, self.kind)

    def srvt_lie(self, curve: GroupCurve) -> AlgebraStepFunction:
        """R(γ) = sc(δʳγ)"""
        return self.scaling.scale(self.right_log_derivative(curve))

    def srvt_lie_inverse(self, q: AlgebraStepFunction, g0: GroupElement) -> GroupCurve:
        """Evol(sc⁻¹(q)) started at g0"""
        return self.evolve(self.scaling.unscale(q), g0)

    def algebra_lp_norm(self, func: AlgebraStepFunction, p: float = 2.0) -> float:
        """L^p norm using the configured inner product on the algebra"""
        values = func.values if self.weights is None else func.values * np.sqrt(self.weights)
        return self.calculus.lp_norm(AlgebraStepFunction(values, self.kind), p)

    def lie_distance(self, curve1: GroupCurve, curve2: GroupCurve) -> float:
        """
        ‖R(γ1) − R(γ2)‖_{L²}; invariant under simultaneous constant right translation.

        Raises:
            GroupKindMismatch: if the curves belong to different groups
        """
        if curve1.kind is not curve2.kind:
            raise GroupKindMismatch(f"Cannot compare {curve1.kind.value} with {curve2.kind.value}")
        curve1, curve2 = self.harmonize(curve1, curve2)
        return self.algebra_lp_norm(self.srvt_lie(curve1) - self.srvt_lie(curve2))

    def start_distance(self, g1: GroupElement, g2: GroupElement) -> float:
        """Right-invariant distance ‖log(g2·g1⁻¹)‖ between two elements"""
        coords = self.log_matrices((g2.matrix @ g1.inverse().matrix)[None])[0]
        if self.weights is not None:
            coords = coords * np.sqrt(self.weights)
        return float(np.linalg.norm(coords))

    def lie_distance_with_basepoint(self, curve1: GroupCurve, curve2: GroupCurve) -> float:
        """Start point term plus the SRVT distance"""
        return self.start_distance(curve1.start, curve2.start) + self.lie_distance(curve1, curve2)

    def group_geodesic(self, g1: GroupElement, g2: GroupElement, s: float) -> GroupElement:
        """Point at parameter s on exp(s·log(g2·g1⁻¹))·g1"""
        coords = self.log_matrices((g2.matrix @ g1.inverse().matrix)[None])
        return GroupElement(self.exp_coords(s * coords)[0] @ g1.matrix, self.kind)

    def resample(self, curve: GroupCurve, times) -> np.ndarray:
        """Evaluate the curve at times, interpolating along right-invariant geodesics"""
        self._check_kind(curve.kind)
        times = check_times(times)
        index, fraction = locate(times, curve.n_intervals)
        coords = self.log_matrices(self.increments(curve))
        partial = self.exp_coords(fraction[:, None] * coords[index])
        out = partial @ curve.matrices[index]
        if self.kind is GroupKind.SE3:
            out[:, 3, :] = (0.0, 0.0, 0.0, 1.0)
        return out

    def resample_curve(self, curve: GroupCurve, n_intervals: int) -> GroupCurve:
        if n_intervals == curve.n_intervals:
            return curve
        return GroupCurve(self.resample(curve, np.linspace(0.0, 1.0, n_intervals + 1)), self.kind)

    def harmonize(self, curve1: GroupCurve, curve2: GroupCurve):
        n = max(curve1.n_intervals, curve2.n_intervals)
        return self.resample_curve(curve1, n), self.resample_curve(curve2, n)

    def geodesic(self, curve1: GroupCurve, curve2: GroupCurve, steps: int) -> List[GroupCurve]:
        """
        Interpolate linearly in SRVT space; start points move along the group geodesic.
        """
        if steps < 1:
            raise ValueError("Geodesic needs at least one step")
        curve1, curve2 = self.harmonize(curve1, curve2)
        q1, q2 = self.srvt_lie(curve1), self.srvt_lie(curve2)
        path = []
        for j in range(steps + 1):
            s = j / steps
            if j == 0:
                path.append(curve1)
            elif j == steps:
                path.append(curve2)
            else:
                start = self.group_geodesic(curve1.start, curve2.start, s)
                path.append(self.srvt_lie_inverse((1.0 - s) * q1 + s * q2, start))
        logger.debug("lie geodesic with %d steps on %d subintervals", steps, curve1.n_intervals)
        return path
