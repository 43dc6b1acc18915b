"""Euclidean SRVT service - transform, inverse, distances and geodesics in R^d"""

from typing import List, Optional

import numpy as np

from ..errors import DimensionMismatch
from ..models import SampledCurve, StepFunction
from .calculus import CalculusService
from .scaling import ScalingService


class EuclideanSRVTService:
    """
    The classical square root velocity transform R(c) = ċ/√‖ċ‖.

    R forgets the starting point; `srvt_inverse` takes it back as an argument
    and `distance_with_basepoint` adds it to the metric.
    """

    def __init__(self, scaling: Optional[ScalingService] = None):
        self.calculus = CalculusService()
        self.scaling = scaling or ScalingService()

    def srvt(self, curve: SampledCurve) -> StepFunction:
        """R(c) = sc(ċ)"""
        return self.scaling.scale(self.calculus.derivative(curve))

    def srvt_inverse(self, q: StepFunction, start) -> SampledCurve:
        """
        Reconstruct the curve with SRVT q starting at `start`.

        Raises:
            DimensionMismatch: if start and q have different dimension
        """
        return self.calculus.antiderivative(self.scaling.unscale(q), start)

    def distance(self, a: SampledCurve, c: SampledCurve) -> float:
        """
        Pullback distance ‖R(a) − R(c)‖_{L²}.

        Translation invariant; a true distance on curves starting at the origin.
        """
        a, c = self.calculus.harmonize_curves(a, c)
        return self.calculus.lp_norm(self.srvt(a) - self.srvt(c), 2.0)

    def distance_with_basepoint(self, a: SampledCurve, c: SampledCurve) -> float:
        """Distance of the pair (start point, SRVT): ‖a_0 − c_0‖ + d(a, c)"""
        if a.dim != c.dim:
            raise DimensionMismatch(f"Curves have dimensions {a.dim} and {c.dim}")
        return float(np.linalg.norm(a.start - c.start)) + self.distance(a, c)

    def geodesic(self, a: SampledCurve, c: SampledCurve, steps: int) -> List[SampledCurve]:
        """
        Interpolate linearly in SRVT space and map back.

        Args:
            a: First endpoint
            c: Second endpoint
            steps: Number k of subdivisions; k+1 curves are returned

        Returns:
            List of curves, entry j at parameter s = j/k
        """
        if steps < 1:
            raise ValueError("Geodesic needs at least one step")
        a, c = self.calculus.harmonize_curves(a, c)
        qa, qc = self.srvt(a), self.srvt(c)
        path = []
        for j in range(steps + 1):
            s = j / steps
            if j == 0:
                path.append(a)
            elif j == steps:
                path.append(c)
            else:
                q = (1.0 - s) * qa + s * qc
                path.append(self.srvt_inverse(q, (1.0 - s) * a.start + s * c.start))
        return path
