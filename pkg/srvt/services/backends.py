"""Curve backends - one uniform surface per curve kind for the command line"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Union

import numpy as np

from ..config import SRVTConfig
from ..models import (
    GroupCurve,
    GroupKind,
    KindSelector,
    ManifoldCurve,
    SampledCurve,
    StepFunction,
    WarpingFunction,
)
from .alignment import AlignmentService
from .calculus import CalculusService
from .euclidean import EuclideanSRVTService
from .geometry import ManifoldSpec
from .lie import LieSRVTService
from .manifold import ManifoldSRVTService
from .scaling import ScalingService

Curve = Union[SampledCurve, ManifoldCurve, GroupCurve]


class Metric(Enum):
    PLAIN = "plain"
    BASED = "based"
    SHAPE = "shape"


@dataclass
class AlignmentResult:
    """
    Outcome of aligning a second curve to a first.

    Attributes:
        warped: Second curve reparametrized by phi
        phi: Optimal warp
        unaligned: SRVT distance before alignment
        aligned: SRVT distance after alignment
    """
    warped: Curve
    phi: WarpingFunction
    unaligned: float
    aligned: float


class CurveBackend(ABC):
    """Distances, geodesics and alignment of one curve kind"""

    def __init__(self, config: SRVTConfig):
        self.config = config
        self.alignment = AlignmentService(config.slopes, config)

    @abstractmethod
    def srvt(self, curve: Curve) -> StepFunction:
        """SRVT image in a fixed vector space"""

    @abstractmethod
    def plain_distance(self, a: Curve, c: Curve) -> float:
        """Distance of the SRVT images"""

    @abstractmethod
    def based_distance(self, a: Curve, c: Curve) -> float:
        """Start point term plus the SRVT distance"""

    @abstractmethod
    def resample(self, curve: Curve, n_intervals: int) -> Curve:
        """Curve on the uniform grid with n_intervals subintervals"""

    @abstractmethod
    def geodesic(self, a: Curve, c: Curve, steps: int) -> List[Curve]:
        """steps+1 curves from a to c"""

    def harmonize(self, a: Curve, c: Curve):
        n = max(a.n_intervals, c.n_intervals)
        return self.resample(a, n), self.resample(c, n)

    def distance(self, a: Curve, c: Curve, metric: Metric = Metric.BASED) -> float:
        if metric is Metric.PLAIN:
            return self.plain_distance(a, c)
        if metric is Metric.BASED:
            return self.based_distance(a, c)
        a, c = self.harmonize(a, c)
        return self.alignment.shape_distance(a, c, self.srvt)

    def align(self, a: Curve, c: Curve) -> AlignmentResult:
        """Find the warp φ minimizing the SRVT distance of a and c∘φ"""
        a, c = self.harmonize(a, c)
        qa, qc = self.srvt(a), self.srvt(c)
        phi, aligned = self.alignment.optimal_warp(qa, qc)
        unaligned = self.alignment.identity_cost(qa, qc)
        return AlignmentResult(self.alignment.warp(c, phi), phi, unaligned, aligned)


class EuclideanBackend(CurveBackend):

    def __init__(self, config: SRVTConfig):
        super().__init__(config)
        self.service = EuclideanSRVTService(ScalingService(zero_threshold=config.zero_threshold))

    def srvt(self, curve):
        return self.service.srvt(curve)

    def plain_distance(self, a, c):
        return self.service.distance(a, c)

    def based_distance(self, a, c):
        return self.service.distance_with_basepoint(a, c)

    def resample(self, curve, n_intervals):
        return CalculusService.resample_curve(curve, n_intervals)

    def geodesic(self, a, c, steps):
        return self.service.geodesic(a, c, steps)


class LieBackend(CurveBackend):

    def __init__(self, kind: GroupKind, config: SRVTConfig):
        super().__init__(config)
        self.service = LieSRVTService(kind, config)

    def srvt(self, curve):
        return self.service.srvt_lie(curve)

    def plain_distance(self, a, c):
        return self.service.lie_distance(a, c)

    def based_distance(self, a, c):
        return self.service.lie_distance_with_basepoint(a, c)

    def resample(self, curve, n_intervals):
        return self.service.resample_curve(curve, n_intervals)

    def geodesic(self, a, c, steps):
        return self.service.geodesic(a, c, steps)


class ManifoldCurveBackend(CurveBackend):

    def __init__(self, spec: ManifoldSpec, star, config: SRVTConfig):
        super().__init__(config)
        self.service = ManifoldSRVTService(spec, star, config)

    def srvt(self, curve):
        return self.service.srvt_manifold(curve).q

    def plain_distance(self, a, c):
        return self.service.manifold_distance(a, c, with_basepoint=False)

    def based_distance(self, a, c):
        return self.service.manifold_distance(a, c, with_basepoint=True)

    def resample(self, curve, n_intervals):
        return self.service.resample_curve(curve, n_intervals)

    def geodesic(self, a, c, steps):
        return self.service.geodesic(a, c, steps)


def create_backend(
    selector: KindSelector,
    config: SRVTConfig,
    spec: Optional[ManifoldSpec] = None,
    star: Optional[np.ndarray] = None
) -> CurveBackend:
    """
    Build the backend for a curve kind.

    Args:
        selector: Curve kind
        config: Shared configuration
        spec: Geometry of manifold curves
        star: Reference point, required for manifold curves

    Returns:
        Backend instance
    """
    if selector.kind.is_group:
        return LieBackend(GroupKind(selector.kind.value), config)
    if selector.kind.is_manifold:
        if spec is None or star is None:
            raise ValueError(f"{selector} curves need a reference point (--star)")
        return ManifoldCurveBackend(spec, star, config)
    return EuclideanBackend(config)
