"""Data models for the SRVT package"""

from .curve import SampledCurve, BasedCurve, StepFunction, PExponent
from .group import GroupKind, GroupElement, AlgebraElement, GroupCurve, AlgebraStepFunction
from .manifold import ManifoldPoint, TangentVector, ManifoldCurve
from .warp import WarpingFunction
from .kind import CurveKind, KindSelector

__all__ = [
    'SampledCurve',
    'BasedCurve',
    'StepFunction',
    'PExponent',
    'GroupKind',
    'GroupElement',
    'AlgebraElement',
    'GroupCurve',
    'AlgebraStepFunction',
    'ManifoldPoint',
    'TangentVector',
    'ManifoldCurve',
    'WarpingFunction',
    'CurveKind',
    'KindSelector',
]
