"""Core services for the SRVT package"""

from .calculus import CalculusService
from .scaling import ScalingService
from .euclidean import EuclideanSRVTService
from .lie import LieSRVTService
from .geometry import ManifoldSpec, Sphere2, ChartManifold
from .charts import get_chart, list_charts
from .manifold import ManifoldSRVTService, TransportedSRVT
from .alignment import AlignmentService
from .backends import CurveBackend, Metric, AlignmentResult, create_backend
from .storage import CurveFileService
from .matrix import DistanceMatrixService, DistanceMatrix
from .visualization import VisualizationService

__all__ = [
    'CalculusService',
    'ScalingService',
    'EuclideanSRVTService',
    'LieSRVTService',
    'ManifoldSpec',
    'Sphere2',
    'ChartManifold',
    'get_chart',
    'list_charts',
    'ManifoldSRVTService',
    'TransportedSRVT',
    'AlignmentService',
    'CurveBackend',
    'Metric',
    'AlignmentResult',
    'create_backend',
    'CurveFileService',
    'DistanceMatrixService',
    'DistanceMatrix',
    'VisualizationService',
]
