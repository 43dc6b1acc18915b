"""Visualization service - plot-ready data for geodesics, warps and matrices"""

import json
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from ..models import CurveKind, GroupCurve, KindSelector, ManifoldCurve, WarpingFunction
from .backends import AlignmentResult, Curve
from .charts import stereo_to_sphere
from .matrix import DistanceMatrix


class VisualizationService:
    """
    Chart data for external plotting tools.
    Every chart is a dict with a 'type' and a 'title'.
    """

    @staticmethod
    def ambient_points(curve: Curve, selector: KindSelector) -> np.ndarray:
        """
        Coordinates to draw a curve with: the samples themselves, R³ for the
        stereographic sphere, the moving z-axis for rotations and the
        translation part for rigid motions.
        """
        if isinstance(curve, GroupCurve):
            if selector.kind is CurveKind.SO3:
                return curve.matrices[:, :, 2]
            return curve.matrices[:, :3, 3]
        if isinstance(curve, ManifoldCurve):
            if selector.chart == "stereographic-sphere":
                return np.array([stereo_to_sphere(p) for p in curve.points])
            return np.asarray(curve.points)
        return np.asarray(curve.values)

    def geodesic_chart(self, path: Sequence[Curve], selector: KindSelector) -> Dict:
        steps = len(path) - 1
        return {
            'type': 'curve_series',
            'title': f'SRVT geodesic ({selector})',
            'series': [
                {
                    's': j / steps,
                    'points': self.ambient_points(curve, selector).tolist(),
                }
                for j, curve in enumerate(path)
            ],
        }

    @staticmethod
    def warp_chart(phi: WarpingFunction, result: Optional[AlignmentResult] = None) -> Dict:
        chart = {
            'type': 'line',
            'title': 'Optimal warp',
            'labels': phi.times.tolist(),
            'data': phi.values.tolist(),
        }
        if result is not None:
            chart['metadata'] = {'unaligned': result.unaligned, 'aligned': result.aligned}
        return chart

    @staticmethod
    def matrix_chart(matrix: DistanceMatrix) -> Dict:
        return {
            'type': 'heatmap',
            'title': 'Pairwise distances',
            'labels': list(matrix.labels),
            'data': [[None if np.isnan(v) else float(v) for v in row] for row in matrix.values],
        }

    @staticmethod
    def write(path: Union[str, Path], charts: Union[Dict, List[Dict]]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(charts, indent=2) + "\n", encoding="utf-8")
        return path
