"""Storage service - curve files in JSON and CSV"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..config import SRVTConfig
from ..errors import CurveFormatError
from ..models import (
    CurveKind,
    GroupCurve,
    GroupKind,
    KindSelector,
    ManifoldCurve,
    SampledCurve,
    WarpingFunction,
)
from ..utils.liealg import matrices_to_quaternions, quaternions_to_matrices
from .charts import get_chart
from .geometry import ManifoldSpec, Sphere2

logger = logging.getLogger(__name__)

Curve = Union[SampledCurve, ManifoldCurve, GroupCurve]

SUFFIXES = (".json", ".csv")
DRIFT_TOL = 1e-6

_ROW_WIDTH = {CurveKind.SPHERE2: 3, CurveKind.SO3: 4, CurveKind.SE3: 7}


class CurveFileService:
    """
    Reads and writes curve files.

    JSON files carry their kind; CSV files are bare sample rows and take
    the kind from the caller. Unit vectors and quaternions may drift from
    norm 1 by DRIFT_TOL and are renormalized on read.
    """

    def __init__(self, config: Optional[SRVTConfig] = None):
        self.config = config or SRVTConfig()
        self._specs: Dict[KindSelector, ManifoldSpec] = {}

    def manifold_spec(self, selector: KindSelector) -> ManifoldSpec:
        """Geometry shared by every curve read with this selector"""
        if selector not in self._specs:
            if selector.kind is CurveKind.SPHERE2:
                self._specs[selector] = Sphere2(self.config.tol_cut)
            elif selector.kind is CurveKind.CHART:
                self._specs[selector] = get_chart(selector.chart, self.config.chart_substeps)
            else:
                raise ValueError(f"Kind {selector} is not a manifold")
        return self._specs[selector]

    @staticmethod
    def list_curve_files(directory: Union[str, Path]) -> List[Path]:
        """Curve files in a directory, sorted by file name"""
        directory = Path(directory)
        if not directory.is_dir():
            raise FileNotFoundError(f"Not a directory: {directory}")
        return sorted(
            (p for p in directory.iterdir() if p.is_file() and p.suffix.lower() in SUFFIXES),
            key=lambda p: p.name
        )

    def read(
        self,
        path: Union[str, Path],
        selector: Optional[KindSelector] = None
    ) -> Tuple[KindSelector, Curve]:
        """
        Load and validate a curve file.

        Args:
            path: JSON or CSV file
            selector: Expected kind; required for CSV, checked against JSON

        Returns:
            Tuple of (kind of the file, curve)

        Raises:
            CurveFormatError: on unreadable files, bad samples or a kind mismatch
        """
        path = Path(path)
        try:
            if path.suffix.lower() == ".csv":
                if selector is None:
                    selector = KindSelector(CurveKind.EUCLIDEAN)
                rows = self._read_csv(path)
                dim = None
            else:
                selector, rows, dim = self._read_json(path, selector)
        except OSError as e:
            raise CurveFormatError(str(path), f"cannot read file ({e.strerror})") from e

        samples = self._check_rows(path, rows, selector, dim)
        try:
            curve = self._build(samples, selector)
        except CurveFormatError:
            raise
        except ValueError as e:
            raise CurveFormatError(str(path), str(e)) from e
        logger.debug("read %s curve with %d samples from %s", selector, samples.shape[0], path)
        return selector, curve

    def _read_json(self, path: Path, selector: Optional[KindSelector]):
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise CurveFormatError(str(path), f"invalid JSON ({e.msg} at line {e.lineno})") from e
        if not isinstance(data, dict) or "samples" not in data:
            raise CurveFormatError(str(path), "expected an object with a 'samples' list")
        try:
            name = str(data.get("kind", "euclidean"))
            if name == CurveKind.CHART.value:
                chart = data.get("chart") or (selector.chart if selector else None)
                found = KindSelector(CurveKind.CHART, chart)
            else:
                found = KindSelector.parse(name)
        except ValueError as e:
            raise CurveFormatError(str(path), str(e)) from e
        if selector is not None and found != selector:
            raise CurveFormatError(str(path), f"file holds a {found} curve, expected {selector}")
        dim = data.get("dim")
        if dim is not None and (not isinstance(dim, int) or dim < 1):
            raise CurveFormatError(str(path), "'dim' must be a positive integer")
        return found, data["samples"], dim

    @staticmethod
    def _read_csv(path: Path) -> np.ndarray:
        try:
            return np.loadtxt(path, delimiter=",", ndmin=2)
        except ValueError as e:
            raise CurveFormatError(str(path), f"invalid CSV ({e})") from e

    def _check_rows(self, path: Path, rows, selector: KindSelector, dim: Optional[int]) -> np.ndarray:
        if not isinstance(rows, (list, np.ndarray)) or len(rows) < 2:
            raise CurveFormatError(str(path), "need at least 2 samples")
        if selector.kind in _ROW_WIDTH:
            width = _ROW_WIDTH[selector.kind]
        elif selector.kind is CurveKind.CHART:
            width = self.manifold_spec(selector).dim
        else:
            width = dim
        samples = []
        for index, row in enumerate(rows):
            try:
                values = np.asarray(row, dtype=float).reshape(-1)
            except (TypeError, ValueError):
                raise CurveFormatError(str(path), "sample is not a list of numbers", index) from None
            if width is None:
                width = values.shape[0]
            if values.shape[0] != width:
                raise CurveFormatError(
                    str(path), f"expected {width} values, got {values.shape[0]}", index
                )
            if not np.all(np.isfinite(values)):
                raise CurveFormatError(str(path), "NaN or Inf in sample", index)
            if selector.kind in (CurveKind.SPHERE2, CurveKind.SO3, CurveKind.SE3):
                values = self._renormalize(path, values, index)
            if selector.kind.is_manifold:
                try:
                    self.manifold_spec(selector).validate_point(values)
                except ValueError as e:
                    raise CurveFormatError(str(path), str(e), index) from None
            samples.append(values)
        return np.array(samples)

    @staticmethod
    def _renormalize(path: Path, values: np.ndarray, index: int) -> np.ndarray:
        head = 3 if values.shape[0] == 3 else 4
        norm = np.linalg.norm(values[:head])
        if abs(norm - 1.0) > DRIFT_TOL:
            raise CurveFormatError(str(path), f"norm {norm:.9g} is not 1", index)
        values = values.copy()
        values[:head] /= norm
        return values

    def _build(self, samples: np.ndarray, selector: KindSelector) -> Curve:
        if selector.kind is CurveKind.EUCLIDEAN:
            return SampledCurve(samples)
        if selector.kind.is_manifold:
            return ManifoldCurve(samples, self.manifold_spec(selector))
        rotations = quaternions_to_matrices(samples[:, :4])
        if selector.kind is CurveKind.SO3:
            return GroupCurve(rotations, GroupKind.SO3)
        matrices = np.zeros((samples.shape[0], 4, 4))
        matrices[:, :3, :3] = rotations
        matrices[:, :3, 3] = samples[:, 4:]
        matrices[:, 3, 3] = 1.0
        return GroupCurve(matrices, GroupKind.SE3)

    @staticmethod
    def samples(curve: Curve) -> np.ndarray:
        """File rows of a curve"""
        if isinstance(curve, GroupCurve):
            quaternions = matrices_to_quaternions(curve.matrices[:, :3, :3])
            if curve.kind is GroupKind.SO3:
                return quaternions
            return np.hstack((quaternions, curve.matrices[:, :3, 3]))
        if isinstance(curve, ManifoldCurve):
            return np.asarray(curve.points)
        return np.asarray(curve.values)

    def write(self, path: Union[str, Path], curve: Curve, selector: KindSelector) -> Path:
        """
        Write a curve in the format given by the file suffix.

        Returns:
            The written path
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        rows = self.samples(curve)
        if path.suffix.lower() == ".csv":
            np.savetxt(path, rows, delimiter=",", fmt="%.17g")
            return path
        data = {"kind": selector.kind.value}
        if selector.kind is CurveKind.CHART:
            data["chart"] = selector.chart
        if selector.kind in (CurveKind.EUCLIDEAN, CurveKind.CHART):
            data["dim"] = int(rows.shape[1])
        data["samples"] = [[float(x) for x in row] for row in rows]
        path.write_text(json.dumps(data) + "\n", encoding="utf-8")
        return path

    @staticmethod
    def write_warp(path: Union[str, Path], phi: WarpingFunction) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"phi": [float(x) for x in phi.values]}) + "\n", encoding="utf-8")
        return path
