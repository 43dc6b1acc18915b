"""Error types raised by the SRVT services.

All errors derive from ValueError so that callers can keep catching the
plain validation error.
"""

from typing import Optional


class SRVTError(ValueError):
    """Base class for all package errors"""


class DimensionMismatch(SRVTError):
    """Operands live in spaces of different dimension"""


class GroupKindMismatch(SRVTError):
    """Operands belong to different matrix Lie groups"""


class CurveFormatError(SRVTError):
    """
    A curve file could not be parsed or violates its kind's invariants.

    Attributes:
        path: Offending file
        index: Grid index of the bad sample, if the problem is local
    """

    def __init__(self, path: str, message: str, index: Optional[int] = None):
        self.path = path
        self.index = index
        where = f"{path}" if index is None else f"{path} (grid index {index})"
        super().__init__(f"{where}: {message}")


class AngleNearPi(SRVTError):
    """
    Rotation angle too close to π for the principal logarithm.
    The caller should refine the grid.
    """

    def __init__(self, angle: float, index: Optional[int] = None):
        self.angle = angle
        self.index = index
        where = "" if index is None else f" on subinterval {index}"
        super().__init__(
            f"rotation angle {angle:.9f} is too close to pi{where}; refine the grid"
        )


class CutLocusViolation(SRVTError):
    """A point lies within tolerance of the cut locus of the reference point"""

    def __init__(self, index: Optional[int] = None, detail: str = ""):
        self.index = index
        where = "" if index is None else f" at grid index {index}"
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"point too close to the cut locus{where}{suffix}")


class GeodesicLeftChart(SRVTError):
    """A chart geodesic or transport left the chart domain"""

    def __init__(self, index: Optional[int] = None):
        self.index = index
        where = "" if index is None else f" at grid index {index}"
        super().__init__(f"integration left the chart domain{where}")
