"""Curve kind model - which geometry a curve file lives in"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional


class CurveKind(Enum):
    EUCLIDEAN = "euclidean"
    SPHERE2 = "sphere2"
    SO3 = "so3"
    SE3 = "se3"
    CHART = "chart"

    @property
    def is_group(self) -> bool:
        return self in (CurveKind.SO3, CurveKind.SE3)

    @property
    def is_manifold(self) -> bool:
        return self in (CurveKind.SPHERE2, CurveKind.CHART)


@dataclass(frozen=True)
class KindSelector:
    """
    A curve kind plus the built-in chart name for chart curves.

    Attributes:
        kind: Geometry of the curve
        chart: Chart name, only for CurveKind.CHART
    """
    kind: CurveKind
    chart: Optional[str] = None

    def __post_init__(self):
        if self.kind is CurveKind.CHART and not self.chart:
            raise ValueError("Chart curves need a chart name (chart:<name>)")
        if self.kind is not CurveKind.CHART and self.chart is not None:
            raise ValueError(f"Kind {self.kind.value} takes no chart name")

    @classmethod
    def parse(cls, text: str) -> "KindSelector":
        """Parse "euclidean", "sphere2", "so3", "se3" or "chart:<name>" """
        name, _, chart = text.strip().partition(":")
        try:
            kind = CurveKind(name)
        except ValueError:
            raise ValueError(f"Unknown curve kind {text!r}") from None
        return cls(kind, chart or None)

    def __str__(self) -> str:
        return f"chart:{self.chart}" if self.chart else self.kind.value
