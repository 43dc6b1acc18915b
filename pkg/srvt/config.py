"""Runtime configuration for the SRVT services"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple


DEFAULT_SLOPES: Tuple[Fraction, ...] = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(1, 1),
    Fraction(3, 2),
    Fraction(2, 1),
    Fraction(3, 1),
)


def parse_slopes(text: str) -> Tuple[Fraction, ...]:
    """
    Parse a comma separated slope list such as "1/2,1,2" or "0.5,1,2".

    Returns:
        Sorted tuple of distinct positive fractions
    """
    slopes = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        value = Fraction(token).limit_denominator(12)
        if value <= 0:
            raise ValueError(f"Slope must be positive, got {token}")
        slopes.add(value)
    if Fraction(1) not in slopes:
        raise ValueError("Slope set must contain 1 (identity warp)")
    return tuple(sorted(slopes))


@dataclass(frozen=True)
class SRVTConfig:
    """
    Tolerances and algorithm choices shared by the services.

    Attributes:
        tol_branch: Distance below π (radians) at which the group log refuses
        tol_cut: Distance from the antipode (radians) treated as cut locus
        zero_threshold: Norms below this use the zero branch of the scaling
        slopes: Admissible warp slopes for the alignment search
        algebra_weights: Diagonal inner product on the Lie algebra coordinates
        chart_substeps: Midpoint substeps per chart geodesic / transport
        inverse_scheme: Manifold inverse stepping, "euler" or "midpoint"
        with_basepoint: Add the start point term to manifold distances
        workers: Thread pool size for distance matrices
    """
    tol_branch: float = 1e-6
    tol_cut: float = 1e-3
    zero_threshold: float = 1e-300
    slopes: Tuple[Fraction, ...] = field(default=DEFAULT_SLOPES)
    algebra_weights: Optional[Tuple[float, ...]] = None
    chart_substeps: int = 16
    inverse_scheme: str = "euler"
    with_basepoint: bool = False
    workers: int = 4

    def __post_init__(self):
        if self.tol_branch <= 0 or self.tol_cut <= 0:
            raise ValueError("Tolerances must be positive")
        if self.chart_substeps < 1:
            raise ValueError("chart_substeps must be >= 1")
        if self.inverse_scheme not in ("euler", "midpoint"):
            raise ValueError(f"Unknown inverse scheme {self.inverse_scheme}")
        if self.algebra_weights is not None and min(self.algebra_weights) <= 0:
            raise ValueError("Algebra weights must be positive")
        if Fraction(1) not in self.slopes:
            raise ValueError("Slope set must contain 1 (identity warp)")
