"""Plate configuration."""

from __future__ import annotations

import dataclasses
import math

from .errors import DomainError


@dataclasses.dataclass(frozen=True)
class PlateConfig:
    """Geometry and material constants of the plate ``]0, pi[ x ]-ell, ell[``.

    Attributes:
        ell: Half-width of the plate.
        sigma: Poisson ratio, strictly between 0 and 1.
        d: Stiffening strength of the reinforcement, non-negative.
    """

    ell: float = math.pi / 150
    sigma: float = 0.2
    d: float = 2.0

    def __post_init__(self):
        if not (math.isfinite(self.ell) and self.ell > 0):
            raise DomainError(f"ell must be positive, got {self.ell!r}")
        if not 0 < self.sigma < 1:
            raise DomainError(f"sigma must lie in (0, 1), got {self.sigma!r}")
        if not (math.isfinite(self.d) and self.d >= 0):
            raise DomainError(f"d must be non-negative, got {self.d!r}")

    def replace(self, **changes) -> "PlateConfig":
        """Returns a copy with some fields changed."""
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


PRESET = PlateConfig()
