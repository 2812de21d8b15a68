from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...errors import DimensionMismatchError, NonFiniteInputError
from ...linalg.models import as_dense_matrix

DEFAULT_GRID_POINTS = 10001
GRID_MARGIN = 5.0


@dataclass(frozen=True)
class Kde:
    """Weighted kernel density estimate Σ_i w_i k_h(x, s_i).

    Weights are not required to sum to one; equalization weights generally don't.
    """

    samples: np.ndarray
    bandwidth: float
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim == 1:
            samples = samples[:, None]
        samples = as_dense_matrix(samples, "kde samples")
        object.__setattr__(self, "samples", samples)
        if not self.bandwidth > 0:
            raise ValueError(f"kde bandwidth must be positive, got {self.bandwidth}")
        if self.weights is None:
            weights = np.full(samples.shape[0], 1.0 / samples.shape[0])
        else:
            weights = np.asarray(self.weights, dtype=np.float64)
        if weights.shape != (samples.shape[0],):
            raise DimensionMismatchError(f"expected {samples.shape[0]} kde weights, got shape {weights.shape}")
        if not np.all(np.isfinite(weights)):
            raise NonFiniteInputError("kde weights contain NaN or Inf entries")
        object.__setattr__(self, "weights", weights)

    @property
    def m(self) -> int:
        return self.samples.shape[0]

    @property
    def dim(self) -> int:
        return self.samples.shape[1]


@dataclass(frozen=True)
class QuadratureGrid:
    """Evenly spaced 1-D abscissae on [lo, hi]."""

    lo: float
    hi: float
    points: int = DEFAULT_GRID_POINTS

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError(f"grid needs hi > lo, got [{self.lo}, {self.hi}]")
        if self.points < 3:
            raise ValueError(f"grid needs at least 3 points, got {self.points}")

    @classmethod
    def around(cls, samples, sigma: float, points: int = DEFAULT_GRID_POINTS) -> "QuadratureGrid":
        """[min - 5σ, max + 5σ] around the samples."""
        samples = np.asarray(samples, dtype=np.float64).ravel()
        return cls(float(samples.min() - GRID_MARGIN * sigma), float(samples.max() + GRID_MARGIN * sigma), points)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.points - 1)

    def abscissae(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)
