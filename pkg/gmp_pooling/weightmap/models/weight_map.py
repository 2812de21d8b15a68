from dataclasses import dataclass

import numpy as np

from ...errors import EmptyInputError


@dataclass(frozen=True)
class WeightMap:
    """H x W pixel grid of accumulated patch weights."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 1:
            raise EmptyInputError(f"weight map needs at least one pixel, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]
