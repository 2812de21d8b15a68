from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.linalg import block_diag

from ...errors import DimensionMismatchError, EmptyInputError, NonFiniteInputError
from ..solver_types import SOLVE_METHODS


def as_dense_matrix(values, name: str = "matrix") -> np.ndarray:
    """Return ``values`` as a finite 2-D float64 array or raise."""
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got shape {matrix.shape}")
    if matrix.size == 0:
        raise EmptyInputError(f"{name} is empty (shape {matrix.shape})")
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteInputError(f"{name} contains NaN or Inf entries")
    return matrix


def as_vector(values, name: str = "vector") -> np.ndarray:
    """Return ``values`` as a finite 1-D float64 array or raise."""
    vector = np.asarray(values, dtype=np.float64)
    if vector.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-D, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise NonFiniteInputError(f"{name} contains NaN or Inf entries")
    return vector


@dataclass(frozen=True)
class BlockDiagonalMatrix:
    """Square blocks laid along the diagonal; ``offsets[i]`` is where block i starts."""

    blocks: List[np.ndarray]
    offsets: List[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.blocks:
            raise EmptyInputError("block-diagonal matrix needs at least one block")
        blocks = []
        for i, block in enumerate(self.blocks):
            block = np.asarray(block, dtype=np.float64)
            if block.ndim != 2 or block.shape[0] != block.shape[1]:
                raise DimensionMismatchError(f"block {i} is not square: shape {block.shape}")
            if not np.all(np.isfinite(block)):
                raise NonFiniteInputError(f"block {i} contains NaN or Inf entries")
            blocks.append(block)
        object.__setattr__(self, "blocks", blocks)

        sizes = [b.shape[0] for b in blocks]
        expected = list(np.concatenate(([0], np.cumsum(sizes)[:-1])).astype(int))
        if not self.offsets:
            object.__setattr__(self, "offsets", expected)
        elif list(self.offsets) != expected:
            raise DimensionMismatchError(
                f"offsets {list(self.offsets)} do not match block sizes {sizes}")

    @property
    def sizes(self) -> List[int]:
        return [b.shape[0] for b in self.blocks]

    @property
    def dimension(self) -> int:
        return int(sum(self.sizes))

    def to_dense(self) -> np.ndarray:
        """Assemble the full matrix."""
        return block_diag(*self.blocks)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        out = np.empty_like(x, dtype=np.float64)
        for offset, block in zip(self.offsets, self.blocks):
            stop = offset + block.shape[0]
            out[offset:stop] = block @ x[offset:stop]
        return out


@dataclass(frozen=True)
class SolveReport:
    """What a solver did: how many iterations, how well, and which method."""

    iterations: int
    residual_norm: float
    method: str
    converged: bool = True

    def __post_init__(self):
        if self.method not in SOLVE_METHODS:
            raise ValueError(f"Unknown solve method {self.method}")
        if not self.residual_norm >= 0:
            raise ValueError(f"residual_norm must be non-negative, got {self.residual_norm}")

    def to_dict(self):
        return {
            "iterations": self.iterations,
            "residual_norm": self.residual_norm,
            "method": self.method,
            "converged": self.converged
        }
