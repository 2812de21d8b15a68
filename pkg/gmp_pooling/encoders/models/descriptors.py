from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...errors import DimensionMismatchError, EmptyInputError, NonFiniteInputError
from ...linalg.models import as_dense_matrix


@dataclass(frozen=True)
class DescriptorSet:
    """The N x d local descriptors of one image, with optional (x, y, w, h) patch rectangles."""

    descriptors: np.ndarray
    geometry: Optional[np.ndarray] = None

    def __post_init__(self):
        descriptors = as_dense_matrix(self.descriptors, "descriptors")
        object.__setattr__(self, "descriptors", descriptors)
        if self.geometry is not None:
            geometry = np.asarray(self.geometry, dtype=np.float64)
            if geometry.shape != (descriptors.shape[0], 4):
                raise DimensionMismatchError(
                    f"geometry must have shape ({descriptors.shape[0]}, 4), got {geometry.shape}")
            if np.any(geometry[:, 2:] < 0):
                raise ValueError("patch widths and heights must be non-negative")
            object.__setattr__(self, "geometry", geometry)

    @classmethod
    def from_points(cls, values) -> "DescriptorSet":
        """Build a set from a flat list of scalars (1-dim descriptors) or a list of rows."""
        array = np.asarray(values, dtype=np.float64)
        if array.ndim == 1:
            array = array[:, None]
        return cls(array)

    @property
    def n(self) -> int:
        return self.descriptors.shape[0]

    @property
    def dim(self) -> int:
        return self.descriptors.shape[1]


@dataclass(frozen=True)
class Codebook:
    """C x d centroids."""

    centroids: np.ndarray

    def __post_init__(self):
        centroids = as_dense_matrix(self.centroids, "codebook")
        if len(np.unique(centroids, axis=0)) != centroids.shape[0]:
            raise ValueError("codebook centroids must be pairwise distinct")
        object.__setattr__(self, "centroids", centroids)

    @property
    def size(self) -> int:
        return self.centroids.shape[0]

    @property
    def dim(self) -> int:
        return self.centroids.shape[1]


@dataclass(frozen=True)
class GmmModel:
    """Diagonal-covariance Gaussian mixture with G components in d dimensions."""

    means: np.ndarray
    variances: np.ndarray
    mixture_weights: np.ndarray

    def __post_init__(self):
        means = as_dense_matrix(self.means, "gmm means")
        variances = as_dense_matrix(self.variances, "gmm variances")
        weights = np.asarray(self.mixture_weights, dtype=np.float64)
        if variances.shape != means.shape:
            raise DimensionMismatchError(f"variances shape {variances.shape} != means shape {means.shape}")
        if weights.shape != (means.shape[0],):
            raise DimensionMismatchError(f"expected {means.shape[0]} mixture weights, got shape {weights.shape}")
        if not np.all(variances > 0):
            raise ValueError("gmm variances must be strictly positive")
        if not np.all(weights > 0):
            raise ValueError("gmm mixture weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-9:
            raise ValueError(f"gmm mixture weights sum to {weights.sum()}, expected 1")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "variances", variances)
        object.__setattr__(self, "mixture_weights", weights)

    @property
    def n_components(self) -> int:
        return self.means.shape[0]

    @property
    def dim(self) -> int:
        return self.means.shape[1]


@dataclass(frozen=True)
class EmkParams:
    """Random Fourier directions and phases for the Gaussian match kernel."""

    directions: np.ndarray
    phases: np.ndarray
    sigma: float
    seed: int

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"EMK bandwidth must be positive, got {self.sigma}")
        if self.directions.shape[0] != self.phases.shape[0]:
            raise DimensionMismatchError("EMK directions and phases must have the same count")

    @classmethod
    def draw(cls, seed: int, dim: int, n_features: int, sigma: float) -> "EmkParams":
        """Directions ~ Normal(0, I/sigma²), phases ~ Uniform[0, 2π), from ``seed`` only."""
        if not sigma > 0:
            raise ValueError(f"EMK bandwidth must be positive, got {sigma}")
        if n_features < 2 or n_features % 2:
            raise ValueError(f"EMK dimensionality must be even and >= 2, got {n_features}")
        rng = np.random.default_rng(seed)
        directions = rng.normal(0.0, 1.0 / sigma, size=(n_features, dim))
        phases = rng.uniform(0.0, 2.0 * np.pi, size=n_features)
        return cls(directions=directions, phases=phases, sigma=float(sigma), seed=seed)

    @property
    def n_features(self) -> int:
        return self.directions.shape[0]

    @property
    def dim(self) -> int:
        return self.directions.shape[1]


@dataclass(frozen=True)
class BlockStructure:
    """Rows are grouped in blocks of ``block_size``; column n lives in block ``block_ids[n]``."""

    block_size: int
    block_ids: np.ndarray

    def __post_init__(self):
        if self.block_size < 1:
            raise ValueError(f"block size must be >= 1, got {self.block_size}")
        object.__setattr__(self, "block_ids", np.asarray(self.block_ids, dtype=np.intp))

    def members(self, block: int) -> np.ndarray:
        """Column indices assigned to ``block`` (the inverted file)."""
        return np.flatnonzero(self.block_ids == block)

    def rows(self, block: int) -> slice:
        return slice(block * self.block_size, (block + 1) * self.block_size)


@dataclass(frozen=True)
class EncodingMatrix:
    """D x N per-patch encodings, one column per patch."""

    phi: np.ndarray
    block_structure: Optional[BlockStructure] = None

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=np.float64)
        if phi.ndim != 2:
            raise DimensionMismatchError(f"encoding matrix must be 2-D, got shape {phi.shape}")
        if phi.shape[1] == 0:
            raise EmptyInputError("encoding matrix has no columns")
        if not np.all(np.isfinite(phi)):
            raise NonFiniteInputError("encoding matrix contains NaN or Inf entries")
        object.__setattr__(self, "phi", phi)

        structure = self.block_structure
        if structure is not None:
            D, N = phi.shape
            if D % structure.block_size:
                raise DimensionMismatchError(f"D={D} is not divisible by block size {structure.block_size}")
            if structure.block_ids.shape != (N,):
                raise DimensionMismatchError(f"expected {N} block ids, got shape {structure.block_ids.shape}")
            n_blocks = D // structure.block_size
            if N and (structure.block_ids.min() < 0 or structure.block_ids.max() >= n_blocks):
                raise ValueError(f"block ids must lie in [0, {n_blocks})")
            outside = np.ones((n_blocks, N), dtype=bool)
            outside[structure.block_ids, np.arange(N)] = False
            if np.any(phi[np.repeat(outside, structure.block_size, axis=0)]):
                raise ValueError("encoding columns have support outside their declared block")

    @property
    def dim(self) -> int:
        return self.phi.shape[0]

    @property
    def n(self) -> int:
        return self.phi.shape[1]

    @property
    def n_blocks(self) -> int:
        if self.block_structure is None:
            return 1
        return self.dim // self.block_structure.block_size

    def with_columns(self, columns) -> "EncodingMatrix":
        """Sub-encoding restricted to ``columns`` (block ids follow along)."""
        columns = np.asarray(columns)
        structure = None
        if self.block_structure is not None:
            structure = BlockStructure(self.block_structure.block_size, self.block_structure.block_ids[columns])
        return EncodingMatrix(self.phi[:, columns], structure)


@dataclass(frozen=True)
class OccurrenceHistogram:
    """Per-centroid assignment counts; sums to N of the source descriptor set."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if np.any(counts < 0):
            raise ValueError("histogram counts must be non-negative")
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def proportions(self) -> np.ndarray:
        return self.counts / self.total
