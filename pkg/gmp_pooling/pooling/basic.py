import numpy as np

from ..encoders.models import EncodingMatrix
from ..errors import DimensionMismatchError
from .models import PatchWeights, PooledVector
from .pooling_types import AVERAGE, GMP_DUAL, MAX, SUM, WEIGHTED


def sum_pool(encoding: EncodingMatrix) -> PooledVector:
    """Φ 1_N."""
    return PooledVector(encoding.phi.sum(axis=1), provenance=SUM)


def average_pool(encoding: EncodingMatrix) -> PooledVector:
    return PooledVector(encoding.phi.mean(axis=1), provenance=AVERAGE)


def max_pool(encoding: EncodingMatrix) -> PooledVector:
    """Per-dimension maximum over patches."""
    return PooledVector(encoding.phi.max(axis=1), provenance=MAX)


def weighted_pool(encoding: EncodingMatrix, weights: PatchWeights) -> PooledVector:
    """Φ α; provenance follows the origin of the weights."""
    if weights.n != encoding.n:
        raise DimensionMismatchError(f"{weights.n} weights for {encoding.n} patches")
    provenance = GMP_DUAL if weights.origin == GMP_DUAL else WEIGHTED
    return PooledVector(encoding.phi @ weights.alpha, provenance=provenance)


def gram_matrix(encoding: EncodingMatrix) -> np.ndarray:
    """K = ΦᵀΦ, the N x N patch-to-patch similarity kernel."""
    return encoding.phi.T @ encoding.phi
