import logging

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import DimensionMismatchError
from .models import BlockStructure, Codebook, DescriptorSet, EncodingMatrix, OccurrenceHistogram

logger = logging.getLogger(__name__)


def _check_dims(X: DescriptorSet, dim: int, what: str):
    if X.dim != dim:
        raise DimensionMismatchError(f"descriptor dim {X.dim} does not match {what} dim {dim}")


def nearest_centroids(X: DescriptorSet, cb: Codebook) -> np.ndarray:
    """Index of the closest centroid for every descriptor; ties go to the lowest index."""
    _check_dims(X, cb.dim, "codebook")
    # argmin returns the first minimum
    return np.argmin(cdist(X.descriptors, cb.centroids, "sqeuclidean"), axis=1)


def histogram(X: DescriptorSet, cb: Codebook) -> OccurrenceHistogram:
    """Occurrence counts of nearest-centroid assignments."""
    assignments = nearest_centroids(X, cb)
    return OccurrenceHistogram(np.bincount(assignments, minlength=cb.size))


def encode_bov_hard(X: DescriptorSet, cb: Codebook) -> EncodingMatrix:
    """Hard bag-of-visual-words: one-hot column at the nearest centroid."""
    assignments = nearest_centroids(X, cb)
    phi = np.zeros((cb.size, X.n))
    phi[assignments, np.arange(X.n)] = 1.0
    return EncodingMatrix(phi, BlockStructure(1, assignments))


def encode_vlad(X: DescriptorSet, cb: Codebook) -> EncodingMatrix:
    """VLAD: the residual x_n - μ_{i_n} placed in the block of its centroid."""
    assignments = nearest_centroids(X, cb)
    d = X.dim
    phi = np.zeros((cb.size * d, X.n))
    residuals = X.descriptors - cb.centroids[assignments]
    rows = assignments[:, None] * d + np.arange(d)[None, :]
    phi[rows, np.arange(X.n)[:, None]] = residuals
    logger.debug("vlad: %d descriptors over %d centroids", X.n, cb.size)
    return EncodingMatrix(phi, BlockStructure(d, assignments))
