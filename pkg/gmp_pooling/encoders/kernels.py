import numpy as np
from scipy.spatial.distance import cdist

from ..errors import DimensionMismatchError


def gaussian_kernel(x, y, sigma: float) -> float:
    """k_σ(x, y) = exp(-||x - y||² / (2σ²)), so that k_σ(x, x) = 1."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if x.shape != y.shape:
        raise DimensionMismatchError(f"kernel arguments differ in shape: {x.shape} vs {y.shape}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return float(np.exp(-np.sum((x - y) ** 2) / (2.0 * sigma ** 2)))


def gaussian_kernel_matrix(X, Y, sigma: float) -> np.ndarray:
    """Pairwise k_σ between the rows of X (M x d) and Y (N x d)."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    if X.shape[1] != Y.shape[1]:
        raise DimensionMismatchError(f"descriptor dims differ: {X.shape[1]} vs {Y.shape[1]}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return np.exp(-cdist(X, Y, "sqeuclidean") / (2.0 * sigma ** 2))
