import numpy as np

from ..errors import DimensionMismatchError
from .models import BlockStructure, DescriptorSet, EncodingMatrix, GmmModel


def hard_assignments(X: DescriptorSet, gmm: GmmModel) -> np.ndarray:
    """Gaussian with the highest posterior for every descriptor."""
    if X.dim != gmm.dim:
        raise DimensionMismatchError(f"descriptor dim {X.dim} does not match gmm dim {gmm.dim}")
    x = X.descriptors[:, None, :]
    log_likelihood = -0.5 * np.sum(
        np.log(2.0 * np.pi * gmm.variances)[None] + (x - gmm.means[None]) ** 2 / gmm.variances[None],
        axis=2)
    return np.argmax(np.log(gmm.mixture_weights)[None] + log_likelihood, axis=1)


def encode_fv_hard(X: DescriptorSet, gmm: GmmModel) -> EncodingMatrix:
    """Hard-assignment Fisher encoding.

    Each column lives in the 2d-row block of its Gaussian k and holds
    ``[(x - μ_k)/σ_k ; ((x - μ_k)²/σ_k² - 1)/√2] / √w_k``.
    """
    assignments = hard_assignments(X, gmm)
    d = X.dim
    sigma = np.sqrt(gmm.variances[assignments])
    z = (X.descriptors - gmm.means[assignments]) / sigma
    scale = 1.0 / np.sqrt(gmm.mixture_weights[assignments])[:, None]
    gradients = np.hstack([z, (z ** 2 - 1.0) / np.sqrt(2.0)]) * scale

    phi = np.zeros((gmm.n_components * 2 * d, X.n))
    rows = assignments[:, None] * 2 * d + np.arange(2 * d)[None, :]
    phi[rows, np.arange(X.n)[:, None]] = gradients
    return EncodingMatrix(phi, BlockStructure(2 * d, assignments))
