"""Seeded fixture generators: codebooks, mixtures and orthonormal dictionaries.

These are not learned models; they exist so that tests, the verification
suite and the synthetic benchmark can build encoders without training.
"""
import numpy as np
from scipy.linalg import qr

from .models import Codebook, EncodingMatrix, GmmModel


def random_codebook(seed: int, n_centroids: int, dim: int, scale: float = 1.0) -> Codebook:
    rng = np.random.default_rng(seed)
    return Codebook(rng.normal(0.0, scale, size=(n_centroids, dim)))


def random_gmm(seed: int, n_components: int, dim: int, scale: float = 1.0) -> GmmModel:
    rng = np.random.default_rng(seed)
    weights = rng.uniform(0.5, 1.5, size=n_components)
    return GmmModel(
        means=rng.normal(0.0, scale, size=(n_components, dim)),
        variances=rng.uniform(0.25, 1.0, size=(n_components, dim)) * scale ** 2,
        mixture_weights=weights / weights.sum())


def random_orthonormal_codebook(seed: int, dim: int, n_atoms: int) -> np.ndarray:
    """D x C matrix with orthonormal columns, from the QR of a seeded Gaussian matrix."""
    if n_atoms > dim:
        raise ValueError(f"cannot draw {n_atoms} orthonormal atoms in dimension {dim}")
    rng = np.random.default_rng(seed)
    q, _ = qr(rng.normal(size=(dim, n_atoms)), mode="economic")
    return q


def encode_orthonormal(Q: np.ndarray, assignments) -> EncodingMatrix:
    """Encodings φ_n = q_{k_n}: each patch is one atom of the orthonormal codebook Q."""
    assignments = np.asarray(assignments, dtype=np.intp)
    return EncodingMatrix(Q[:, assignments])
