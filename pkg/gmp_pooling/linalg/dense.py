import logging

import numpy as np
from scipy.linalg import cho_solve, lapack, svd

from ..errors import AsymmetricMatrixError, DimensionMismatchError, FactorizationError
from .models import as_dense_matrix, as_vector
from .solver_types import CHOLESKY, DEFAULT_RANK_TOL, SYMMETRY_TOL

logger = logging.getLogger(__name__)


def min_norm_least_squares(A, b, rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Minimum-norm least-squares solution ``A⁺ b`` through a thin SVD.

    Args:
        A: (m, n) matrix
        b: length-m right-hand side
        rank_tol: singular values ``<= rank_tol * sigma_max`` count as zero

    Returns:
        np.ndarray: the length-n vector of smallest norm among the minimizers
        of ``||Ax - b||``
    """
    A = as_dense_matrix(A, "A")
    b = as_vector(b, "b")
    if A.shape[0] != b.shape[0]:
        raise DimensionMismatchError(f"A has {A.shape[0]} rows but b has length {b.shape[0]}")
    if not rank_tol > 0:
        raise ValueError(f"rank_tol must be positive, got {rank_tol}")

    U, s, Vh = svd(A, full_matrices=False, lapack_driver="gesvd")
    keep = s > rank_tol * s[0] if s[0] > 0 else np.zeros_like(s, dtype=bool)
    s_inv = np.zeros_like(s)
    s_inv[keep] = 1.0 / s[keep]
    logger.debug("svd: rank %d of %d", int(keep.sum()), len(s))
    return Vh.T @ (s_inv * (U.T @ b))


def symmetrize(A, tol: float = SYMMETRY_TOL, method: str = CHOLESKY) -> np.ndarray:
    """Return ``(A + Aᵀ)/2``; refuse matrices whose asymmetry exceeds ``tol`` relative."""
    A = as_dense_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"matrix must be square, got shape {A.shape}")
    scale = np.max(np.abs(A))
    asymmetry = np.max(np.abs(A - A.T))
    if scale > 0 and asymmetry > tol * scale:
        raise AsymmetricMatrixError(
            f"matrix asymmetry {asymmetry / scale:.3e} exceeds relative tolerance {tol:.0e}", method)
    return 0.5 * (A + A.T)


def cholesky_factor(A) -> np.ndarray:
    """Upper Cholesky factor of a symmetric positive definite matrix.

    Raises FactorizationError naming the zero-based pivot that failed.
    """
    A = symmetrize(A)
    factor, info = lapack.dpotrf(A, lower=False, clean=True)
    if info > 0:
        raise FactorizationError(
            f"matrix is not positive definite: pivot {info - 1} is not positive",
            CHOLESKY, pivot=info - 1)
    if info < 0:
        raise ValueError(f"dpotrf rejected argument {-info}")
    return factor


def solve_spd(A, b) -> np.ndarray:
    """Solve ``Ax = b`` for symmetric positive definite ``A`` by Cholesky."""
    b = as_vector(b, "b")
    factor = cholesky_factor(A)
    if factor.shape[0] != b.shape[0]:
        raise DimensionMismatchError(f"A is {factor.shape[0]}x{factor.shape[0]} but b has length {b.shape[0]}")
    x = cho_solve((factor, False), b)

    b_norm = np.linalg.norm(b)
    if b_norm > 0:
        relative = np.linalg.norm(np.asarray(A) @ x - b) / b_norm
        if relative > 1e-10:
            logger.warning("cholesky: relative residual %.3e, matrix is ill-conditioned", relative)
    return x
