"""Generalized max pooling.

The GMP representation φ asks every patch encoding to have the same
similarity with the pooled vector: Φᵀφ = 1_N. The primal solvers compute
φ directly; the dual solvers compute per-patch weights α with φ = Φα.
"""
import logging
from typing import List, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh

from ..encoders.models import EncodingMatrix
from ..errors import FactorizationError, MissingBlockStructureError, SingularKernelError
from ..linalg import (
    BlockDiagonalMatrix,
    SolveReport,
    conjugate_gradient,
    min_norm_least_squares,
    solve_block_diagonal,
    solve_spd,
    symmetrize,
)
from ..linalg.solver_types import BLOCK, CHOLESKY, SVD
from .basic import gram_matrix, weighted_pool
from .models import GmpConfig, PatchWeights, PooledVector
from .pooling_types import (
    AUTO,
    BLOCK_SOLVER,
    CG_DIMENSION_THRESHOLD,
    CG_SOLVER,
    DENSE_DIRECT,
    GMP_DUAL,
    GMP_PRIMAL,
)

logger = logging.getLogger(__name__)


def select_solver(encoding: EncodingMatrix, cfg: GmpConfig) -> str:
    """Pick the GMP solver: SVD at λ=0, otherwise the configured or automatic choice."""
    if cfg.lam == 0:
        return SVD
    if cfg.solver == BLOCK_SOLVER and encoding.block_structure is None:
        raise MissingBlockStructureError("block solver requested for an encoding without block structure")
    if cfg.solver != AUTO:
        return cfg.solver
    if encoding.block_structure is not None:
        return BLOCK_SOLVER
    if encoding.dim > CG_DIMENSION_THRESHOLD:
        return CG_SOLVER
    return DENSE_DIRECT


def _block_system(encoding: EncodingMatrix, lam: float) -> BlockDiagonalMatrix:
    """Per-block ΦΦᵀ + λI, built only from the patches assigned to each block."""
    structure = encoding.block_structure
    if structure is None:
        raise MissingBlockStructureError("encoding has no block structure")
    if not lam > 0:
        raise ValueError(f"block GMP needs lambda > 0, got {lam}")
    blocks = []
    identity = lam * np.eye(structure.block_size)
    for block in range(encoding.n_blocks):
        phi_block = encoding.phi[structure.rows(block)][:, structure.members(block)]
        blocks.append(phi_block @ phi_block.T + identity)
    return BlockDiagonalMatrix(blocks)


def gmp_primal_block(encoding: EncodingMatrix, lam: float) -> PooledVector:
    """Regularized GMP solved block-by-block for block-sparse encodings."""
    system = _block_system(encoding, lam)
    values = solve_block_diagonal(system, encoding.phi.sum(axis=1))
    return PooledVector(values, provenance=GMP_PRIMAL)


def gmp_primal(encoding: EncodingMatrix, cfg: GmpConfig = GmpConfig()) -> Tuple[PooledVector, SolveReport]:
    """GMP in the primal: (ΦΦᵀ + λI)⁻¹ Φ1_N, or (Φᵀ)⁺ 1_N when λ = 0."""
    phi = encoding.phi
    ones = np.ones(encoding.n)
    rhs = phi @ ones
    method = select_solver(encoding, cfg)
    logger.debug("gmp: D=%d N=%d lambda=%g solver=%s", encoding.dim, encoding.n, cfg.lam, method)

    if method == SVD:
        values = min_norm_least_squares(phi.T, ones, rank_tol=cfg.rank_tol)
        report = SolveReport(0, float(np.linalg.norm(phi.T @ values - ones)), SVD)
    elif method == BLOCK_SOLVER:
        system = _block_system(encoding, cfg.lam)
        values = solve_block_diagonal(system, rhs)
        report = SolveReport(0, float(np.linalg.norm(system.matvec(values) - rhs)), BLOCK)
    elif method == CG_SOLVER:
        def apply(v):
            return phi @ (phi.T @ v) + cfg.lam * v
        values, report = conjugate_gradient(apply, rhs, tol=cfg.cg_tol, max_iter=cfg.cg_max_iter)
    else:
        system = phi @ phi.T + cfg.lam * np.eye(encoding.dim)
        values = solve_spd(system, rhs)
        report = SolveReport(0, float(np.linalg.norm(system @ values - rhs)), CHOLESKY)

    return PooledVector(values, provenance=GMP_PRIMAL), report


def gmp_dual_weights(K, lam: float) -> PatchWeights:
    """α = (K + λI)⁻¹ 1_N from the patch-to-patch kernel alone.

    λ = 0 is accepted only for a nonsingular K; otherwise SingularKernelError
    asks for regularization (the primal SVD path is the λ = 0 route).
    """
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    K = symmetrize(K)
    n = K.shape[0]
    if lam == 0 and np.linalg.matrix_rank(K, hermitian=True) < n:
        raise SingularKernelError(
            "kernel matrix is singular; use lambda > 0 or the primal pseudo-inverse", CHOLESKY)
    try:
        alpha = solve_spd(K + lam * np.eye(n), np.ones(n))
    except FactorizationError as e:
        if lam == 0:
            raise SingularKernelError(
                f"kernel matrix is not positive definite at pivot {e.pivot}; use lambda > 0", CHOLESKY) from e
        raise
    return PatchWeights(alpha, lam, GMP_DUAL)


def gmp_dual_weights_block(encoding: EncodingMatrix, lam: float) -> PatchWeights:
    """Dual weights through the inverted file: only same-block patches are matched."""
    structure = encoding.block_structure
    if structure is None:
        raise MissingBlockStructureError("encoding has no block structure")
    alpha = np.zeros(encoding.n)
    for block in np.unique(structure.block_ids):
        members = structure.members(block)
        phi_block = encoding.phi[structure.rows(block)][:, members]
        alpha[members] = gmp_dual_weights(phi_block.T @ phi_block, lam).alpha
    return PatchWeights(alpha, lam, GMP_DUAL)


def gmp_dual(encoding: EncodingMatrix, lam: float) -> PooledVector:
    """GMP as weighted pooling: dual weights, then Φα."""
    if encoding.block_structure is not None:
        weights = gmp_dual_weights_block(encoding, lam)
    else:
        weights = gmp_dual_weights(gram_matrix(encoding), lam)
    return weighted_pool(encoding, weights)


def gmp_path(encoding: EncodingMatrix, lambdas: Sequence[float]) -> List[PooledVector]:
    """Regularized GMP for every λ in ``lambdas`` from one eigendecomposition.

    The smaller of ΦᵀΦ (N x N) and ΦΦᵀ (D x D) is decomposed once; each λ
    then costs a diagonal rescale.
    """
    if any(not lam > 0 for lam in lambdas):
        raise ValueError("gmp_path needs strictly positive lambdas")
    phi = encoding.phi
    ones = np.ones(encoding.n)
    pooled = []
    if encoding.n <= encoding.dim:
        eigenvalues, V = eigh(phi.T @ phi)
        projected = V.T @ ones
        for lam in lambdas:
            pooled.append(PooledVector(phi @ (V @ (projected / (eigenvalues + lam))), provenance=GMP_PRIMAL))
    else:
        eigenvalues, V = eigh(phi @ phi.T)
        projected = V.T @ (phi @ ones)
        for lam in lambdas:
            pooled.append(PooledVector(V @ (projected / (eigenvalues + lam)), provenance=GMP_PRIMAL))
    return pooled
