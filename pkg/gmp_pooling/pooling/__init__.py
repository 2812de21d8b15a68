"""Aggregation operators: sum, max, GMP (primal and dual), weighted pooling, normalization."""
from .basic import average_pool, gram_matrix, max_pool, sum_pool, weighted_pool
from .gmp import (
    gmp_dual,
    gmp_dual_weights,
    gmp_dual_weights_block,
    gmp_path,
    gmp_primal,
    gmp_primal_block,
    select_solver,
)
from .models import GmpConfig, PatchWeights, PooledVector
from .normalize import l2_normalize, postprocess, power_normalize
from .pooling_types import DEFAULT_LAMBDA_GRID, POWER_GRID

__all__ = [
    'DEFAULT_LAMBDA_GRID',
    'GmpConfig',
    'POWER_GRID',
    'PatchWeights',
    'PooledVector',
    'average_pool',
    'gmp_dual',
    'gmp_dual_weights',
    'gmp_dual_weights_block',
    'gmp_path',
    'gmp_primal',
    'gmp_primal_block',
    'gram_matrix',
    'l2_normalize',
    'max_pool',
    'postprocess',
    'power_normalize',
    'select_solver',
    'sum_pool',
    'weighted_pool',
]
