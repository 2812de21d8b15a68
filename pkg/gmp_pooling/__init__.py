"""Generalized max pooling of local-descriptor encodings."""
from .encoders import DescriptorSet, EncodingMatrix
from .errors import GmpError
from .pooling import (
    GmpConfig,
    PatchWeights,
    PooledVector,
    gmp_dual,
    gmp_dual_weights,
    gmp_primal,
    max_pool,
    sum_pool,
    weighted_pool,
)

__all__ = [
    'DescriptorSet',
    'EncodingMatrix',
    'GmpConfig',
    'GmpError',
    'PatchWeights',
    'PooledVector',
    'gmp_dual',
    'gmp_dual_weights',
    'gmp_primal',
    'max_pool',
    'sum_pool',
    'weighted_pool',
]
