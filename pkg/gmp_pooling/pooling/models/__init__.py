from .pooled import GmpConfig, PatchWeights, PooledVector

__all__ = [
    'GmpConfig',
    'PatchWeights',
    'PooledVector',
]
