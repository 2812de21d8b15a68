"""Kernel density estimators, probability product kernels and equalization weights."""
from .density import (
    count_local_maxima,
    default_grid,
    equalization_weights,
    flatness_profile,
    gmk,
    kde_curve,
    kde_eval,
    power_renormalized,
    ppk,
)
from .models import Kde, QuadratureGrid

__all__ = [
    'Kde',
    'QuadratureGrid',
    'count_local_maxima',
    'default_grid',
    'equalization_weights',
    'flatness_profile',
    'gmk',
    'kde_curve',
    'kde_eval',
    'power_renormalized',
    'ppk',
]
