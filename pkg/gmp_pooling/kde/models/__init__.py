from .kde import DEFAULT_GRID_POINTS, Kde, QuadratureGrid

__all__ = [
    'DEFAULT_GRID_POINTS',
    'Kde',
    'QuadratureGrid',
]
