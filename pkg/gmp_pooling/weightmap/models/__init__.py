from .weight_map import WeightMap

__all__ = [
    'WeightMap',
]
