"""Pixel-level rendering of per-patch dual weights."""
from .export import format_map_csv, format_pgm, write_map_csv, write_pgm
from .models import WeightMap
from .render import normalize_map, render_weight_map, render_weight_map_brute_force, weighted_image

__all__ = [
    'WeightMap',
    'format_map_csv',
    'format_pgm',
    'normalize_map',
    'render_weight_map',
    'render_weight_map_brute_force',
    'weighted_image',
    'write_map_csv',
    'write_pgm',
]
