"""Topographic weight maps: pixel l gets s_l = Σ α_i over the patches covering l.

Patches are half-open rectangles [x, x+w) x [y, y+h) in pixel units, clipped
to the image.
"""
import numpy as np

from ..errors import DimensionMismatchError, EmptyInputError
from ..pooling import PatchWeights
from .models import WeightMap


def _check(geometry, w: PatchWeights, height: int, width: int) -> np.ndarray:
    if height < 1 or width < 1:
        raise EmptyInputError(f"image must have at least one pixel, got {height}x{width}")
    geometry = np.asarray(geometry, dtype=np.float64).reshape(-1, 4)
    if geometry.shape[0] != w.n:
        raise DimensionMismatchError(f"{geometry.shape[0]} patches but {w.n} weights")
    return geometry


def _pixel_bounds(start: np.ndarray, size: np.ndarray, limit: int):
    """First covered pixel and one-past-last covered pixel, clipped to [0, limit]."""
    lo = np.clip(np.ceil(start), 0, limit).astype(np.intp)
    hi = np.clip(np.ceil(start + size), 0, limit).astype(np.intp)
    return lo, hi


def _summed_area(y0, y1, x0, x1, amount, height: int, width: int, dtype) -> np.ndarray:
    corners = np.zeros((height + 1, width + 1), dtype=dtype)
    np.add.at(corners, (y0, x0), amount)
    np.add.at(corners, (y0, x1), -amount)
    np.add.at(corners, (y1, x0), -amount)
    np.add.at(corners, (y1, x1), amount)
    return np.cumsum(np.cumsum(corners, axis=0), axis=1)[:height, :width]


def render_weight_map(geometry, w: PatchWeights, height: int, width: int) -> WeightMap:
    """Summed-area rendering: four corner updates per patch, then two cumulative sums."""
    geometry = _check(geometry, w, height, width)
    x0, x1 = _pixel_bounds(geometry[:, 0], geometry[:, 2], width)
    y0, y1 = _pixel_bounds(geometry[:, 1], geometry[:, 3], height)
    visible = (x1 > x0) & (y1 > y0)
    x0, x1, y0, y1, alpha = x0[visible], x1[visible], y0[visible], y1[visible], w.alpha[visible]

    values = _summed_area(y0, y1, x0, x1, alpha, height, width, np.float64)
    # pixels outside every patch are exactly zero
    coverage = _summed_area(y0, y1, x0, x1, np.ones(alpha.shape[0], dtype=np.int64), height, width, np.int64)
    values[coverage == 0] = 0.0
    return WeightMap(values)


def render_weight_map_brute_force(geometry, w: PatchWeights, height: int, width: int) -> WeightMap:
    """Per-pixel membership sum, O(H·W·N)."""
    geometry = _check(geometry, w, height, width)
    rows = np.arange(height)[:, None]
    cols = np.arange(width)[None, :]
    values = np.zeros((height, width))
    for (x, y, pw, ph), alpha in zip(geometry, w.alpha):
        inside = (cols >= x) & (cols < x + pw) & (rows >= y) & (rows < y + ph)
        values[inside] += alpha
    return WeightMap(values)


def normalize_map(m: WeightMap) -> WeightMap:
    """Affine rescale to [0, 1]; a constant map becomes 0.5 everywhere."""
    lo, hi = m.values.min(), m.values.max()
    if hi == lo:
        return WeightMap(np.full_like(m.values, 0.5))
    return WeightMap((m.values - lo) / (hi - lo))


def weighted_image(image, m: WeightMap) -> np.ndarray:
    """Image intensities multiplied by the normalized map (grey or channel-last colour)."""
    image = np.asarray(image, dtype=np.float64)
    if image.shape[:2] != m.values.shape:
        raise DimensionMismatchError(f"image shape {image.shape[:2]} does not match map shape {m.values.shape}")
    scale = normalize_map(m).values
    if image.ndim == 3:
        scale = scale[:, :, None]
    return image * scale
