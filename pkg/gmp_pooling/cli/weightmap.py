import logging
import math
from pathlib import Path
from typing import Optional

from ..errors import DimensionMismatchError, GmpError
from ..weightmap import format_map_csv, format_pgm, render_weight_map
from .config import PipelineConfig
from .io import read_descriptors, write_text
from .jobs import run_jobs
from .pipeline import Pipeline

logger = logging.getLogger(__name__)


def _extent(geometry):
    """Smallest image (height, width) containing every patch rectangle."""
    width = max(1, math.ceil(float((geometry[:, 0] + geometry[:, 2]).max())))
    height = max(1, math.ceil(float((geometry[:, 1] + geometry[:, 3]).max())))
    return height, width


def cmd_weightmap(descriptors_file, config_file, output_dir, height: Optional[int] = None,
                  width: Optional[int] = None, seed: Optional[int] = None, jobs: int = 1) -> int:
    """Render the GMP dual-weight map of every image as ``<id>.pgm`` and ``<id>.csv``.

    Without an explicit size each map covers the union of its patch rectangles.
    """
    config = PipelineConfig.from_file(config_file).with_seed(seed)
    images = read_descriptors(descriptors_file)
    for image_id, X in images:
        if X.geometry is None:
            raise GmpError(f"image {image_id!r} has no patch geometry (x,y,w,h columns)")
    pipeline = Pipeline(config)
    if images:
        pipeline.bind_dim(images[0][1].dim)
        pipeline.params(pipeline.input_dim)

    def render(item):
        image_id, X = item
        try:
            weights = pipeline.dual_weights(X)
        except DimensionMismatchError as e:
            raise DimensionMismatchError(f"image {image_id!r}: {e}") from e
        map_height, map_width = _extent(X.geometry)
        return render_weight_map(X.geometry, weights, height or map_height, width or map_width)

    try:
        maps = run_jobs(render, images, jobs)
    finally:
        pipeline.release()
    output_dir = Path(output_dir)
    for (image_id, _), weight_map in zip(images, maps):
        write_text(output_dir / f"{image_id}.pgm", format_pgm(weight_map))
        write_text(output_dir / f"{image_id}.csv", format_map_csv(weight_map))
    logger.info("weightmap: wrote %d maps to %s", len(maps), output_dir)
    return 0
