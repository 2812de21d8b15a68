import logging
from typing import Optional

from .config import PipelineConfig
from .io import format_pooled, read_descriptors, write_text
from .jobs import run_jobs
from .pipeline import Pipeline, run_image

logger = logging.getLogger(__name__)


def cmd_pool(descriptors_file, config_file, output_file, seed: Optional[int] = None, jobs: int = 1) -> int:
    """Pool every image of ``descriptors_file`` and write one CSV row per image."""
    config = PipelineConfig.from_file(config_file).with_seed(seed)
    images = read_descriptors(descriptors_file)
    pipeline = Pipeline(config)
    if images:
        pipeline.bind_dim(images[0][1].dim)
        pipeline.params(pipeline.input_dim)

    try:
        vectors = run_jobs(lambda item: run_image(pipeline, *item), images, jobs)
    finally:
        pipeline.release()
    write_text(output_file, format_pooled([image_id for image_id, _ in images], vectors, pipeline.metadata()))
    logger.info("pool: wrote %d vectors to %s", len(vectors), output_file)
    return 0
