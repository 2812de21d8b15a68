import hashlib
import json
import logging
from typing import Dict, Optional, Set

import numpy as np

from ..context import ContextStorage, InMemoryContextStorage
from ..encoders import (
    Codebook,
    DescriptorSet,
    EmkParams,
    EncodingMatrix,
    GmmModel,
    encode_bov_hard,
    encode_emk,
    encode_fv_hard,
    encode_vlad,
)
from ..encoders.encoder_types import BOV, FV_HARD, VLAD
from ..errors import ConfigError, DimensionMismatchError
from ..pooling import (
    GmpConfig,
    PatchWeights,
    PooledVector,
    average_pool,
    gmp_dual_weights,
    gmp_dual_weights_block,
    gmp_primal,
    gram_matrix,
    max_pool,
    postprocess,
    sum_pool,
)
from ..pooling.pooling_types import AVERAGE, MAX, SUM
from .config import GMP, PipelineConfig
from .config.pipeline import DEFAULT_EMK_SIGMA

logger = logging.getLogger(__name__)

ENCODER_PARAMS = "encoder"


class Pipeline:
    """Encode, pool and post-process one image according to a PipelineConfig.

    Encoder parameters are built on first use and kept in context storage,
    so every per-image job of a run shares the same codebook or EMK draw.
    Call ``release`` once the run is over.
    """

    def __init__(self, config: PipelineConfig, storage: ContextStorage = None):
        self.config = config
        self.name = f"pipeline[{config.encoder_type}+{config.pooling_type}]"
        self.storage = storage or InMemoryContextStorage(("pipeline", config.encoder_type, config.seed))
        self.input_dim: Optional[int] = None
        self._keys: Set[str] = set()

    def bind_dim(self, dim: int) -> None:
        """Fix the descriptor dimension of the run; later images must match it."""
        if self.input_dim is None:
            self.input_dim = dim

    def _build_params(self, dim: int):
        encoder = self.config.encoder
        encoder_type = self.config.encoder_type
        if encoder_type in (BOV, VLAD):
            return Codebook(np.asarray(encoder["centroids"], dtype=np.float64))
        if encoder_type == FV_HARD:
            return GmmModel(
                means=np.asarray(encoder["means"], dtype=np.float64),
                variances=np.asarray(encoder["variances"], dtype=np.float64),
                mixture_weights=np.asarray(encoder["weights"], dtype=np.float64))
        logger.debug("%s: drawing %d EMK directions for dim %d", self.name, encoder["dim"], dim)
        return EmkParams.draw(self.config.seed, dim, encoder["dim"], encoder.get("sigma", DEFAULT_EMK_SIGMA))

    def params(self, dim: int):
        fingerprint = hashlib.sha256(json.dumps(self.config.encoder, sort_keys=True).encode()).hexdigest()
        key = f"{ENCODER_PARAMS}:{dim}:{fingerprint}"
        self._keys.add(key)
        try:
            return self.storage.get_or_create(key, lambda: self._build_params(dim))
        except ValueError as e:
            raise ConfigError("encoder", str(e)) from e

    def release(self) -> None:
        """Drop the encoder parameters this pipeline cached."""
        for key in self._keys:
            self.storage.delete(key)
        self._keys.clear()

    def encode(self, X: DescriptorSet) -> EncodingMatrix:
        if self.input_dim is not None and X.dim != self.input_dim:
            raise DimensionMismatchError(f"descriptor dimension {X.dim}, run uses {self.input_dim}")
        params = self.params(X.dim)
        encoder_type = self.config.encoder_type
        if encoder_type == BOV:
            return encode_bov_hard(X, params)
        if encoder_type == VLAD:
            return encode_vlad(X, params)
        if encoder_type == FV_HARD:
            return encode_fv_hard(X, params)
        return encode_emk(X, params)

    def pool(self, encoding: EncodingMatrix) -> PooledVector:
        pooling_type = self.config.pooling_type
        if pooling_type == SUM:
            return sum_pool(encoding)
        if pooling_type == AVERAGE:
            return average_pool(encoding)
        if pooling_type == MAX:
            return max_pool(encoding)
        pooled, report = gmp_primal(encoding, GmpConfig(lam=self.config.lam, solver=self.config.solver))
        logger.debug("%s: %s solve, residual %.3g", self.name, report.method, report.residual_norm)
        return pooled

    def run(self, X: DescriptorSet) -> PooledVector:
        return postprocess(self.pool(self.encode(X)), self.config.post_steps)

    def dual_weights(self, X: DescriptorSet) -> PatchWeights:
        """GMP dual weights α of every patch of ``X``."""
        if self.config.pooling_type != GMP:
            raise ConfigError("pooling.type", f"dual weights need {GMP} pooling, got {self.config.pooling_type}")
        encoding = self.encode(X)
        if encoding.block_structure is not None:
            return gmp_dual_weights_block(encoding, self.config.lam)
        return gmp_dual_weights(gram_matrix(encoding), self.config.lam)

    def metadata(self) -> Dict:
        """Run description echoed in output files."""
        return {
            "encoder": self.config.encoder_type,
            "pooling": self.config.pooling_type,
            "lambda": self.config.lam,
            "post": [step if rho is None else f"{step}({rho:g})" for step, rho in self.config.post_steps],
            "seed": self.config.seed,
        }


def run_image(pipeline: Pipeline, image_id: str, X: DescriptorSet) -> PooledVector:
    """Pipeline.run with dimension errors naming the image."""
    try:
        return pipeline.run(X)
    except DimensionMismatchError as e:
        raise DimensionMismatchError(f"image {image_id!r}: {e}") from e
