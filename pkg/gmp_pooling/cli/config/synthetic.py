from typing import Dict, Optional, Tuple

from ...encoders.encoder_types import EMK, ENCODERS
from ...errors import ConfigError
from ...pooling.pooling_types import DEFAULT_LAMBDA_GRID
from .base import BaseRecord, expect_choice, expect_number, join
from .config_types import SYNTHETIC_SPEC

# train/validation/test splits need at least one image each per class
MIN_IMAGES_PER_CLASS = 4

DEFAULTS = {
    "encoder": EMK,
    "emk_dim": 1024,
    "emk_sigma": 1.0,
    "n_centroids": 16,
    "center_scale": 4.0,
    "background_spread": 2.0,
    "lambdas": list(DEFAULT_LAMBDA_GRID),
}


class SyntheticSpec(BaseRecord):
    """Parameters of the synthetic burstiness benchmark.

    Every image holds ``descriptors_per_image`` descriptors; a fraction
    ``background_fraction`` of them is drawn around the image's background
    mode (a shared center jittered by ``background_spread``), the rest
    around its class center. ``noise_scale`` is the per-descriptor spread.
    """

    record_type = SYNTHETIC_SPEC
    required_keys = (
        "classes",
        "images_per_class",
        "descriptors_per_image",
        "background_fraction",
        "descriptor_dim",
        "noise_scale",
        "seed",
    )
    optional_keys = tuple(DEFAULTS)

    def __init__(self, body: Optional[Dict] = None):
        super().__init__(SYNTHETIC_SPEC, body)

    @property
    def classes(self) -> int:
        return self.body["classes"]

    @property
    def images_per_class(self) -> int:
        return self.body["images_per_class"]

    @property
    def descriptors_per_image(self) -> int:
        return self.body["descriptors_per_image"]

    @property
    def background_fraction(self) -> float:
        return self.body["background_fraction"]

    @property
    def descriptor_dim(self) -> int:
        return self.body["descriptor_dim"]

    @property
    def noise_scale(self) -> float:
        return self.body["noise_scale"]

    @property
    def seed(self) -> int:
        return self.body["seed"]

    @property
    def encoder(self) -> str:
        return self.body["encoder"]

    @property
    def emk_dim(self) -> int:
        return self.body["emk_dim"]

    @property
    def emk_sigma(self) -> float:
        return self.body["emk_sigma"]

    @property
    def n_centroids(self) -> int:
        return self.body["n_centroids"]

    @property
    def center_scale(self) -> float:
        return self.body["center_scale"]

    @property
    def background_spread(self) -> float:
        return self.body["background_spread"]

    @property
    def lambdas(self) -> Tuple[float, ...]:
        return tuple(self.body["lambdas"])

    def with_seed(self, seed: Optional[int]) -> "SyntheticSpec":
        if seed is None:
            return self
        return SyntheticSpec({**self.body, "seed": seed})

    @classmethod
    def validate(cls, body: Dict) -> Dict:
        body = {**DEFAULTS, **body}
        for key in ("classes", "descriptors_per_image", "descriptor_dim", "n_centroids"):
            expect_number(body[key], key, minimum=1, integer=True)
        expect_number(body["images_per_class"], "images_per_class", minimum=MIN_IMAGES_PER_CLASS, integer=True)
        if body["classes"] < 2:
            raise ConfigError("classes", "a classification benchmark needs at least 2 classes")
        expect_number(body["background_fraction"], "background_fraction", minimum=0, exclusive_minimum=True)
        if not body["background_fraction"] < 1:
            raise ConfigError("background_fraction", f"must be < 1, got {body['background_fraction']}")
        for key in ("noise_scale", "emk_sigma", "center_scale"):
            expect_number(body[key], key, minimum=0, exclusive_minimum=True)
        expect_number(body["background_spread"], "background_spread", minimum=0)
        expect_number(body["seed"], "seed", minimum=0, integer=True)
        expect_choice(body["encoder"], ENCODERS, "encoder")
        emk_dim = expect_number(body["emk_dim"], "emk_dim", minimum=2, integer=True)
        if emk_dim % 2:
            raise ConfigError("emk_dim", f"EMK dimensionality must be even, got {emk_dim}")
        lambdas = body["lambdas"]
        if not isinstance(lambdas, list) or not lambdas:
            raise ConfigError("lambdas", "expected a non-empty list of positive numbers")
        for i, lam in enumerate(lambdas):
            expect_number(lam, join("lambdas", i), minimum=0, exclusive_minimum=True)
        return body
