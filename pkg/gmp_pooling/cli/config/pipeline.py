from typing import Dict, List, Optional, Tuple

from ...encoders.encoder_types import BOV, EMK, ENCODERS, FV_HARD, VLAD
from ...errors import ConfigError
from ...pooling.pooling_types import AUTO, AVERAGE, GMP_SOLVERS, L2, MAX, POWER, SUM
from .base import BaseRecord, expect_choice, expect_keys, expect_matrix, expect_number, join
from .config_types import PIPELINE_CONFIG

GMP = "gmp"

POOLINGS = [
    SUM,
    AVERAGE,
    MAX,
    GMP,
]

# encoder type -> (required keys, optional keys)
ENCODER_KEYS = {
    BOV: (("centroids",), ()),
    VLAD: (("centroids",), ()),
    FV_HARD: (("means", "variances", "weights"), ()),
    EMK: (("dim",), ("sigma",)),
}

DEFAULT_EMK_SIGMA = 1.0


class PipelineConfig(BaseRecord):
    """Encoder, pooling and post-processing for the pool and weightmap verbs.

    Example::

        {"encoder": {"type": "emk", "dim": 1024, "sigma": 1.0},
         "pooling": {"type": "gmp", "lambda": 1000},
         "post": [{"type": "power", "rho": 0.5}, {"type": "l2"}],
         "seed": 7}
    """

    record_type = PIPELINE_CONFIG
    required_keys = ("encoder", "pooling")
    optional_keys = ("post", "seed")

    def __init__(self, body: Optional[Dict] = None):
        super().__init__(PIPELINE_CONFIG, body)

    @property
    def encoder(self) -> Dict:
        return self.body["encoder"]

    @property
    def encoder_type(self) -> str:
        return self.encoder["type"]

    @property
    def pooling_type(self) -> str:
        return self.body["pooling"]["type"]

    @property
    def lam(self) -> Optional[float]:
        return self.body["pooling"].get("lambda")

    @property
    def solver(self) -> str:
        return self.body["pooling"].get("solver", AUTO)

    @property
    def post_steps(self) -> List[Tuple[str, Optional[float]]]:
        return [(step["type"], step.get("rho")) for step in self.body["post"]]

    @property
    def seed(self) -> int:
        return self.body["seed"]

    def with_seed(self, seed: Optional[int]) -> "PipelineConfig":
        if seed is None:
            return self
        return PipelineConfig({**self.body, "seed": seed})

    @classmethod
    def validate(cls, body: Dict) -> Dict:
        body = dict(body)
        body["encoder"] = _validate_encoder(body["encoder"])
        body["pooling"] = _validate_pooling(body["pooling"])
        body["post"] = _validate_post(body.get("post", []))
        body["seed"] = expect_number(body.get("seed", 0), "seed", minimum=0, integer=True)
        return body


def _validate_encoder(encoder) -> Dict:
    expect_keys(encoder, ("type",), [key for keys in ENCODER_KEYS.values() for key in sum(keys, ())], "encoder")
    encoder_type = expect_choice(encoder["type"], ENCODERS, "encoder.type")
    required, optional = ENCODER_KEYS[encoder_type]
    expect_keys(encoder, ("type",) + required, optional, "encoder")

    if encoder_type in (BOV, VLAD):
        expect_matrix(encoder["centroids"], "encoder.centroids")
    elif encoder_type == FV_HARD:
        means = expect_matrix(encoder["means"], "encoder.means")
        expect_matrix(encoder["variances"], "encoder.variances", columns=len(means[0]))
        if len(encoder["variances"]) != len(means):
            raise ConfigError("encoder.variances", f"expected {len(means)} rows, got {len(encoder['variances'])}")
        weights = encoder["weights"]
        if not isinstance(weights, list) or len(weights) != len(means):
            raise ConfigError("encoder.weights", f"expected a list of {len(means)} numbers")
        for i, weight in enumerate(weights):
            expect_number(weight, join("encoder.weights", i), minimum=0, exclusive_minimum=True)
    else:
        dim = expect_number(encoder["dim"], "encoder.dim", minimum=2, integer=True)
        if dim % 2:
            raise ConfigError("encoder.dim", f"EMK dimensionality must be even, got {dim}")
        expect_number(encoder.get("sigma", DEFAULT_EMK_SIGMA), "encoder.sigma", minimum=0, exclusive_minimum=True)
    return dict(encoder)


def _validate_pooling(pooling) -> Dict:
    expect_keys(pooling, ("type",), ("lambda", "solver"), "pooling")
    pooling_type = expect_choice(pooling["type"], POOLINGS, "pooling.type")
    if pooling_type != GMP:
        for key in ("lambda", "solver"):
            if key in pooling:
                raise ConfigError(join("pooling", key), f"only valid for {GMP} pooling")
        return dict(pooling)
    if "lambda" not in pooling:
        raise ConfigError("pooling.lambda", "missing required key")
    expect_number(pooling["lambda"], "pooling.lambda", minimum=0)
    expect_choice(pooling.get("solver", AUTO), GMP_SOLVERS, "pooling.solver")
    return dict(pooling)


def _validate_post(post) -> List[Dict]:
    if not isinstance(post, list):
        raise ConfigError("post", "expected a list of post-processing steps")
    steps = []
    for i, step in enumerate(post):
        path = join("post", i)
        expect_keys(step, ("type",), ("rho",), path)
        step_type = expect_choice(step["type"], [POWER, L2], join(path, "type"))
        if step_type == POWER:
            if "rho" not in step:
                raise ConfigError(join(path, "rho"), "missing required key")
            expect_number(step["rho"], join(path, "rho"), minimum=0, maximum=1)
        elif "rho" in step:
            raise ConfigError(join(path, "rho"), f"only valid for {POWER} steps")
        steps.append(dict(step))
    return steps
