RECORD_PREFIX = "gmp-pool"

PIPELINE_CONFIG = f"{RECORD_PREFIX}/pipeline"
SYNTHETIC_SPEC = f"{RECORD_PREFIX}/synthetic"

RECORD_TYPES = [
    PIPELINE_CONFIG,
    SYNTHETIC_SPEC,
]
