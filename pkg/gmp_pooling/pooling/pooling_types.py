SUM = "sum"
AVERAGE = "average"
MAX = "max"
GMP_PRIMAL = "gmp_primal"
GMP_DUAL = "gmp_dual"
WEIGHTED = "weighted"

PROVENANCES = [
    SUM,
    AVERAGE,
    MAX,
    GMP_PRIMAL,
    GMP_DUAL,
    WEIGHTED
]

RAW = "raw"
L2 = "l2"

NORMALIZATIONS = [
    RAW,
    L2
]

POWER = "power"

POST_STEPS = [
    POWER,
    L2
]

AUTO = "auto"
DENSE_DIRECT = "dense_direct"
BLOCK_SOLVER = "block"
CG_SOLVER = "cg"

GMP_SOLVERS = [
    AUTO,
    DENSE_DIRECT,
    BLOCK_SOLVER,
    CG_SOLVER
]

# dense encodings above this dimension are solved with CG under AUTO
CG_DIMENSION_THRESHOLD = 4096

DEFAULT_LAMBDA_GRID = (1e1, 1e2, 1e3, 1e4, 1e5)
POWER_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.75, 1.0)
