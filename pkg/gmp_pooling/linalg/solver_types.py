SVD = "svd"
CHOLESKY = "cholesky"
CG = "cg"
BLOCK = "block"

SOLVE_METHODS = [
    SVD,
    CHOLESKY,
    CG,
    BLOCK
]

# singular values at or below RANK_TOL * sigma_max are dropped
DEFAULT_RANK_TOL = 1e-10
SYMMETRY_TOL = 1e-12
