"""Dense and block-diagonal linear algebra behind the GMP solvers."""
from .block import solve_block_diagonal
from .dense import cholesky_factor, min_norm_least_squares, solve_spd, symmetrize
from .iterative import conjugate_gradient
from .models import BlockDiagonalMatrix, SolveReport

__all__ = [
    'BlockDiagonalMatrix',
    'SolveReport',
    'cholesky_factor',
    'conjugate_gradient',
    'min_norm_least_squares',
    'solve_block_diagonal',
    'solve_spd',
    'symmetrize',
]
