from .matrices import BlockDiagonalMatrix, SolveReport, as_dense_matrix, as_vector

__all__ = [
    'BlockDiagonalMatrix',
    'SolveReport',
    'as_dense_matrix',
    'as_vector',
]
