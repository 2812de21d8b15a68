import logging

import numpy as np

from ..errors import DimensionMismatchError, FactorizationError
from .dense import solve_spd
from .models import BlockDiagonalMatrix, as_vector
from .solver_types import BLOCK

logger = logging.getLogger(__name__)


def solve_block_diagonal(B: BlockDiagonalMatrix, b) -> np.ndarray:
    """Solve a block-diagonal SPD system one block at a time.

    A failing block raises FactorizationError with ``block`` set to its index.
    """
    b = as_vector(b, "b")
    if B.dimension != b.shape[0]:
        raise DimensionMismatchError(f"matrix dimension {B.dimension} does not match b of length {b.shape[0]}")

    x = np.empty_like(b)
    for index, (offset, block) in enumerate(zip(B.offsets, B.blocks)):
        stop = offset + block.shape[0]
        try:
            x[offset:stop] = solve_spd(block, b[offset:stop])
        except FactorizationError as e:
            raise FactorizationError(
                f"block {index} is not positive definite: pivot {e.pivot} is not positive",
                BLOCK, pivot=e.pivot, block=index) from e
    logger.debug("block: solved %d blocks of sizes %s", len(B.blocks), B.sizes)
    return x
