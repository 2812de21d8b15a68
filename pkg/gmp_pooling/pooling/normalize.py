import logging
from typing import Iterable, Optional, Tuple

import numpy as np

from .models import PooledVector
from .pooling_types import L2, POWER

logger = logging.getLogger(__name__)


def power_normalize(v: PooledVector, rho: float) -> PooledVector:
    """Entrywise sign(z)|z|^ρ; at ρ = 0 only non-zero entries become ±1."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho}")
    z = v.values
    if rho == 0:
        values = np.sign(z)
    else:
        values = np.sign(z) * np.abs(z) ** rho
    return v.evolve(values, f"{POWER}({rho:g})")


def l2_normalize(v: PooledVector) -> PooledVector:
    """v / ||v||. An all-zero vector is returned unchanged and flagged degenerate."""
    norm = np.linalg.norm(v.values)
    if norm == 0:
        logger.warning("l2: zero %s vector left unnormalized", v.provenance)
        return v.evolve(v.values.copy(), L2, normalization=L2, degenerate=True)
    return v.evolve(v.values / norm, L2, normalization=L2)


def postprocess(v: PooledVector, steps: Iterable[Tuple[str, Optional[float]]]) -> PooledVector:
    """Apply ``(POWER, ρ)`` and ``(L2, None)`` steps in the order given."""
    for name, parameter in steps:
        if name == POWER:
            v = power_normalize(v, parameter)
        elif name == L2:
            v = l2_normalize(v)
        else:
            raise ValueError(f"Unknown post-processing step {name}")
    return v
