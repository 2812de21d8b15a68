from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from ...errors import NonFiniteInputError
from ...linalg.solver_types import DEFAULT_RANK_TOL
from ..pooling_types import AUTO, GMP_SOLVERS, NORMALIZATIONS, PROVENANCES, RAW, WEIGHTED


@dataclass(frozen=True)
class PooledVector:
    """A D-dim image representation plus how it was built.

    ``steps`` lists the post-processing applied so far, in order
    (e.g. ``("power(0.5)", "l2")``). ``degenerate`` flags an all-zero vector
    that could not be ℓ2-normalized.
    """

    values: np.ndarray
    provenance: str
    normalization: str = RAW
    degenerate: bool = False
    steps: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError(f"pooled vector must be 1-D, got shape {values.shape}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"Unknown provenance {self.provenance}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"Unknown normalization {self.normalization}")
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def evolve(self, values: np.ndarray, step: str, **changes) -> "PooledVector":
        """Copy with new values and ``step`` appended to the history."""
        return replace(self, values=values, steps=self.steps + (step,), **changes)


@dataclass(frozen=True)
class PatchWeights:
    """Per-patch dual weights α and the λ they were solved with.

    ``origin`` is GMP_DUAL when the weights come from the GMP dual solve and
    WEIGHTED for externally supplied weights.
    """

    alpha: np.ndarray
    lam: float = 0.0
    origin: str = WEIGHTED

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=np.float64)
        if alpha.ndim != 1:
            raise ValueError(f"patch weights must be 1-D, got shape {alpha.shape}")
        if not np.all(np.isfinite(alpha)):
            raise NonFiniteInputError("patch weights contain NaN or Inf entries")
        if self.lam < 0:
            raise ValueError(f"lambda must be non-negative, got {self.lam}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return self.alpha.shape[0]

    def __rmul__(self, scale: float) -> "PatchWeights":
        return PatchWeights(scale * self.alpha, self.lam, WEIGHTED)

    def __add__(self, other: "PatchWeights") -> "PatchWeights":
        return PatchWeights(self.alpha + other.alpha, self.lam, WEIGHTED)


@dataclass(frozen=True)
class GmpConfig:
    """Solver settings for GMP. ``cg_max_iter`` of None means the system dimension."""

    lam: float = 0.0
    solver: str = AUTO
    cg_tol: float = 1e-10
    cg_max_iter: Optional[int] = None
    rank_tol: float = DEFAULT_RANK_TOL

    def __post_init__(self):
        if not self.lam >= 0:
            raise ValueError(f"lambda must be non-negative, got {self.lam}")
        if self.solver not in GMP_SOLVERS:
            raise ValueError(f"Unknown GMP solver {self.solver}, expected one of {GMP_SOLVERS}")
        if not self.cg_tol > 0 or not self.rank_tol > 0:
            raise ValueError("tolerances must be positive")
        if self.cg_max_iter is not None and self.cg_max_iter < 1:
            raise ValueError(f"cg_max_iter must be >= 1, got {self.cg_max_iter}")
