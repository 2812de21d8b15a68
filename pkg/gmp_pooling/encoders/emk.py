from typing import Optional

import numpy as np

from ..errors import DimensionMismatchError
from .models import DescriptorSet, EmkParams, EncodingMatrix


def encode_emk(X: DescriptorSet, params: EmkParams, D: Optional[int] = None) -> EncodingMatrix:
    """Efficient match kernel features: √(2/D) cos(ωᵀx + b), dense."""
    if D is None:
        D = params.n_features
    if D % 2 or D < 2:
        raise ValueError(f"EMK dimensionality must be even, got {D}")
    if D > params.n_features:
        raise DimensionMismatchError(f"requested D={D} but only {params.n_features} directions were drawn")
    if X.dim != params.dim:
        raise DimensionMismatchError(f"descriptor dim {X.dim} does not match EMK dim {params.dim}")
    projections = params.directions[:D] @ X.descriptors.T + params.phases[:D, None]
    return EncodingMatrix(np.sqrt(2.0 / D) * np.cos(projections))
