"""Per-patch encoders φ(x) and the Gaussian kernel they approximate."""
from .codebook import encode_bov_hard, encode_vlad, histogram, nearest_centroids
from .emk import encode_emk
from .fisher import encode_fv_hard, hard_assignments
from .kernels import gaussian_kernel, gaussian_kernel_matrix
from .models import (
    BlockStructure,
    Codebook,
    DescriptorSet,
    EmkParams,
    EncodingMatrix,
    GmmModel,
    OccurrenceHistogram,
)

__all__ = [
    'BlockStructure',
    'Codebook',
    'DescriptorSet',
    'EmkParams',
    'EncodingMatrix',
    'GmmModel',
    'OccurrenceHistogram',
    'encode_bov_hard',
    'encode_emk',
    'encode_fv_hard',
    'encode_vlad',
    'gaussian_kernel',
    'gaussian_kernel_matrix',
    'hard_assignments',
    'histogram',
    'nearest_centroids',
]
