from .descriptors import (
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
]
