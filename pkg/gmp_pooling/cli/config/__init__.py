from .base import BaseRecord
from .pipeline import GMP, POOLINGS, PipelineConfig
from .synthetic import SyntheticSpec

__all__ = [
    'BaseRecord',
    'GMP',
    'POOLINGS',
    'PipelineConfig',
    'SyntheticSpec',
]
