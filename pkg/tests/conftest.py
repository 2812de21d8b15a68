import json

import numpy as np
import pytest

from gmp_pooling.context import InMemoryContextStorage
from gmp_pooling.encoders import DescriptorSet, EncodingMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture(autouse=True)
def fresh_context_storage():
    InMemoryContextStorage.clear()
    yield
    InMemoryContextStorage.clear()


@pytest.fixture(autouse=True)
def no_jobs_override(monkeypatch):
    monkeypatch.delenv("GMP_POOL_JOBS", raising=False)


@pytest.fixture
def dense_encoding(rng):
    """Dense 12 x 7 encoding matrix."""
    return EncodingMatrix(rng.normal(size=(12, 7)))


@pytest.fixture
def descriptor_set(rng):
    return DescriptorSet(rng.normal(size=(40, 3)))


@pytest.fixture
def write_json(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return path
    return write
