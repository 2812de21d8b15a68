"""Descriptor CSV reading and pooled-vector CSV writing.

Descriptor files hold one block per image::

    image_id,n_descriptors,dim        <- optional header, skipped
    img-1,3,2                         <- block line: id, row count, dimension
    0.1,0.2
    0.3,0.4,0,0,16,16                 <- optional x,y,w,h patch rectangle
    ...

Blank lines and lines starting with ``#`` are ignored.
"""
import json
import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..encoders.models import DescriptorSet
from ..errors import DescriptorParseError
from ..pooling.models import PooledVector

logger = logging.getLogger(__name__)

HEADER = "image_id,n_descriptors,dim"
GEOMETRY_COLUMNS = 4


def _significant_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def _parse_count(value: str, line: int, what: str) -> int:
    try:
        count = int(value)
    except ValueError:
        raise DescriptorParseError(line, f"{what} must be an integer, got {value!r}") from None
    if count < 1:
        raise DescriptorParseError(line, f"{what} must be >= 1, got {count}")
    return count


def _parse_row(line: str, number: int, dim: int) -> List[float]:
    fields = line.split(",")
    if len(fields) not in (dim, dim + GEOMETRY_COLUMNS):
        raise DescriptorParseError(
            number, f"expected {dim} values (or {dim + GEOMETRY_COLUMNS} with geometry), got {len(fields)}")
    try:
        return [float(field) for field in fields]
    except ValueError as e:
        raise DescriptorParseError(number, f"not a number ({e})") from None


def parse_descriptors(text: str) -> List[Tuple[str, DescriptorSet]]:
    """Parse descriptor CSV text into (image_id, DescriptorSet) pairs in file order."""
    images = []
    seen = set()
    lines = _significant_lines(text)
    for number, line in lines:
        if line == HEADER:
            continue
        fields = line.split(",")
        if len(fields) != 3:
            raise DescriptorParseError(number, f"expected a block line 'image_id,n,dim', got {line!r}")
        image_id = fields[0].strip()
        if not image_id:
            raise DescriptorParseError(number, "empty image id")
        if image_id in seen:
            raise DescriptorParseError(number, f"duplicate image id {image_id!r}")
        seen.add(image_id)
        n = _parse_count(fields[1], number, "descriptor count")
        dim = _parse_count(fields[2], number, "dimension")

        rows = []
        for _ in range(n):
            row_number, row_line = next(lines, (None, None))
            if row_number is None:
                raise DescriptorParseError(number, f"image {image_id!r} declares {n} rows, file ends after {len(rows)}")
            rows.append(_parse_row(row_line, row_number, dim))
            if len(rows[-1]) != len(rows[0]):
                raise DescriptorParseError(row_number, f"image {image_id!r} mixes rows with and without geometry")

        values = np.asarray(rows, dtype=np.float64)
        geometry = values[:, dim:] if values.shape[1] > dim else None
        try:
            images.append((image_id, DescriptorSet(values[:, :dim], geometry)))
        except ValueError as e:
            raise DescriptorParseError(number, f"image {image_id!r}: {e}") from e
    logger.debug("io: parsed %d images", len(images))
    return images


def read_descriptors(path) -> List[Tuple[str, DescriptorSet]]:
    return parse_descriptors(Path(path).read_text())


def format_descriptors(images: Sequence[Tuple[str, DescriptorSet]]) -> str:
    lines = [HEADER]
    for image_id, X in images:
        lines.append(f"{image_id},{X.n},{X.dim}")
        values = X.descriptors if X.geometry is None else np.hstack([X.descriptors, X.geometry])
        lines.extend(",".join(f"{v:.17g}" for v in row) for row in values)
    return "\n".join(lines) + "\n"


def format_pooled(image_ids: Sequence[str], vectors: Sequence[PooledVector], metadata: Dict) -> str:
    """Metadata comment line, header, then one row per image in the given order."""
    dims = {v.dim for v in vectors}
    if len(dims) > 1:
        raise ValueError(f"pooled vectors have differing dimensions {sorted(dims)}")
    dim = dims.pop() if dims else 0
    lines = [
        "# " + json.dumps(metadata, sort_keys=True),
        ",".join(["image_id", "provenance", "normalization", "degenerate"] + [f"v{i}" for i in range(dim)]),
    ]
    for image_id, v in zip(image_ids, vectors):
        cells = [image_id, v.provenance, v.normalization, str(v.degenerate).lower()]
        cells.extend(f"{x:.17g}" for x in v.values)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
