from pathlib import Path

import numpy as np

from .models import WeightMap
from .render import normalize_map

PGM_MAXVAL = 255


def format_pgm(m: WeightMap) -> str:
    """Plain (P2) PGM of the normalized map, maxval 255."""
    levels = np.rint(normalize_map(m).values * PGM_MAXVAL).astype(int)
    lines = ["P2", f"{m.width} {m.height}", str(PGM_MAXVAL)]
    lines.extend(" ".join(str(v) for v in row) for row in levels)
    return "\n".join(lines) + "\n"


def format_map_csv(m: WeightMap) -> str:
    """``height,width`` header and sizes, then the raw values row by row."""
    lines = ["height,width", f"{m.height},{m.width}"]
    lines.extend(",".join(f"{v:.17g}" for v in row) for row in m.values)
    return "\n".join(lines) + "\n"


def write_pgm(m: WeightMap, path) -> None:
    Path(path).write_text(format_pgm(m))


def write_map_csv(m: WeightMap, path) -> None:
    Path(path).write_text(format_map_csv(m))
