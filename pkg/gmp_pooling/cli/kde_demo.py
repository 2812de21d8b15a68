"""Curves for the KDE flattening figure.

Five 1-D samples form two groups, so the plain KDE is bimodal. Power
normalization only softens the modes; the GMP-weighted KDE is flat (equal
to one) at every sample.
"""
import logging
from typing import Dict

import numpy as np
from scipy.integrate import trapezoid

from ..encoders import DescriptorSet
from ..kde import Kde, default_grid, equalization_weights, flatness_profile, kde_curve, power_renormalized
from .io import write_text

logger = logging.getLogger(__name__)

DEMO_SAMPLES = (-11.0, -10.0, 7.0, 8.0, 9.0)
DEMO_SIGMA = 3.0
DEMO_RHO = 0.5
DEMO_LAMBDA = 0.0

COLUMNS = ("x", "kde", "kde_pow", "weighted_kde")


def build_kde_demo() -> Dict[str, np.ndarray]:
    """Grid abscissae plus the uniform, power-renormalized and weighted KDE curves."""
    X = DescriptorSet.from_points(DEMO_SAMPLES)
    grid = default_grid(X.descriptors, DEMO_SIGMA).abscissae()

    uniform = kde_curve(Kde(X.descriptors, DEMO_SIGMA), grid)
    uniform = uniform / trapezoid(uniform, grid)
    weights = equalization_weights(X, DEMO_SIGMA, DEMO_LAMBDA)
    logger.debug("kde-demo: equalization weights %s", np.array2string(weights.alpha, precision=4))
    return {
        "x": grid,
        "kde": uniform,
        "kde_pow": power_renormalized(uniform, grid, DEMO_RHO),
        "weighted_kde": np.asarray(flatness_profile(X, weights, DEMO_SIGMA, grid)),
    }


def format_kde_demo(curves: Dict[str, np.ndarray]) -> str:
    lines = [",".join(COLUMNS)]
    lines.extend(",".join(f"{v:.17g}" for v in row) for row in zip(*(curves[c] for c in COLUMNS)))
    return "\n".join(lines) + "\n"


def cmd_kde_demo(output_csv) -> int:
    curves = build_kde_demo()
    write_text(output_csv, format_kde_demo(curves))
    logger.info("kde-demo: wrote %d grid rows to %s", len(curves["x"]), output_csv)
    return 0
