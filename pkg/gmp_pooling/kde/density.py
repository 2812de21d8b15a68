"""Probabilistic view of the Gaussian match kernel.

Two descriptor sets give two KDEs; their probability product kernel at ρ = 1
is proportional to the Gaussian match kernel between the sets. Equalizing
the weighted KDE at the sample positions yields the GMP dual weights.
"""
import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from scipy.integrate import trapezoid

from ..encoders.kernels import gaussian_kernel_matrix
from ..encoders.models import DescriptorSet
from ..errors import DimensionMismatchError, QuadratureNotConvergedError
from ..pooling import PatchWeights, gmp_dual_weights
from .models import Kde, QuadratureGrid

logger = logging.getLogger(__name__)


def kde_eval(p: Kde, x) -> float:
    """Σ_i w_i k_h(x, s_i) at a single point."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if x.shape != (p.dim,):
        raise DimensionMismatchError(f"point has shape {x.shape}, kde is {p.dim}-dimensional")
    return float(gaussian_kernel_matrix(x[None, :], p.samples, p.bandwidth)[0] @ p.weights)


def kde_curve(p: Kde, grid) -> np.ndarray:
    """Vectorized kde_eval over the rows of ``grid`` (or a 1-D list of abscissae)."""
    points = np.asarray(grid, dtype=np.float64)
    if points.size == 0:
        return np.zeros(0)
    if points.ndim == 1:
        points = points[:, None]
    return gaussian_kernel_matrix(points, p.samples, p.bandwidth) @ p.weights


def gmk(X: DescriptorSet, Y: DescriptorSet, sigma: float) -> float:
    """Gaussian match kernel (1/MN) Σ_i Σ_j k_σ(x_i, y_j)."""
    K = gaussian_kernel_matrix(X.descriptors, Y.descriptors, sigma)
    # fsum is order independent, which keeps gmk(X, Y) == gmk(Y, X) bit for bit
    return math.fsum(K.ravel()) / K.size


def _nonnegative_power(values: np.ndarray, rho: float) -> np.ndarray:
    scale = max(float(np.max(np.abs(values))), 1.0)
    if np.any(values < -1e-12 * scale):
        raise ValueError("cannot raise a density with negative values to a fractional power")
    return np.clip(values, 0.0, None) ** rho


def _integrate(p: Kde, q: Kde, rho: float, grid: QuadratureGrid) -> float:
    x = grid.abscissae()
    integrand = _nonnegative_power(kde_curve(p, x), rho) * _nonnegative_power(kde_curve(q, x), rho)
    return float(trapezoid(integrand, x))


def default_grid(samples, sigma: float, points: Optional[int] = None) -> QuadratureGrid:
    if points is None:
        return QuadratureGrid.around(samples, sigma)
    return QuadratureGrid.around(samples, sigma, points)


def ppk(p: Kde, q: Kde, rho: float = 1.0, grid: Optional[QuadratureGrid] = None, tol: float = 1e-6) -> float:
    """Probability product kernel ∫ p(x)^ρ q(x)^ρ dx by the trapezoidal rule.

    Restricted to 1-D densities. The default grid spans the pooled samples
    with a margin of 5σ, σ = √2 x the larger KDE bandwidth (the match-kernel
    bandwidth). The integral is recomputed with twice the step; a relative
    change above ``tol`` raises QuadratureNotConvergedError.
    """
    if p.dim != 1 or q.dim != 1:
        raise DimensionMismatchError("ppk quadrature supports 1-dimensional KDEs only")
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if grid is None:
        sigma = math.sqrt(2.0) * max(p.bandwidth, q.bandwidth)
        grid = default_grid(np.concatenate([p.samples.ravel(), q.samples.ravel()]), sigma)

    value = _integrate(p, q, rho, grid)
    coarse = _integrate(p, q, rho, QuadratureGrid(grid.lo, grid.hi, (grid.points + 1) // 2))
    change = abs(value - coarse) / max(abs(value), np.finfo(float).tiny)
    if change > tol:
        raise QuadratureNotConvergedError(
            f"ppk: doubling the step changed the integral by {change:.2e} (tolerance {tol:.0e}); refine the grid",
            change)
    logger.debug("ppk: rho=%g value=%.12g step-change=%.2e", rho, value, change)
    return value


def power_renormalized(values, grid, rho: float) -> np.ndarray:
    """Curve v^ρ rescaled to unit integral over ``grid``."""
    grid = np.asarray(grid, dtype=np.float64)
    powered = _nonnegative_power(np.asarray(values, dtype=np.float64), rho)
    return powered / trapezoid(powered, grid)


def equalization_weights(X: DescriptorSet, sigma: float, lam: float = 0.0) -> PatchWeights:
    """Weights w with Σ_j w_j k_σ(x_i, x_j) = 1 at every sample (regularized when λ > 0)."""
    K = gaussian_kernel_matrix(X.descriptors, X.descriptors, sigma)
    return gmp_dual_weights(K, lam)


def flatness_profile(X: DescriptorSet, w: PatchWeights, sigma: float, grid: Sequence[float]) -> List[float]:
    """Weighted KDE Σ_j w_j k_σ(g, x_j) evaluated at every grid point."""
    if X.dim != 1:
        raise DimensionMismatchError("flatness profiles are 1-dimensional")
    if w.n != X.n:
        raise DimensionMismatchError(f"{w.n} weights for {X.n} samples")
    points = np.asarray(grid, dtype=np.float64).ravel()
    if points.size == 0:
        return []
    return list(gaussian_kernel_matrix(points[:, None], X.descriptors, sigma) @ w.alpha)


def count_local_maxima(values) -> int:
    """Interior points strictly above both neighbours."""
    v = np.asarray(values, dtype=np.float64)
    if v.size < 3:
        return 0
    return int(np.sum((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])))
