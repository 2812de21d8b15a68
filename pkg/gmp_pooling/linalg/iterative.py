import logging
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.sparse.linalg import LinearOperator, aslinearoperator, cg

from .models import SolveReport, as_vector
from .solver_types import CG

logger = logging.getLogger(__name__)


def as_operator(apply: Union[Callable[[np.ndarray], np.ndarray], LinearOperator, np.ndarray], n: int) -> LinearOperator:
    """Wrap a matvec callable (or matrix) as a symmetric n x n LinearOperator."""
    if callable(apply) and not isinstance(apply, LinearOperator):
        return LinearOperator((n, n), matvec=apply, rmatvec=apply, dtype=np.float64)
    return aslinearoperator(apply)


def conjugate_gradient(apply, b, tol: float = 1e-10, max_iter: Optional[int] = None) -> Tuple[np.ndarray, SolveReport]:
    """Unpreconditioned CG from a zero start.

    Stops once ``||apply(x) - b|| <= tol * ||b||``. Non-convergence after
    ``max_iter`` (default: the system dimension) is reported, not raised, and
    the lowest-residual iterate is returned.
    """
    b = as_vector(b, "b")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    n = b.shape[0]
    operator = as_operator(apply, n)
    if max_iter is None:
        max_iter = n

    iterations = 0
    best_x, best_residual = np.zeros(n), float(np.linalg.norm(b))

    def track(xk):
        nonlocal iterations, best_x, best_residual
        iterations += 1
        r = float(np.linalg.norm(operator.matvec(xk) - b))
        if r < best_residual:
            best_x, best_residual = xk.copy(), r

    x, info = cg(operator, b, x0=np.zeros(n), rtol=tol, atol=0.0, maxiter=max_iter, callback=track)
    residual = float(np.linalg.norm(operator.matvec(x) - b))
    if residual > best_residual:
        x, residual = best_x, best_residual
    converged = residual <= tol * np.linalg.norm(b) or info == 0
    if not converged:
        logger.warning("cg: no convergence after %d iterations (residual %.3e)", iterations, residual)
    return x, SolveReport(iterations=iterations, residual_norm=residual, method=CG, converged=bool(converged))
