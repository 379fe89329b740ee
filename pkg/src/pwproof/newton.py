"""
Floating-point Newton iteration for the zero of F.

The result is only an approximation; the radii stage turns it into a proof.
"""

import logging
import warnings
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import NonConvergenceError, SingularJacobianError, SingularMatrixError
from .flow import FLOAT, DF_map, F_map

logger = logging.getLogger(__name__)


@dataclass
class NewtonResult:
    """
    Converged iterate and history.

    Attributes:
        a: Approximate zero (L, a2, a3, a4)
        iterations: Newton steps taken
        residuals: ||F||_inf before each step and at the end
    """

    a: np.ndarray
    iterations: int
    residuals: List[float] = field(default_factory=list)

    @property
    def residual(self) -> float:
        return self.residuals[-1]


def _lu(A: np.ndarray):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(A, check_finite=True)
    if np.any(np.diag(lu) == 0.0):
        return None
    return lu, piv


def newton_refine(
    a0: Sequence[float],
    max_iter: int = 50,
    tol: float = 1e-13,
) -> NewtonResult:
    """
    Newton's method a <- a - DF(a)^-1 F(a) with partially pivoted LU solves.

    Args:
        a0: Seed (L, a2, a3, a4)
        max_iter: Maximum number of steps
        tol: Target for ||F(a)||_inf

    Raises:
        SingularJacobianError: DF(a) is singular at some iterate
        NonConvergenceError: tol not reached within max_iter steps
    """
    a = np.array(a0, dtype=float)
    if a.shape != (4,) or not np.all(np.isfinite(a)):
        raise ValueError(f"seed must be four finite values, got {a0}")

    # F vanishes identically on the trivial branch.
    if np.all(a == 0.0):
        return NewtonResult(a=a, iterations=0, residuals=[0.0])

    residuals: List[float] = []
    for k in range(max_iter + 1):
        Fa = F_map(a, FLOAT)
        res = float(np.max(np.abs(Fa)))
        residuals.append(res)
        logger.debug("newton %d: a=%s residual=%.3e", k, a.tolist(), res)
        if not np.isfinite(res):
            break
        if res <= tol:
            logger.info("newton converged in %d steps (residual %.3e)", k, res)
            return NewtonResult(a=a, iterations=k, residuals=residuals)
        if k == max_iter:
            break

        factors = _lu(DF_map(a, FLOAT))
        if factors is None:
            raise SingularJacobianError(k)
        a = a - lu_solve(factors, Fa)

    raise NonConvergenceError(residuals[-1], max_iter)


def approximate_inverse(A: np.ndarray) -> np.ndarray:
    """
    Floating inverse of A via LU; no rigor claimed.

    Raises:
        SingularMatrixError: zero pivot
    """
    A = np.asarray(A, dtype=float)
    factors = _lu(A)
    if factors is None:
        raise SingularMatrixError("zero pivot in LU factorization")
    return lu_solve(factors, np.eye(A.shape[0]))
