"""
Exact problem constants.

The linear pieces of the switching system are x' = M x + b and
x' = M x - b, where M is the companion matrix of
(s + 1)(s + 2)(s + 3)(s + 4) and b = (0, 0, 0, -1). M is diagonalized by
the Vandermonde matrix P of its eigenvalues. Every entry is kept as a
``Fraction`` and the identities between the matrices are checked exactly
when the data is built.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from .errors import ExactDataError
from .interval import Interval

logger = logging.getLogger(__name__)

Rational = Fraction
RationalVector = Tuple[Fraction, ...]
RationalMatrix = Tuple[RationalVector, ...]

F = Fraction

_M = (
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (-24, -50, -35, -10),
)
_MINV = (
    (F(-50, 24), F(-35, 24), F(-10, 24), F(-1, 24)),
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
)
_P = (
    (1, 1, 1, 1),
    (-4, -3, -2, -1),
    (16, 9, 4, 1),
    (-64, -27, -8, -1),
)
_PINV = (
    (-1, F(-11, 6), -1, F(-1, 6)),
    (4, 7, F(7, 2), F(1, 2)),
    (-6, F(-19, 2), -4, F(-1, 2)),
    (4, F(13, 3), F(3, 2), F(1, 6)),
)
_LAMBDA = (-4, -3, -2, -1)
_B = (0, 0, 0, -1)


def _to_matrix(rows: Sequence[Sequence[object]]) -> RationalMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)  # type: ignore[arg-type]


def _to_vector(values: Sequence[object]) -> RationalVector:
    return tuple(Fraction(x) for x in values)  # type: ignore[arg-type]


def rational_matmul(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    n, m = len(A), len(B[0])
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def rational_matvec(A: RationalMatrix, v: RationalVector) -> RationalVector:
    return tuple(sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A)


def rational_identity(n: int = 4) -> RationalMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class ProblemData:
    """Exact constants of the two linear pieces."""

    M: RationalMatrix
    Minv: RationalMatrix
    P: RationalMatrix
    Pinv: RationalMatrix
    lam: RationalVector
    b: RationalVector
    Minv_b: RationalVector
    Pinv_b: RationalVector
    Pinv_Minv_b: RationalVector

    @property
    def trace_M(self) -> Fraction:
        return sum((self.M[i][i] for i in range(4)), Fraction(0))

    def check(self) -> None:
        """Verify the exact identities; raises ExactDataError on failure."""
        eye = rational_identity(4)
        if rational_matmul(self.M, self.Minv) != eye:
            raise ExactDataError("M * Minv != I")
        if rational_matmul(self.P, self.Pinv) != eye:
            raise ExactDataError("P * Pinv != I")
        D = tuple(
            tuple(self.lam[i] if i == j else Fraction(0) for j in range(4))
            for i in range(4)
        )
        if rational_matmul(self.M, self.P) != rational_matmul(self.P, D):
            raise ExactDataError("M * P != P * diag(lambda)")
        if len(set(self.lam)) != 4 or any(x >= 0 for x in self.lam):
            raise ExactDataError("eigenvalues must be negative and distinct")


def build_problem_data() -> ProblemData:
    """Build and check the exact constants."""
    M = _to_matrix(_M)
    Minv = _to_matrix(_MINV)
    P = _to_matrix(_P)
    Pinv = _to_matrix(_PINV)
    b = _to_vector(_B)
    Minv_b = rational_matvec(Minv, b)
    data = ProblemData(
        M=M,
        Minv=Minv,
        P=P,
        Pinv=Pinv,
        lam=_to_vector(_LAMBDA),
        b=b,
        Minv_b=Minv_b,
        Pinv_b=rational_matvec(Pinv, b),
        Pinv_Minv_b=rational_matvec(Pinv, Minv_b),
    )
    data.check()
    logger.debug("exact identities verified")
    return data


@lru_cache(maxsize=None)
def problem_data() -> ProblemData:
    """Shared, checked instance."""
    return build_problem_data()


def rational_to_interval(q: Fraction) -> Interval:
    """Enclosure of q of width at most one ulp; degenerate when q is a float."""
    return Interval.from_fraction(q)


def interval_matrix(A: RationalMatrix) -> np.ndarray:
    out = np.empty((len(A), len(A[0])), dtype=object)
    for i, row in enumerate(A):
        for j, q in enumerate(row):
            out[i, j] = rational_to_interval(q)
    return out


def interval_vector(v: RationalVector) -> np.ndarray:
    out = np.empty(len(v), dtype=object)
    for i, q in enumerate(v):
        out[i] = rational_to_interval(q)
    return out


def float_matrix(A: RationalMatrix) -> np.ndarray:
    return np.array([[float(q) for q in row] for row in A], dtype=float)


def float_vector(v: RationalVector) -> np.ndarray:
    return np.array([float(q) for q in v], dtype=float)
