"""
Closed-form flow of the linear pieces and the boundary-value map F.

On the half space x1 > 0 the system is x' = M x + b. With M = P D P^-1 the
flow from x0 is

    x(t) = P e^{Dt} P^-1 (x0 + M^-1 b) - M^-1 b,

and the map whose zero is a symmetric crossing orbit is

    F(a) = P (e^{DL} + I) P^-1 (0, a2, a3, a4) + P diag((e^{lam L} - 1)/lam) P^-1 b

with a = (L, a2, a3, a4). Derivatives are taken on the diagonal factors.

Every function works in two modes sharing one code path: ``"float"``
(binary64 numpy arrays, used by Newton and the figures) and ``"interval"``
(object arrays of :class:`Interval`, used by the proof).
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Sequence

import numpy as np

from .exact import (
    ProblemData,
    float_matrix,
    float_vector,
    interval_matrix,
    interval_vector,
    problem_data,
)
from .interval import Interval, as_interval, iv_exp, iv_intersect, ivec

FLOAT = "float"
INTERVAL = "interval"


class Arithmetic(ABC):
    """Scalar type plus the problem constants represented in it."""

    name: str = ""

    def __init__(self, data: ProblemData):
        self.data = data

    @abstractmethod
    def scalar(self, value: Any) -> Any:
        pass

    @abstractmethod
    def vector(self, values: Sequence[Any]) -> np.ndarray:
        pass

    @abstractmethod
    def exp(self, values: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def zeros(self, shape: Any) -> np.ndarray:
        pass


class FloatArithmetic(Arithmetic):
    name = FLOAT

    def __init__(self, data: ProblemData):
        super().__init__(data)
        self.M = float_matrix(data.M)
        self.P = float_matrix(data.P)
        self.Pinv = float_matrix(data.Pinv)
        self.lam = float_vector(data.lam)
        self.b = float_vector(data.b)
        self.Minv_b = float_vector(data.Minv_b)
        self.Pinv_b = float_vector(data.Pinv_b)
        self.Pinv_Minv_b = float_vector(data.Pinv_Minv_b)

    def scalar(self, value: Any) -> float:
        if isinstance(value, Interval):
            raise TypeError("float mode does not accept Interval arguments")
        return float(value)

    def vector(self, values: Sequence[Any]) -> np.ndarray:
        return np.array([self.scalar(v) for v in values], dtype=float)

    def exp(self, values: np.ndarray) -> np.ndarray:
        return np.exp(values)

    def zeros(self, shape: Any) -> np.ndarray:
        return np.zeros(shape, dtype=float)


class IntervalArithmetic(Arithmetic):
    name = INTERVAL

    def __init__(self, data: ProblemData):
        super().__init__(data)
        self.M = interval_matrix(data.M)
        self.P = interval_matrix(data.P)
        self.Pinv = interval_matrix(data.Pinv)
        self.lam = interval_vector(data.lam)
        self.b = interval_vector(data.b)
        self.Minv_b = interval_vector(data.Minv_b)
        self.Pinv_b = interval_vector(data.Pinv_b)
        self.Pinv_Minv_b = interval_vector(data.Pinv_Minv_b)

    def scalar(self, value: Any) -> Interval:
        return as_interval(value)

    def vector(self, values: Sequence[Any]) -> np.ndarray:
        return ivec(list(values))

    def exp(self, values: np.ndarray) -> np.ndarray:
        out = np.empty(len(values), dtype=object)
        for i, v in enumerate(values):
            out[i] = iv_exp(v)
        return out

    def zeros(self, shape: Any) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(out.shape):
            out[idx] = Interval(0.0)
        return out


@lru_cache(maxsize=None)
def get_arithmetic(mode: str = INTERVAL) -> Arithmetic:
    """Arithmetic for ``"float"`` or ``"interval"`` mode."""
    if mode == FLOAT:
        return FloatArithmetic(problem_data())
    if mode == INTERVAL:
        return IntervalArithmetic(problem_data())
    raise ValueError(f"unknown mode {mode!r} (expected 'float' or 'interval')")


def _exp_lam(ar: Arithmetic, t: Any) -> np.ndarray:
    """Vector (e^{lam_i t})_i."""
    return ar.exp(ar.lam * ar.scalar(t))


def _crossing_state(ar: Arithmetic, a: Sequence[Any]) -> np.ndarray:
    if len(a) != 4:
        raise ValueError(f"expected 4 unknowns, got {len(a)}")
    return ar.vector([0.0, a[1], a[2], a[3]])


# === Matrix exponential ===


def exp_Dt(t: Any, mode: str = INTERVAL) -> np.ndarray:
    """Diagonal matrix e^{Dt}."""
    ar = get_arithmetic(mode)
    out = ar.zeros((4, 4))
    for i, e in enumerate(_exp_lam(ar, t)):
        out[i, i] = e
    return out


def exp_Mt(t: Any, mode: str = INTERVAL) -> np.ndarray:
    """e^{Mt} = P e^{Dt} P^-1."""
    ar = get_arithmetic(mode)
    return (ar.P * _exp_lam(ar, t)) @ ar.Pinv


def integral_term(L: Any, mode: str = INTERVAL) -> np.ndarray:
    """Integral of e^{M(L-s)} b over [0, L], via the antiderivative."""
    ar = get_arithmetic(mode)
    g = (_exp_lam(ar, L) - 1) / ar.lam
    return ar.P @ (g * ar.Pinv_b)


# === Solutions ===


def phi_plus(t: Any, a: Sequence[Any], mode: str = INTERVAL) -> np.ndarray:
    """
    State at time t of x' = M x + b started at (0, a2, a3, a4).

    a[0] is not used; the solution does not depend on the duration.
    """
    ar = get_arithmetic(mode)
    x0 = _crossing_state(ar, a)
    coeffs = ar.Pinv @ x0 + ar.Pinv_Minv_b
    return ar.P @ (_exp_lam(ar, t) * coeffs) - ar.Minv_b


def phi_plus_cell(cell: Interval, a: Sequence[Any]) -> np.ndarray:
    """
    Enclosure of phi_plus over a time cell.

    Intersection of the direct evaluation with the mean-value form
    phi(t_m) + (M phi(cell) + b)(cell - t_m).
    """
    ar = get_arithmetic(INTERVAL)
    cell = as_interval(cell)
    direct = phi_plus(cell, a)
    if cell.is_degenerate:
        return direct

    t_m = Interval(cell.mid)
    center = phi_plus(t_m, a)
    slope = ar.M @ direct + ar.b
    mean_value = center + slope * (cell - t_m)

    out = np.empty(4, dtype=object)
    for i in range(4):
        both = iv_intersect(direct[i], mean_value[i])
        out[i] = direct[i] if both is None else both
    return out


def vector_field(x: Sequence[float], sign: int = 1) -> np.ndarray:
    """f_plus (sign=1) or f_minus (sign=-1) in float mode."""
    ar = get_arithmetic(FLOAT)
    return ar.M @ np.asarray(x, dtype=float) + sign * ar.b


# === Boundary-value map ===


def F_map(a: Sequence[Any], mode: str = FLOAT) -> np.ndarray:
    """F(a); zero iff the orbit from (0, a2, a3, a4) reaches its negative at time L."""
    ar = get_arithmetic(mode)
    L = ar.scalar(a[0])
    e = _exp_lam(ar, L)
    y = ar.Pinv @ _crossing_state(ar, a)
    g = (e - 1) / ar.lam
    return ar.P @ ((e + 1) * y + g * ar.Pinv_b)


def DF_map(a: Sequence[Any], mode: str = FLOAT) -> np.ndarray:
    """Jacobian of F; column 0 is the derivative in L."""
    ar = get_arithmetic(mode)
    L = ar.scalar(a[0])
    e = _exp_lam(ar, L)
    y = ar.Pinv @ _crossing_state(ar, a)

    out = ar.zeros((4, 4))
    out[:, 0] = ar.P @ (ar.lam * e * y + e * ar.Pinv_b)
    for k in range(1, 4):
        out[:, k] = ar.P @ ((e + 1) * ar.Pinv[:, k])
    return out


@dataclass
class SecondDerivatives:
    """
    Non-zero second partials of F.

    Attributes:
        d11: d^2 F / dL^2
        mixed: d^2 F / dL da_k keyed by k = 2, 3, 4
    """

    d11: np.ndarray
    mixed: Dict[int, np.ndarray]


def D2F_contraction(a_box: Sequence[Any], mode: str = INTERVAL) -> SecondDerivatives:
    """
    Second partials of F over a box.

    F is affine in (a2, a3, a4), so only the L-L and L-a_k partials are
    non-zero.
    """
    ar = get_arithmetic(mode)
    L = ar.scalar(a_box[0])
    e = _exp_lam(ar, L)
    y = ar.Pinv @ _crossing_state(ar, a_box)
    lam_e = ar.lam * e

    d11 = ar.P @ (ar.lam * lam_e * y + lam_e * ar.Pinv_b)
    mixed = {k + 1: ar.P @ (lam_e * ar.Pinv[:, k]) for k in range(1, 4)}
    return SecondDerivatives(d11=d11, mixed=mixed)


def period_fraction(t: float, period: float) -> float:
    """t reduced into [0, period)."""
    r = math.fmod(t, period)
    return r + period if r < 0 else r
