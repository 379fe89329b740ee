"""
Existence and local uniqueness of the zero of F by the radii polynomial.

With W a floating approximate inverse of DF(a_bar),

    Y0 >= ||W F(a_bar)||_inf
    Z1 >= ||I - W DF(a_bar)||_inf
    Z2 >= sup over the ball B(a_bar, r_star) of ||W D^2F(c)||

and p(r) = Z2 r^2 - (1 - Z1) r + Y0. If p(r0) < 0 for some r0 in (0, r_star],
then Z1 < 1 makes W injective and a -> a - W F(a) is a contraction on
B(a_bar, r0), so F has a unique zero there.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ProofFailure
from .exact import problem_data
from .flow import FLOAT, INTERVAL, D2F_contraction, DF_map
from .interval import (
    Interval,
    as_interval,
    imat,
    imat_identity,
    imat_inf_norm,
    iv_exp,
    ivec,
)
from .newton import approximate_inverse

logger = logging.getLogger(__name__)

SWEEP_START = 1e-15

# Relative step above the analytic root of p; far larger than the rounding
# error of the interval evaluation of p there.
ROOT_NUDGE = 2.0**-20


@dataclass
class RadiiBounds:
    """
    Verified bounds and negativity window of the radii polynomial.

    Attributes:
        Y0: Upper bound on ||W F(a_bar)||_inf
        Z2: Upper bound of the second-derivative term over B(a_bar, r_star)
        r_star: Trust radius
        r0_min, r0_max: Smallest and largest verified radius with p(r) < 0
        L_positive: Whether a1 - r0_min > 0 was verified (None if not checked)
        Z1: Upper bound on ||I - W DF(a_bar)||_inf
    """

    Y0: float
    Z2: float
    r_star: float
    r0_min: float
    r0_max: float
    L_positive: Optional[bool] = None
    Z1: float = 0.0

    def box(self, a_bar: Sequence[float]) -> np.ndarray:
        """Interval box containing the true zero."""
        return certified_box(a_bar, self.r0_min)


def certified_box(a_bar: Sequence[float], r: float) -> np.ndarray:
    """Closed sup-norm ball of radius r around a_bar, as an interval vector."""
    ball = Interval(-r, r)
    return ivec([as_interval(float(x)) + ball for x in a_bar])


def _exp_bounds(L: float) -> List[Tuple[Fraction, Fraction]]:
    """Rational bounds (lo, hi) of e^{lam_i L} for each eigenvalue."""
    bounds = []
    for lam in problem_data().lam:
        e = iv_exp(Interval.from_fraction(lam) * Interval(L))
        bounds.append((Fraction(e.lo), Fraction(e.hi)))
    return bounds


def residual_bounds(
    a_bar: Sequence[float], W: np.ndarray
) -> List[Tuple[Fraction, Fraction]]:
    """
    Rational enclosures (lo, hi) of the components of W F(a_bar).

    W and a_bar are binary64, hence exact rationals. With Q = W P and
    c = P^-1 b / lam,

        W F(a) = sum_i Q[:, i] ((y_i + c_i) e^{lam_i L} + (y_i - c_i)),

    y = P^-1 (0, a2, a3, a4). The only inexact inputs are the exponentials,
    so the enclosure is as wide as their enclosures and no wider.
    """
    data = problem_data()
    a = [Fraction(float(x)) for x in a_bar]
    Wq = [[Fraction(float(x)) for x in row] for row in np.asarray(W, dtype=float)]
    x0 = (Fraction(0), a[1], a[2], a[3])

    y = [sum((p * x for p, x in zip(row, x0)), Fraction(0)) for row in data.Pinv]
    c = [pb / lam for pb, lam in zip(data.Pinv_b, data.lam)]
    slope = [y[i] + c[i] for i in range(4)]
    offset = [y[i] - c[i] for i in range(4)]
    exps = _exp_bounds(float(a_bar[0]))

    out = []
    for row in Wq:
        Q = [sum((row[j] * data.P[j][i] for j in range(4)), Fraction(0)) for i in range(4)]
        lo = hi = Fraction(0)
        for i in range(4):
            coef = Q[i] * slope[i]
            e_lo, e_hi = exps[i]
            base = Q[i] * offset[i]
            if coef >= 0:
                lo += base + coef * e_lo
                hi += base + coef * e_hi
            else:
                lo += base + coef * e_hi
                hi += base + coef * e_lo
        out.append((lo, hi))
    return out


def bound_Y0(a_bar: Sequence[float], W: np.ndarray) -> float:
    """Rigorous upper bound on ||W F(a_bar)||_inf, from an exact rational residual."""
    worst = max(max(abs(lo), abs(hi)) for lo, hi in residual_bounds(a_bar, W))
    return Interval.from_fraction(worst).hi


def bound_Z1(a_bar: Sequence[float], W: np.ndarray) -> float:
    """Rigorous upper bound on ||I - W DF(a_bar)||_inf."""
    DF = DF_map(ivec([float(x) for x in a_bar]), INTERVAL)
    return imat_inf_norm(imat_identity(4) - imat(W) @ DF)


def bound_Z2(a_bar: Sequence[float], W: np.ndarray, r_star: float) -> float:
    """
    Rigorous Z2 bound over the ball of radius r_star.

    Row i contributes |(W d11)_i| + 2 sum_k |(W d1k)_i|; mixed partials
    appear twice by symmetry.
    """
    second = D2F_contraction(certified_box(a_bar, r_star), INTERVAL)
    Wi = imat(W)
    d11 = Wi @ second.d11
    mixed = [Wi @ second.mixed[k] for k in sorted(second.mixed)]

    bound = 0.0
    for i in range(len(d11)):
        row = abs(d11[i])
        for m in mixed:
            row = row + 2 * abs(m[i])
        bound = max(bound, row.hi)
    return bound


def radii_polynomial(r: float, Y0: float, Z2: float, Z1: float = 0.0) -> Interval:
    """Enclosure of Z2 r^2 - (1 - Z1) r + Y0."""
    R = Interval(r)
    return Interval(Z2) * R * R - (1 - Interval(Z1)) * R + Interval(Y0)


def small_root(Y0: float, Z2: float, Z1: float = 0.0) -> Optional[float]:
    """
    Floating approximation of the smaller root of p, nudged upward.

    Uses 2 Y0 / (k + sqrt(k^2 - 4 Y0 Z2)), k = 1 - Z1, which does not cancel
    for small Y0 Z2. None when p has no positive root.
    """
    k = 1.0 - Z1
    disc = k * k - 4.0 * Y0 * Z2
    if k <= 0.0 or disc < 0.0:
        return None
    root = 2.0 * Y0 / (k + math.sqrt(disc))
    if root <= 0.0:
        return None
    return root * (1.0 + ROOT_NUDGE)


def candidate_radii(
    r_star: float, Y0: Optional[float] = None, Z2: Optional[float] = None, Z1: float = 0.0
) -> List[float]:
    """
    Geometric sweep 1e-15 * 2^k up to r_star, plus r_star itself.

    With Y0 and Z2 given, the nudged small root of p is added as well.
    """
    radii = []
    r = SWEEP_START
    while r < r_star:
        radii.append(r)
        r *= 2.0
    radii.append(r_star)
    if Y0 is not None and Z2 is not None:
        root = small_root(Y0, Z2, Z1)
        if root is not None and root < r_star:
            radii.append(root)
    return sorted(set(radii))


def radii_verdict(
    Y0: float,
    Z2: float,
    r_star: float,
    a1: Optional[float] = None,
    Z1: float = 0.0,
) -> RadiiBounds:
    """
    Find the window where p is verified negative.

    p is convex, so negativity at the window ends covers the whole window.

    Raises:
        ProofFailure: Z1 >= 1, no candidate radius gives p(r) < 0, or
            a1 - r0 <= 0
    """
    if not Z1 < 1.0:
        raise ProofFailure(
            "radii",
            "approximate inverse is not accurate enough (Z1 >= 1)",
            {"Z1": Z1},
        )
    negative = [
        r
        for r in candidate_radii(r_star, Y0, Z2, Z1)
        if radii_polynomial(r, Y0, Z2, Z1).hi < 0.0
    ]
    if not negative:
        raise ProofFailure(
            "radii",
            "radii polynomial is not negative on any candidate radius",
            {"Y0": Y0, "Z1": Z1, "Z2": Z2, "r_star": r_star},
        )

    bounds = RadiiBounds(
        Y0=Y0, Z2=Z2, r_star=r_star, r0_min=negative[0], r0_max=negative[-1], Z1=Z1
    )
    logger.info(
        "radii: Y0=%.3e Z1=%.3e Z2=%.3e window=[%.3e, %.3e]",
        Y0,
        Z1,
        Z2,
        bounds.r0_min,
        bounds.r0_max,
    )

    if a1 is not None:
        bounds.L_positive = (Interval(a1) - Interval(bounds.r0_min)).lo > 0.0
        if not bounds.L_positive:
            raise ProofFailure(
                "radii",
                "cannot certify a positive duration",
                {"a1": a1, "r0_min": bounds.r0_min},
            )
    return bounds


def prove_existence(a_bar: Sequence[float], r_star: float) -> RadiiBounds:
    """Y0, Z1, Z2 and the verdict at a_bar with W ~ DF(a_bar)^-1."""
    W = approximate_inverse(DF_map(a_bar, FLOAT))
    Y0 = bound_Y0(a_bar, W)
    Z1 = bound_Z1(a_bar, W)
    Z2 = bound_Z2(a_bar, W, r_star)
    return radii_verdict(Y0, Z2, r_star, a1=float(a_bar[0]), Z1=Z1)
