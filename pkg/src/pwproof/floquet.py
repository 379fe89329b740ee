"""
Floquet multipliers of the crossing orbit.

The monodromy matrix is e^{ML} S e^{ML} S, where S is the saltation matrix
shared by both crossings. Its spectrum is enclosed by Gershgorin discs of a
certified similarity transform V^-1 X V, with V an approximate eigenbasis.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np
import scipy.linalg

from .errors import EigenbasisError, ProofFailure
from .exact import problem_data
from .flow import INTERVAL, exp_Mt
from .interval import (
    Interval,
    as_interval,
    imat,
    imat_det,
    imat_identity,
    imat_inf_norm,
    imat_mid,
    iv_exp,
    iv_intersects,
)
from .newton import approximate_inverse

logger = logging.getLogger(__name__)


class StabilityVerdict(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    NOT_PROVEN = "not proven"


@dataclass(frozen=True)
class Disc:
    """Closed disc in the complex plane with a real center."""

    center: float
    radius: float

    def interval(self) -> Interval:
        """Real segment of the disc, rounded outward."""
        return Interval(self.center) + Interval(-self.radius, self.radius)

    def contains(self, z: complex) -> bool:
        if isinstance(z, complex) and z.imag != 0.0:
            return abs(z - self.center) <= self.radius
        return float(z.real if isinstance(z, complex) else z) in self.interval()

    def disjoint(self, other: "Disc") -> bool:
        gap = abs(Interval(self.center) - Interval(other.center)).lo
        return gap > (Interval(self.radius) + Interval(other.radius)).hi

    def inside_unit_disc(self) -> bool:
        return (abs(Interval(self.center)) + Interval(self.radius)).hi < 1.0

    def outside_unit_disc(self) -> bool:
        return (abs(Interval(self.center)) - Interval(self.radius)).lo > 1.0


@dataclass
class EigenEnclosure:
    """
    Gershgorin discs of a certified similarity transform.

    Attributes:
        discs: Sorted by decreasing center
        beta: Upper bound on ||I - W V||_inf
        overlap: Whether any two discs intersect
        similarity: Interval matrix containing V^-1 X V
    """

    discs: List[Disc]
    beta: float
    overlap: bool
    similarity: np.ndarray


@dataclass
class MonodromyReport:
    """
    Everything the stability verdict is based on.

    Attributes:
        S: Saltation matrix enclosure
        X_period: Monodromy matrix enclosure
        discs: Multiplier discs
        trivial_disc_index: Index of the disc containing 1 (None if absent)
        det_enclosure: Determinant of the monodromy matrix
        liouville: Enclosure of e^{trace(M) 2L}
        spectral_product_ok: Product of disc segments meets det_enclosure
        overlap: Whether any two discs intersect
    """

    S: np.ndarray
    X_period: np.ndarray
    discs: List[Disc]
    trivial_disc_index: Optional[int]
    det_enclosure: Interval
    liouville: Interval
    spectral_product_ok: bool
    overlap: bool

    @property
    def liouville_ok(self) -> bool:
        return iv_intersects(self.det_enclosure, self.liouville)


def saltation_matrix(a2_enclosure: Union[Interval, float]) -> np.ndarray:
    """
    Identity with (4, 1) entry -2 / a2.

    Raises:
        ProofFailure: a2 encloses zero (non-transversal crossing)
    """
    a2 = as_interval(a2_enclosure)
    if 0.0 in a2:
        raise ProofFailure(
            "floquet", "non-transversal crossing", {"a2": [a2.lo, a2.hi]}
        )
    S = imat_identity(4)
    S[3, 0] = Interval(-2.0) / a2
    return S


def monodromy_enclosure(L_enclosure: Interval, a2_enclosure: Interval) -> np.ndarray:
    """Enclosure of e^{ML} S e^{ML} S."""
    E = exp_Mt(as_interval(L_enclosure), INTERVAL)
    S = saltation_matrix(a2_enclosure)
    return E @ S @ E @ S


def _eigenbasis(Xm: np.ndarray):
    w, V = scipy.linalg.eig(Xm)
    if np.any(w.imag != 0.0):
        raise EigenbasisError(f"complex approximate eigenvalues {w.tolist()}")
    V = V.real
    V = V / np.max(np.abs(V), axis=0)
    return V, approximate_inverse(V)


def eigen_enclosure(X: np.ndarray, use_eigenbasis: bool = True) -> EigenEnclosure:
    """
    Discs containing the spectrum of every matrix in X.

    With W ~ V^-1 and beta = ||I - W V|| < 1, |V^-1 - W| <= beta ||W|| / (1 - beta)
    entrywise, so (W + [-e, e]) X V contains V^-1 X V.

    Raises:
        EigenbasisError: complex eigenvalues or beta >= 1
    """
    n = X.shape[0]
    if use_eigenbasis:
        V, W = _eigenbasis(imat_mid(X))
    else:
        V = W = np.eye(n)

    Vi, Wi = imat(V), imat(W)
    beta = imat_inf_norm(imat_identity(n) - Wi @ Vi)
    if beta >= 1.0:
        raise EigenbasisError(f"eigenbasis not certifiable (beta={beta:.3e})")

    defect = Interval(beta) * Interval(imat_inf_norm(Wi)) / (1 - Interval(beta))
    spread = Interval(-defect.hi, defect.hi)
    Y = (Wi + spread) @ X @ Vi

    discs = []
    for i in range(n):
        radius = Interval(Y[i, i].rad)
        for j in range(n):
            if j != i:
                radius = radius + Interval(Y[i, j].mag)
        discs.append(Disc(center=Y[i, i].mid, radius=radius.hi))
    discs.sort(key=lambda d: d.center, reverse=True)

    overlap = any(
        not discs[i].disjoint(discs[j]) for i in range(n) for j in range(i + 1, n)
    )
    return EigenEnclosure(discs=discs, beta=beta, overlap=overlap, similarity=Y)


def _product(intervals: Sequence[Interval]) -> Interval:
    out = Interval(1.0)
    for x in intervals:
        out = out * x
    return out


def analyze_monodromy(L_enclosure: Interval, a2_enclosure: Interval) -> MonodromyReport:
    """Saltation, monodromy, discs and the determinant cross-checks."""
    L = as_interval(L_enclosure)
    S = saltation_matrix(a2_enclosure)
    X = monodromy_enclosure(L, a2_enclosure)
    enc = eigen_enclosure(X)

    trivial = next((i for i, d in enumerate(enc.discs) if d.contains(1.0)), None)
    det = imat_det(enc.similarity)
    trace = Interval.from_fraction(problem_data().trace_M)
    liouville = iv_exp(trace * 2 * L)
    spectral_ok = iv_intersects(_product([d.interval() for d in enc.discs]), det)

    for d in enc.discs:
        logger.info("multiplier disc: center=%.14g radius=%.3e", d.center, d.radius)
    return MonodromyReport(
        S=S,
        X_period=X,
        discs=enc.discs,
        trivial_disc_index=trivial,
        det_enclosure=det,
        liouville=liouville,
        spectral_product_ok=spectral_ok,
        overlap=enc.overlap,
    )


def stability_verdict(report: Union[MonodromyReport, Sequence[Disc]]) -> StabilityVerdict:
    """
    Stable iff the discs are disjoint, exactly one contains 1 and the
    others lie inside the open unit disc. Ambiguity gives NOT_PROVEN.
    """
    discs = list(report.discs if isinstance(report, MonodromyReport) else report)
    overlap = any(
        not discs[i].disjoint(discs[j])
        for i in range(len(discs))
        for j in range(i + 1, len(discs))
    )
    if overlap:
        return StabilityVerdict.NOT_PROVEN

    trivial = [d for d in discs if d.contains(1.0)]
    if len(trivial) != 1:
        return StabilityVerdict.NOT_PROVEN
    others = [d for d in discs if d is not trivial[0]]

    if all(d.inside_unit_disc() for d in others):
        return StabilityVerdict.STABLE
    if any(d.outside_unit_disc() for d in others):
        return StabilityVerdict.UNSTABLE
    return StabilityVerdict.NOT_PROVEN
