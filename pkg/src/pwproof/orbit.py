"""
Positivity of the certified half orbit and the full periodic orbit.

The half orbit phi on [0, L] starts on the switching manifold and must stay
in x1 > 0. The check splits [0, L] into a uniform mesh and proves three
phases: phi1 > 0 on the middle cells k1..k2, phi2 = phi1' > 0 on the left
flank (phi1 increases from 0) and phi2 < 0 on the right flank (phi1
decreases to 0).
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp

from .errors import ProofFailure
from .flow import FLOAT, period_fraction, phi_plus, phi_plus_cell, vector_field
from .interval import Interval, as_interval, ivec

logger = logging.getLogger(__name__)

Enclose = Callable[[Interval, Sequence[Any]], np.ndarray]


@dataclass
class OrbitSegment:
    """
    Cellwise enclosure of the half orbit.

    Attributes:
        L_enclosure: Enclosure of the half period
        a_enclosure: Enclosure of the crossing point (0, a2, a3, a4)
        mesh_size: Number of cells
        cells: Time cells, index 0 is cell 1
        enclosures: State enclosure over each cell
        k1, k2: First and last cell of the middle phase (1-based)
    """

    L_enclosure: Interval
    a_enclosure: np.ndarray
    mesh_size: int
    cells: List[Interval] = field(default_factory=list)
    enclosures: List[np.ndarray] = field(default_factory=list)
    k1: int = 0
    k2: int = 0

    @property
    def cell_enclosures(self):
        return list(zip(self.cells, self.enclosures))

    def phase(self, k: int) -> str:
        if k < self.k1:
            return "left"
        if k > self.k2:
            return "right"
        return "middle"


def mesh_times(L: Interval, mesh_size: int) -> List[Interval]:
    """Mesh points t_k = k L / N as intervals; t_0 = 0 and t_N = L exactly."""
    times = [Interval(0.0)]
    for k in range(1, mesh_size):
        times.append(L * k / mesh_size)
    times.append(L)
    return times


def mesh_cells(L: Interval, mesh_size: int) -> List[Interval]:
    times = mesh_times(L, mesh_size)
    return [Interval(times[k - 1].lo, times[k].hi) for k in range(1, mesh_size + 1)]


def _cell_diagnostics(
    k: int, cell: Interval, enclosure: np.ndarray, reason: str
) -> Dict[str, Any]:
    return {
        "cell": k,
        "reason": reason,
        "time": [cell.lo, cell.hi],
        "enclosure": [[x.lo, x.hi] for x in enclosure],
    }


def _fail(k: int, cell: Interval, enclosure: np.ndarray, reason: str) -> None:
    logger.error("positivity failed at cell %d: %s", k, reason)
    raise ProofFailure(
        "positivity",
        f"cell {k}: {reason}",
        _cell_diagnostics(k, cell, enclosure, reason),
    )


def verify_positivity(
    a_enclosure: Sequence[Any],
    L_enclosure: Any,
    mesh_size: int = 300,
    workers: int = 1,
    enclose: Enclose = phi_plus_cell,
) -> OrbitSegment:
    """
    Prove phi([0, L]) lies in x1 > 0 on a uniform mesh.

    Args:
        a_enclosure: Enclosure of (L, a2, a3, a4); the first entry is ignored
        L_enclosure: Enclosure of L
        mesh_size: Number of cells (>= 3)
        workers: Processes used for the cell enclosures
        enclose: Cell enclosure function (cell, a) -> state enclosure

    Raises:
        ProofFailure: no valid phase split, carrying the offending cell
    """
    if mesh_size < 3:
        raise ValueError(f"mesh_size must be >= 3, got {mesh_size}")
    L = as_interval(L_enclosure)
    a = ivec([0.0, a_enclosure[1], a_enclosure[2], a_enclosure[3]])
    cells = mesh_cells(L, mesh_size)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            enclosures = list(pool.map(enclose, cells, repeat(a), chunksize=16))
    else:
        enclosures = [enclose(cell, a) for cell in cells]

    seg = OrbitSegment(
        L_enclosure=L,
        a_enclosure=a,
        mesh_size=mesh_size,
        cells=cells,
        enclosures=enclosures,
    )

    positive = [k for k in range(1, mesh_size + 1) if enclosures[k - 1][0].lo > 0.0]
    if not positive:
        k = mesh_size // 2 + 1
        _fail(k, cells[k - 1], enclosures[k - 1], "phi1 not positive on any cell")
    k1, k2 = positive[0], positive[-1]

    for k in range(k1, k2 + 1):
        if enclosures[k - 1][0].lo <= 0.0:
            _fail(k, cells[k - 1], enclosures[k - 1], "phi1 not positive in middle phase")
    if not 1 < k1 < k2 < mesh_size:
        k = k1 if k1 <= 1 else k2
        _fail(
            k,
            cells[k - 1],
            enclosures[k - 1],
            f"phase split k1={k1}, k2={k2} violates 1 < k1 < k2 < {mesh_size}",
        )

    for k in range(1, k1):
        if enclosures[k - 1][1].lo <= 0.0:
            _fail(k, cells[k - 1], enclosures[k - 1], "phi2 not positive on left flank")
    for k in range(k2 + 1, mesh_size + 1):
        if enclosures[k - 1][1].hi >= 0.0:
            _fail(k, cells[k - 1], enclosures[k - 1], "phi2 not negative on right flank")

    seg.k1, seg.k2 = k1, k2
    logger.info("positivity: mesh=%d k1=%d k2=%d", mesh_size, k1, k2)
    return seg


def cells_frame(segment: OrbitSegment) -> pd.DataFrame:
    """One row per cell with time and state bounds and the phase label."""
    rows = []
    for k, (cell, box) in enumerate(segment.cell_enclosures, start=1):
        row: Dict[str, Any] = {"k": k, "t_lo": cell.lo, "t_hi": cell.hi}
        for i, x in enumerate(box, start=1):
            row[f"x{i}_lo"] = x.lo
            row[f"x{i}_hi"] = x.hi
        row["phase"] = segment.phase(k)
        rows.append(row)
    return pd.DataFrame(rows)


# === Full orbit ===


@dataclass
class PeriodicOrbit:
    """
    The 2L-periodic crossing orbit.

    The second half is the negated first half: Gamma(t + L) = -Gamma(t).

    Attributes:
        a_plus: Enclosure of the crossing point (0, a2, a3, a4)
        a_minus: Enclosure of the opposite crossing point
        period: Enclosure of 2L
        center: Float (L, a2, a3, a4) used for evaluation
        segment: Certified half orbit, if available
    """

    a_plus: np.ndarray
    a_minus: np.ndarray
    period: Interval
    center: np.ndarray
    segment: Optional[OrbitSegment] = None

    @classmethod
    def from_center(cls, a_center: Sequence[float]) -> "PeriodicOrbit":
        """Float orbit (degenerate enclosures) from an approximate zero."""
        c = np.array(a_center, dtype=float)
        a_plus = ivec([0.0, c[1], c[2], c[3]])
        return cls(
            a_plus=a_plus,
            a_minus=-a_plus,
            period=Interval(c[0]) * 2,
            center=c,
        )

    @property
    def half_period(self) -> float:
        return float(self.center[0])

    def state(self, t: float) -> np.ndarray:
        """Gamma(t) in float mode, for any real t."""
        L = self.half_period
        s = period_fraction(float(t), 2.0 * L)
        if s < L:
            return phi_plus(s, self.center, FLOAT)
        return -phi_plus(s - L, self.center, FLOAT)


def build_full_orbit(
    seg: OrbitSegment, a_center: Optional[Sequence[float]] = None
) -> PeriodicOrbit:
    """
    Periodic orbit from a certified half orbit.

    Args:
        seg: Result of verify_positivity
        a_center: Float approximation of (L, a2, a3, a4); midpoints of the
            enclosures when omitted
    """
    if a_center is None:
        a_center = [seg.L_enclosure.mid] + [x.mid for x in seg.a_enclosure[1:]]
    a_plus = seg.a_enclosure
    return PeriodicOrbit(
        a_plus=a_plus,
        a_minus=-a_plus,
        period=seg.L_enclosure * 2,
        center=np.array(a_center, dtype=float),
        segment=seg,
    )


# === Reference integration ===


@dataclass
class SwitchingRun:
    """Crossing times and states of a numerically integrated orbit."""

    times: List[float]
    states: List[np.ndarray]

    @property
    def elapsed(self) -> float:
        return self.times[-1] if self.times else 0.0


def _region(x: np.ndarray) -> int:
    if x[0] != 0.0:
        return 1 if x[0] > 0.0 else -1
    return 1 if x[1] >= 0.0 else -1


def simulate_switching(
    x0: Sequence[float],
    crossings: int = 2,
    t_max: float = 20.0,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> SwitchingRun:
    """
    Integrate the switching system with event detection on x1 = 0.

    Non-rigorous; Runge-Kutta 4(5) with the vector field chosen by the
    region and x1 reset to 0 at each detected crossing.
    """
    x = np.array(x0, dtype=float)
    sign = _region(x)
    elapsed = 0.0
    times: List[float] = []
    states: List[np.ndarray] = []

    for _ in range(crossings):
        def hit(t, y):
            return y[0]

        hit.terminal = True  # type: ignore[attr-defined]
        hit.direction = -sign  # type: ignore[attr-defined]

        sol = solve_ivp(
            lambda t, y, s=sign: vector_field(y, s),
            (0.0, t_max - elapsed),
            x,
            method="RK45",
            events=hit,
            rtol=rtol,
            atol=atol,
        )
        if not sol.t_events[0].size:
            logger.warning("no crossing found before t=%g", t_max)
            break

        elapsed += float(sol.t_events[0][0])
        x = np.array(sol.y_events[0][0], dtype=float)
        x[0] = 0.0
        times.append(elapsed)
        states.append(x.copy())
        sign = -sign

    return SwitchingRun(times=times, states=states)
