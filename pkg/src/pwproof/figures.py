"""
Figure data for the periodic orbit and the traveling wave it generates.

CSV files are comma separated with a header row and 17 significant digits,
so they can be fed to any plotting tool; ``emit_svg`` renders them with the
bundled plotters.
"""

import json
import logging
import math
import os
from typing import Optional

import numpy as np
import pandas as pd

from .certificate import OK, ProofCertificate
from .config import FigureConfig, WaveConfig
from .errors import FigureError
from .orbit import PeriodicOrbit
from .plotters import CurvePlotter, SnapshotPlotter

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
ORBIT_COLUMNS = ("t", "phi", "dphi", "d2phi", "d3phi")


def orbit_from_certificate(cert: ProofCertificate) -> PeriodicOrbit:
    """Float orbit through the certified crossing point."""
    if cert.a_bar is None or cert.stages.get("radii") != OK:
        raise FigureError("certificate has no verified zero (radii stage not ok)")
    return PeriodicOrbit.from_center(cert.a_bar)


def _write_csv(frame: pd.DataFrame, output: Optional[str]) -> None:
    if not output:
        return
    os.makedirs(os.path.dirname(output) or ".", exist_ok=True)
    frame.to_csv(output, index=False, float_format=FLOAT_FORMAT)
    logger.info("Saved: %s", output)


def emit_orbit_figure_data(
    cert: ProofCertificate,
    samples: int = 401,
    output: Optional[str] = None,
) -> pd.DataFrame:
    """
    Orbit profile over one period [0, 2L].

    Args:
        cert: Certificate with a verified zero
        samples: Number of uniform times
        output: CSV path (optional)

    Returns:
        DataFrame with columns t, phi, dphi, d2phi, d3phi
    """
    if samples < 2:
        raise FigureError(f"samples must be >= 2, got {samples}")
    orbit = orbit_from_certificate(cert)
    times = np.linspace(0.0, 2.0 * orbit.half_period, samples)
    states = np.array([orbit.state(t) for t in times])

    frame = pd.DataFrame(states, columns=list(ORBIT_COLUMNS[1:]))
    frame.insert(0, "t", times)
    _write_csv(frame, output)
    return frame


def wave_profile(orbit: PeriodicOrbit, y: np.ndarray) -> np.ndarray:
    """f(y) = y^4 phi(ln y) for y > 0, and 0 otherwise."""
    u = np.zeros_like(y, dtype=float)
    for i, v in enumerate(y):
        if v > 0.0:
            u[i] = v**4 * orbit.state(math.log(v))[0]
    return u


def emit_wave_snapshots(
    cert: ProofCertificate,
    config: Optional[WaveConfig] = None,
    output: Optional[str] = None,
) -> pd.DataFrame:
    """
    Snapshots of u(xi, t) = f(xi - c t).

    The phase origin ln y = 0 is the crossing point (0, a2, a3, a4). With
    an output path, a ``<output>.meta.json`` sidecar records the settings.

    Returns:
        Long-format DataFrame with columns t, xi, y, u
    """
    config = config or WaveConfig()
    orbit = orbit_from_certificate(cert)
    xi = np.linspace(config.xi_range[0], config.xi_range[1], config.samples)

    blocks = []
    for t in config.times:
        y = xi - config.c * t
        blocks.append(
            pd.DataFrame({"t": t, "xi": xi, "y": y, "u": wave_profile(orbit, y)})
        )
    frame = pd.concat(blocks, ignore_index=True)

    if output:
        _write_csv(frame, output)
        meta = config.metadata()
        meta["phase_origin"] = "crossing point (0, a2, a3, a4)"
        meta["period"] = 2.0 * orbit.half_period
        with open(output + ".meta.json", "w") as f:
            json.dump(meta, f, indent=2)
    return frame


def emit_svg(
    csv: str,
    output: str,
    x: Optional[str] = None,
    y: Optional[str] = None,
    config: Optional[FigureConfig] = None,
) -> str:
    """
    Render a CSV emitted by this package as an SVG line plot.

    Snapshot data (t, xi, u) gives one curve per time; other data is drawn
    as a single projection (see CurvePlotter).

    Raises:
        FigureError: empty or malformed CSV
    """
    config = config or FigureConfig()
    config.output = output
    config.x = x or config.x
    config.y = y or config.y

    sniffed = CurvePlotter(config).load_csv(csv)
    snapshot_cols = set(SnapshotPlotter.required_columns)
    if not (config.x or config.y) and snapshot_cols <= set(sniffed.data.columns):
        config.colors = "snapshots"
        plotter = SnapshotPlotter(config).load_data(sniffed.data)
    else:
        plotter = sniffed

    plotter.plot()
    return output
