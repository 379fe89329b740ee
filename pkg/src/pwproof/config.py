"""
Configuration classes for pwproof.

All configuration is done through dataclasses with sensible defaults.
"""

import math
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .errors import ConfigError

# Newton seed found by a coarse grid search; converges in a handful of steps.
DEFAULT_SEED: Tuple[float, float, float, float] = (1.4, 0.02, 0.01, -0.05)

CERT_DIR_ENV = "PWPROOF_CERT_DIR"
DEFAULT_CERT_DIR = "results"
CERT_FILENAME = "certificate.json"


@dataclass
class ProofConfig:
    """
    Settings of the end-to-end proof.

    Example:
        config = ProofConfig(mesh_size=300, r_star=0.01, output="cert.json")
    """

    # === Mesh ===
    mesh_size: int = 300  # Cells on [0, L]
    workers: int = 1  # Processes for cell enclosures

    # === Radii polynomial ===
    r_star: float = 0.01  # Trust radius for Z2

    # === Newton ===
    seed: Tuple[float, ...] = DEFAULT_SEED
    max_iter: int = 50
    tol: float = 1e-13

    # === Output ===
    output: Optional[str] = None  # Certificate path
    cells_output: Optional[str] = None  # CSV of cell enclosures

    def __post_init__(self):
        """Validate configuration."""
        self.seed = tuple(float(x) for x in self.seed)
        if self.mesh_size < 3:
            raise ConfigError(f"mesh_size must be >= 3, got {self.mesh_size}")
        if not (self.r_star > 0 and math.isfinite(self.r_star)):
            raise ConfigError(f"r_star must be positive, got {self.r_star}")
        if len(self.seed) != 4 or not all(math.isfinite(x) for x in self.seed):
            raise ConfigError(f"seed needs four finite values, got {self.seed}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.tol > 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")

    def output_path(self) -> str:
        """Certificate path: explicit output, then $PWPROOF_CERT_DIR, then results/."""
        return resolve_certificate_path(self.output)


def resolve_certificate_path(explicit: Optional[str] = None) -> str:
    if explicit:
        return explicit
    directory = os.environ.get(CERT_DIR_ENV) or DEFAULT_CERT_DIR
    return os.path.join(directory, CERT_FILENAME)


@dataclass
class WaveConfig:
    """
    Traveling-wave snapshot settings.

    The wave speed is not determined by the orbit; any positive c gives the
    qualitative picture.
    """

    c: float = 1.0
    times: Tuple[float, ...] = (0.0, 1.0, 2.0)
    xi_range: Tuple[float, float] = (0.0, 4.0)
    samples: int = 801

    # Names of the fields the user left at their default value
    defaults: List[str] = field(default_factory=list)

    def __post_init__(self):
        """Validate configuration."""
        self.times = tuple(float(t) for t in self.times)
        self.xi_range = (float(self.xi_range[0]), float(self.xi_range[1]))
        if not self.c > 0:
            raise ConfigError(f"wave speed c must be positive, got {self.c}")
        if self.samples < 2:
            raise ConfigError(f"samples must be >= 2, got {self.samples}")
        if not self.xi_range[0] < self.xi_range[1]:
            raise ConfigError(f"empty xi range {self.xi_range}")
        if not self.times:
            raise ConfigError("at least one snapshot time is required")

    def metadata(self) -> Dict[str, object]:
        return {
            "c": self.c,
            "times": list(self.times),
            "xi_range": list(self.xi_range),
            "samples": self.samples,
            "defaults": list(self.defaults),
        }


@dataclass
class FontConfig:
    """
    Font size configuration.

    All sizes are in points (pt).
    """

    label: int = 14  # Axis labels
    tick: int = 11  # Tick labels
    legend: int = 11  # Legend text
    title: int = 14  # Title text

    # Font family
    family: str = "DejaVu Sans"


@dataclass
class FigureConfig:
    """
    Configuration for orbit and snapshot figures.

    Example:
        config = FigureConfig(
            output="figures/orbit.svg",
            xlabel="phi",
            ylabel="phi'",
        )
    """

    # === Required ===
    output: str = ""  # Output file path

    # === Figure Size ===
    size: Tuple[float, float] = (7, 5)  # (width, height) in inches

    # === Axis Configuration ===
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    xlim: Optional[Tuple[float, float]] = None
    ylim: Optional[Tuple[float, float]] = None

    # === Columns ===
    x: Optional[str] = None  # Column on the x axis (None = auto)
    y: Optional[str] = None  # Column on the y axis (None = auto)

    # === Style ===
    line_width: float = 1.5
    colors: Union[str, List[str]] = "orbit"  # Scheme name or list

    # === Legend ===
    legend_loc: str = "best"

    # === Font ===
    font: FontConfig = field(default_factory=FontConfig)

    # === Output ===
    format: str = "svg"

    def __post_init__(self):
        """Validate configuration."""
        if self.line_width <= 0:
            raise ConfigError(f"line_width must be positive, got {self.line_width}")
