"""
Plotter implementations for pwproof.

Each plotter type is in its own module for better organization.
"""

from .line import CurvePlotter
from .snapshots import SnapshotPlotter

__all__ = [
    "CurvePlotter",
    "SnapshotPlotter",
]
