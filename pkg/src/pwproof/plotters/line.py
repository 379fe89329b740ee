"""
Curve plotter: one projection of the data as a polyline.
"""

from typing import Tuple

from ..base import BasePlotter
from ..colors import resolve_colors
from ..errors import FigureError


class CurvePlotter(BasePlotter):
    """
    Curve plotter.

    Draws column y against column x. Without explicit columns, orbit data
    is shown in the (phi, dphi) phase plane and anything else as its first
    two numeric columns. Orbit data is split into its two halves, each in
    its own color.

    Example:
        config = FigureConfig(output="orbit.svg", colors="orbit")

        plotter = CurvePlotter(config)
        plotter.load_csv("orbit.csv")
        plotter.plot()
    """

    def columns(self) -> Tuple[str, str]:
        """Resolve the (x, y) column names."""
        cols = list(self.data.columns)
        if self.config.x or self.config.y:
            x = self.config.x or cols[0]
            y = self.config.y or cols[1]
        elif "phi" in cols and "dphi" in cols:
            x, y = "phi", "dphi"
        else:
            numeric = list(self.data.select_dtypes(include="number").columns)
            x, y = numeric[0], numeric[1]
        for c in (x, y):
            if c not in cols:
                raise FigureError(f"unknown column {c!r}")
        return x, y

    def draw(self) -> None:
        """Draw the curve."""
        x, y = self.columns()
        if not self.config.xlabel:
            self.config.xlabel = x
        if not self.config.ylabel:
            self.config.ylabel = y

        if "t" in self.data.columns and (x, y) == ("phi", "dphi"):
            # Second half of the period is the mirrored half orbit
            t = self.data["t"]
            split = 0.5 * (t.min() + t.max())
            halves = [
                (self.data[t <= split], "x1 > 0"),
                (self.data[t >= split], "x1 < 0"),
            ]
        else:
            halves = [(self.data, y)]

        colors = resolve_colors(self.config.colors, len(halves))
        for (part, label), color in zip(halves, colors):
            (line,) = self.ax.plot(
                part[x].values,
                part[y].values,
                color=color,
                linewidth=self.config.line_width,
                label=label,
            )
            self._handles.append(line)
