"""
Snapshot plotter for traveling-wave profiles.
"""

from ..base import BasePlotter
from ..colors import resolve_colors


class SnapshotPlotter(BasePlotter):
    """
    One curve u(xi) per snapshot time t.

    Expects long-format data with columns t, xi and u.

    Example:
        plotter = SnapshotPlotter(FigureConfig(output="wave.svg"))
        plotter.load_csv("wave.csv")
        plotter.plot()
    """

    required_columns = ("t", "xi", "u")

    def draw(self) -> None:
        """Draw one profile per time."""
        if not self.config.xlabel:
            self.config.xlabel = "xi"
        if not self.config.ylabel:
            self.config.ylabel = "u"

        groups = list(self.data.groupby("t", sort=True))
        colors = resolve_colors(self.config.colors, len(groups))
        for (t, part), color in zip(groups, colors):
            (line,) = self.ax.plot(
                part["xi"].values,
                part["u"].values,
                color=color,
                linewidth=self.config.line_width,
                label=f"t = {t:g}",
            )
            self._handles.append(line)
