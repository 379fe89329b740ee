"""
Base plotter class and common plotting utilities.
"""

import logging
import os
from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
import seaborn as sns  # noqa: E402

from .config import FigureConfig  # noqa: E402
from .errors import FigureError  # noqa: E402

logger = logging.getLogger(__name__)


class BasePlotter(ABC):
    """
    Abstract base class for all plotters.

    Subclasses must implement:
        - draw(): The main drawing logic

    Workflow:
        1. Create plotter with config
        2. Load data via load_csv() or load_data()
        3. Call plot() to generate figure

    Example:
        plotter = CurvePlotter(FigureConfig(output="orbit.svg"))
        plotter.load_csv("orbit.csv")
        plotter.plot()
    """

    # Columns the plotter needs; checked on load
    required_columns: Tuple[str, ...] = ()

    def __init__(self, config: Optional[FigureConfig] = None):
        """
        Initialize plotter.

        Args:
            config: Figure configuration. If None, uses configure() method.
        """
        self.config = config or self.configure()

        self.fig: Optional[plt.Figure] = None
        self.ax: Optional[plt.Axes] = None
        self.data: Optional[pd.DataFrame] = None
        self._handles: List = []

    def configure(self) -> FigureConfig:
        """
        Override this method to provide default configuration.

        Returns:
            FigureConfig instance
        """
        return FigureConfig()

    def load_csv(self, path: str, **kwargs) -> "BasePlotter":
        """
        Load data from CSV file.

        Args:
            path: Path to CSV file
            **kwargs: Additional arguments for pd.read_csv

        Returns:
            self for chaining

        Raises:
            FigureError: missing, empty or malformed file
        """
        try:
            data = pd.read_csv(path, **kwargs)
        except (OSError, pd.errors.EmptyDataError, pd.errors.ParserError) as exc:
            raise FigureError(f"cannot read {path}: {exc}") from exc
        return self.load_data(data)

    def load_data(self, data: pd.DataFrame) -> "BasePlotter":
        """
        Load data from DataFrame.

        Args:
            data: pandas DataFrame

        Returns:
            self for chaining
        """
        self.data = data
        self._process_data()
        return self

    def _process_data(self) -> None:
        """Validate loaded data."""
        if self.data is None or self.data.empty:
            raise FigureError("no data rows")
        missing = [c for c in self.required_columns if c not in self.data.columns]
        if missing:
            raise FigureError(f"missing columns: {', '.join(missing)}")
        numeric = self.data.select_dtypes(include="number")
        if numeric.shape[1] < 2:
            raise FigureError("need at least two numeric columns")

    def setup_figure(self) -> Tuple[plt.Figure, plt.Axes]:
        """Create figure and axes with seaborn styling."""
        sns.set_theme(
            style="ticks",
            font=self.config.font.family,
            rc={"font.family": self.config.font.family},
        )
        self.fig, self.ax = plt.subplots(figsize=self.config.size)
        return self.fig, self.ax

    def setup_axes(self) -> None:
        """Configure axes based on config."""
        if self.config.xlabel:
            self.ax.set_xlabel(self.config.xlabel, fontsize=self.config.font.label)

        if self.config.ylabel:
            self.ax.set_ylabel(self.config.ylabel, fontsize=self.config.font.label)

        if self.config.title:
            self.ax.set_title(self.config.title, fontsize=self.config.font.title)

        if self.config.xlim is not None:
            self.ax.set_xlim(self.config.xlim)

        if self.config.ylim is not None:
            self.ax.set_ylim(self.config.ylim)

        self.ax.tick_params(axis="both", labelsize=self.config.font.tick)
        sns.despine(ax=self.ax, top=True, right=True)

    def add_legend(self) -> None:
        """Add legend for labelled handles."""
        if len(self._handles) > 1:
            self.ax.legend(
                handles=self._handles,
                loc=self.config.legend_loc,
                frameon=False,
                fontsize=self.config.font.legend,
            )

    @abstractmethod
    def draw(self) -> None:
        """
        Main drawing logic. Must be implemented by subclasses.

        This method should use self.ax to draw the plot.
        """
        pass

    def save(self, path: Optional[str] = None) -> str:
        """
        Save figure to file.

        Args:
            path: Output path. If None, uses config.output
        """
        output = path or self.config.output
        if not output:
            raise FigureError("No output path specified")

        # Create directory if needed
        os.makedirs(os.path.dirname(output) or ".", exist_ok=True)

        self.fig.savefig(output, format=self.config.format, bbox_inches="tight")
        logger.info("Saved: %s", output)
        return output

    def plot(self, save: bool = True) -> Tuple[plt.Figure, plt.Axes]:
        """
        Execute the complete plotting workflow.

        Args:
            save: Whether to save the figure

        Returns:
            Tuple of (figure, axes)
        """
        if self.data is None:
            raise FigureError("no data loaded")
        self.setup_figure()
        self.draw()
        self.setup_axes()
        self.add_legend()
        self.fig.tight_layout()

        if save and self.config.output:
            self.save()
            plt.close(self.fig)

        return self.fig, self.ax
