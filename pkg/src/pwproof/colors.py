"""
Color schemes for pwproof figures.
"""

from dataclasses import dataclass
from typing import List, Union


@dataclass(frozen=True)
class ColorScheme:
    """
    Predefined color schemes.

    Attributes:
        ORBIT: Two colors for the x1 > 0 half and the mirrored x1 < 0 half
        SNAPSHOTS: Sequential palette for wave snapshots at increasing times
        LINES: General-purpose line colors
    """

    ORBIT: tuple = (
        "#0077bb",  # Blue, x1 > 0
        "#cc3311",  # Red, x1 < 0
    )

    SNAPSHOTS: tuple = (
        "#08306b",
        "#2171b5",
        "#6baed6",
        "#9ecae1",
        "#c6dbef",
    )

    LINES: tuple = (
        "#000000",  # Black
        "#007700",  # Dark green
        "#666666",  # Dark gray
        "#0077bb",  # Blue
        "#cc3311",  # Red
        "#ee7733",  # Orange
    )


# Global instance for convenience
colors = ColorScheme()


def get_colors(n: int, scheme: str = "lines") -> List[str]:
    """
    Get n colors from the specified scheme.

    Args:
        n: Number of colors needed
        scheme: Color scheme name ("orbit", "snapshots", "lines")

    Returns:
        List of color hex codes

    Example:
        >>> get_colors(2, "orbit")
        ['#0077bb', '#cc3311']
    """
    schemes = {
        "orbit": colors.ORBIT,
        "snapshots": colors.SNAPSHOTS,
        "lines": colors.LINES,
    }

    palette = schemes.get(scheme.lower(), colors.LINES)

    # Cycle colors if n > len(palette)
    return [palette[i % len(palette)] for i in range(n)]


def resolve_colors(spec: Union[str, List[str]], n: int) -> List[str]:
    """
    Resolve color specification to a list of colors.

    Args:
        spec: Either a scheme name or a list of colors
        n: Number of colors needed
    """
    if isinstance(spec, str):
        return get_colors(n, spec)
    if isinstance(spec, (list, tuple)) and spec:
        return [spec[i % len(spec)] for i in range(n)]
    return get_colors(n, "lines")
