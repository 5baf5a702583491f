"""
Pixel grids and colors shared by the raster drawers.

Rasters are uint8 arrays with row 0 at the top of the viewport.
"""

from dataclasses import dataclass

import numpy as np

BACKGROUND = 0
INK = 255


@dataclass(frozen=True)
class RenderJob:
    """
    What to draw and how large.

    Args:
        viewport (tuple): ``(x_lo, x_hi, y_lo, y_hi)`` in space coordinates.
        width (int): Pixels per row.
        height (int): Rows.
        palette (str): ``"mono"`` or ``"labels"``.
    """

    viewport: tuple = (0.0, 1.0, 0.0, 1.0)
    width: int = 729
    height: int = 729
    palette: str = "mono"

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"resolution must be positive, got {self.width}x{self.height}")
        x_lo, x_hi, y_lo, y_hi = self.viewport
        if not (x_hi > x_lo and y_hi >= y_lo):
            raise ValueError(f"empty viewport {self.viewport}")
        if self.palette not in ("mono", "labels"):
            raise ValueError(f"unknown palette {self.palette!r}")


def pixel_centers(job):
    """Flat x and y coordinates of every pixel center, row-major from the top row."""
    x_lo, x_hi, y_lo, y_hi = (float(v) for v in job.viewport)
    xs = x_lo + (np.arange(job.width) + 0.5) * (x_hi - x_lo) / job.width
    ys = y_hi - (np.arange(job.height) + 0.5) * (y_hi - y_lo) / job.height
    grid_x, grid_y = np.meshgrid(xs, ys)
    return grid_x.ravel(), grid_y.ravel()


def label_palette(count):
    """Deterministic, well-spread RGB colors for ``count`` labels."""
    index = np.arange(count, dtype=np.int64)
    colors = np.column_stack(
        [(index * 97 + 53) % 200 + 56, (index * 57 + 101) % 200 + 56, (index * 183 + 29) % 200 + 56]
    )
    return colors.astype(np.uint8)
