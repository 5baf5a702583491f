import logging

import numpy as np

from drawers._utils import BACKGROUND, INK, RenderJob, pixel_centers
from utils.errors import ResourceCapError

logger = logging.getLogger(__name__)


class SpaceDrawer:
    def __init__(self, depth_cap=1 << 16):
        """
        Args:
            depth_cap (int): Largest number of depth-level regions to draw.
        """
        self.depth_cap = depth_cap

    def default_job(self, space, size=729):
        if space.metric == "euclidean-1d":
            return RenderJob((0.0, 1.0, 0.0, 0.0), width=size, height=1)
        if space.metric == "sigma":
            raise TypeError("the string space has no planar picture")
        return RenderJob((0.0, 1.0, 0.0, 1.0), width=size, height=size)

    def draw(self, space, depth, job=None):
        """
        Monochrome raster of the depth-``depth`` approximation of ``space``.

        A pixel is set iff its center lies in some depth-level region. Only
        pixels inside a parent region are tested against its children.

        Returns:
            numpy.ndarray: ``(height, width)`` uint8 raster.
        """
        if space.branching**depth > self.depth_cap:
            raise ResourceCapError(f"{space.branching}^{depth} regions exceed the render cap of {self.depth_cap}")
        job = job or self.default_job(space)
        xs, ys = pixel_centers(job)
        raster = np.full(xs.size, BACKGROUND, dtype=np.uint8)

        geometry = space.geometry
        root = geometry.root()
        stack = [(root, np.flatnonzero(root.contains_points(xs, ys)), 0)]
        while stack:
            region, index, level = stack.pop()
            if level == depth:
                raster[index] = INK
                continue
            for digit in range(space.branching):
                child = geometry.child(region, digit)
                inside = index[child.contains_points(xs[index], ys[index])]
                if inside.size:
                    stack.append((child, inside, level + 1))

        logger.debug("Rendered %s at depth %d", space.name, depth)
        return raster.reshape(job.height, job.width)
