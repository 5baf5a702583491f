import cv2
import numpy as np

from drawers._utils import INK, label_palette


class TreeDrawer:
    def __init__(self, palette="mono"):
        self.palette = palette

    def draw(self, tree, level, size=None):
        """
        Raster of the surviving cells of one tree level.

        Args:
            tree (DassTree): The tree.
            level (int): Level to draw, ``0 <= level <= tree.depth``.
            size (int | None): Output width; the grid resolution by default.

        Returns:
            numpy.ndarray: uint8 ``(H, W)`` for ``"mono"``, ``(H, W, 3)`` for ``"labels"``.
        """
        if tree.dimension > 2:
            raise ValueError(f"cannot draw a {tree.dimension}-dimensional tree")
        if not 0 <= level <= tree.depth:
            raise ValueError(f"level {level} outside 0..{tree.depth}")
        raster = np.flipud(tree.level(level).raster)

        if self.palette == "labels":
            colors = label_palette(tree.cluster_count(level))
            image = np.zeros(raster.shape + (3,), dtype=np.uint8)
            alive = raster >= 0
            image[alive] = colors[raster[alive]]
        else:
            image = np.where(raster >= 0, INK, 0).astype(np.uint8)

        if size is not None and size != image.shape[1]:
            height = max(1, round(image.shape[0] * size / image.shape[1]))
            image = cv2.resize(image, (size, height), interpolation=cv2.INTER_NEAREST)
        return np.ascontiguousarray(image)
