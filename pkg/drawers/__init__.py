from ._utils import RenderJob, label_palette, pixel_centers
from .space_drawer import SpaceDrawer
from .tree_drawer import TreeDrawer

__all__ = ["RenderJob", "label_palette", "pixel_centers", "SpaceDrawer", "TreeDrawer"]
