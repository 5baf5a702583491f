from drawers import RenderJob, SpaceDrawer, TreeDrawer


def render_space(space, depth, job=None, depth_cap=1 << 16):
    """Monochrome raster of the depth-``depth`` subsets; ``job`` defaults to the unit viewport."""
    return SpaceDrawer(depth_cap=depth_cap).draw(space, depth, job)


def render_tree(tree, level, job=None):
    """
    Raster of one tree level.

    The job's width sets the output size and its palette selects monochrome
    or per-label coloring; without a job the grid is drawn one pixel per cell.
    """
    if job is None:
        return TreeDrawer().draw(tree, level)
    return TreeDrawer(palette=job.palette).draw(tree, level, size=job.width)


__all__ = ["RenderJob", "render_space", "render_tree"]
