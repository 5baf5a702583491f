import logging

from similarity_space.space import subset_region

logger = logging.getLogger(__name__)


def center_orbit(space, prefix, steps):
    """
    Centers of the subsets visited by the shift along ``prefix``.

    Point j is the center of F_{shift^j(prefix)}, for j = 0..steps. Once the
    prefix is used up the last point is the center of the whole space.

    Args:
        space (SpaceDescriptor): The space.
        prefix (Sequence[int]): 0-based digits.
        steps (int): Number of shifts, at most ``len(prefix)``.

    Returns:
        list: ``steps + 1`` points.
    """
    prefix = tuple(prefix)
    if steps < 0 or steps > len(prefix):
        raise ValueError(f"steps must be in [0, {len(prefix)}], got {steps}")
    logger.debug("Center orbit of %d steps on %s", steps, space.name)
    return [subset_region(space, prefix[j:]).center() for j in range(steps + 1)]
