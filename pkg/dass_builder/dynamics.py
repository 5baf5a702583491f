import logging
from dataclasses import dataclass

import numpy as np

from dass_builder.maps import in_box, map_points

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class Trajectory:
    points: np.ndarray
    escape_step: int = None

    def __len__(self):
        return len(self.points)


def trajectory(spec, x0, steps, stop_at_escape=False):
    """
    Orbit of ``x0`` as ``steps`` points, starting with ``x0`` itself.

    The first step outside the working box is recorded as ``escape_step``.
    Iteration continues past it unless ``stop_at_escape`` is set, in which
    case the orbit ends with the first point outside the box.
    """
    x = np.asarray(x0, dtype=float)
    if x.shape != (spec.dimension,):
        raise ValueError(f"start point needs {spec.dimension} coordinates")
    points = np.empty((steps, spec.dimension))
    escape_step = None
    with np.errstate(all="ignore"):
        for step in range(steps):
            points[step] = x
            if escape_step is None and not in_box(spec.box, x[None, :])[0]:
                escape_step = step
                if stop_at_escape:
                    points = points[: step + 1]
                    break
            x = map_points(spec, x)
    if escape_step is not None:
        logger.info("Orbit left the working box at step %d", escape_step)
    return Trajectory(points, escape_step)


def separation_time(spec, x0, x1, threshold, max_steps):
    """First step at which the orbits of ``x0`` and ``x1`` are at least ``threshold`` apart, or None."""
    a = np.asarray(x0, dtype=float)
    b = np.asarray(x1, dtype=float)
    with np.errstate(all="ignore"):
        for step in range(max_steps + 1):
            if np.linalg.norm(a - b) >= threshold:
                return step
            a = map_points(spec, a)
            b = map_points(spec, b)
    return None
