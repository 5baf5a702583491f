import io
import math
from numbers import Real

import numpy as np
import pandas as pd

ORBIT_COLUMNS = ["step", "x", "y"]


def _as_xy(point):
    if isinstance(point, Real):
        return float(point), math.nan
    coords = [float(v) for v in point]
    if len(coords) == 1:
        return coords[0], math.nan
    if len(coords) == 2:
        return coords[0], coords[1]
    raise ValueError(f"orbit points need 1 or 2 coordinates, got {len(coords)}")


def emit_orbit_csv(orbit):
    """
    Render an orbit as ``step,x,y`` CSV text.

    Floats use the shortest decimal that reads back to the same double.
    One-dimensional orbits leave ``y`` empty.

    Args:
        orbit (Iterable): Points as scalars, 1-tuples, pairs or rows of an array.

    Returns:
        str: Header plus one line per point, LF line endings.
    """
    rows = [_as_xy(point) for point in orbit]
    frame = pd.DataFrame(
        {
            "step": np.arange(len(rows), dtype=np.int64),
            "x": np.array([x for x, _ in rows], dtype=float),
            "y": np.array([y for _, y in rows], dtype=float),
        },
        columns=ORBIT_COLUMNS,
    )
    return frame.to_csv(index=False, lineterminator="\n", na_rep="")


def parse_orbit_csv(text):
    """Read ``emit_orbit_csv`` output back into floats (1-D) or ``(x, y)`` pairs."""
    frame = pd.read_csv(io.StringIO(text), float_precision="round_trip", dtype={"x": float, "y": float})
    if list(frame.columns) != ORBIT_COLUMNS:
        raise ValueError(f"expected columns {ORBIT_COLUMNS}, got {list(frame.columns)}")
    if frame.empty:
        return []
    if frame["y"].isna().all():
        return frame["x"].tolist()
    return list(zip(frame["x"].tolist(), frame["y"].tolist()))
