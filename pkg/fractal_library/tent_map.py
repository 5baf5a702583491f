"""
The invariant modified tent map of the unit square.

Applied coordinatewise with the branches

    3x        0   <= x <= 1/3
    3x - 1    1/3 <  x <= 1/2
    2 - 3(1-x) 1/2 < x <  2/3
    3(1 - x)  2/3 <= x <= 1

The two middle branches coincide algebraically; they are kept apart so the
closed/open endpoints read exactly as the branch table.
"""

from fractions import Fraction

import numpy as np

from utils.errors import OutsideRegionError

ONE_THIRD = Fraction(1, 3)
ONE_HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)


def tent_coordinate(x):
    if 0 <= x <= ONE_THIRD:
        return 3 * x
    if ONE_THIRD < x <= ONE_HALF:
        return 3 * x - 1
    if ONE_HALF < x < TWO_THIRDS:
        return 2 - 3 * (1 - x)
    if TWO_THIRDS <= x <= 1:
        return 3 * (1 - x)
    raise OutsideRegionError(f"coordinate {x} lies outside [0, 1]")


def carpet_tent(p):
    """
    Image of a point of the unit square.

    Args:
        p (tuple): ``(x, y)`` with both coordinates in [0, 1]; Fractions stay exact.

    Returns:
        tuple: The mapped point.
    """
    x, y = p
    return (tent_coordinate(x), tent_coordinate(y))


def tent_vectorized(values):
    values = np.asarray(values, dtype=float)
    conditions = [
        (values >= 0) & (values <= 1 / 3),
        (values > 1 / 3) & (values <= 1 / 2),
        (values > 1 / 2) & (values < 2 / 3),
        (values >= 2 / 3) & (values <= 1),
    ]
    choices = [3 * values, 3 * values - 1, 2 - 3 * (1 - values), 3 * (1 - values)]
    # NaN marks inputs outside [0, 1]
    return np.select(conditions, choices, default=np.nan)


def carpet_tent_vectorized(points):
    """Apply the map to an ``(N, 2)`` array; rows outside the square become NaN."""
    points = np.asarray(points, dtype=float)
    return np.column_stack([tent_vectorized(points[:, 0]), tent_vectorized(points[:, 1])])
