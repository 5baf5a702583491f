"""
The metric on binary strings, d(s, t) = sum_k |s_k - t_k| / 2^(k-1).

For eventually periodic strings the series is evaluated in closed form: a
finite sum over the pre-period plus a geometric series over the common
period. Generator tails can only be bracketed by truncation.
"""

import math
from fractions import Fraction

from utils.errors import UnsupportedBaseError, UnsupportedDistanceError


def _require_binary(*addresses):
    for a in addresses:
        if a.base != 2:
            raise UnsupportedBaseError(f"the string metric is binary-only, got base {a.base}")


def sigma_distance(a, b):
    """
    Exact distance between two binary addresses with finite tails.

    Args:
        a (Address): Base-2 address with a constant or repeating tail.
        b (Address): Base-2 address with a constant or repeating tail.

    Returns:
        Fraction: The exact value of the series.
    """
    _require_binary(a, b)
    if not (a.is_finite_tail and b.is_finite_tail):
        raise UnsupportedDistanceError(
            "exact distance needs finite tails; truncate generator tails with sigma_bracket"
        )

    pre = max(len(a.prefix), len(b.prefix))
    period = math.lcm(len(a.tail.block), len(b.tail.block))

    head = sum(
        Fraction(abs(a.digit(k) - b.digit(k)), 2 ** (k - 1)) for k in range(1, pre + 1)
    )
    cycle = sum(
        Fraction(abs(a.digit(k) - b.digit(k)), 2 ** (k - 1))
        for k in range(pre + 1, pre + period + 1)
    )
    # the cycle repeats with ratio 2^-period
    return head + cycle / (1 - Fraction(1, 2**period))


def sigma_bracket(a, b, digits=64):
    """
    Certified bracket of the distance using the first ``digits`` digits.

    Works for any tail kind; the unread remainder adds at most 2^(1-n) where n
    is the number of digits actually read (limited by generator horizons).

    Returns:
        tuple[Fraction, Fraction]: Lower and upper bound.
    """
    _require_binary(a, b)
    limits = [h for h in (a.horizon, b.horizon) if h is not None]
    n = min([digits] + limits)
    partial = sum(
        Fraction(abs(a.digit(k) - b.digit(k)), 2 ** (k - 1)) for k in range(1, n + 1)
    )
    return partial, partial + Fraction(2, 2**n)


def cylinder_diameter(m, n):
    """
    Diameter of a depth-n cylinder of the binary string space: 2^(1-n).

    ``n = 0`` is the whole space (diameter 2, attained by the all-zeros and
    all-ones strings).
    """
    if m != 2:
        raise UnsupportedBaseError(f"cylinder diameters are defined for m = 2 only, got {m}")
    if n < 0:
        raise ValueError(f"depth must be nonnegative, got {n}")
    return Fraction(2, 2**n)
