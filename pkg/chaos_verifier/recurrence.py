"""
Finite-horizon recurrence: the times t <= N at which shift^t(a) comes back within eps of a.

On the string space distances are exact for finite tails and truncated
brackets for generator tails. On geometric spaces both points are enclosed
in depth-D subsets: the set distance of the two subsets is a lower bound and
the center distance plus both diameters an upper bound. A comparison that
the bracket cannot decide is reported as indeterminate.
"""

import logging
import math
from dataclasses import dataclass, field

from symbolic_core.exact import exact_str
from symbolic_core.sigma_metric import sigma_bracket, sigma_distance
from similarity_space.distance import set_distance
from similarity_space.space import depth_for_tolerance, subset_region
from utils.errors import HorizonExceededError, ResourceCapError

logger = logging.getLogger(__name__)

DEFAULT_DIGITS = 64
DEFAULT_RECURRENCE_CAP = 100_000


@dataclass
class RecurrenceStats:
    space: str
    eps: object
    horizon: int
    returns: list = field(default_factory=list)
    indeterminate: list = field(default_factory=list)

    @property
    def times(self):
        return [t for t, _ in self.returns]

    def to_dict(self):
        return {
            "space": self.space,
            "eps": exact_str(self.eps),
            "horizon": self.horizon,
            "returns": [{"time": t, "upper": exact_str(u)} for t, u in self.returns],
            "indeterminate": [
                {"time": t, "lower": exact_str(lo), "upper": exact_str(hi)} for t, lo, hi in self.indeterminate
            ],
        }


def _center_distance(p, q):
    if isinstance(p, tuple):
        return math.dist(p, q)
    return abs(float(p) - float(q))


def _geometric_bracket(space, x, y, depth):
    rx = subset_region(space, x.digits(depth))
    ry = subset_region(space, y.digits(depth))
    lower = set_distance(rx, ry, refine=0).lower
    upper = _center_distance(rx.center(), ry.center()) + 2 * float(space.diameter_law(depth))
    return lower, upper


def _precision_depth(space, eps, digits):
    depth = max(1, depth_for_tolerance(space, eps / 8))
    return min(depth, digits)


def recurrence_stats(space, a, eps, N, digits=DEFAULT_DIGITS, cap=DEFAULT_RECURRENCE_CAP):
    """
    Return times of ``a`` within ``eps`` up to horizon ``N``.

    Args:
        space (SpaceDescriptor): The space ``a`` lives in.
        a (Address): Finite-tail address, or a generator address with horizon >= N.
        eps (float | Fraction): Return radius.
        N (int): Largest shift count examined.
        digits (int): Digits read per comparison when a bracket is needed.
        cap (int): Largest allowed horizon.

    Returns:
        RecurrenceStats: Certified returns (time, upper bound) and indeterminate times.
    """
    if N > cap:
        raise ResourceCapError(f"horizon {N} exceeds the recurrence cap of {cap}")
    if a.horizon is not None and a.horizon < N + 1:
        raise HorizonExceededError(f"address horizon {a.horizon} is shorter than {N + 1}")

    stats = RecurrenceStats(space.name, eps, N)
    exact = space.metric == "sigma"
    depth = None if exact else _precision_depth(space, eps, digits)

    for t in range(N + 1):
        shifted = a.shift(t) if t else a
        if shifted.is_finite_tail and shifted == a:
            stats.returns.append((t, 0))
            continue
        if exact and shifted.is_finite_tail and a.is_finite_tail:
            d = sigma_distance(shifted, a)
            if d < eps:
                stats.returns.append((t, d))
            continue
        if exact:
            lower, upper = sigma_bracket(shifted, a, digits)
        else:
            usable = min([depth] + [h for h in (shifted.horizon, a.horizon) if h is not None])
            lower, upper = _geometric_bracket(space, shifted, a, usable)
        if upper < eps:
            stats.returns.append((t, upper))
        elif not lower >= eps:
            stats.indeterminate.append((t, lower, upper))

    logger.info(
        "Recurrence on %s: %d returns, %d indeterminate within horizon %d",
        space.name,
        len(stats.returns),
        len(stats.indeterminate),
        N,
    )
    return stats
