"""
The self-similar space contract and the point/address codecs.

A space is described by a ``SpaceDescriptor``: a branching factor, a metric
tag, a geometry rule that refines a region into its ``m`` children, and the
diameter law and separation data of the construction.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass

from utils.errors import DigitRangeError, OutsideRegionError

logger = logging.getLogger(__name__)

MAX_CODEC_DEPTH = 10_000


class Geometry(ABC):
    """Deterministic refinement rule for the nested subsets of a space."""

    @abstractmethod
    def root(self):
        """Region of the whole space."""

    @abstractmethod
    def child(self, region, digit):
        """Region of the ``digit``-th child of ``region``."""

    @abstractmethod
    def locate_child(self, region, point):
        """
        Digit of the child containing ``point``.

        Shared boundaries are resolved by the space's boundary agreement.

        Raises:
            NotInSetError: ``point`` lies in a removed part of ``region``.
        """

    @abstractmethod
    def diameter(self, n):
        """Closed-form diameter of every depth-``n`` subset (exact where possible)."""

    def in_root(self, point):
        return self.root().contains_point(point)


@dataclass(frozen=True)
class SpaceDescriptor:
    name: str
    branching: int
    metric: str
    geometry: Geometry
    separation_degree: int
    separation_constant: object = None
    boundary_agreement: str = "none"
    display_offset: int = 1

    def diameter_law(self, n):
        return self.geometry.diameter(n)

    @property
    def dimension(self):
        return {"euclidean-1d": 1, "euclidean-2d": 2}.get(self.metric, 0)


def subset_region(space, prefix):
    """
    Region of the subset F_prefix.

    Args:
        space (SpaceDescriptor): The space.
        prefix (Sequence[int]): Digits, each below ``space.branching``.

    Returns:
        Region: The nested region; the root region for an empty prefix.
    """
    region = space.geometry.root()
    for digit in prefix:
        if not 0 <= digit < space.branching:
            raise DigitRangeError(f"digit {digit} out of range for {space.name} (m={space.branching})")
        region = space.geometry.child(region, digit)
    return region


def depth_for_tolerance(space, tol):
    """Least k with diameter_law(k) < tol."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    k = 0
    while not space.diameter_law(k) < tol:
        k += 1
        if k > MAX_CODEC_DEPTH:
            raise ValueError(f"tolerance {tol} needs more than {MAX_CODEC_DEPTH} levels")
    return k


def point_of(space, a, tol):
    """
    Representative point of the address ``a`` to within ``tol``.

    The center of the region at the least depth k whose diameter is below
    ``tol``; the unique limit point lies in the same region.
    """
    k = depth_for_tolerance(space, tol)
    return subset_region(space, a.digits(k)).center()


def address_of(space, point, depth):
    """
    Depth-``depth`` prefix of the subset containing ``point``.

    Raises:
        OutsideRegionError: ``point`` is not in the root region.
        NotInSetError: ``point`` falls into a removed hole.
    """
    geometry = space.geometry
    if not geometry.in_root(point):
        raise OutsideRegionError(f"{point!r} lies outside the {space.name} root region")
    region = geometry.root()
    digits = []
    for _ in range(depth):
        digit = geometry.locate_child(region, point)
        digits.append(digit)
        region = geometry.child(region, digit)
    return digits
