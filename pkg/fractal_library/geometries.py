"""
Refinement rules of the bundled spaces.

Boundary agreements resolve points shared by two children:

- carpet: horizontally adjacent squares give the edge to the left one,
  vertically adjacent squares to the lower one;
- gasket: the same left/lower rule applied to the three corner triangles;
- Koch: a shared endpoint belongs to the right piece;
- Cantor and the string space need no agreement.
"""

import math
from fractions import Fraction

from symbolic_core.address import Address
from symbolic_core.exact import Surd
from similarity_space.regions import (
    AxisRectangle,
    Cylinder,
    Interval,
    OrientedTriangle,
    PolylineHull,
)
from similarity_space.space import Geometry
from utils.errors import NotInSetError

# (column, row) of each carpet child in the 3x3 grid, row-major from the bottom-left
CARPET_CELLS = ((0, 0), (1, 0), (2, 0), (0, 1), (2, 1), (0, 2), (1, 2), (2, 2))
CARPET_DIGITS = {cell: digit for digit, cell in enumerate(CARPET_CELLS)}

_GASKET_TOL = 1e-12


def _scalar(point):
    return point[0] if isinstance(point, tuple) else point


class CantorGeometry(Geometry):
    def root(self):
        return Interval(Fraction(0), Fraction(1))

    def child(self, region, digit):
        third = (region.hi - region.lo) / 3
        if digit == 0:
            return Interval(region.lo, region.lo + third)
        return Interval(region.hi - third, region.hi)

    def locate_child(self, region, point):
        x = _scalar(point)
        third = (region.hi - region.lo) / 3
        if region.lo <= x <= region.lo + third:
            return 0
        if region.hi - third <= x <= region.hi:
            return 1
        raise NotInSetError(f"{x} lies in the removed middle third of {region}")

    def diameter(self, n):
        return Fraction(1, 3**n)


class CarpetGeometry(Geometry):
    def root(self):
        return AxisRectangle(Fraction(0), Fraction(1), Fraction(0), Fraction(1))

    def child(self, region, digit):
        col, row = CARPET_CELLS[digit]
        third = (region.x_hi - region.x_lo) / 3
        x_lo = region.x_lo + col * third
        y_lo = region.y_lo + row * third
        return AxisRectangle(x_lo, x_lo + third, y_lo, y_lo + third)

    @staticmethod
    def _closed_thirds(lo, hi, value):
        third = (hi - lo) / 3
        return [k for k in range(3) if lo + k * third <= value <= lo + (k + 1) * third]

    def locate_child(self, region, point):
        x, y = point
        cols = self._closed_thirds(region.x_lo, region.x_hi, x)
        rows = self._closed_thirds(region.y_lo, region.y_hi, y)
        candidates = [(c, r) for c in cols for r in rows if (c, r) != (1, 1)]
        if not candidates:
            raise NotInSetError(f"{point} lies in the removed middle square of {region}")
        # left wins, then lower wins
        return CARPET_DIGITS[min(candidates)]

    def diameter(self, n):
        return Surd(Fraction(1, 3**n), 2)


class GasketGeometry(Geometry):
    """Children: 0 bottom-left, 1 bottom-right, 2 top."""

    def root(self):
        return OrientedTriangle((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2))

    def child(self, region, digit):
        a, b, c = region.vertices
        ab = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        ac = ((a[0] + c[0]) / 2, (a[1] + c[1]) / 2)
        bc = ((b[0] + c[0]) / 2, (b[1] + c[1]) / 2)
        if digit == 0:
            return OrientedTriangle(a, ab, ac)
        if digit == 1:
            return OrientedTriangle(ab, b, bc)
        return OrientedTriangle(ac, bc, c)

    @staticmethod
    def _affine(region, point):
        a, b, c = region.vertices
        e1 = (b[0] - a[0], b[1] - a[1])
        e2 = (c[0] - a[0], c[1] - a[1])
        det = e1[0] * e2[1] - e1[1] * e2[0]
        px, py = point[0] - a[0], point[1] - a[1]
        u = (px * e2[1] - py * e2[0]) / det
        v = (e1[0] * py - e1[1] * px) / det
        return u, v

    def locate_child(self, region, point):
        u, v = self._affine(region, point)
        if u + v <= 0.5 + _GASKET_TOL:
            return 0
        if u >= 0.5 - _GASKET_TOL:
            return 1
        if v >= 0.5 - _GASKET_TOL:
            return 2
        raise NotInSetError(f"{point} lies in the removed middle triangle of {region}")

    def in_root(self, point):
        u, v = self._affine(self.root(), point)
        return u >= -_GASKET_TOL and v >= -_GASKET_TOL and u + v <= 1 + _GASKET_TOL

    def diameter(self, n):
        return Fraction(1, 2**n)


class KochGeometry(Geometry):
    """Children numbered along the curve from (0, 0) to (1, 0)."""

    def root(self):
        return PolylineHull((0.0, 0.0), (1.0, 0.0))

    def child(self, region, digit):
        return region.children()[digit]

    @staticmethod
    def _tolerance(region):
        length = region.diameter()
        return max(1e-9 * length * length, 1e-15 * length)

    def locate_child(self, region, point):
        tol = self._tolerance(region)
        candidates = [
            j for j, piece in enumerate(region.children()) if piece.contains_point(point, tol)
        ]
        if not candidates:
            raise NotInSetError(f"{point} is not on the Koch piece {region}")
        # a shared endpoint belongs to the right piece
        return max(candidates)

    def in_root(self, point):
        root = self.root()
        return root.contains_point(point, self._tolerance(root))

    def diameter(self, n):
        return Fraction(1, 3**n)


class SigmaGeometry(Geometry):
    """Cylinders of the binary string space; points are addresses."""

    def root(self):
        return Cylinder(())

    def child(self, region, digit):
        return Cylinder(tuple(region.word) + (digit,))

    def locate_child(self, region, point):
        return point.digit(len(region.word) + 1)

    def in_root(self, point):
        return isinstance(point, Address) and point.base == 2

    def diameter(self, n):
        return Fraction(2, 2**n)
