"""
Geometric carriers of the subsets F_{i1...in}.

Coordinates are exact ``Fraction`` values where the construction allows it
(Cantor intervals, carpet squares) and floats otherwise (triangles, Koch
chords, raster cells). Every region is a closed set.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import cv2
import numpy as np

from symbolic_core.address import Address, ConstantDigit
from symbolic_core.exact import Surd

SQRT3_6 = math.sqrt(3) / 6
_TOL = 1e-12


def _exact_length(dx, dy):
    if isinstance(dx, Fraction) and isinstance(dy, Fraction):
        return Surd.sqrt_of(dx * dx + dy * dy)
    return math.hypot(float(dx), float(dy))


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    def center(self):
        return (self.lo + self.hi) / 2

    def diameter(self):
        return self.hi - self.lo

    def contains_point(self, x):
        if isinstance(x, tuple):
            x = x[0]
        return self.lo <= x <= self.hi

    def contains_points(self, xs, ys=None):
        xs = np.asarray(xs, dtype=float)
        return (xs >= float(self.lo)) & (xs <= float(self.hi))

    def contains_region(self, other):
        return self.lo <= other.lo and other.hi <= self.hi

    def bounds(self):
        return (self.lo, self.hi)


@dataclass(frozen=True)
class AxisRectangle:
    x_lo: object
    x_hi: object
    y_lo: object
    y_hi: object

    def center(self):
        return ((self.x_lo + self.x_hi) / 2, (self.y_lo + self.y_hi) / 2)

    def diameter(self):
        return _exact_length(self.x_hi - self.x_lo, self.y_hi - self.y_lo)

    def contains_point(self, p):
        x, y = p
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def contains_points(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        return (
            (xs >= float(self.x_lo))
            & (xs <= float(self.x_hi))
            & (ys >= float(self.y_lo))
            & (ys <= float(self.y_hi))
        )

    def contains_region(self, other):
        return (
            self.x_lo <= other.x_lo
            and other.x_hi <= self.x_hi
            and self.y_lo <= other.y_lo
            and other.y_hi <= self.y_hi
        )


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def point_in_triangle(p, a, b, c, tol=_TOL):
    """Closed containment for a counter-clockwise triangle (a, b, c)."""
    return _cross(a, b, p) >= -tol and _cross(b, c, p) >= -tol and _cross(c, a, p) >= -tol


def triangle_mask(xs, ys, a, b, c, tol=_TOL):
    """Vectorized closed containment for a counter-clockwise triangle."""
    def side(o, q):
        return (q[0] - o[0]) * (ys - o[1]) - (q[1] - o[1]) * (xs - o[0])

    return (side(a, b) >= -tol) & (side(b, c) >= -tol) & (side(c, a) >= -tol)


@dataclass(frozen=True)
class OrientedTriangle:
    """Triangle (a, b, c) listed counter-clockwise; ``upward`` marks apex-up pieces."""

    a: tuple
    b: tuple
    c: tuple
    upward: bool = True

    @property
    def vertices(self):
        return (self.a, self.b, self.c)

    def center(self):
        return (
            (self.a[0] + self.b[0] + self.c[0]) / 3,
            (self.a[1] + self.b[1] + self.c[1]) / 3,
        )

    def diameter(self):
        return max(
            math.dist(self.a, self.b), math.dist(self.b, self.c), math.dist(self.c, self.a)
        )

    def contains_point(self, p, tol=_TOL):
        return point_in_triangle(p, self.a, self.b, self.c, tol)

    def contains_points(self, xs, ys):
        return triangle_mask(np.asarray(xs, float), np.asarray(ys, float), self.a, self.b, self.c)

    def contains_region(self, other, tol=1e-9):
        return all(self.contains_point(v, tol) for v in other.vertices)


def _rotate(v, cos_t, sin_t):
    return (v[0] * cos_t - v[1] * sin_t, v[0] * sin_t + v[1] * cos_t)


_COS60 = 0.5
_SIN60 = math.sqrt(3) / 2


@dataclass(frozen=True)
class PolylineHull:
    """
    A Koch piece spanned by the chord ``start -> end``.

    The piece lies in the isosceles triangle over the chord with apex at
    height |chord|·sqrt(3)/6 on the left; that triangle is its convex hull.
    """

    start: tuple
    end: tuple

    @property
    def chord(self):
        return (self.end[0] - self.start[0], self.end[1] - self.start[1])

    @property
    def apex(self):
        vx, vy = self.chord
        mx = (self.start[0] + self.end[0]) / 2
        my = (self.start[1] + self.end[1]) / 2
        return (mx - vy * SQRT3_6, my + vx * SQRT3_6)

    @property
    def vertices(self):
        return (self.start, self.end, self.apex)

    def children(self):
        vx, vy = self.chord
        third = (vx / 3, vy / 3)
        p0 = self.start
        p1 = (p0[0] + third[0], p0[1] + third[1])
        bump = _rotate(third, _COS60, _SIN60)
        p2 = (p1[0] + bump[0], p1[1] + bump[1])
        p3 = (p0[0] + 2 * third[0], p0[1] + 2 * third[1])
        p4 = self.end
        return (
            PolylineHull(p0, p1),
            PolylineHull(p1, p2),
            PolylineHull(p2, p3),
            PolylineHull(p3, p4),
        )

    def center(self):
        # the apex is itself a point of the curve
        return self.apex

    def diameter(self):
        return math.hypot(*self.chord)

    def contains_point(self, p, tol=_TOL):
        return point_in_triangle(p, *self.vertices, tol=tol)

    def contains_points(self, xs, ys):
        return triangle_mask(np.asarray(xs, float), np.asarray(ys, float), *self.vertices)

    def contains_region(self, other, tol=1e-9):
        return all(self.contains_point(v, tol) for v in other.vertices)


@dataclass(frozen=True)
class Cylinder:
    """All binary strings starting with ``word``."""

    word: tuple
    base: int = 2

    def center(self):
        return Address(self.base, self.word, ConstantDigit(0))

    def diameter(self):
        return Fraction(2, 2 ** len(self.word))

    def contains_point(self, a):
        return a.digits(len(self.word)) == tuple(self.word)

    def contains_region(self, other):
        return tuple(other.word[: len(self.word)]) == tuple(self.word)

    def contains_points(self, xs, ys=None):
        raise TypeError("string cylinders have no planar raster")


@dataclass(frozen=True, eq=False)
class CellSet:
    """Raster cells ``(row, col)`` of size ``h`` on a grid starting at ``origin``."""

    cells: np.ndarray
    h: float
    origin: tuple = (0.0, 0.0)

    def centers(self):
        cells = np.asarray(self.cells)
        if cells.ndim == 1:
            return self.origin[0] + (cells + 0.5) * self.h
        xs = self.origin[0] + (cells[:, 1] + 0.5) * self.h
        ys = self.origin[1] + (cells[:, 0] + 0.5) * self.h
        return np.column_stack([xs, ys])

    def center(self):
        centers = self.centers()
        return tuple(np.mean(centers, axis=0).tolist()) if centers.ndim == 2 else float(centers.mean())

    def diameter(self):
        centers = self.centers()
        if centers.ndim == 1:
            return float(centers.max() - centers.min()) + self.h
        hull = cv2.convexHull(centers.astype(np.float32)).reshape(-1, 2).astype(float)
        diffs = hull[:, None, :] - hull[None, :, :]
        return float(np.sqrt((diffs**2).sum(axis=2)).max()) + self.h * math.sqrt(2)

    def contains_points(self, xs, ys=None):
        cells = np.asarray(self.cells)
        if cells.ndim == 1:
            index = np.floor((np.asarray(xs, float) - self.origin[0]) / self.h).astype(np.int64)
            return np.isin(index, cells)
        cols = np.floor((np.asarray(xs, float) - self.origin[0]) / self.h).astype(np.int64)
        rows = np.floor((np.asarray(ys, float) - self.origin[1]) / self.h).astype(np.int64)
        keys = rows * (1 << 32) + cols
        return np.isin(keys, cells[:, 0].astype(np.int64) * (1 << 32) + cells[:, 1])


@dataclass(frozen=True)
class Bracket:
    """Certified enclosure ``lower <= value <= upper`` of a distance."""

    lower: object
    upper: object
    method: str

    @property
    def width(self):
        return float(self.upper) - float(self.lower)

    def contains(self, value, slack=0.0):
        return self.lower - slack <= value <= self.upper + slack

    def to_dict(self):
        return {
            "lower": str(self.lower),
            "upper": str(self.upper),
            "lower_float": float(self.lower),
            "upper_float": float(self.upper),
            "method": self.method,
        }
