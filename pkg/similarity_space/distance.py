"""
Certified brackets of the set distance d(A, B) = inf { d(x, y) : x in A, y in B }.

Exact regions (intervals and rectangles with rational corners, string
cylinders) get exact values. Triangles are compared exactly in floating
point and padded. Koch pieces are refined best-first: hull distances give
lower bounds, distances between curve points give upper bounds.
"""

import heapq
import itertools
import logging
import math
from fractions import Fraction

import cv2
import numpy as np

from symbolic_core.exact import Surd
from similarity_space.regions import (
    AxisRectangle,
    Bracket,
    CellSet,
    Cylinder,
    Interval,
    OrientedTriangle,
    PolylineHull,
)

logger = logging.getLogger(__name__)

FLOAT_PAD = 1e-12
DEFAULT_REFINE = 14


def _gap(a_lo, a_hi, b_lo, b_hi):
    return max(0, b_lo - a_hi, a_lo - b_hi)


def interval_distance(a, b):
    value = _gap(a.lo, a.hi, b.lo, b.hi)
    return Bracket(value, value, "exact-interval")


def rectangle_distance(a, b):
    dx = _gap(a.x_lo, a.x_hi, b.x_lo, b.x_hi)
    dy = _gap(a.y_lo, a.y_hi, b.y_lo, b.y_hi)
    if all(isinstance(v, (int, Fraction)) for v in (dx, dy)):
        value = Surd.sqrt_of(Fraction(dx) ** 2 + Fraction(dy) ** 2)
        return Bracket(value, value, "exact-rectangle")
    value = math.hypot(dx, dy)
    return Bracket(max(0.0, value - FLOAT_PAD), value + FLOAT_PAD, "float-rectangle")


def cylinder_distance(a, b):
    """inf over extensions: digits beyond the shorter word can always agree."""
    n = min(len(a.word), len(b.word))
    value = sum(
        (Fraction(abs(a.word[k] - b.word[k]), 2**k) for k in range(n)), Fraction(0)
    )
    return Bracket(value, value, "exact-cylinder")


def point_segment_distance(p, a, b):
    ax, ay = a
    vx, vy = b[0] - ax, b[1] - ay
    length_sq = vx * vx + vy * vy
    if length_sq == 0:
        return math.dist(p, a)
    t = ((p[0] - ax) * vx + (p[1] - ay) * vy) / length_sq
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - (ax + t * vx), p[1] - (ay + t * vy))


def _edges(vertices):
    return [(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


def _projection(vertices, axis):
    values = [v[0] * axis[0] + v[1] * axis[1] for v in vertices]
    return min(values), max(values)


def _convex_overlap(p, q):
    """Separating-axis test for two convex polygons; touching counts as overlap."""
    for a, b in _edges(p) + _edges(q):
        axis = (b[1] - a[1], a[0] - b[0])
        p_lo, p_hi = _projection(p, axis)
        q_lo, q_hi = _projection(q, axis)
        if p_hi < q_lo or q_hi < p_lo:
            return False
    return True


def polygon_distance(p, q):
    """Euclidean distance between two convex polygons given by vertex lists."""
    if _convex_overlap(p, q):
        return 0.0
    return min(
        min(point_segment_distance(v, a, b) for v in p for a, b in _edges(q)),
        min(point_segment_distance(v, a, b) for v in q for a, b in _edges(p)),
    )


def triangle_distance(a, b):
    value = polygon_distance(a.vertices, b.vertices)
    return Bracket(max(0.0, value - FLOAT_PAD), value + FLOAT_PAD, "float-triangle")


def _curve_points(piece):
    return (piece.start, piece.apex, piece.end)


def koch_distance(a, b, refine=DEFAULT_REFINE):
    """
    Best-first branch-and-bound between two Koch pieces.

    Every hull triangle contains its piece, so hull distances are lower
    bounds; chord endpoints and apexes lie on the curve, so their distances
    are upper bounds. A pair of pieces is refined until its hull distance
    reaches the best upper bound or the refinement depth is exhausted.
    """
    upper = min(math.dist(p, q) for p in _curve_points(a) for q in _curve_points(b))
    counter = itertools.count()
    heap = [(polygon_distance(a.vertices, b.vertices), 0, next(counter), a, b)]
    floor = math.inf
    expanded = 0

    while heap:
        bound, depth, _, p, q = heapq.heappop(heap)
        if bound >= upper:
            floor = min(floor, bound)
            break
        if depth >= refine:
            floor = min(floor, bound)
            continue
        expanded += 1
        p_children = p.children()
        q_children = q.children()
        p_points = [pt for child in p_children for pt in _curve_points(child)]
        q_points = [pt for child in q_children for pt in _curve_points(child)]
        upper = min(upper, min(math.dist(s, t) for s in p_points for t in q_points))
        for pc in p_children:
            for qc in q_children:
                child_bound = polygon_distance(pc.vertices, qc.vertices)
                if child_bound < upper:
                    heapq.heappush(heap, (child_bound, depth + 1, next(counter), pc, qc))

    logger.debug("Koch bracket after %d expansions", expanded)
    lower = min(floor, upper)
    return Bracket(max(0.0, lower - FLOAT_PAD), upper + FLOAT_PAD, f"koch-hull-r{refine}")


def cellset_distance(a, b):
    """
    Distance between two raster cell sets.

    Cell-center distances come from a Euclidean distance transform of A's
    complement sampled at B's cells; the union-of-cells distance is within
    one cell diagonal below that value.
    """
    if a.h != b.h or tuple(a.origin) != tuple(b.origin):
        raise ValueError("cell sets must share a grid")
    a_cells = np.asarray(a.cells)
    b_cells = np.asarray(b.cells)
    one_dimensional = a_cells.ndim == 1
    if one_dimensional:
        # a single raster row
        a_cells = np.column_stack([np.zeros_like(a_cells), a_cells])
        b_cells = np.column_stack([np.zeros_like(b_cells), b_cells])

    both = np.vstack([a_cells, b_cells])
    lo = both.min(axis=0)
    hi = both.max(axis=0)
    shape = tuple((hi - lo + 1).tolist())
    mask = np.full(shape, 255, dtype=np.uint8)
    mask[a_cells[:, 0] - lo[0], a_cells[:, 1] - lo[1]] = 0

    field = cv2.distanceTransform(mask, cv2.DIST_L2, cv2.DIST_MASK_PRECISE)
    centers = float(field[b_cells[:, 0] - lo[0], b_cells[:, 1] - lo[1]].min()) * a.h
    slack = a.h * (1.0 if one_dimensional else math.sqrt(2))
    return Bracket(max(0.0, centers - slack), centers, "cell-centers")


_DISPATCH = {
    Interval: interval_distance,
    AxisRectangle: rectangle_distance,
    OrientedTriangle: triangle_distance,
    Cylinder: cylinder_distance,
    CellSet: cellset_distance,
}


def set_distance(a, b, refine=DEFAULT_REFINE):
    """
    Certified bracket of the distance between two regions of the same kind.

    Args:
        a (Region): First region.
        b (Region): Second region.
        refine (int): Refinement depth for Koch pieces.

    Returns:
        Bracket: ``lower <= d(a, b) <= upper`` and the method used.
    """
    if type(a) is not type(b):
        raise TypeError(f"cannot compare {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, PolylineHull):
        return koch_distance(a, b, refine)
    return _DISPATCH[type(a)](a, b)
