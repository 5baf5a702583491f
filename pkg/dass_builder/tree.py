"""
Escape-time construction of a dynamical abstract self-similar set.

The working box is rasterized at cell size h. Level k keeps the cells whose
center has its iterates ``first_iterate .. first_iterate + k - 1`` inside the
escape domain F0. Surviving cells are grouped into clusters: 8-connected
components in the plane (fully connected ones in higher dimensions), refined
by the itinerary of continuity pieces when the MapSpec has a partition.

Rasters index coordinate ``j`` along axis ``ndim - 1 - j``, so x is always the
last axis and a planar raster is read as (row = y, column = x). One-dimensional
trees use a single row.

Level-1 clusters are numbered by their bounding-box lower corner, compared
axis by axis from the first raster axis. A level-k cluster gets the word of
its level-1 cluster followed by the word of the level-(k-1) cluster its image
falls into, so the map acts on labels as the shift.
"""

import json
import logging
from dataclasses import dataclass

import cv2
import numpy as np
import pandas as pd
from scipy import ndimage

from dass_builder.maps import (
    THIRDS_PIECES,
    MapSpec,
    in_escape_domain,
    map_points,
    partition_pieces,
    tent_map_spec,
)
from similarity_space.regions import CellSet
from utils.errors import LabelingError, ResourceCapError
from utils.stubs import read_stub, save_stub

logger = logging.getLogger(__name__)

DEFAULT_GRID_CAP = 4096
LABEL_COLUMNS = ["cluster", "word", "parent", "image", "cells", "row_min", "col_min"]


@dataclass(eq=False)
class DassLevel:
    k: int
    raster: np.ndarray
    labels: pd.DataFrame

    @property
    def alive(self):
        return self.raster >= 0

    @property
    def cluster_count(self):
        return len(self.labels)

    @property
    def words(self):
        return list(self.labels["word"])

    def word_index(self):
        return {word: cluster for cluster, word in zip(self.labels["cluster"], self.labels["word"])}


@dataclass(eq=False)
class DassTree:
    spec: MapSpec
    h: float
    depth: int
    shape: tuple
    origin: tuple
    levels: list

    @property
    def dimension(self):
        return self.spec.dimension

    def level(self, k):
        if not 0 <= k <= self.depth:
            raise ValueError(f"level {k} outside 0..{self.depth}")
        if k == 0:
            raster = np.zeros(self.shape, dtype=np.int32)
            labels = pd.DataFrame(
                [{"cluster": 0, "word": (), "parent": -1, "image": -1, "cells": raster.size, "row_min": 0, "col_min": 0}],
                columns=LABEL_COLUMNS,
            )
            return DassLevel(0, raster, labels)
        return self.levels[k - 1]

    def cluster_count(self, k):
        return self.level(k).cluster_count

    def axis_of(self, j):
        """Raster axis holding coordinate ``j``."""
        return len(self.shape) - 1 - j

    def cell_centers(self, *index):
        """Centers of the cells at per-axis raster ``index`` arrays, as an ``(N, dimension)`` array."""
        columns = [self.origin[j] + (np.asarray(index[self.axis_of(j)]) + 0.5) * self.h for j in range(self.dimension)]
        return np.column_stack(columns)

    def cell_set(self, k, cluster):
        if self.dimension > 2:
            raise ValueError("cell sets are planar; use dass_builder.checks.cluster_diameters")
        rows, cols = np.nonzero(self.level(k).raster == cluster)
        if self.dimension == 1:
            return CellSet(cols, self.h, (self.origin[0], 0.0))
        return CellSet(np.column_stack([rows, cols]), self.h, tuple(self.origin))

    def cells_of_points(self, points):
        """Raster ``index`` (one array per axis) of the cells holding ``points``, and an ``inside`` mask."""
        points = np.asarray(points, dtype=float)
        finite = np.isfinite(points).all(axis=1)
        safe = np.where(finite[:, None], points, -1.0)
        index = [np.zeros(len(points), dtype=np.int64) for _ in self.shape]
        for j in range(self.dimension):
            index[self.axis_of(j)] = np.floor((safe[:, j] - self.origin[j]) / self.h).astype(np.int64)
        inside = finite
        for axis, n in enumerate(self.shape):
            inside = inside & (index[axis] >= 0) & (index[axis] < n)
        return tuple(index), inside


def _grid_points(spec, h, grid_cap):
    axes = []
    for lo, hi in spec.box:
        n = int(round((hi - lo) / h))
        if n < 1:
            raise ValueError(f"cell size {h} does not fit the box")
        if n > grid_cap:
            raise ResourceCapError(f"{n} cells per axis exceed the grid cap of {grid_cap}")
        axes.append(lo + (np.arange(n) + 0.5) * h)
    total = int(np.prod([len(axis) for axis in axes]))
    if total > grid_cap * grid_cap:
        raise ResourceCapError(f"{total} cells exceed the grid cap of {grid_cap}^2")
    if spec.dimension == 1:
        return axes[0][None, :, None]
    grids = np.meshgrid(*axes[::-1], indexing="ij")
    return np.stack(grids[::-1], axis=-1)


def _survival(spec, points, depth):
    """Alive masks and piece itineraries for levels 1..depth."""
    alive = np.ones(points.shape[:-1], dtype=bool)
    itinerary = np.zeros(points.shape[:-1], dtype=np.int64)
    masks, itineraries = [], []
    iterate = points
    last = spec.first_iterate + depth - 1
    with np.errstate(all="ignore"):
        for j in range(last + 1):
            if j >= spec.first_iterate:
                alive = alive & in_escape_domain(spec, iterate)
                if spec.partition is not None:
                    itinerary = itinerary * THIRDS_PIECES + partition_pieces(spec, iterate)
                masks.append(alive)
                itineraries.append(itinerary)
            if j < last:
                iterate = map_points(spec, iterate)
    return masks, itineraries


def _components(mask):
    if mask.ndim == 2:
        _, components = cv2.connectedComponents(mask.astype(np.uint8), connectivity=8)
        return components
    components, _ = ndimage.label(mask, structure=np.ones((3,) * mask.ndim, dtype=int))
    return components


def _cluster_keys(mask, itinerary, partitioned):
    """Cluster key of every alive cell, in ``np.nonzero(mask)`` order."""
    index = np.nonzero(mask)
    component = _components(mask)[index].astype(np.int64)
    if partitioned:
        pairs = np.column_stack([component, itinerary[index]])
        _, keys = np.unique(pairs, axis=0, return_inverse=True)
    else:
        _, keys = np.unique(component, return_inverse=True)
    return index, keys.reshape(-1)


def _cell_frame(index, keys):
    frame = pd.DataFrame({f"a{axis}": values for axis, values in enumerate(index)})
    frame["key"] = keys
    return frame


def _bounding_corners(cells, shape):
    """Per-cluster lower corner and size; ``row_min`` flattens every axis but the last."""
    axes = [f"a{axis}" for axis in range(len(shape))]
    grouped = cells.groupby("key")
    table = grouped[axes].min()
    table["cells"] = grouped.size()
    leading = tuple(table[axis].to_numpy() for axis in axes[:-1])
    table["row_min"] = np.ravel_multi_index(leading, shape[:-1])
    table["col_min"] = table[axes[-1]]
    return table, axes


def _majority(frame, key, column):
    counts = frame.groupby([key, column]).size().reset_index(name="n")
    counts = counts.sort_values([key, "n", column], ascending=[True, False, True])
    return counts.drop_duplicates(key).set_index(key)[column]


def _first_level(spec, mask, itinerary, shape):
    index, keys = _cluster_keys(mask, itinerary, spec.partition is not None)
    table, axes = _bounding_corners(_cell_frame(index, keys), shape)
    table = table.sort_values(axes).reset_index()

    if len(table) != spec.expected_branching:
        raise LabelingError(
            f"level 1 has {len(table)} clusters, expected {spec.expected_branching}",
            diagnostic={"level": 1, "clusters": len(table), "expected": spec.expected_branching, "spec": spec.to_dict()},
        )

    table["cluster"] = np.arange(len(table))
    table["word"] = pd.Series([(int(c),) for c in table["cluster"]], index=table.index, dtype=object)
    table["parent"] = 0
    table["image"] = 0
    raster = np.full(shape, -1, dtype=np.int32)
    digit_of_key = dict(zip(table["key"], table["cluster"]))
    raster[index] = pd.Series(keys).map(digit_of_key).to_numpy()
    return DassLevel(1, raster, table[LABEL_COLUMNS].copy())


def _next_level(spec, k, mask, itinerary, first, previous, image_cells, shape):
    index, keys = _cluster_keys(mask, itinerary, spec.partition is not None)
    image_index, image_inside = image_cells
    flat = np.ravel_multi_index(index, shape)
    image_cluster = np.full(len(keys), -1, dtype=np.int64)
    inside = image_inside[flat]
    image_cluster[inside] = previous.raster[tuple(axis[flat][inside] for axis in image_index)]

    cells = _cell_frame(index, keys)
    cells["digit"] = first.raster[index]
    cells["parent"] = previous.raster[index]
    cells["image"] = image_cluster
    table, _ = _bounding_corners(cells, shape)
    table["digit"] = _majority(cells, "key", "digit")
    table["parent"] = _majority(cells, "key", "parent")
    valid_images = cells[cells["image"] >= 0]
    table["image"] = _majority(valid_images, "key", "image")

    orphans = table.index[table["image"].isna()].tolist()
    if orphans:
        raise LabelingError(
            f"level {k}: {len(orphans)} clusters have no image in level {k - 1}",
            diagnostic={"level": k, "orphans": len(orphans)},
        )
    table["image"] = table["image"].astype(np.int64)

    previous_words = dict(zip(previous.labels["cluster"], previous.labels["word"]))
    table["word"] = pd.Series(
        [(int(d),) + previous_words[int(j)] for d, j in zip(table["digit"], table["image"])],
        index=table.index,
        dtype=object,
    )
    if table["word"].duplicated().any():
        raise LabelingError(
            f"level {k}: two clusters share a label",
            diagnostic={"level": k, "duplicates": table.loc[table["word"].duplicated(), "word"].tolist()},
        )
    if len(table) > spec.expected_branching**k:
        raise LabelingError(
            f"level {k} has {len(table)} clusters, more than {spec.expected_branching}^{k}",
            diagnostic={"level": k, "clusters": len(table)},
        )

    order = sorted(range(len(table)), key=lambda i: table["word"].iloc[i])
    table = table.iloc[order].reset_index()
    table["cluster"] = np.arange(len(table))
    raster = np.full(shape, -1, dtype=np.int32)
    cluster_of_key = dict(zip(table["key"], table["cluster"]))
    raster[index] = pd.Series(keys).map(cluster_of_key).to_numpy()
    return DassLevel(k, raster, table[LABEL_COLUMNS].copy())


def build_tree(spec, depth, h, grid_cap=DEFAULT_GRID_CAP):
    """Escape-time tree without argument checks on ``depth``; depth 0 is the bare grid."""
    points = _grid_points(spec, h, grid_cap)
    shape = points.shape[:-1]
    origin = tuple(lo for lo, _ in spec.box)
    tree = DassTree(spec, float(h), depth, shape, origin, [])
    if depth == 0:
        return tree

    masks, itineraries = _survival(spec, points, depth)
    with np.errstate(all="ignore"):
        images = map_points(spec, points).reshape(-1, spec.dimension)
    image_cells = tree.cells_of_points(images)

    first = _first_level(spec, masks[0], itineraries[0], shape)
    tree.levels.append(first)
    logger.info("Level 1: %d clusters", first.cluster_count)
    for k in range(2, depth + 1):
        level = _next_level(spec, k, masks[k - 1], itineraries[k - 1], first, tree.levels[-1], image_cells, shape)
        tree.levels.append(level)
        logger.info("Level %d: %d clusters", k, level.cluster_count)
    return tree


def tree_fingerprint(spec, depth, h):
    """Cache key of a tree: everything that determines its cells and labels."""
    return json.dumps({"spec": spec.to_dict(), "h": float(h), "depth": depth}, sort_keys=True)


def escape_time_tree(spec, depth, h, grid_cap=DEFAULT_GRID_CAP, read_from_stub=False, stub_path=None):
    """
    Build the labeled survival levels of ``spec`` on a grid of cell size ``h``.

    Args:
        spec (MapSpec): The map, its escape domain and labeling options.
        depth (int): Number of levels, at least 1.
        h (float): Grid cell size.
        grid_cap (int): Largest number of cells per axis; the whole grid is
            held to ``grid_cap ** 2`` cells.
        read_from_stub (bool): Whether to reuse a cached tree.
        stub_path (str | Path | None): Cache file.

    Returns:
        DassTree: The tree.

    Raises:
        LabelingError: The level-1 cluster count is not ``spec.expected_branching``
            or a level cannot be labeled through the dynamics.
        ResourceCapError: The grid exceeds ``grid_cap``.
    """
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    fingerprint = tree_fingerprint(spec, depth, h)
    tree = read_stub(read_from_stub, stub_path, fingerprint)
    if tree is not None:
        return tree

    logger.info("Building %d-level tree of the %d-D %s map at h=%g", depth, spec.dimension, spec.kind, h)
    tree = build_tree(spec, depth, h, grid_cap)
    save_stub(stub_path, tree, fingerprint)
    return tree


def tent_dass_tree(depth, h=3.0**-6, grid_cap=DEFAULT_GRID_CAP):
    """Escape-time tree of the carpet tent map; depth 0 is the full square as one cluster."""
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    return build_tree(tent_map_spec(), depth, h, grid_cap)


def one_dimensional_tree(r, depth, h, grid_cap=DEFAULT_GRID_CAP):
    return escape_time_tree(MapSpec(r=(r,)), depth, h, grid_cap)
