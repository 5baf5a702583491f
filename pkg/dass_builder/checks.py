import logging
import math
from dataclasses import dataclass, field

import cv2
import numpy as np
import pandas as pd
from scipy import ndimage

from dass_builder.maps import map_points

logger = logging.getLogger(__name__)

DEFAULT_WEAK_SEPARATION = 0.05
_PAIR_CHUNK = 1024


def _distance_field(raster, cluster):
    """Distance, in cells, from every cell center to the nearest center of ``cluster``."""
    if raster.ndim == 2:
        mask = np.where(raster == cluster, 0, 255).astype(np.uint8)
        return cv2.distanceTransform(mask, cv2.DIST_L2, cv2.DIST_MASK_PRECISE)
    return ndimage.distance_transform_edt(raster != cluster)


def label_consistency_check(tree, tol=None):
    """
    Cells whose image misses the cluster of their shifted label.

    For every level-k cell (k >= 2) with label w, the image of its center must
    lie within ``tol`` of the level-(k-1) cells labeled w[1:], and the parent
    cluster must be labeled w[:-1].

    Args:
        tree (DassTree): The tree.
        tol (float | None): Distance tolerance; ``2 h * lipschitz`` by default.

    Returns:
        list[dict]: One entry per violation; empty for a healthy tree.
    """
    tol = 2 * tree.h * tree.spec.lipschitz if tol is None else tol
    violations = []
    for k in range(2, tree.depth + 1):
        level = tree.level(k)
        previous = tree.level(k - 1)
        previous_index = previous.word_index()
        previous_words = dict(zip(previous.labels["cluster"], previous.labels["word"]))

        index = np.nonzero(level.alive)
        clusters = level.raster[index]
        words = dict(zip(level.labels["cluster"], level.labels["word"]))

        for cluster, parent in zip(level.labels["cluster"], level.labels["parent"]):
            word = words[cluster]
            if previous_words.get(parent) != word[:-1]:
                violations.append({"level": k, "kind": "parent", "word": list(word)})

        cells = pd.DataFrame({"flat": np.ravel_multi_index(index, tree.shape), "cluster": clusters})
        targets = {cluster: previous_index.get(word[1:], -1) for cluster, word in words.items()}
        cells["target"] = cells["cluster"].map(targets)
        for target, group in cells.groupby("target"):
            if target < 0:
                for word in {words[c] for c in group["cluster"].unique()}:
                    violations.append({"level": k, "kind": "missing-image-label", "word": list(word)})
                continue
            group_index = np.unravel_index(group["flat"].to_numpy(), tree.shape)
            centers = tree.cell_centers(*group_index)
            with np.errstate(all="ignore"):
                images = map_points(tree.spec, centers)
            distance = _distance_to_cluster(tree, previous.raster, target, images)
            bad = ~(distance <= tol)
            for flat, cluster, d in zip(group["flat"].to_numpy()[bad], group["cluster"].to_numpy()[bad], distance[bad]):
                cell = [int(i) for i in np.unravel_index(flat, tree.shape)]
                violations.append({"level": k, "kind": "image", "word": list(words[cluster]), "cell": cell, "distance": float(d)})
    logger.info("Label consistency: %d violations at tolerance %g", len(violations), tol)
    return violations


def _distance_to_cluster(tree, raster, cluster, points):
    """Upper bound on the distance from each point to the nearest cell center of ``cluster``."""
    distances = _distance_field(raster, cluster)
    index, _ = tree.cells_of_points(points)
    clipped = tuple(np.clip(axis, 0, n - 1) for axis, n in zip(index, tree.shape))
    nearest = tree.cell_centers(*clipped)
    offset = np.linalg.norm(np.nan_to_num(points, nan=np.inf) - nearest, axis=1)
    return distances[clipped] * tree.h + offset


def cluster_distances(tree, k):
    """
    Pairwise cell-center distances between the level-k clusters.

    Returns:
        pandas.DataFrame: Square matrix indexed by cluster id.
    """
    level = tree.level(k)
    index = np.nonzero(level.alive)
    owners = level.raster[index]
    columns = {}
    for cluster in level.labels["cluster"]:
        distances = _distance_field(level.raster, cluster)
        frame = pd.DataFrame({"cluster": owners, "d": distances[index] * tree.h})
        columns[cluster] = frame.groupby("cluster")["d"].min()
    return pd.DataFrame(columns)


def _boundary_diameter(tree, mask):
    """Diameter of a cell cluster from the centers of its boundary cells, plus one cell diagonal."""
    boundary = mask & ~ndimage.binary_erosion(mask)
    centers = tree.cell_centers(*np.nonzero(boundary))
    widest = 0.0
    for start in range(0, len(centers), _PAIR_CHUNK):
        chunk = centers[start : start + _PAIR_CHUNK]
        widest = max(widest, float(np.linalg.norm(chunk[:, None, :] - centers[None, :, :], axis=-1).max()))
    return widest + tree.h * math.sqrt(tree.dimension)


def cluster_diameters(tree, k):
    level = tree.level(k)
    if tree.dimension <= 2:
        values = {cluster: tree.cell_set(k, cluster).diameter() for cluster in level.labels["cluster"]}
    else:
        values = {cluster: _boundary_diameter(tree, level.raster == cluster) for cluster in level.labels["cluster"]}
    return pd.Series(values, name="diameter")


def axis_gaps(tree, k=1):
    """
    Widest empty stretch of the level-k cells projected on each coordinate axis.

    Gaps are measured between the centers of the occupied cells on either
    side, so a gap of width g between intervals reads as a value in [g, g + 2h).

    Returns:
        list[float]: One gap per coordinate, 0.0 where the projection has no hole.
    """
    alive = tree.level(k).alive
    gaps = []
    for j in range(tree.dimension):
        axis = tree.axis_of(j)
        others = tuple(a for a in range(alive.ndim) if a != axis)
        occupied = np.flatnonzero(alive.any(axis=others))
        steps = np.diff(occupied)
        widest = int(steps.max()) if steps.size else 0
        gaps.append(widest * tree.h if widest > 1 else 0.0)
    return gaps


@dataclass
class DassConditionReport:
    levels: list = field(default_factory=list)
    diameters_decreasing: bool = True
    separated: bool = True
    weak_separation: bool = False

    @property
    def passed(self):
        return self.diameters_decreasing and self.separated

    def to_dict(self):
        return {
            "check": "dass-conditions",
            "depth": len(self.levels),
            "values": self.levels,
            "witnesses": [],
            "diameters_decreasing": self.diameters_decreasing,
            "separated": self.separated,
            "weak_separation": self.weak_separation,
            "pass": self.passed,
        }


def dass_condition_report(tree, weak_threshold=DEFAULT_WEAK_SEPARATION):
    """
    Diameter trend and separation estimates per level.

    The separation estimate of a level is the smallest nearest-partner
    distance over its clusters, measured between cell centers; the certified
    lower bound subtracts one cell diagonal. Each level also carries the
    per-axis gaps of its projections.

    Args:
        tree (DassTree): A tree of depth at least 2.
        weak_threshold (float): Level-1 estimates below this are flagged as weak.

    Returns:
        DassConditionReport: Per-level values and pass flags.
    """
    if tree.depth < 2:
        raise ValueError(f"condition report needs depth >= 2, got {tree.depth}")
    slack = tree.h * math.sqrt(tree.dimension)
    report = DassConditionReport()
    for k in range(1, tree.depth + 1):
        diameters = cluster_diameters(tree, k)
        distances = cluster_distances(tree, k)
        nearest = []
        for cluster in distances.columns:
            others = distances[cluster].drop(cluster, errors="ignore")
            nearest.append(others.min())
        epsilon = float(min(nearest)) if nearest else math.inf
        report.levels.append(
            {
                "level": k,
                "clusters": int(tree.cluster_count(k)),
                "max_diameter": float(diameters.max()),
                "epsilon": epsilon,
                "epsilon_lower": max(0.0, epsilon - slack),
                "axis_gaps": axis_gaps(tree, k),
            }
        )
        logger.info("Level %d: max diameter %.6f, epsilon %.6f", k, diameters.max(), epsilon)

    maxima = [entry["max_diameter"] for entry in report.levels]
    report.diameters_decreasing = all(later < earlier for earlier, later in zip(maxima, maxima[1:]))
    report.separated = all(entry["epsilon_lower"] > 0 for entry in report.levels)
    report.weak_separation = report.levels[0]["epsilon"] < weak_threshold
    return report
