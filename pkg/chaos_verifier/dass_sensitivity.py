import logging

import numpy as np

from chaos_verifier.reports import WitnessReport
from dass_builder import separation_time

logger = logging.getLogger(__name__)


def dass_sensitivity_report(tree, threshold=0.1, offset=1e-10, max_steps=64, clusters=8):
    """
    Finite-horizon sensitivity of the map behind a labeled tree.

    The first cell of each of the first ``clusters`` deepest-level clusters is
    paired with a copy shifted by ``offset`` along every axis, and both orbits
    are iterated until they are ``threshold`` apart.

    Args:
        tree (DassTree): Tree whose map is sampled.
        threshold (float): Separation to reach.
        offset (float): Initial displacement per coordinate.
        max_steps (int): Horizon of each pair.
        clusters (int): Number of clusters sampled, in label order.

    Returns:
        WitnessReport: ``sensitivity`` report; it passes when every pair separates.
    """
    if tree.depth < 1:
        raise ValueError("tree has no levels to sample")
    level = tree.level(tree.depth)
    witnesses = []
    for row in level.labels.head(clusters).itertuples(index=False):
        index = np.nonzero(level.raster == row.cluster)
        start = tree.cell_centers(*(axis[:1] for axis in index))[0]
        steps = separation_time(tree.spec, start, start + offset, threshold, max_steps)
        witnesses.append(
            {
                "cluster": int(row.cluster),
                "word": [int(d) for d in row.word],
                "start": [float(v) for v in start],
                "separated_at": steps,
            }
        )
    passed = bool(witnesses) and all(w["separated_at"] is not None for w in witnesses)
    if not passed:
        logger.info("Some orbit pairs stayed closer than %g for %d steps", threshold, max_steps)
    return WitnessReport(
        kind="sensitivity",
        space="dass",
        inputs={"threshold": threshold, "offset": offset, "level": tree.depth},
        witnesses=witnesses,
        quantities=[{"value": repr(threshold), "method": "float-orbit"}],
        horizon=max_steps,
        passed=passed,
    )
