import dataclasses
import itertools
import math

import numpy as np
import pandas as pd
import pytest

from conftest import FIG9A_START, FIG9B_START, SMALL_H
from dass_builder import (
    COUPLINGS,
    DassLevel,
    MapSpec,
    axis_gaps,
    dass_condition_report,
    escape_time_tree,
    first_level_intervals_1d,
    label_consistency_check,
    logistic_step,
    one_dimensional_tree,
    perturbed_step,
    read_tree,
    register_coupling,
    resolve_coupling,
    separation_time,
    tent_dass_tree,
    trajectory,
    tree_from_bytes,
    tree_to_bytes,
    write_tree,
)
from fractal_library import CARPET_CELLS
from utils.errors import LabelingError, PluginResolutionError, ResourceCapError, TreeFormatError


def test_first_level_intervals():
    left, right, gap = first_level_intervals_1d(4.5)
    assert gap == pytest.approx(1 / 3)
    assert left == pytest.approx((0.0, 1 / 3))
    assert right == pytest.approx((2 / 3, 1.0))
    _, _, gap = first_level_intervals_1d(4.0)
    assert gap == 0.0
    with pytest.raises(ValueError):
        first_level_intervals_1d(3.9)


def test_map_steps(separable_spec, perturbed_spec):
    np.testing.assert_allclose(logistic_step(separable_spec, [0.5, 0.5]), [1.05, 1.075])
    np.testing.assert_allclose(perturbed_step(perturbed_spec, [0.5, 0.5]), [1.065, 1.1])
    np.testing.assert_allclose(perturbed_step(perturbed_spec, [0.0, 0.0]), [0.0, 0.0])
    fixed = 1 - 1 / 4.2
    np.testing.assert_allclose(logistic_step(MapSpec(r=(4.2,)), [fixed]), [fixed])
    with pytest.raises(ValueError):
        logistic_step(perturbed_spec, [0.5, 0.5])
    with pytest.raises(ValueError):
        perturbed_step(perturbed_spec, [0.5])


def test_map_spec_validation():
    with pytest.raises(ValueError):
        MapSpec(r=(4.2, 4.3), mu=(0.1,))
    with pytest.raises(ValueError):
        MapSpec(r=(4.2,), f0_margin=0.5)
    with pytest.raises(ValueError):
        MapSpec(r=(4.2,), kind="henon")
    spec = MapSpec(r=(4.2, 4.5), mu=(0.03, -0.05), f0_margin=0.01)
    np.testing.assert_allclose(spec.f0, [[0.01, 0.99], [0.01, 0.99]])
    assert spec.expected_branching == 4
    assert MapSpec.from_dict(spec.to_dict()) == spec


def test_coupling_plugins(monkeypatch, separable_spec):
    monkeypatch.setitem(COUPLINGS, "zero", None)
    register_coupling("zero", lambda points, mu: np.zeros_like(points))
    spec = MapSpec(r=(4.2, 4.3), mu=(0.5, 0.5), coupling="zero")
    np.testing.assert_allclose(perturbed_step(spec, [0.3, 0.6]), logistic_step(separable_spec, [0.3, 0.6]))
    with pytest.raises(PluginResolutionError):
        resolve_coupling("quadratic")
    with pytest.raises(KeyError):
        perturbed_step(MapSpec(r=(4.2, 4.3), mu=(0.1, 0.1), coupling="quadratic"), [0.5, 0.5])


def test_one_dimensional_tree():
    tree = one_dimensional_tree(4.5, 2, SMALL_H)
    assert tree.shape == (1, 512)
    first = tree.level(1)
    assert first.words == [(0,), (1,)]
    # survivors of one step are the centers in [0, 1/3] and [2/3, 1]
    assert list(first.labels["cells"]) == [171, 171]
    assert sorted(tree.level(2).words) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert label_consistency_check(tree) == []


def test_separable_tree_counts(separable_tree):
    assert [separable_tree.cluster_count(k) for k in range(4)] == [1, 4, 16, 64]
    for k in (1, 2, 3):
        assert sorted(separable_tree.level(k).words) == list(itertools.product(range(4), repeat=k))


def test_separable_tree_is_a_product_of_one_dimensional_trees(separable_tree):
    """Cluster (x-word, y-word) of the uncoupled map reads as digit 2 * y + x."""
    tree_x = one_dimensional_tree(4.2, 3, SMALL_H)
    tree_y = one_dimensional_tree(4.3, 3, SMALL_H)
    for k in (1, 2, 3):
        level = separable_tree.level(k)
        alive_x = tree_x.level(k).alive[0]
        alive_y = tree_y.level(k).alive[0]
        np.testing.assert_array_equal(level.alive, np.outer(alive_y, alive_x))

        words_x = dict(zip(tree_x.level(k).labels["cluster"], tree_x.level(k).labels["word"]))
        words_y = dict(zip(tree_y.level(k).labels["cluster"], tree_y.level(k).labels["word"]))
        for row in level.labels.itertuples(index=False):
            wx = words_x[tree_x.level(k).raster[0, row.col_min]]
            wy = words_y[tree_y.level(k).raster[0, row.row_min]]
            assert row.word == tuple(2 * y + x for x, y in zip(wx, wy))


def test_separable_level_one_epsilon(separable_tree):
    report = dass_condition_report(separable_tree)
    assert report.passed
    assert not report.weak_separation
    gap = math.sqrt(1 - 4 / 4.2)
    assert report.levels[0]["epsilon"] == pytest.approx(gap, abs=2 * SMALL_H)
    assert report.levels[0]["epsilon_lower"] > 0


def test_perturbed_tree(perturbed_tree):
    assert [perturbed_tree.cluster_count(k) for k in (1, 2, 3)] == [4, 16, 64]
    assert label_consistency_check(perturbed_tree) == []
    report = dass_condition_report(perturbed_tree)
    assert report.diameters_decreasing
    maxima = [entry["max_diameter"] for entry in report.levels]
    assert maxima == sorted(maxima, reverse=True)
    assert report.separated
    assert report.levels[0]["epsilon"] > 0.15
    assert set(report.to_dict()) >= {"check", "depth", "values", "pass"}


def test_label_check_catches_relabeled_level():
    tree = one_dimensional_tree(4.5, 2, SMALL_H)
    level = tree.level(2)
    labels = level.labels.copy()
    labels["word"] = pd.Series([word[::-1] for word in labels["word"]], index=labels.index, dtype=object)
    broken = dataclasses.replace(tree, levels=[tree.level(1), DassLevel(2, level.raster, labels)])
    violations = label_consistency_check(broken)
    assert violations
    assert {v["kind"] for v in violations} >= {"parent"}


def test_label_check_on_single_level_tree():
    assert label_consistency_check(one_dimensional_tree(4.5, 1, SMALL_H)) == []


def test_condition_report_needs_two_levels():
    with pytest.raises(ValueError):
        dass_condition_report(one_dimensional_tree(4.5, 1, SMALL_H))


def test_weak_separation_is_flagged():
    tree = one_dimensional_tree(4.0001, 2, 2.0**-14, grid_cap=1 << 15)
    assert tree.cluster_count(1) == 2
    report = dass_condition_report(tree)
    assert report.weak_separation
    assert report.levels[0]["epsilon"] == pytest.approx(math.sqrt(1 - 4 / 4.0001), abs=2 * 2.0**-14)


def test_tree_errors():
    with pytest.raises(ValueError):
        escape_time_tree(MapSpec(r=(4.5,)), 0, SMALL_H)
    with pytest.raises(ResourceCapError):
        escape_time_tree(MapSpec(r=(4.5,)), 1, 2.0**-13)
    with pytest.raises(LabelingError) as info:
        escape_time_tree(MapSpec(r=(4.5,), expected_branching=3), 1, SMALL_H)
    assert info.value.diagnostic["clusters"] == 2


@pytest.mark.parametrize("depth, clusters", [(0, 1), (1, 8), (2, 64)])
def test_tent_tree_counts(depth, clusters):
    tree = tent_dass_tree(depth, h=3.0**-5)
    assert tree.cluster_count(depth) == clusters


def test_tent_tree_default_grid_depth_three():
    tree = tent_dass_tree(3)
    assert tree.shape == (729, 729)
    assert tree.cluster_count(3) == 512
    assert label_consistency_check(tree) == []


def test_tent_tree_first_level_matches_carpet_cells():
    level = tent_dass_tree(1, h=3.0**-5).level(1)
    for row in level.labels.itertuples(index=False):
        col, r = CARPET_CELLS[row.cluster]
        assert (row.col_min, row.row_min) == (81 * col, 81 * r)
        assert row.cells == 81 * 81


def test_trajectory(perturbed_spec):
    orbit = trajectory(perturbed_spec, FIG9A_START, 1000)
    assert len(orbit) == 1000
    np.testing.assert_allclose(orbit.points[0], FIG9A_START)
    np.testing.assert_allclose(orbit.points[1], perturbed_step(perturbed_spec, FIG9A_START))
    assert trajectory(perturbed_spec, FIG9B_START, 10).points.shape == (10, 2)
    assert trajectory(perturbed_spec, (1.5, 0.5), 3).escape_step == 0
    with pytest.raises(ValueError):
        trajectory(perturbed_spec, (0.5,), 3)


def test_separation_time_of_nearby_cells(perturbed_spec, perturbed_tree):
    rows, cols = np.nonzero(perturbed_tree.level(3).alive)
    start = perturbed_tree.cell_centers(rows[:1], cols[:1])[0]
    steps = separation_time(perturbed_spec, start, start + 1e-10, 0.1, 60)
    assert steps is not None
    assert 0 < steps <= 60
    assert separation_time(perturbed_spec, start, start, 0.1, 20) is None


def test_tree_codec(tmp_path, perturbed_tree):
    data = tree_to_bytes(perturbed_tree)
    assert tree_to_bytes(perturbed_tree) == data
    write_tree(perturbed_tree, tmp_path / "trees" / "example.dass")
    restored = read_tree(tmp_path / "trees" / "example.dass")
    assert restored.spec == perturbed_tree.spec
    assert restored.depth == 3
    for k in (1, 2, 3):
        np.testing.assert_array_equal(restored.level(k).raster, perturbed_tree.level(k).raster)
        assert restored.level(k).words == perturbed_tree.level(k).words
    assert label_consistency_check(restored) == []


def test_tree_codec_rejects_bad_input(separable_tree):
    data = tree_to_bytes(separable_tree)
    with pytest.raises(TreeFormatError):
        tree_from_bytes(b"NOT-A-TREE\n{}\n")
    with pytest.raises(TreeFormatError):
        tree_from_bytes(data[:-7])
    with pytest.raises(TreeFormatError):
        tree_from_bytes(data + b"\x00")


def test_trees_are_deterministic(separable_spec):
    first = escape_time_tree(separable_spec, 2, SMALL_H)
    second = escape_time_tree(separable_spec, 2, SMALL_H)
    assert tree_to_bytes(first) == tree_to_bytes(second)


def test_tree_stub_cache(tmp_path, separable_spec):
    stub = tmp_path / "tree.pkl"
    built = escape_time_tree(separable_spec, 1, SMALL_H, read_from_stub=True, stub_path=stub)
    assert stub.exists()
    cached = escape_time_tree(separable_spec, 1, SMALL_H, read_from_stub=True, stub_path=stub)
    assert tree_to_bytes(cached) == tree_to_bytes(built)
    coarse = escape_time_tree(separable_spec, 1, 2 * SMALL_H, read_from_stub=True, stub_path=stub)
    assert coarse.shape == (256, 256)


@pytest.mark.slow
@pytest.mark.parametrize("spec_name", ["separable_spec", "perturbed_spec"])
def test_full_resolution_trees(spec_name, request):
    spec = request.getfixturevalue(spec_name)
    tree = escape_time_tree(spec, 3, 1 / 2048)
    assert tree.cluster_count(1) == 4
    assert label_consistency_check(tree) == []
    assert dass_condition_report(tree).passed


def test_separable_axis_gaps(separable_tree):
    expected = [math.sqrt(1 - 4 / 4.2), math.sqrt(1 - 4 / 4.3)]
    report = dass_condition_report(separable_tree)
    assert report.levels[0]["axis_gaps"] == pytest.approx(expected, abs=2 * SMALL_H)
    assert axis_gaps(separable_tree, 1) == report.levels[0]["axis_gaps"]


@pytest.mark.parametrize("h", [2.0**-8, 2.0**-9, 2.0**-10])
def test_axis_gaps_converge_with_cell_size(separable_spec, h):
    tree = escape_time_tree(separable_spec, 1, h)
    expected = np.array([math.sqrt(1 - 4 / 4.2), math.sqrt(1 - 4 / 4.3)])
    error = np.abs(np.array(axis_gaps(tree, 1)) - expected)
    assert np.all(error <= 2 * h)


def test_fine_one_dimensional_tree_matches_closed_form():
    h = 2.0**-12
    tree = one_dimensional_tree(4.2, 1, h)
    assert tree.shape == (1, 4096)
    assert tree.cluster_count(1) == 2
    intervals = first_level_intervals_1d(4.2)[:2]
    for cluster, (lo, hi) in zip(tree.level(1).labels["cluster"], intervals):
        centers = tree.cell_set(1, cluster).centers()
        assert centers.min() == pytest.approx(lo, abs=2 * h)
        assert centers.max() == pytest.approx(hi, abs=2 * h)


def test_three_dimensional_tree():
    tree = escape_time_tree(MapSpec(r=(4.5, 4.5, 4.5)), 2, 1 / 64)
    assert tree.shape == (64, 64, 64)
    assert tree.cluster_count(1) == 8
    assert tree.cluster_count(2) == 64
    assert sorted(tree.level(1).words) == [(d,) for d in range(8)]
    assert label_consistency_check(tree) == []
    report = dass_condition_report(tree)
    assert report.passed
    # level-1 boxes are the products of [0, 1/3] and [2/3, 1]
    assert report.levels[0]["axis_gaps"] == pytest.approx([1 / 3] * 3, abs=2 / 64)


def test_three_dimensional_tree_codec():
    tree = escape_time_tree(MapSpec(r=(4.5, 4.5, 4.5)), 1, 1 / 32)
    restored = tree_from_bytes(tree_to_bytes(tree))
    assert restored.shape == (32, 32, 32)
    np.testing.assert_array_equal(restored.level(1).raster, tree.level(1).raster)


def test_trajectory_stops_at_escape(perturbed_spec):
    orbit = trajectory(perturbed_spec, (0.5, 0.5), 10, stop_at_escape=True)
    assert orbit.escape_step == 1
    assert len(orbit) == 2
    assert np.isfinite(orbit.points).all()
    assert trajectory(perturbed_spec, (0.5, 0.5), 10).points.shape == (10, 2)
