from .checks import (
    DassConditionReport,
    axis_gaps,
    cluster_diameters,
    cluster_distances,
    dass_condition_report,
    label_consistency_check,
)
from .codec import read_tree, tree_from_bytes, tree_to_bytes, write_tree
from .dynamics import Trajectory, separation_time, trajectory
from .maps import (
    COUPLINGS,
    MapSpec,
    first_level_intervals_1d,
    logistic_step,
    map_points,
    perturbed_step,
    register_coupling,
    resolve_coupling,
    tent_map_spec,
)
from .tree import DassLevel, DassTree, escape_time_tree, one_dimensional_tree, tent_dass_tree

__all__ = [
    "DassConditionReport",
    "axis_gaps",
    "cluster_diameters",
    "cluster_distances",
    "dass_condition_report",
    "label_consistency_check",
    "read_tree",
    "tree_from_bytes",
    "tree_to_bytes",
    "write_tree",
    "Trajectory",
    "separation_time",
    "trajectory",
    "COUPLINGS",
    "MapSpec",
    "first_level_intervals_1d",
    "logistic_step",
    "map_points",
    "perturbed_step",
    "register_coupling",
    "resolve_coupling",
    "tent_map_spec",
    "DassLevel",
    "DassTree",
    "escape_time_tree",
    "one_dimensional_tree",
    "tent_dass_tree",
]
