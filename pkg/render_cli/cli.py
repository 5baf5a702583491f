"""
``simchaos`` command line.

Exit codes: 0 pass, 1 check failed, 2 usage error, 3 resource cap exceeded.
"""

import argparse
import logging
from pathlib import Path

from chaos_verifier import dass_sensitivity_report, devaney_report, li_yorke_pair, verify_li_yorke
from dass_builder import (
    MapSpec,
    dass_condition_report,
    escape_time_tree,
    label_consistency_check,
    read_tree,
    tent_dass_tree,
    trajectory,
    write_tree,
)
from drawers import RenderJob, SpaceDrawer
from fractal_library import SPACE_FACTORIES, center_orbit, space_by_name
from render_cli.orbit_csv import emit_orbit_csv
from render_cli.rendering import render_space, render_tree
from render_cli.reports import VERSION, write_report
from similarity_space import (
    check_diameter_condition,
    check_separation,
    enumerate_words,
    set_distance,
    subset_region,
    verify_similarity_identity,
)
from symbolic_core import parse_display_digits
from utils import load_config, save_raster, write_text
from utils.errors import LabelingError, ResourceCapError, SimchaosError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_PASS = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _exit_code(passed):
    return EXIT_PASS if passed else EXIT_FAILED


def _display_prefix(space, text):
    return parse_display_digits(text, space.branching, space.display_offset)


def _space_verify(args, config):
    space = space_by_name(args.space)
    checks = []

    diameter = check_diameter_condition(space, args.depth, config.enumeration_cap)
    checks.append(diameter.to_dict())
    passed = diameter.passed

    if space.separation_constant is not None:
        degree = args.sep_degree or space.separation_degree
        separation = check_separation(space, degree, config.enumeration_cap, config.koch_refine)
        checks.append(separation.to_dict())
        passed = passed and separation.passed

    for length in range(args.prefix_depth + 1):
        for prefix in enumerate_words(space.branching, length, config.enumeration_cap):
            certificate = verify_similarity_identity(space, prefix, args.depth, config.enumeration_cap)
            checks.append(certificate.to_dict())
            passed = passed and certificate.passed

    logger.info("Verified %s: %s", space.name, "pass" if passed else "FAIL")
    write_report({"space": space.name, "checks": checks, "pass": passed}, config, args.out)
    return _exit_code(passed)


def _space_render(args, config):
    space = space_by_name(args.space)
    if space.metric == "sigma":
        raise ValueError("the string space cannot be rendered")
    job = SpaceDrawer().default_job(space, config.render_size)
    raster = render_space(space, args.depth, job, depth_cap=config.render_depth_cap)
    save_raster(raster, args.out)
    logger.info("Wrote %s", args.out)
    return EXIT_PASS


def _orbit(args, config):
    space = space_by_name(args.space)
    if space.metric == "sigma":
        raise ValueError("the string space has no planar orbit")
    prefix = _display_prefix(space, args.prefix)
    steps = len(prefix) if args.steps is None else args.steps
    text = emit_orbit_csv(center_orbit(space, prefix, steps))
    if args.csv is None:
        print(text, end="")
    else:
        write_text(text, args.csv)
    return EXIT_PASS


def _distance(args, config):
    space = space_by_name(args.space)
    a = _display_prefix(space, args.a)
    b = _display_prefix(space, args.b)
    bracket = set_distance(subset_region(space, a), subset_region(space, b), config.koch_refine)
    payload = {"space": space.name, "check": "distance", "a": args.a, "b": args.b, "bracket": bracket.to_dict()}
    write_report(payload, config, args.out)
    return EXIT_PASS


def _chaos_report(args, config):
    space = space_by_name(args.space)
    payload = devaney_report(
        space,
        args.depth,
        args.samples,
        seed=config.seed,
        enumeration_cap=config.enumeration_cap,
        debruijn_cap=config.debruijn_cap,
        refine=config.koch_refine,
    )
    if args.horizon:
        pair = li_yorke_pair(space, args.horizon)
        li_yorke_ok = verify_li_yorke(space, pair)
        payload["li_yorke"] = {**pair.to_dict(), "pass": li_yorke_ok}
        payload["pass"] = payload["pass"] and li_yorke_ok
    write_report(payload, config, args.out)
    return _exit_code(payload["pass"])


def _map_spec(args, dimension=None):
    r = args.r
    mu = args.mu if args.mu is not None else (0.0,) * len(r)
    if dimension is not None and len(r) != dimension:
        raise ValueError(f"--r has {len(r)} values but --dim is {dimension}")
    return MapSpec(r=r, mu=mu, coupling=args.coupling, f0_margin=args.f0_margin)


def _save_tree_raster(tree, level, path, size=None, palette=None):
    if palette is None:
        palette = "labels" if Path(path).suffix.lower() == ".ppm" else "mono"
    width = size or tree.shape[1]
    raster = render_tree(tree, level, RenderJob(width=width, height=width, palette=palette))
    save_raster(raster, path)
    logger.info("Wrote level %d raster to %s", level, path)


def _dass_build(args, config):
    if args.tent:
        grid = config.tent_grid
        tree = tent_dass_tree(args.depth, h=1.0 / grid, grid_cap=config.grid_cap)
    else:
        grid = config.logistic_grid
        spec = _map_spec(args, args.dim)
        tree = escape_time_tree(
            spec,
            args.depth,
            1.0 / grid,
            grid_cap=config.grid_cap,
            read_from_stub=args.stub is not None,
            stub_path=args.stub,
        )
    counts = [tree.cluster_count(k) for k in range(1, tree.depth + 1)]
    logger.info("Cluster counts per level: %s", counts)
    if args.out is not None:
        write_tree(tree, args.out)
    if args.png is not None:
        _save_tree_raster(tree, tree.depth, args.png)
    return EXIT_PASS


def _dass_check(args, config):
    tree = read_tree(args.input)
    violations = label_consistency_check(tree)
    payload = {
        "check": "dass",
        "spec": tree.spec.to_dict(),
        "h": tree.h,
        "depth": tree.depth,
        "cluster_counts": [tree.cluster_count(k) for k in range(1, tree.depth + 1)],
        "label_violations": violations,
    }
    passed = not violations
    if tree.depth >= 2:
        conditions = dass_condition_report(tree, config.weak_separation)
        payload["conditions"] = conditions.to_dict()
        passed = passed and conditions.passed
    if tree.depth >= 1:
        # informational; float orbits do not decide the exit code
        payload["sensitivity"] = dass_sensitivity_report(tree).to_dict()
    payload["pass"] = passed
    write_report(payload, config, args.out)
    return _exit_code(passed)


def _dass_render(args, config):
    tree = read_tree(args.input)
    level = tree.depth if args.level is None else args.level
    _save_tree_raster(tree, level, args.out, size=config.tree_render_size or None, palette=args.palette)
    return EXIT_PASS


def _dass_trajectory(args, config):
    spec = _map_spec(args)
    orbit = trajectory(spec, args.x0, args.steps, stop_at_escape=True)
    if orbit.escape_step is not None:
        logger.warning(
            "Orbit left the working box at step %d; writing %d of %d points", orbit.escape_step, len(orbit), args.steps
        )
    text = emit_orbit_csv(orbit.points)
    if args.csv is None:
        print(text, end="")
    else:
        write_text(text, args.csv)
    return EXIT_PASS


def _add_map_arguments(parser):
    parser.add_argument("--r", type=_floats, required=True, help="Comma-separated logistic parameters.")
    parser.add_argument("--mu", type=_floats, default=None, help="Comma-separated coupling strengths.")
    parser.add_argument("--coupling", default="linear-cross", help="Registered coupling name.")
    parser.add_argument("--f0-margin", type=float, default=0.0, help="Shrink F0 inside the unit box.")


def build_parser():
    parser = argparse.ArgumentParser(prog="simchaos", description="Abstract self-similar spaces and chaos witnesses.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--config", type=Path, default=None, help="TOML file of key = value settings.")
    parser.add_argument("--seed", type=int, default=None, help="Root seed for randomized reports.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log at DEBUG level.")
    verbosity.add_argument("--quiet", action="store_true", help="Log warnings only.")
    commands = parser.add_subparsers(dest="command", required=True)
    space_names = sorted(SPACE_FACTORIES)

    space = commands.add_parser("space", help="Check or draw a self-similar space.")
    space_commands = space.add_subparsers(dest="space_command", required=True)

    verify = space_commands.add_parser("verify", help="Diameter, separation and similarity checks.")
    verify.add_argument("--space", choices=space_names, required=True)
    verify.add_argument("--depth", type=int, default=3, help="Depth of the diameter and similarity checks.")
    verify.add_argument("--sep-degree", type=int, default=None, help="Separation degree; the declared one by default.")
    verify.add_argument("--prefix-depth", type=int, default=1, help="Longest prefix for the similarity identity.")
    verify.add_argument("--out", type=Path, default=None, help="JSON report; stdout by default.")
    verify.set_defaults(handler=_space_verify)

    render = space_commands.add_parser("render", help="Raster of the depth-n subsets.")
    render.add_argument("--space", choices=space_names, required=True)
    render.add_argument("--depth", type=int, default=3)
    render.add_argument("--size", type=int, default=None, help="Pixels per side.")
    render.add_argument("--out", type=Path, required=True, help="PGM, PPM or PNG file.")
    render.set_defaults(handler=_space_render)

    orbit = commands.add_parser("orbit", help="Centers visited by the shift along an index string.")
    orbit.add_argument("--space", choices=space_names, required=True)
    orbit.add_argument("--prefix", required=True, help="Index digits as displayed (1-based for fractals).")
    orbit.add_argument("--steps", type=int, default=None, help="Number of shifts; the prefix length by default.")
    orbit.add_argument("--csv", type=Path, default=None, help="Output CSV; stdout by default.")
    orbit.set_defaults(handler=_orbit)

    distance = commands.add_parser("distance", help="Certified distance bracket between two subsets.")
    distance.add_argument("--space", choices=space_names, required=True)
    distance.add_argument("--a", required=True, help="First index prefix as displayed.")
    distance.add_argument("--b", required=True, help="Second index prefix as displayed.")
    distance.add_argument("--out", type=Path, default=None)
    distance.set_defaults(handler=_distance)

    chaos = commands.add_parser("chaos", help="Chaos witnesses for the shift.")
    chaos_commands = chaos.add_subparsers(dest="chaos_command", required=True)
    report = chaos_commands.add_parser("report", help="Devaney and Li-Yorke witnesses.")
    report.add_argument("--space", choices=space_names, required=True)
    report.add_argument("--depth", type=int, default=4, help="Digits per random sample and transitive block length.")
    report.add_argument("--samples", type=int, default=100)
    report.add_argument("--horizon", type=int, default=256, help="Li-Yorke horizon; 0 skips the pair.")
    report.add_argument("--out", type=Path, default=None)
    report.set_defaults(handler=_chaos_report)

    dass = commands.add_parser("dass", help="Escape-time trees of logistic-family maps.")
    dass_commands = dass.add_subparsers(dest="dass_command", required=True)

    build = dass_commands.add_parser("build", help="Build and save a labeled tree.")
    build.add_argument("--dim", type=int, default=2, help="Number of coordinates of the map.")
    build.add_argument("--r", type=_floats, default=None, help="Comma-separated logistic parameters.")
    build.add_argument("--mu", type=_floats, default=None, help="Comma-separated coupling strengths.")
    build.add_argument("--coupling", default="linear-cross")
    build.add_argument("--f0-margin", type=float, default=0.0)
    build.add_argument("--tent", action="store_true", help="Build the carpet tent-map tree instead.")
    build.add_argument("--depth", type=int, default=3)
    build.add_argument("--grid", type=int, default=None, help="Cells per axis.")
    build.add_argument("--out", type=Path, default=None, help="Tree file.")
    build.add_argument("--png", type=Path, default=None, help="Raster of the deepest level (.ppm colors labels).")
    build.add_argument("--stub", type=Path, default=None, help="Cache file reused across runs.")
    build.set_defaults(handler=_dass_build)

    check = dass_commands.add_parser("check", help="Label consistency and DASS conditions of a saved tree.")
    check.add_argument("--in", dest="input", type=Path, required=True)
    check.add_argument("--out", type=Path, default=None)
    check.set_defaults(handler=_dass_check)

    dass_render = dass_commands.add_parser("render", help="Raster of one level of a saved tree.")
    dass_render.add_argument("--in", dest="input", type=Path, required=True)
    dass_render.add_argument("--level", type=int, default=None)
    dass_render.add_argument("--size", type=int, default=None)
    dass_render.add_argument("--palette", choices=("mono", "labels"), default=None)
    dass_render.add_argument("--out", type=Path, required=True)
    dass_render.set_defaults(handler=_dass_render)

    orbit_map = dass_commands.add_parser("trajectory", help="Orbit of a start point as CSV.")
    _add_map_arguments(orbit_map)
    orbit_map.add_argument("--x0", type=_floats, required=True, help="Comma-separated start point.")
    orbit_map.add_argument("--steps", type=int, default=1000, help="Number of points, the start included.")
    orbit_map.add_argument("--csv", type=Path, default=None)
    orbit_map.set_defaults(handler=_dass_trajectory)

    return parser


def _flag_overrides(args):
    overrides = {"seed": args.seed}
    if args.command == "space" and args.space_command == "render":
        overrides["render_size"] = args.size
    elif args.command == "dass" and args.dass_command == "build":
        overrides["tent_grid" if args.tent else "logistic_grid"] = args.grid
    elif args.command == "dass" and args.dass_command == "render":
        overrides["tree_render_size"] = args.size
    return overrides


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    if getattr(args, "dass_command", None) == "build" and not args.tent and args.r is None:
        parser.error("dass build needs --r unless --tent is given")

    try:
        config = load_config(args.config, **_flag_overrides(args))
        return args.handler(args, config)
    except ResourceCapError as exc:
        logger.error("%s", exc)
        return EXIT_CAP
    except LabelingError as exc:
        logger.error("%s", exc)
        return EXIT_FAILED
    except (SimchaosError, ValueError, TypeError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
