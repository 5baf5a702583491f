import json
from fractions import Fraction

import numpy as np
import pytest

from conftest import FIG4_INDEX, FIG9A_START
from dass_builder import read_tree
from render_cli import VERSION, emit_orbit_csv, main, parse_orbit_csv, report_text
from render_cli.cli import EXIT_CAP, EXIT_FAILED, EXIT_PASS, EXIT_USAGE
from symbolic_core import Surd
from utils import SimchaosConfig, read_raster
from utils.config import SEED_ENV_VAR


def _report(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_emit_orbit_csv():
    assert emit_orbit_csv([(0.1, 0.2), (Fraction(1, 2), 1.0)]) == "step,x,y\n0,0.1,0.2\n1,0.5,1.0\n"
    assert emit_orbit_csv([0.5]) == "step,x,y\n0,0.5,\n"
    with pytest.raises(ValueError):
        emit_orbit_csv([(1.0, 2.0, 3.0)])


def test_parse_orbit_csv():
    assert parse_orbit_csv(emit_orbit_csv([])) == []
    assert parse_orbit_csv(emit_orbit_csv([Fraction(13, 54), 0.25])) == [13 / 54, 0.25]
    assert parse_orbit_csv("step,x,y\n0,0.1,0.2\n") == [(0.1, 0.2)]
    with pytest.raises(ValueError):
        parse_orbit_csv("t,x\n0,1\n")


def test_report_text():
    text = report_text({"epsilon": Fraction(1, 3), "diagonal": Surd(Fraction(1, 3), 2), "n": np.int64(4)}, SimchaosConfig())
    document = json.loads(text)
    assert text.endswith("}\n")
    assert document["version"] == VERSION
    assert document["config"]["seed"] == 0
    assert document["epsilon"] == "1/3"
    assert document["diagonal"] == "sqrt(2)/3"
    assert document["n"] == 4
    with pytest.raises(TypeError):
        report_text({"bad": object()}, SimchaosConfig())


def test_space_verify(tmp_path):
    out = tmp_path / "carpet.json"
    assert main(["--quiet", "space", "verify", "--space", "carpet", "--depth", "2", "--out", str(out)]) == EXIT_PASS
    report = _report(out)
    assert report["pass"]
    assert [c["check"] for c in report["checks"][:2]] == ["diameter", "separation"]
    assert sum(c["check"] == "similarity" for c in report["checks"]) == 9


def test_space_verify_failures(tmp_path):
    out = tmp_path / "gasket.json"
    assert main(["--quiet", "space", "verify", "--space", "gasket", "--sep-degree", "1", "--out", str(out)]) == EXIT_FAILED
    assert not _report(out)["pass"]
    assert main(["--quiet", "space", "verify", "--space", "carpet", "--sep-degree", "5"]) == EXIT_CAP


def test_space_render(tmp_path):
    out = tmp_path / "carpet.pgm"
    assert main(["--quiet", "space", "render", "--space", "carpet", "--depth", "1", "--size", "81", "--out", str(out)]) == EXIT_PASS
    raster = read_raster(out)
    assert raster.shape == (81, 81)
    assert np.count_nonzero(raster) == 8 * 27 * 27
    assert main(["--quiet", "space", "render", "--space", "sigma", "--out", str(tmp_path / "s.pgm")]) == EXIT_USAGE


def test_orbit_of_carpet_index(tmp_path):
    out = tmp_path / "orbit.csv"
    assert main(["--quiet", "orbit", "--space", "carpet", "--prefix", FIG4_INDEX, "--csv", str(out)]) == EXIT_PASS
    points = parse_orbit_csv(out.read_text(encoding="utf-8"))
    assert len(points) == 69
    assert points[-1] == (0.5, 0.5)


def test_orbit_to_stdout(capsys):
    assert main(["--quiet", "orbit", "--space", "cantor", "--prefix", "121"]) == EXIT_PASS
    assert parse_orbit_csv(capsys.readouterr().out) == [13 / 54, 13 / 18, 1 / 6, 0.5]
    assert main(["--quiet", "orbit", "--space", "carpet", "--prefix", "19"]) == EXIT_USAGE


def test_distance(capsys):
    assert main(["--quiet", "distance", "--space", "carpet", "--a", "1", "--b", "8"]) == EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert report["bracket"]["lower"] == "sqrt(2)/3"
    assert report["bracket"]["upper"] == "sqrt(2)/3"


def test_chaos_report(tmp_path, monkeypatch):
    monkeypatch.setenv(SEED_ENV_VAR, "9")
    out = tmp_path / "sigma.json"
    argv = ["--quiet", "chaos", "report", "--space", "sigma", "--depth", "3", "--samples", "5", "--horizon", "32"]
    assert main(argv + ["--out", str(out)]) == EXIT_PASS
    report = _report(out)
    assert report["seed"] == 9
    assert report["config"]["seed"] == 9
    assert report["li_yorke"]["pass"]
    assert main(["--seed", "4"] + argv + ["--out", str(out)]) == EXIT_PASS
    assert _report(out)["seed"] == 4


def test_dass_build_check_render(tmp_path):
    tree_path = tmp_path / "logistic.dass"
    argv = ["--quiet", "dass", "build", "--dim", "1", "--r", "4.5", "--depth", "2", "--grid", "512"]
    assert main(argv + ["--out", str(tree_path), "--png", str(tmp_path / "level.pgm")]) == EXIT_PASS
    assert read_raster(tmp_path / "level.pgm").shape == (1, 512)

    report_path = tmp_path / "check.json"
    assert main(["--quiet", "dass", "check", "--in", str(tree_path), "--out", str(report_path)]) == EXIT_PASS
    report = _report(report_path)
    assert report["cluster_counts"] == [2, 4]
    assert report["label_violations"] == []
    assert report["conditions"]["pass"]
    assert report["sensitivity"]["kind"] == "sensitivity"

    image_path = tmp_path / "labels.ppm"
    argv = ["--quiet", "dass", "render", "--in", str(tree_path), "--level", "1", "--size", "256"]
    assert main(argv + ["--palette", "labels", "--out", str(image_path)]) == EXIT_PASS
    assert read_raster(image_path).shape == (1, 256, 3)


def test_dass_build_tent(tmp_path):
    tree_path = tmp_path / "tent.dass"
    assert main(["--quiet", "dass", "build", "--tent", "--depth", "1", "--grid", "81", "--out", str(tree_path)]) == EXIT_PASS
    report_path = tmp_path / "check.json"
    assert main(["--quiet", "dass", "check", "--in", str(tree_path), "--out", str(report_path)]) == EXIT_PASS
    report = _report(report_path)
    assert report["cluster_counts"] == [8]
    assert "conditions" not in report


def test_dass_build_exit_codes(tmp_path):
    base = ["--quiet", "dass", "build", "--depth", "1"]
    assert main(base + ["--dim", "1", "--r", "3.9", "--grid", "512"]) == EXIT_FAILED
    assert main(base + ["--dim", "2", "--r", "4.5", "--grid", "512"]) == EXIT_USAGE
    config = tmp_path / "small.toml"
    config.write_text("grid_cap = 100\n", encoding="utf-8")
    assert main(["--config", str(config)] + base + ["--dim", "1", "--r", "4.5", "--grid", "512"]) == EXIT_CAP
    with pytest.raises(SystemExit) as info:
        main(base)
    assert info.value.code == EXIT_USAGE


def test_bad_config_is_a_usage_error(tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text("colour = 3\n", encoding="utf-8")
    assert main(["--config", str(config), "--quiet", "distance", "--space", "cantor", "--a", "1", "--b", "2"]) == EXIT_USAGE


def test_dass_trajectory(capsys):
    x0 = ",".join(repr(v) for v in FIG9A_START)
    argv = ["--quiet", "dass", "trajectory", "--r", "4.2,4.5", "--mu", "0.03,-0.05", "--x0", x0, "--steps", "5"]
    assert main(argv) == EXIT_PASS
    points = parse_orbit_csv(capsys.readouterr().out)
    assert len(points) == 5
    assert points[0] == FIG9A_START


def test_dass_trajectory_stops_at_escape(tmp_path):
    out = tmp_path / "orbit.csv"
    argv = ["--quiet", "dass", "trajectory", "--r", "4.2,4.5", "--mu", "0.03,-0.05", "--x0", "0.5,0.5", "--steps", "10"]
    assert main(argv + ["--csv", str(out)]) == EXIT_PASS
    points = parse_orbit_csv(out.read_text(encoding="utf-8"))
    assert len(points) == 2
    assert np.isfinite(points).all()


def test_grid_and_size_follow_config_layers(tmp_path):
    config = tmp_path / "simchaos.toml"
    config.write_text("tent_grid = 81\nrender_size = 81\ntree_render_size = 162\n", encoding="utf-8")
    tree_path = tmp_path / "tent.dass"
    base = ["--config", str(config), "--quiet"]
    assert main(base + ["dass", "build", "--tent", "--depth", "1", "--out", str(tree_path)]) == EXIT_PASS
    assert read_tree(tree_path).shape == (81, 81)

    assert main(base + ["dass", "build", "--tent", "--depth", "1", "--grid", "243", "--out", str(tree_path)]) == EXIT_PASS
    assert read_tree(tree_path).shape == (243, 243)

    image_path = tmp_path / "tree.pgm"
    assert main(base + ["dass", "render", "--in", str(tree_path), "--out", str(image_path)]) == EXIT_PASS
    assert read_raster(image_path).shape == (162, 162)

    carpet_path = tmp_path / "carpet.pgm"
    assert main(base + ["space", "render", "--space", "carpet", "--depth", "1", "--out", str(carpet_path)]) == EXIT_PASS
    assert read_raster(carpet_path).shape == (81, 81)


def test_dass_build_three_dimensional(tmp_path):
    tree_path = tmp_path / "cube.dass"
    argv = ["--quiet", "dass", "build", "--dim", "3", "--r", "4.5,4.5,4.5", "--depth", "1", "--grid", "32"]
    assert main(argv + ["--out", str(tree_path)]) == EXIT_PASS
    report_path = tmp_path / "check.json"
    assert main(["--quiet", "dass", "check", "--in", str(tree_path), "--out", str(report_path)]) == EXIT_PASS
    report = _report(report_path)
    assert report["cluster_counts"] == [8]
    assert report["label_violations"] == []
    assert len(report["sensitivity"]["witnesses"]) == 8
    assert main(["--quiet", "dass", "render", "--in", str(tree_path), "--out", str(tmp_path / "cube.pgm")]) == EXIT_USAGE
