"""Command-line interface: exit codes, report schemas, determinism."""

import json

import pytest

from helpers import CUBE_VERTICES

from polysect.cli import main, parse_flat, parse_vector
from polysect.offio import emit_off
from polysect.polytope import convex_hull


@pytest.fixture()
def cube_off(tmp_path):
    path = tmp_path / "cube.off"
    path.write_text(emit_off(convex_hull(CUBE_VERTICES)))
    return str(path)


@pytest.fixture()
def ball_json(tmp_path):
    path = tmp_path / "ball.json"
    path.write_text(
        json.dumps({"kind": "ball", "center": [0, 0, 0], "radius": 1})
    )
    return str(path)


def run(args, tmp_path, name="report.json", svg=None):
    report = tmp_path / name
    argv = list(args) + ["--report", str(report)]
    if svg is not None:
        argv += ["--svg", str(tmp_path / svg)]
    code = main(argv)
    data = json.loads(report.read_text()) if report.exists() else None
    return code, data


class TestParsers:
    def test_parse_vector(self):
        from fractions import Fraction as F

        assert parse_vector("1,2,3") == (1, 2, 3)
        assert parse_vector("1/2, -3/4, 0") == (F(1, 2), F(-3, 4), 0)

    def test_parse_vector_errors(self):
        with pytest.raises(ValueError):
            parse_vector("")
        with pytest.raises(ValueError):
            parse_vector("1,x,3")

    def test_parse_flat(self):
        flat, normal, offset = parse_flat("n=1,1,1;c=0", 3)
        assert normal == (1, 1, 1)
        assert offset == 0
        assert flat.dim == 2

    def test_parse_flat_errors(self):
        with pytest.raises(ValueError):
            parse_flat("n=1,1,1", 3)
        with pytest.raises(ValueError):
            parse_flat("n=0,0,0;c=1", 3)
        with pytest.raises(ValueError):
            parse_flat("n=1,1;c=0", 3)


class TestSection:
    def test_cube_hexagon(self, cube_off, tmp_path):
        code, rep = run(
            ["section", "--body", cube_off, "--flat", "n=1,1,1;c=0"],
            tmp_path,
            svg="hex.svg",
        )
        assert code == 0
        assert rep["verdict"] == "polytope-consistent"
        assert rep["vertex_count"] == 6
        assert rep["seed"] == 0
        svg = (tmp_path / "hex.svg").read_text()
        assert svg.startswith("<?xml")
        assert "v5" in svg

    def test_empty_section(self, cube_off, tmp_path):
        code, rep = run(
            ["section", "--body", cube_off, "--flat", "n=1,0,0;c=9"], tmp_path
        )
        assert code == 0
        assert rep["verdict"] == "empty"

    def test_ball_section_is_witnessed(self, ball_json, tmp_path):
        code, rep = run(
            ["section", "--body", ball_json, "--flat", "n=0,0,1;c=0",
             "--samples", "32"],
            tmp_path,
        )
        assert code == 2
        assert rep["verdict"] == "non-polytope"
        assert rep["witness_triple"] is not None

    def test_rational_payloads_have_both_forms(self, cube_off, tmp_path):
        _, rep = run(
            ["section", "--body", cube_off, "--flat", "n=1,1,1;c=0"], tmp_path
        )
        v = rep["vertices"][0][0]
        assert set(v) == {"decimal", "exact"}
        assert "/" in v["exact"]


class TestProjectConeWalk:
    def test_project_square(self, cube_off, tmp_path):
        code, rep = run(
            ["project", "--body", cube_off, "--xi", "0,0,1"], tmp_path,
            svg="shadow.svg",
        )
        assert code == 0
        assert rep["vertex_count"] == 4
        assert (tmp_path / "shadow.svg").exists()

    def test_project_with_basis(self, cube_off, tmp_path):
        code, rep = run(
            ["project", "--body", cube_off, "--basis", "1,0,0;0,1,0"], tmp_path
        )
        assert code == 0
        assert rep["vertex_count"] == 4

    def test_cone_rays(self, cube_off, tmp_path):
        code, rep = run(
            ["cone", "--body", cube_off, "--apex", "0,0,3"], tmp_path
        )
        assert code == 0
        assert rep["extreme_ray_count"] == 4
        assert len(rep["halfspaces"]) == 4

    def test_cone_apex_inside_is_error(self, cube_off, tmp_path, capsys):
        code, _ = run(["cone", "--body", cube_off, "--apex", "0,0,0"], tmp_path)
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_walk_cube(self, cube_off, tmp_path):
        code, rep = run(
            ["walk", "--body", cube_off, "--xi", "0,0,1"], tmp_path,
            svg="walk.svg",
        )
        assert code == 0
        assert rep["vertex_count"] == 4
        assert rep["steps"] <= 8
        svg = (tmp_path / "walk.svg").read_text()
        assert "v0" in svg and "v3" in svg


class TestCriteriaCommands:
    def test_klee_k1_ball_witness(self, ball_json, tmp_path):
        code, rep = run(
            ["klee-k1", "--body", ball_json, "--flats", "5", "--seed", "7"],
            tmp_path,
        )
        assert code == 2
        assert rep["criterion"] == "K1"
        assert rep["verdict"] == "non-polytope"
        assert rep["witness"]["reverified"] is True
        assert rep["seed"] == 7

    def test_klee_k1_cube_consistent(self, cube_off, tmp_path):
        code, rep = run(
            ["klee-k1", "--body", cube_off, "--flats", "5", "--seed", "1"],
            tmp_path,
        )
        assert code == 0
        assert rep["verdict"] == "polytope-consistent"
        assert rep["exact"] is True

    def test_klee_k2(self, cube_off, tmp_path):
        code, rep = run(
            ["klee-k2", "--body", cube_off, "--subspaces", "5", "--seed", "3"],
            tmp_path,
        )
        assert code == 0
        assert rep["criterion"] == "K2"

    def test_t11(self, cube_off, tmp_path):
        code, rep = run(
            ["t11", "--body", cube_off, "--flats", "5", "--delta", "0.25",
             "--seed", "1"],
            tmp_path,
        )
        assert code == 0
        assert rep["criterion"] == "T1.1"

    def test_t12(self, cube_off, tmp_path):
        code, rep = run(
            ["t12", "--body", cube_off, "--apexes", "3", "--seed", "5"],
            tmp_path,
        )
        assert code == 0
        assert rep["criterion"] == "T1.2"
        assert rep["sphere"]["radius"] > 0

    def test_epsilon(self, cube_off, tmp_path):
        code, rep = run(
            ["epsilon", "--body", cube_off, "--p", "1,1,1", "--q=-1,-1,-1"],
            tmp_path,
        )
        assert code == 0
        assert rep["certificate"]["case"] == "interior-crossing"
        assert rep["no_extreme_in_cone"] is True

    def test_mirkil_ball_witness(self, ball_json, tmp_path):
        code, rep = run(
            ["mirkil", "--body", ball_json, "--apex", "0,0,3",
             "--samples", "10", "--seed", "2"],
            tmp_path,
            svg="witness.svg",
        )
        assert code == 2
        assert rep["verdict"] == "non-polyhedral"
        assert rep["witness"] is not None
        assert (tmp_path / "witness.svg").exists()

    def test_mirkil_cube_consistent(self, cube_off, tmp_path):
        code, rep = run(
            ["mirkil", "--body", cube_off, "--apex", "0,0,3", "--samples", "5"],
            tmp_path,
        )
        assert code == 0
        assert rep["verdict"] == "polyhedral-consistent"


class TestPlumbing:
    def test_env_seed_default(self, cube_off, tmp_path, monkeypatch):
        monkeypatch.setenv("POLYSECT_SEED", "41")
        _, rep = run(
            ["klee-k1", "--body", cube_off, "--flats", "2"], tmp_path
        )
        assert rep["seed"] == 41

    def test_inline_body_json(self, tmp_path):
        code, rep = run(
            ["klee-k1", "--body-json",
             '{"kind": "ball", "center": [0, 0, 0], "radius": 1}',
             "--flats", "2"],
            tmp_path,
        )
        assert code == 2

    def test_missing_body_is_error(self, tmp_path, capsys):
        code, _ = run(["walk", "--xi", "0,0,1"], tmp_path)
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_bad_flat_spec_is_error(self, cube_off, tmp_path, capsys):
        code, _ = run(
            ["section", "--body", cube_off, "--flat", "nope"], tmp_path
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_oracle_body_rejected_for_exact_commands(
        self, ball_json, tmp_path, capsys
    ):
        code, _ = run(["walk", "--body", ball_json, "--xi", "0,0,1"], tmp_path)
        assert code == 1
        assert "polytope body" in capsys.readouterr().err

    def test_svg_without_two_dim_output_is_error(
        self, cube_off, tmp_path, capsys
    ):
        code, _ = run(
            ["cone", "--body", cube_off, "--apex", "0,0,3"], tmp_path,
            svg="nope.svg",
        )
        assert code == 1
        assert "no 2-dimensional output" in capsys.readouterr().err

    def test_no_timestamps_anywhere(self, cube_off, tmp_path):
        _, rep = run(
            ["section", "--body", cube_off, "--flat", "n=1,1,1;c=0"], tmp_path
        )
        text = json.dumps(rep).lower()
        assert "time" not in text
        assert "date" not in text

    def test_stdout_report(self, cube_off, capsys):
        code = main(["cone", "--body", cube_off, "--apex", "0,0,3"])
        assert code == 0
        out = capsys.readouterr().out
        assert json.loads(out)["extreme_ray_count"] == 4


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["section", "--flat", "n=1,1,1;c=0"],
            ["project", "--xi", "0,0,1"],
            ["cone", "--apex", "0,0,3"],
            ["klee-k1", "--flats", "4", "--seed", "7"],
            ["klee-k2", "--subspaces", "4", "--seed", "3"],
            ["t11", "--flats", "4", "--delta", "0.25", "--seed", "1"],
            ["t12", "--apexes", "2", "--seed", "5"],
            ["epsilon", "--p", "1,1,1", "--q=-1,-1,-1"],
            ["walk", "--xi", "0,0,1"],
            ["mirkil", "--apex", "0,0,3", "--samples", "3", "--seed", "2"],
        ],
    )
    def test_repeat_runs_are_byte_identical(self, argv, cube_off, tmp_path):
        outputs = []
        for i in range(2):
            report = tmp_path / f"r{i}.json"
            svg = tmp_path / f"r{i}.svg"
            full = argv[:1] + ["--body", cube_off] + argv[1:] + [
                "--report", str(report)
            ]
            if argv[0] in {"section", "project", "walk"}:
                full += ["--svg", str(svg)]
            code = main(full)
            assert code in (0, 2)
            blob = report.read_bytes()
            if svg.exists():
                blob += svg.read_bytes()
            outputs.append(blob)
        assert outputs[0] == outputs[1]

    def test_ball_witness_determinism(self, ball_json, tmp_path):
        outputs = []
        for i in range(2):
            report = tmp_path / f"b{i}.json"
            svg = tmp_path / f"b{i}.svg"
            code = main(
                ["mirkil", "--body", ball_json, "--apex", "0,0,3",
                 "--samples", "8", "--seed", "2",
                 "--report", str(report), "--svg", str(svg)]
            )
            assert code == 2
            outputs.append(report.read_bytes() + svg.read_bytes())
        assert outputs[0] == outputs[1]
