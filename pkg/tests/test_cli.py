import json
import xml.etree.ElementTree as ET

import pytest

from agency.cli import main


def test_replay_prints_report_table(capsys):
    assert main(["replay", "--map", "default", "--actions", "UURR"]) == 0
    out = capsys.readouterr().out
    assert "M_dev" in out and "M_agt" in out
    assert "v1" in out and "v3" in out


def test_replay_rejects_bad_action_char(capsys):
    assert main(["replay", "--actions", "UUZ"]) == 2
    err = capsys.readouterr().err
    assert "bad action character" in err


def test_replay_needs_exactly_one_source(capsys):
    assert main(["replay"]) == 2
    assert main(["replay", "--actions", "U", "--traj", "x.yaml"]) == 2


def test_replay_from_trajectory_file(tmp_path, capsys):
    doc = tmp_path / "t.yaml"
    doc.write_text("map: |\n  #####\n  #A.G#\n  #####\nactions: RL\n", encoding="utf-8")
    assert main(["replay", "--traj", str(doc)]) == 0


def test_unknown_scenario_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scenario", "moonwalk"])
    assert exc.value.code == 2


def test_scenario_circle_runs_25_steps(capsys):
    assert main(["scenario", "circle"]) == 0
    out = capsys.readouterr().out
    assert "T=25" in out


def test_scenario_random_respects_steps_and_seed(capsys):
    assert main(["scenario", "random", "--seed", "1", "--steps", "100"]) == 0
    assert "T=100" in capsys.readouterr().out


def test_scenario_epsblue_route_shape(capsys):
    assert main(["scenario", "epsblue"]) == 0
    assert "T=66" in capsys.readouterr().out


def test_same_seed_gives_byte_identical_json(tmp_path, capsys):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["scenario", "random", "--seed", "7", "--json", str(out1)])
    main(["scenario", "random", "--seed", "7", "--json", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert doc["steps"] == 100


def test_output_files_are_written(tmp_path, capsys):
    paths = {
        "--json": tmp_path / "r.json",
        "--hits-csv": tmp_path / "hits.csv",
        "--goals-csv": tmp_path / "goals.csv",
        "--svg": tmp_path / "traj.svg",
        "--posteriors-svg": tmp_path / "post.svg",
        "--goals-svg": tmp_path / "goals.svg",
    }
    args = ["scenario", "magenta"]
    for flag, path in paths.items():
        args += [flag, str(path)]
    assert main(args) == 0
    for path in paths.values():
        assert path.exists() and path.stat().st_size > 0
    for svg in ("traj.svg", "post.svg", "goals.svg"):
        root = ET.fromstring((tmp_path / svg).read_text())
        assert root.tag.endswith("svg")
    hits = (tmp_path / "hits.csv").read_text()
    assert hits.startswith("context,up,down,left,right")


def test_switching_flag_changes_agent_nll(tmp_path):
    a, b = tmp_path / "plain.json", tmp_path / "switch.json"
    main(["scenario", "switchB", "--json", str(a)])
    main(["scenario", "random", "--json", str(b)])
    assert json.loads(a.read_text())["config"]["switching"] is True
    assert json.loads(b.read_text())["config"]["switching"] is False


def test_env_var_overrides_default_map(tmp_path, monkeypatch, capsys):
    custom = tmp_path / "tiny.txt"
    custom.write_text("#####\n#A.B#\n#####\n", encoding="utf-8")
    monkeypatch.setenv("AGENCY_DEFAULT_MAP", str(custom))
    assert main(["replay", "--actions", "RR"]) == 0
    out = capsys.readouterr().out
    assert "blue" in out and "magenta" not in out


def test_missing_map_file_reports_error(capsys):
    assert main(["replay", "--map", "/nonexistent/map.txt", "--actions", "U"]) == 2
    assert "agency:" in capsys.readouterr().err


def test_trajectory_svg_contains_path_overlay(tmp_path):
    svg = tmp_path / "t.svg"
    main(["scenario", "circle", "--svg", str(svg)])
    text = svg.read_text()
    assert "polyline" in text and "polygon" in text
