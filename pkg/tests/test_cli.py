"""CLI verbs, formats, and exit codes (0 ok, 1 limits/failed checks,
2 usage, 65 malformed graph input)."""

import json

import pytest

from graphlik.cli import load_graph_input, main


def test_compute_plain(capsys):
    assert main(["compute", "A_"]) == 0
    out = capsys.readouterr().out
    assert "likelihood: 1/2" in out
    assert "aut: 2" in out


def test_compute_json(capsys):
    assert main(["compute", "C~", "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["likelihood"] == {"num": "1", "den": "24"}
    assert body["paths"] == 1


def test_compute_inline_edge_json(capsys):
    assert main(["compute", '{"order": 3, "edges": [[0, 2], [1, 2]]}']) == 0
    assert "likelihood: 1/3" in capsys.readouterr().out


def test_compute_from_file(tmp_path, capsys):
    f = tmp_path / "g.json"
    f.write_text('{"order": 2, "edges": [[0, 1]]}')
    assert main(["compute", str(f)]) == 0
    assert "likelihood: 1/2" in capsys.readouterr().out
    g6 = tmp_path / "g.g6"
    g6.write_text("BW\n")
    assert main(["compute", str(g6)]) == 0
    assert "likelihood: 1/3" in capsys.readouterr().out


def test_malformed_graph6_exits_65(capsys):
    assert main(["compute", "~~~"]) == 65
    assert "error:" in capsys.readouterr().err


def test_malformed_edge_json_exits_65(capsys):
    assert main(["compute", '{"order": 2, "edges": [[0, 5]]}']) == 65


def test_limit_exits_1(capsys):
    assert main(["census", "9"]) == 1
    assert "census limit = 7" in capsys.readouterr().err


def test_usage_error_exits_2(capsys):
    assert main(["family", "cycle", "-t", "2"]) == 2
    assert "cycle requires order >= 3" in capsys.readouterr().err


def test_unknown_verb_is_argparse_error():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_paths_with_tree(capsys):
    assert main(["paths", "BW", "--tree"]) == 0
    out = capsys.readouterr().out
    assert "path constructions: 3  total weight: 1/3" in out
    assert "ordering (0, 1, 2)" in out
    assert "(root)  leaves=3" in out


def test_bounds_plain(capsys):
    assert main(["bounds", "Bw"]) == 0
    assert "1/12 <= likelihood <= 1/6" in capsys.readouterr().out


def test_family_star(capsys):
    assert main(["family", "star", "-t", "5"]) == 0
    out = capsys.readouterr().out
    assert "closed form: 17/1440  [agree]" in out


def test_family_matching_size(capsys):
    assert main(["family", "matching", "-t", "4", "-s", "2"]) == 0
    assert "closed form: 1/36  [agree]" in capsys.readouterr().out


def test_family_path_has_no_closed_form(capsys):
    assert main(["family", "path", "-t", "4"]) == 0
    out = capsys.readouterr().out
    assert "dp: 1/9" in out
    assert "closed form: none" in out


def test_simulate_compare(capsys):
    assert main(["simulate", "A_", "--samples", "2000", "--seed", "7", "--compare"]) == 0
    out = capsys.readouterr().out
    assert "exact: 1/2" in out
    assert "hits:" in out


def test_census_csv(capsys):
    assert main(["census", "4", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "graph6,num,den,aut"
    assert lines[1] == "C?,1,24,24"
    assert len(lines) == 12  # header + 11 classes


def test_census_plain_totals(capsys):
    assert main(["census", "3"]) == 0
    out = capsys.readouterr().out
    assert "classes: 4  total: 1/1" in out


def test_verify_selected_suites(capsys):
    assert main(["verify", "golden", "bounds", "--max-order", "4"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 2
    assert "FAIL" not in out


def test_verify_unknown_suite_exits_2(capsys):
    assert main(["verify", "nonsense"]) == 2
    assert "unknown suites" in capsys.readouterr().err


def test_verify_json(capsys):
    assert main(["verify", "golden", "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["passed"] is True


def test_load_graph_input_prefers_files(tmp_path):
    f = tmp_path / "graph.txt"
    f.write_text("C~")
    gi = load_graph_input(str(f))
    assert gi.graph6 == "C~"
    gi = load_graph_input("BW")
    assert gi.graph6 == "BW"
    gi = load_graph_input('{"order": 1, "edges": []}')
    assert gi.edges is not None and gi.edges.order == 1
