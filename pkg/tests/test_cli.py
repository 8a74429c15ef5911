import json

from conftest import RUNNING_EXAMPLE_EDGES

from apx.cli import main


def write_graph(tmp_path, name, edges, as_json=False):
    path = tmp_path / name
    if as_json:
        path.write_text(json.dumps({"edges": [list(e) for e in edges]}))
    else:
        path.write_text("".join(f"{u} {v}\n" for u, v in edges))
    return str(path)


C4 = [(0, 1), (1, 2), (2, 3), (0, 3)]
C5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]


def test_facets_c3(tmp_path, capsys):
    path = write_graph(tmp_path, "c3.txt", [(0, 1), (1, 2), (0, 2)])
    assert main(["facets", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["facet_count"] == 6


def test_facets_single_edge(tmp_path, capsys):
    path = write_graph(tmp_path, "edge.txt", [(0, 1)])
    assert main(["facets", path]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["facet_count"] == 2
    assert payload["facets"][0]["normal"] == ["-1"]


def test_facets_path3(tmp_path, capsys):
    path = write_graph(tmp_path, "p3.txt", [(0, 1), (1, 2)])
    assert main(["facets", path]) == 0
    assert json.loads(capsys.readouterr().out)["facet_count"] == 4


def test_subdivide_c4(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.json", C4, as_json=True)
    assert main(["subdivide", path, "--edge", "0,3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cell_count"] == 6
    assert payload["total_nvol"] == "12"
    for cell in payload["cells"]:
        assert cell["corank"] == 0
        assert cell["nvol"] == "2"
        assert cell["h"] == "0"
        assert [0, 3] in cell["points"] and [3, 0] in cell["points"]
        assert "normal" in cell["facet_image"]


def test_subdivide_c5(tmp_path, capsys):
    path = write_graph(tmp_path, "c5.txt", C5)
    assert main(["subdivide", path, "--edge", "0,4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cell_count"] == 6
    assert payload["total_nvol"] == "30"


def test_subdivide_dot_export(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.txt", C4)
    dot_dir = tmp_path / "dots"
    assert main(["subdivide", path, "--edge", "0,3", "--dot", str(dot_dir)]) == 0
    capsys.readouterr()
    files = sorted(p.name for p in dot_dir.iterdir())
    assert "graph.dot" in files
    assert sum(name.startswith("cell_") for name in files) == 6
    text = (dot_dir / "cell_0.dot").read_text()
    assert "digraph" in text and "->" in text


def test_volume_methods_agree(tmp_path, capsys):
    path = write_graph(tmp_path, "c5.txt", C5)
    assert main(["volume", path]) == 0
    direct = json.loads(capsys.readouterr().out)
    assert main(["volume", path, "--method", "subdivision", "--edge", "0,4"]) == 0
    via_cells = json.loads(capsys.readouterr().out)
    assert direct["normalized_volume"] == via_cells["normalized_volume"] == "30"


def test_verify_c4(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.txt", C4)
    assert main(["verify", path, "--edge", "0,3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert payload["checks"]["facet_correspondence"]["passed"] is True


def test_verify_fast_level_skips_exponential_checks(tmp_path, capsys):
    path = write_graph(tmp_path, "c5.txt", C5)
    assert main(["verify", path, "--edge", "0,4", "--level", "fast"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "matroid_morphism" not in payload["checks"]
    assert "max_corank_equals_balanced_circuit_rank" not in payload["checks"]


def test_verify_parallel_output_identical(tmp_path, capsys, monkeypatch):
    path = write_graph(tmp_path, "running.txt", RUNNING_EXAMPLE_EDGES)
    assert main(["verify", path, "--edge", "0,3", "--level", "fast"]) == 0
    serial = capsys.readouterr().out
    monkeypatch.setenv("APX_THREADS", "4")
    assert main(["--parallel", "verify", path, "--edge", "0,3", "--level", "fast"]) == 0
    assert capsys.readouterr().out == serial


def test_json_output_is_deterministic(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.txt", C4)
    assert main(["subdivide", path, "--edge", "0,3"]) == 0
    first = capsys.readouterr().out
    assert main(["subdivide", path, "--edge", "0,3"]) == 0
    assert capsys.readouterr().out == first


def test_json_file_output(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.txt", C4)
    out = tmp_path / "facets.json"
    assert main(["facets", path, "--json", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["facet_count"] == 6


def test_missing_file_is_input_error(capsys):
    assert main(["facets", "/nonexistent/graph.txt"]) == 2


def test_failed_verification_exits_one(tmp_path, capsys, monkeypatch):
    # Every theorem holds on real inputs, so force a failing report to pin
    # down the exit-code mapping.
    import apx.cli as cli

    class FailingReport:
        def passed(self):
            return False

        def to_json_dict(self):
            return {"passed": False}

    monkeypatch.setattr(cli, "run_verification", lambda *a, **k: FailingReport())
    path = write_graph(tmp_path, "c4.txt", C4)
    assert main(["verify", path, "--edge", "0,3"]) == 1


def test_bad_edge_is_input_error(tmp_path, capsys):
    path = write_graph(tmp_path, "c4.txt", C4)
    assert main(["subdivide", path, "--edge", "0,2"]) == 2
    assert main(["subdivide", path, "--edge", "0"]) == 2
    assert main(["subdivide", path, "--edge", "0,9"]) == 2


def test_disconnected_graph_is_input_error(tmp_path, capsys):
    path = write_graph(tmp_path, "bad.txt", [(0, 1), (2, 3)])
    assert main(["facets", path]) == 2


def test_malformed_file_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("0 1 2\n")
    assert main(["facets", str(path)]) == 2
