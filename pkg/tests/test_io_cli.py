import json

import pytest

from acyclic3 import build_graph
from acyclic3.cli import main
from acyclic3.generators import gen_corpus_instance
from acyclic3.io import ParseError, format_coloring, format_edge_list, parse_coloring, parse_edge_list
from conftest import complete, cycle, k33, k4, path


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def graph_file(tmp_path, g, name="g.txt"):
    return write(tmp_path, name, format_edge_list(g))


# -- formats -------------------------------------------------------------

def test_edge_list_round_trip():
    g = gen_corpus_instance(4)
    assert parse_edge_list(format_edge_list(g)) == g


def test_edge_list_comments_and_blank_lines():
    g = parse_edge_list("# triangle\n\n3 3\n0 1\n# middle\n1 2\n2 0\n")
    assert g.edges == ((0, 1), (1, 2), (2, 0))


@pytest.mark.parametrize(
    "text, line, needle",
    [
        ("3 2\n0 1\n", None, "declares 2 edges"),
        ("3 1\n0 1\n1 2\n", 3, "declares 1 edges"),
        ("3 2\n0 1\n1 a\n", 3, "non-integer"),
        ("3 2\n0 1\n1 0\n", 3, "duplicate edge"),
        ("3 1\n2 2\n", 2, "self-loop"),
        ("3 1\n0 3\n", 2, "out of range"),
        ("3\n", 1, "expected 2 integers"),
        ("", None, "missing header"),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, line, needle):
    with pytest.raises(ParseError, match=needle) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_coloring_round_trip_with_metadata():
    g = cycle(5)
    text = format_coloring(g, [1, 2, 1, 2, 3], {"mode": "theorem", "verified": True})
    colors, meta = parse_coloring(text, g)
    assert colors == [1, 2, 1, 2, 3]
    assert meta == {"mode": "theorem", "verified": "true"}


@pytest.mark.parametrize(
    "text, needle",
    [("0 2 1\n", "not an edge"), ("0 1 0\n", "color must be"), ("0 1 1\n1 0 2\n", "colored twice"), ("0 1\n", "expected 3")],
)
def test_coloring_errors(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_coloring(text, cycle(5))


def test_improper_coloring_still_loads():
    colors, _ = parse_coloring("0 1 1\n1 2 1\n", path(3))
    assert colors == [1, 1]


# -- commands ------------------------------------------------------------

def test_color_c5_then_verify(tmp_path, capsys):
    gpath = graph_file(tmp_path, cycle(5))
    out = str(tmp_path / "c.txt")
    assert main(["color", gpath, "-o", out]) == 0
    colors, meta = parse_coloring(open(out).read(), cycle(5))
    assert len(set(colors)) == 3 and meta["colors_used"] == "3"
    assert main(["verify", gpath, out]) == 0
    assert "ok" in capsys.readouterr().out


def test_color_rejects_k5(tmp_path, capsys):
    assert main(["color", graph_file(tmp_path, complete(5))]) == 2
    err = capsys.readouterr().err
    assert "not 3-sparse" in err and "edge 0 (0, 1)" in err


def test_color_k4_theorem_mode(tmp_path, capsys):
    assert main(["color", graph_file(tmp_path, k4()), "--mode", "theorem"]) == 2
    assert "no qualifying edge" in capsys.readouterr().err


def test_color_parse_error_exit(tmp_path, capsys):
    assert main(["color", write(tmp_path, "bad.txt", "3 1\n0 q\n")]) == 2
    assert ":2:" in capsys.readouterr().err


def test_color_missing_file(tmp_path, capsys):
    assert main(["color", str(tmp_path / "nope.txt")]) == 2


def test_verify_c4_cycle_witness(tmp_path, capsys):
    gpath = graph_file(tmp_path, cycle(4))
    cpath = write(tmp_path, "c.txt", "0 1 1\n1 2 2\n2 3 1\n0 3 2\n")
    assert main(["verify", gpath, cpath]) == 3
    out = capsys.readouterr().out
    assert "bichromatic cycle" in out and "(0, 1, 2, 3)" in out


def test_verify_vertex_clash(tmp_path, capsys):
    gpath = graph_file(tmp_path, complete(3))
    cpath = write(tmp_path, "c.txt", "0 1 1\n0 2 2\n1 2 1\n")
    assert main(["verify", gpath, cpath]) == 3
    assert "vertex 1 sees color 1" in capsys.readouterr().out


def test_verify_incomplete(tmp_path, capsys):
    gpath = graph_file(tmp_path, path(3))
    cpath = write(tmp_path, "c.txt", "0 1 1\n")
    assert main(["verify", gpath, cpath]) == 3
    assert main(["verify", gpath, cpath, "--partial"]) == 0


@pytest.mark.parametrize("g, aci", [(k4(), 5), (k33(), 5), (path(4), 2)])
def test_oracle_command(tmp_path, capsys, g, aci):
    assert main(["oracle", graph_file(tmp_path, g)]) == 0
    assert f"aci: {aci}\n" in capsys.readouterr().out


def test_oracle_witness_verifies(tmp_path, capsys):
    gpath = graph_file(tmp_path, k33())
    wpath = str(tmp_path / "w.txt")
    assert main(["oracle", gpath, "--witness", wpath]) == 0
    assert main(["verify", gpath, wpath]) == 0


def test_oracle_budget_exit(tmp_path, capsys):
    assert main(["oracle", graph_file(tmp_path, k33()), "--budget", "3"]) == 4
    assert "budget exceeded" in capsys.readouterr().out


def test_round_trip_over_corpus(tmp_path, capsys):
    for seed in range(1, 21):
        g = gen_corpus_instance(seed)
        gpath = graph_file(tmp_path, g, f"g{seed}.txt")
        cpath = str(tmp_path / f"c{seed}.txt")
        assert main(["color", gpath, "-o", cpath]) == 0
        assert main(["verify", gpath, cpath]) == 0


def test_structured_and_text_carry_same_information(tmp_path):
    g = gen_corpus_instance(9)
    gpath = graph_file(tmp_path, g)
    tpath, spath = str(tmp_path / "t.txt"), str(tmp_path / "s.json")
    assert main(["color", gpath, "-o", tpath]) == 0
    assert main(["color", gpath, "--format", "structured", "-o", spath]) == 0
    colors, meta = parse_coloring(open(tpath).read(), g)
    doc = json.load(open(spath))
    records = doc.pop("coloring")
    assert [r["color"] for r in records] == colors
    assert [(r["u"], r["v"]) for r in records] == [tuple(e) for e in g.edges]
    assert {k: str(v).lower() if isinstance(v, bool) else str(v) for k, v in doc.items()} == meta


def test_trace_flag(tmp_path):
    g = gen_corpus_instance(2)
    gpath = graph_file(tmp_path, g)
    trace = str(tmp_path / "trace.json")
    spath = str(tmp_path / "s.json")
    assert main(["color", gpath, "--trace", trace, "--format", "structured", "-o", spath]) == 0
    events = json.load(open(trace))
    assert events == json.load(open(spath))["trace"]
    assert events[-1]["action"] == "assign"


def test_checked_flag(tmp_path):
    assert main(["color", graph_file(tmp_path, gen_corpus_instance(6)), "--checked", "-o", str(tmp_path / "o")]) == 0


def test_bench_table(tmp_path, capsys):
    manifest = {"instances": [{"family": "corpus", "seed": 1}, {"family": "named", "params": {"name": "k4"}},
                              {"family": "biregular", "params": {"a": 4, "delta": 4}}]}
    mpath = write(tmp_path, "m.json", json.dumps(manifest))
    assert main(["bench", mpath, "--jobs", "2"]) == 0
    out = capsys.readouterr().out
    assert "corollary" in out and "instances: 3  verified: 3" in out
    assert "fallback invocations: 0" in out


def test_bench_empty_manifest(tmp_path, capsys):
    assert main(["bench", write(tmp_path, "m.json", "[]")]) == 0
    assert "instances: 0" in capsys.readouterr().out


def test_bench_structured_and_file_family(tmp_path, capsys):
    graph_file(tmp_path, k4(), "k4.txt")
    mpath = write(tmp_path, "m.json", json.dumps([{"family": "file", "params": {"path": "k4.txt"}}]))
    assert main(["bench", mpath, "--format", "structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rows"][0]["mode"] == "corollary" and doc["rows"][0]["colors_used"] == 5


def test_bench_input_error(tmp_path, capsys):
    mpath = write(tmp_path, "m.json", json.dumps([{"family": "nope"}]))
    assert main(["bench", mpath]) == 2


def test_gen_commands(tmp_path, capsys):
    assert main(["gen", "named", "cycle", "5"]) == 0
    assert parse_edge_list(capsys.readouterr().out) == cycle(5)
    assert main(["gen", "biregular", "4", "4"]) == 0
    assert parse_edge_list(capsys.readouterr().out).edge_count == 12
    assert main(["gen", "random", "--n", "20", "--delta-cap", "6", "--m", "30", "--seed", "7"]) == 0
    assert parse_edge_list(capsys.readouterr().out).edge_count == 30
    assert main(["gen", "corpus", "--seed", "3"]) == 0
    assert parse_edge_list(capsys.readouterr().out) == gen_corpus_instance(3)
    assert main(["gen", "manifest", "--count", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["instances"][2] == {"family": "corpus", "seed": 3}
    assert main(["gen", "biregular", "4", "3"]) == 2


def test_gen_output_option_after_family(tmp_path):
    target = tmp_path / "c5.txt"
    assert main(["gen", "named", "cycle", "5", "-o", str(target)]) == 0
    assert parse_edge_list(target.read_text()) == cycle(5)
    manifest = tmp_path / "m.json"
    assert main(["gen", "manifest", "--count", "2", "--output", str(manifest)]) == 0
    assert len(json.loads(manifest.read_text())["instances"]) == 2


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "acyclic3", "gen", "named", "k4"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("4 6")


def test_stdin_coloring(tmp_path, monkeypatch, capsys):
    import io

    gpath = graph_file(tmp_path, build_graph(2, [(0, 1)]))
    monkeypatch.setattr("sys.stdin", io.StringIO("0 1 1\n"))
    assert main(["verify", gpath, "-"]) == 0
