import json

import pytest

from qkbruhat.cli import main


def run(capsys, *args):
    try:
        code = main(list(args))
    except SystemExit as ex:  # argparse errors
        code = ex.code
    out, err = capsys.readouterr()
    return code, out, err


def test_act_text(capsys):
    code, out, _ = run(capsys, "act", "v(1,2) v(5,4)",
                       "--perm", "7,1,6,3,5,4,2,8", "--k", "5")
    assert code == 0
    assert out == "q[0,0,0,0,1,0,0]*7,2,6,3,4|5,1,8\n"


def test_act_json(capsys):
    code, out, _ = run(capsys, "act", "v(1,2) v(5,4)",
                       "--perm", "7,1,6,3,5,4,2,8", "--k", "5",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["result"]["w"] == [7, 2, 6, 3, 4, 5, 1, 8]
    assert obj["result"]["q"] == [0, 0, 0, 0, 1, 0, 0]


def test_act_apply_order(capsys):
    # same word given in application order
    code, out, _ = run(capsys, "act", "v(5,4) v(1,2)",
                       "--word-order", "apply",
                       "--perm", "7,1,6,3,5,4,2,8", "--k", "5")
    assert code == 0
    assert out.startswith("q[0,0,0,0,1,0,0]")


def test_act_zero(capsys):
    code, out, _ = run(capsys, "act", "v(1,3)", "--perm", "1,2,3", "--k", "1")
    assert code == 0
    assert out.strip() == "0"


def test_parse_error_exit_2(capsys):
    code, _, _ = run(capsys, "act", "garbage", "--perm", "1,2", "--k", "1")
    assert code == 2
    code, _, _ = run(capsys, "act", "v(1,2)", "--perm", "1,1", "--k", "1")
    assert code == 2


def test_equiv_exit_codes(capsys):
    code, out, _ = run(capsys, "equiv", "v(1,2) v(3,4)", "v(3,4) v(1,2)")
    assert (code, out) == (0, "nonzero-equal\n")
    code, out, _ = run(capsys, "equiv", "v(1,2)", "v(2,1)")
    assert code == 1
    assert out.splitlines()[0] == "not-equivalent"
    assert "witness:" in out
    code, out, _ = run(capsys, "equiv", "--zero", "v(1,3) v(1,2)")
    assert (code, out) == (0, "zero\n")


def test_poset_text(capsys):
    code, out, _ = run(capsys, "poset", "3", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "poset n=3 k=2 max_qdeg=0: 6 nodes, 5 edges"
    assert "  1,2|3 -> 1,3|2" in lines


def test_poset_dot_and_json(capsys):
    code, out, _ = run(capsys, "poset", "3", "2", "--max-qdeg", "1",
                       "--format", "dot")
    assert code == 0
    assert out.startswith("digraph") and "style=dashed" in out
    code, out, _ = run(capsys, "poset", "3", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["nodes"]) == 6 and len(obj["edges"]) == 5


def test_poset_cap_exit_3(capsys):
    code, _, err = run(capsys, "poset", "9", "2")
    assert code == 3
    assert "cap" in err


def test_chains(capsys):
    code, out, _ = run(capsys, "chains", "1,3,4,2,5", "2,5,3,1,4",
                       "--k", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("3 maximal chains")
    assert "  s(3,4) s(1,2) s(4,5)" in lines


def test_diagram(capsys):
    code, out, _ = run(capsys, "diagram", "v(1,4) v(6,2) v(1,6)")
    assert code == 0
    assert "v(6,2)" in out and "." in out
    code, out, _ = run(capsys, "diagram", "v(1,4) v(6,2) v(1,6)",
                       "--format", "svg")
    assert code == 0
    assert out.startswith("<svg")


def test_verify_fast_family(capsys):
    code, out, _ = run(capsys, "verify", "deg2rel")
    assert code == 0
    assert "PASS" in out


def test_mine_then_verify_and_scan(capsys, tmp_path):
    cache = str(tmp_path / "rel.json")
    # verify and scan demand a mined cache when one is named
    code, _, err = run(capsys, "verify", "d3nz", "--cache", cache)
    assert code == 4
    assert "mine 3 6" in err
    code, out, _ = run(capsys, "mine", "2", "4", "--cache", cache)
    assert code == 0
    assert "wrote 7 records" in out
    assert "d2m4-p0: v(3,4) v(1,2) = v(1,2) v(3,4) (orbit size 2)" in out
    # a degree-2 cache does not cover a degree-3 family
    code, _, err = run(capsys, "verify", "d3nz", "--cache", cache)
    assert code == 4
    code, _, _ = run(capsys, "mine", "3", "6", "--cache", cache)
    assert code == 0
    code, out, _ = run(capsys, "verify", "d3nz", "--cache", cache)
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "scan", "--max-degree", "3",
                       "--max-support", "6", "--cache", cache,
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["outliers"] == [] and obj["records"] == 11


def test_scan_cap_exit_3(capsys):
    code, _, err = run(capsys, "scan", "--max-degree", "9",
                       "--max-support", "6")
    assert code == 3
    assert "caps exceed" in err


def test_scan_figures(capsys, tmp_path):
    figdir = tmp_path / "figs"
    code, _, _ = run(capsys, "scan", "--max-degree", "2",
                     "--max-support", "4", "--figures", str(figdir))
    assert code == 0
    assert (figdir / "scan-minimal.png").exists()
    assert (figdir / "scan-words.png").exists()
    assert (figdir / "scan-stats.tsv").read_text().count("\t") > 0


def test_verify_figures(capsys, tmp_path):
    figdir = tmp_path / "figs"
    code, _, _ = run(capsys, "verify", "deg2rel", "--figures", str(figdir))
    assert code == 0
    assert (figdir / "verify-families.png").exists()
    tsv = (figdir / "verify-families.tsv").read_text()
    assert "deg2rel" in tsv
