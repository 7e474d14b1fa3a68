import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from cophenet import datasets
from cophenet.cli import main
from cophenet.filtration import loads_filtration

import oracles


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_build_demo_round_trips(capsys):
    rc, out, err = run(capsys, "build", "--demo", "triangle")
    assert rc == 0
    assert loads_filtration(out) == datasets.triangle_complex()
    assert "dim 0: 12" in err


def test_build_rips_from_csv(tmp_path, capsys):
    pts = tmp_path / "pts.csv"
    pts.write_text("0,0\n1,0\n0,1\n")
    rc, out, _ = run(capsys, "build", str(pts), "--rips")
    assert rc == 0
    K = loads_filtration(out)
    assert K.counts() == {0: 3, 1: 3, 2: 1}


def test_build_cech_writes_output_file(tmp_path, capsys):
    pts = tmp_path / "pts.csv"
    pts.write_text("0,0\n2,0\n")
    dest = tmp_path / "out.filtration"
    rc, out, _ = run(capsys, "build", str(pts), "--cech", "-o", str(dest))
    assert rc == 0 and out == ""
    assert dict(loads_filtration(dest.read_text()))[(0, 1)] == 1.0


def test_build_clique_and_nerve(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("0 1\n1 2\n0 2\n3\n")
    rc, out, _ = run(capsys, "build", str(g), "--clique")
    assert rc == 0 and loads_filtration(out).counts() == {0: 4, 1: 3, 2: 1}
    c = tmp_path / "c.txt"
    c.write_text("1 2\n2 3\n3 1\n")
    rc, out, _ = run(capsys, "build", str(c), "--nerve")
    assert rc == 0 and loads_filtration(out).counts() == {0: 3, 1: 3}


def test_persist_csv_json_svg(capsys):
    rc, out, _ = run(capsys, "persist", "--demo", "triangle", "--max-dim", "1")
    assert rc == 0
    assert sorted(l for l in out.splitlines() if l.startswith("1,")) == \
        ["1,1.0,4.0", "1,1.0,5.0", "1,1.0,6.0", "1,2.0,3.0"]
    rc, out, _ = run(capsys, "persist", "--demo", "triangle", "--format", "json")
    assert rc == 0 and '"representative"' in out
    rc, out, _ = run(capsys, "persist", "--demo", "triangle", "--format", "svg")
    assert rc == 0 and ET.fromstring(out).tag.endswith("svg")


def test_forest_demos(capsys):
    rc, out, _ = run(capsys, "forest", "--demo", "triangle")
    assert out == "((({ABC},{JKL}){ABC|JKL}:1,{GIH}){ABC|GIH|JKL}:1,{DEF}){ABC|DEF|GIH|JKL}:1;\n"
    rc, out, _ = run(capsys, "forest", "--demo", "s-epsilon", "--format", "dot")
    assert rc == 0
    labels, edges = oracles.parse_dot(out)
    assert len(labels) == 10


def test_forest_explicit_seed(capsys):
    rc, out, _ = run(capsys, "forest", "--demo", "s-epsilon", "--seed", "x1,x2")
    assert rc == 0 and out == "({x1},{x2}){x1|x2}:2;\n"
    rc, _, err = run(capsys, "forest", "--demo", "s-epsilon", "--seed", "x1,x4,x9")
    assert rc == 1 and "error:" in err


def test_forest_empty_is_reported(tmp_path, capsys):
    f = tmp_path / "circle.filtration"
    f.write_text("0;0\n1;0\n2;0\n0 1;1\n1 2;1\n0 2;1\n")
    rc, out, err = run(capsys, "forest", str(f))
    assert rc == 0 and out == "[empty forest]\n" and "forest is empty" in err


def test_distmat(capsys):
    rc, out, err = run(capsys, "distmat", "--demo", "triangle", "--at", "3")
    assert rc == 0
    assert out.splitlines()[0] == "id,ABC,DEF,GIH,JKL"
    assert out.splitlines()[1] == "ABC,0,3,3,2"
    rc, out, _ = run(capsys, "distmat", "--demo", "triangle", "--at", "3", "--merge", "rank")
    assert rc == 0 and out.splitlines()[2] == "DEF,1,0,1,1"


def test_check(capsys):
    rc, out, _ = run(capsys, "check", "--demo", "triangle")
    assert rc == 0 and "FAIL" not in out
    rc, out, _ = run(capsys, "check", "--demo", "triangle", "--merge", "rank")
    assert rc == 1 and "FAIL triple" in out
    rc, out, _ = run(capsys, "check", "--demo", "s-epsilon")
    assert rc == 0 and out.count("PASS") == 5


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\ndemo = triangle\nformat = json\nat = 3\n")
    rc, out, _ = run(capsys, "persist", "--config", str(cfg))
    assert rc == 0 and out.lstrip().startswith("{")
    rc, out, _ = run(capsys, "persist", "--config", str(cfg), "--format", "csv")
    assert rc == 0 and out.startswith("dim,birth,death")


@pytest.mark.parametrize("argv,msg", [
    (["build", "/nonexistent.filtration"], "error:"),
    (["build"], "input file is required"),
    (["build", "pts.csv"], "--rips or --cech"),
    (["persist", "--demo", "triangle", "--format", "png"], "persist formats"),
    (["build", "--demo", "s-epsilon"], "matroid"),
    (["persist", "--demo", "triangle", "--field", "gf(4)"], "not a prime"),
])
def test_errors_exit_one(capsys, argv, msg):
    rc, _, err = run(capsys, *argv)
    assert rc == 1 and msg in err


def test_malformed_filtration_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.filtration"
    f.write_text("0 1;1.0\n0;0\n1;0\n")
    rc, _, err = run(capsys, "persist", str(f))
    assert rc == 1 and "[0 1]" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cophenet", "forest", "--demo", "s-epsilon"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.endswith("{x1|x2|x3|x4}:1;\n")
