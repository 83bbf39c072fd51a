from __future__ import annotations

import json
import subprocess
import sys

import pytest
from conftest import FIXTURES

from zonograph import parse_off, verify_zonohedron
from zonograph.cli import EXIT_INPUT, EXIT_OK, EXIT_REJECT, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_recognize_cube(capsys):
    code, out, _ = run(capsys, "recognize", FIXTURES / "cube.json")
    assert code == EXIT_OK
    assert json.loads(out)["zones"] == 3


def test_recognize_pseudo_double_wheel(capsys):
    code, out, _ = run(capsys, "recognize", FIXTURES / "pseudo_double_wheel.json")
    assert code == EXIT_REJECT
    assert json.loads(out)["reason"] == "zone_self_intersection"


def test_generate_then_recognize(capsys, tmp_path):
    g = tmp_path / "g.json"
    code, out, _ = run(capsys, "generate", "-m", 5, "--seed", 7, "-o", g)
    assert code == EXIT_OK and json.loads(out)["n"] == 22
    code, out, _ = run(capsys, "recognize", g)
    assert code == EXIT_OK and json.loads(out)["zones"] == 5


def test_generate_requires_seed(capsys, tmp_path):
    code, _, err = run(capsys, "generate", "-m", 5, "-o", tmp_path / "g.json")
    assert code == EXIT_INPUT and "seed" in err


def test_generate_off(capsys, tmp_path):
    off = tmp_path / "z.off"
    code, _, _ = run(capsys, "generate", "-m", 6, "--seed", 1, "-o", tmp_path / "g.json",
                     "--off", off)
    assert code == EXIT_OK
    assert verify_zonohedron(parse_off(off.read_text())).ok


def test_realize_and_verify(capsys, tmp_path):
    g, off, tr = tmp_path / "g.json", tmp_path / "r.off", tmp_path / "t.json"
    run(capsys, "generate", "-m", 6, "--seed", 3, "-o", g)
    code, out, _ = run(capsys, "realize", g, "-o", off, "--trace", tr)
    assert code == EXIT_OK and json.loads(out)["vertices"] == 32
    doc = json.loads(tr.read_text())
    assert doc["added_zone_lengths"] == [6, 8, 10]
    assert len(doc["directions"]) == 3
    code, out, _ = run(capsys, "verify", off)
    assert code == EXIT_OK and "all checks passed" in out


def test_realize_zone_scales(capsys, tmp_path):
    g, off = tmp_path / "g.json", tmp_path / "r.off"
    run(capsys, "generate", "-m", 5, "--seed", 2, "-o", g)
    code, _, _ = run(capsys, "realize", g, "-o", off, "--zone-scales", "1/2", "3")
    assert code == EXIT_OK
    code, _, err = run(capsys, "realize", g, "-o", off, "--zone-scales", "1")
    assert code == EXIT_INPUT and "2 values" in err


def test_realize_rejected(capsys, tmp_path):
    code, out, _ = run(capsys, "realize", FIXTURES / "k4.json", "-o", tmp_path / "x.off")
    assert code == EXIT_REJECT and json.loads(out)["reason"] == "non_quad_face"


def test_realize_precision_zero(capsys, tmp_path):
    off = tmp_path / "c.off"
    code, _, _ = run(capsys, "realize", FIXTURES / "cube.json", "-o", off, "--precision", 0)
    assert code == EXIT_OK and "." not in off.read_text()


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", FIXTURES / "cube.json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["m"] == 3 and doc["generic_m"] == 3


def test_verify_broken_mesh(capsys, tmp_path):
    off = tmp_path / "bad.off"
    off.write_text(
        "OFF\n8 6 12\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n1 0 1\n0 1 1\n1 1 0.5\n"
        "4 0 2 3 1\n4 4 5 7 6\n4 0 1 5 4\n4 2 6 7 3\n4 0 4 6 2\n4 1 3 7 5\n"
    )
    code, out, _ = run(capsys, "verify", off)
    assert code == EXIT_REJECT and "violation" in out


@pytest.mark.parametrize(
    "content,needle",
    [
        ('{"n":2,"adj":[[1],[0,0]]}', "duplicate"),
        ('{"n":3,"adj":[[1],[0],[0]]}', "asymmetric"),
        ('{"n": 2, "adj": [[1], [0]', "bad JSON"),
    ],
)
def test_malformed_input(capsys, tmp_path, content, needle):
    f = tmp_path / "g.json"
    f.write_text(content)
    code, _, err = run(capsys, "recognize", f)
    assert code == EXIT_INPUT and needle in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "stats", tmp_path / "nope.json")
    assert code == EXIT_INPUT and "cannot read" in err


def test_bad_flag_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["realize", "x.json"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zonograph", "recognize", str(FIXTURES / "glued_quads.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == EXIT_REJECT
    doc = json.loads(proc.stdout)
    assert doc["reason"] == "not_3_connected" and sorted(doc["witness"]["vertices"]) == [0, 1]
