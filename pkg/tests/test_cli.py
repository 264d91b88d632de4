import csv
import io
import json

import pytest

from frobmono import a3, g24
from frobmono.cli import main
from frobmono.monodromy import MonodromyData


@pytest.fixture
def a3_file(tmp_path):
    p = tmp_path / "a3-band0.json"
    p.write_text(a3.a3_reference(0).to_json())
    return p


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.mark.parametrize("target", ["a3", "g24"])
def test_verify_builtin(capsys, target):
    rc, out, _ = run(capsys, "verify", target)
    assert rc == 0
    d = json.loads(out)
    assert d["summary"]["fail"] == 0


def test_verify_file_and_tampered(capsys, a3_file, tmp_path):
    assert run(capsys, "verify", a3_file)[0] == 0
    d = json.loads(a3_file.read_text())
    d["C"][0][0] = "(7)"
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(d))
    assert run(capsys, "verify", bad)[0] == 1


def test_verify_input_errors(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run(capsys, "verify", junk)[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_csv_output_is_sorted(capsys):
    rc, out, _ = run(capsys, "verify", "a3", "--format", "csv")
    assert rc == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["name", "status", "detail"]
    names = [row[0] for row in rows[1:]]
    assert names == sorted(names)


def test_braid_command(capsys, a3_file, tmp_path):
    out_file = tmp_path / "out.json"
    rc, out, _ = run(capsys, "braid", a3_file, "1 2 1", "--out", out_file)
    assert rc == 0
    assert "A^beta" in out
    md = MonodromyData.from_json(out_file.read_text())
    assert [md.S[0, j] for j in range(3)] == [1, 1, 1]


def test_braid_empty_and_cancelling_words(capsys, a3_file, tmp_path):
    for word in ("", "1 -1"):
        out_file = tmp_path / "same.json"
        assert run(capsys, "braid", a3_file, word, "--out", out_file)[0] == 0
        assert out_file.read_text() == a3_file.read_text()


def test_braid_errors(capsys, a3_file, tmp_path):
    assert run(capsys, "braid", a3_file, "1 x")[0] == 2
    assert run(capsys, "braid", a3_file, "3")[0] == 2
    d = json.loads(a3_file.read_text())
    d["S"] = [["(1)", "0", "0"], ["(1)", "(1)", "0"], ["0", "0", "(1)"]]
    lower = tmp_path / "lower.json"
    lower.write_text(json.dumps(d))
    assert run(capsys, "braid", lower, "1")[0] == 2


def _path_file(tmp_path, phi, samples):
    p = tmp_path / "path.json"
    p.write_text(json.dumps({"phi": phi, "samples": [[[z.real, z.imag] for z in conf] for conf in samples]}))
    return p


def test_track_command(capsys, tmp_path, a3_file):
    p = _path_file(tmp_path, 0.0, a3.quarter_turn_path())
    rc, out, _ = run(capsys, "track", p)
    assert rc == 0 and out.strip() == "1 2 1"
    out_file = tmp_path / "band2.json"
    assert run(capsys, "track", p, "--apply", a3_file, "--out", out_file)[0] == 0
    assert MonodromyData.from_json(out_file.read_text()).S == a3.a3_reference(1, 1).S


def test_track_constant_and_g24(capsys, tmp_path):
    conf = g24.band_crossing_path()[0]
    rc, out, _ = run(capsys, "track", _path_file(tmp_path, 0.5235987755982988, [conf, conf]))
    assert rc == 0 and out == "\n"
    rc, out, _ = run(capsys, "track", _path_file(tmp_path, 0.5235987755982988, g24.band_crossing_path()))
    assert rc == 0 and out.strip() == "1 5"


def test_track_refinement_failure(capsys, tmp_path):
    p = _path_file(tmp_path, 0.0, [[-1 + 0.5j, 0j, 1 - 0.5j], [1 - 0.5j, 0j, -1 + 0.5j]])
    rc, _, err = run(capsys, "track", p)
    assert rc == 1 and "refinement" in err


def test_a3_commands(capsys):
    rc, out, _ = run(capsys, "a3", "table", "--format", "csv")
    assert rc == 0 and "band4 cell2 S,pass" in out
    rc, out, _ = run(capsys, "a3", "point", "--t1=-0.125", "--t2", "0", "--t3", "1")
    assert rc == 0
    d = json.loads(out)
    assert len(d["psi"]) == 3 and len(d["canonical_coordinates"]) == 3
    assert run(capsys, "a3", "point", "--t1", "x", "--t2", "0", "--t3", "1")[0] == 2


@pytest.mark.parametrize("sub", ["verify", "gamma", "gram", "kapranov", "bands", "levelt"])
def test_g24_commands(capsys, sub):
    rc, out, _ = run(capsys, "g24", sub)
    assert rc == 0
    assert json.loads(out)["summary"]["fail"] == 0


def test_g24_gamma_csv(capsys):
    rc, out, _ = run(capsys, "g24", "gamma", "--sign", "+", "--format", "csv")
    assert rc == 0
    assert out.splitlines()[0] == "(1)"
    assert len(out.splitlines()) == 6
