import json
import os
import subprocess
import sys
from fractions import Fraction as F

import pytest

from corpus import BOWTIE, DIAMOND, FIG1_RIGHT, L_SHAPE, hand_corpus
from l1geodesic import cli, random_polygon, validate_polygon
from l1geodesic.io import (ParseError, parse_polygon_text, polygon_to_text, read_polygon,
                           write_polygon)
from l1geodesic.svg import render

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


@pytest.fixture()
def files(tmp_path):
    out = {}
    for name, raw in (("diamond", DIAMOND), ("fig1", FIG1_RIGHT), ("l", L_SHAPE)):
        p = tmp_path / f"{name}.json"
        write_polygon(validate_polygon(raw), str(p))
        out[name] = str(p)
    bow = tmp_path / "bowtie.json"
    bow.write_text(json.dumps({"vertices": [list(v) for v in BOWTIE]}))
    out["bowtie"] = str(bow)
    return out


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_diameter_command(files, capsys):
    code, out, _ = run(capsys, "diameter", files["diamond"])
    assert code == 0 and "value: 2" in out
    code, out, _ = run(capsys, "diameter", files["fig1"], "--check")
    assert code == 0 and "value: 17/7" in out and "check: ok" in out
    assert "(-5/7,4/7)" in out and "(6/7,-2/7)" in out


def test_bowtie_rejected(files, capsys):
    code, out, err = run(capsys, "diameter", files["bowtie"])
    assert code == 1 and "NotSimple" in err


def test_check_mismatch_exit_code(files, capsys, monkeypatch):
    monkeypatch.setattr(cli, "oracle_diameter", lambda P: ((0, 1), 99))
    code, out, _ = run(capsys, "diameter", files["diamond"], "--check")
    assert code == 2 and "MISMATCH" in out


def test_center_command(files, capsys):
    code, out, _ = run(capsys, "center", files["fig1"], "--check")
    assert code == 0
    assert "radius: 17/14" in out
    assert "(-1/7,-1/14)" in out and "(1/14,1/7)" in out
    code, out, _ = run(capsys, "center", files["diamond"])
    assert "radius: 1" in out and "point: (0,0)" in out
    code, out, _ = run(capsys, "center", files["l"], "--check")
    assert code == 0 and "radius: 2" in out and "segment: (1/2,1/2) (1,1)" in out


def test_ball_command(files, capsys, tmp_path):
    svg = tmp_path / "ball.svg"
    code, out, _ = run(capsys, "ball", files["diamond"], "--source", "1,0", "--radius", "1",
                       "--svg", str(svg))
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "vertices: 4"
    assert set(lines[1:5]) == {"(1,0)", "(1/2,1/2)", "(0,0)", "(1/2,-1/2)"}
    assert svg.read_text().count('id="cut-') == 0 and 'id="ball-' in svg.read_text()
    code, out, _ = run(capsys, "ball", files["l"], "--source", "1", "--radius", "9")
    assert out.split("\n")[0] == "vertices: 6"
    code, out, _ = run(capsys, "ball", files["l"], "--source", "1/2,1/2", "--radius", "0")
    assert out.split("\n")[:2] == ["vertices: 1", "(1/2,1/2)"]
    code, _, err = run(capsys, "ball", files["l"], "--source", "3/2,3/2", "--radius", "1")
    assert code == 1 and "PointOutsidePolygon" in err
    code, _, err = run(capsys, "ball", files["l"], "--source", "17", "--radius", "1")
    assert code == 1


def test_check_command(capsys):
    code, out, _ = run(capsys, "check", "--random", "32", "--seed", "7", "--trials", "200")
    assert code == 0 and "FAIL" not in out


def test_check_corpus_files(capsys):
    for name in ("l_shape", "spiral", "comb", "star", "fig1_right"):
        code, out, _ = run(capsys, "check", os.path.join(DATA, f"{name}.json"), "--trials", "40")
        assert code == 0, (name, out)


def test_check_mutation(capsys):
    code, out, _ = run(capsys, "check", "--random", "16", "--seed", "3", "--trials", "40",
                       "--mutate", "--json")
    assert code == 3
    rep = json.loads(out)
    failed = [r for r in rep["result"] if not r["ok"]]
    assert [r["name"] for r in failed] == ["ball-membership"]
    assert set(failed[0]["witness"]) >= {"point", "distance", "radius", "source"}


def test_bench_command(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "16,32,300", "--with-oracle")
    assert code == 0
    rows = out.strip().split("\n")
    assert rows[0].startswith("n,diameter_us,center_us,oracle_us")
    assert "ratio" in rows[0]
    cells = [r.split(",") for r in rows[1:]]
    assert [c[0] for c in cells] == ["16", "32", "300"]
    assert cells[0][3] and cells[1][3] and cells[2][3] == ""
    assert cells[0][4] == "" and cells[1][4] != ""
    code, _, err = run(capsys, "bench", "--sizes", "")
    assert code == 1 and "empty" in err


def test_json_payloads_are_strings(files, capsys):
    def walk(obj, path="result"):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(v, f"{path}.{k}")
        elif isinstance(obj, list):
            for v in obj:
                walk(v, path)
        else:
            assert not isinstance(obj, float), path
            if path.startswith("result.") and not path.endswith(("pair", "is_point")):
                assert isinstance(obj, str), path

    code, out, _ = run(capsys, "diameter", files["fig1"], "--json")
    rep = json.loads(out)
    assert set(rep) == {"command", "input_sha256", "result", "timing_us", "counters"}
    assert rep["result"]["value"] == "17/7"
    walk(rep["result"])
    code, out, _ = run(capsys, "center", files["fig1"], "--json")
    rep = json.loads(out)
    assert rep["result"]["radius"] == "17/14"
    assert rep["result"]["segment"] == [["-1/7", "-1/14"], ["1/14", "1/7"]]
    walk(rep["result"])
    code, out, _ = run(capsys, "ball", files["diamond"], "--source", "0", "--radius", "1/2",
                       "--json")
    walk(json.loads(out)["result"])


def test_round_trip():
    for P in list(hand_corpus().values()) + [random_polygon(40, 2)]:
        text = polygon_to_text(P)
        assert parse_polygon_text(text) == P
        assert polygon_to_text(parse_polygon_text(text)) == text
    P = parse_polygon_text('{"vertices": [[0, 0], ["4/2", 0], ["2.0", "6/4"], [0, "0.5"]]}')
    assert P.vertices[1] == (2, 0) and P.vertices[2] == (2, F(3, 2))
    assert '"3/2"' in polygon_to_text(P) and '"1/2"' in polygon_to_text(P)


def test_parse_errors():
    for bad in ('[1, 2]', '{"vertices": 3}', '{"vertices": [[0, 0], [1]]}', "{",
                '{"vertices": [[0, 0], ["x", 1], [1, 1]]}'):
        with pytest.raises(ParseError):
            parse_polygon_text(bad)
    text = '{"vertices": [[0, 0], [1.5, 0], [0, 1]]}'
    with pytest.raises(ParseError):
        parse_polygon_text(text)
    assert parse_polygon_text(text, float_ok=True).vertices[1] == (F(3, 2), 0)


def test_float_ok_flag(tmp_path, capsys):
    p = tmp_path / "f.json"
    p.write_text('{"vertices": [[1.0, 0], [0, 1.0], [-1.0, 0], [0, -1.0]]}')
    code, _, err = run(capsys, "diameter", str(p))
    assert code == 1
    code, out, _ = run(capsys, "diameter", str(p), "--float-ok")
    assert code == 0 and "value: 2" in out


def test_svg_is_deterministic(files, tmp_path, capsys):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "center", files["fig1"], "--svg", str(a))
    run(capsys, "center", files["fig1"], "--svg", str(b))
    assert a.read_bytes() == b.read_bytes()
    P = validate_polygon(L_SHAPE)
    s1 = render(P, balls=[[(0, 0), (1, 0), (0, 1)]], segment=((F(1, 2), F(1, 2)), (1, 1)))
    s2 = render(P, balls=[[(0, 0), (1, 0), (0, 1)]], segment=((F(1, 2), F(1, 2)), (1, 1)))
    assert s1 == s2
    assert 'id="polygon-1"' in s1 and 'id="ball-2"' in s1 and 'id="center-3"' in s1
    assert 'viewBox="0 0 1000 1000"' in s1


def test_random_polygon_contract():
    assert len(random_polygon(3, 5)) == 3
    assert random_polygon(32, 7).vertices == random_polygon(32, 7).vertices
    P = random_polygon(64, 1)
    assert validate_polygon(P.vertices).vertices == P.vertices
    assert random_polygon(64, 2).vertices != P.vertices


def test_module_entry_point(files):
    out = subprocess.run([sys.executable, "-m", "l1geodesic", "diameter", files["diamond"]],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "value: 2" in out.stdout
