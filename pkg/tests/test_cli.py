import json

import pytest

from flagmono.cli import check_pair, main
from flagmono.io import matroid_to_json, matroid_to_text
from flagmono.matroid import from_bases, uniform


@pytest.fixture
def files(tmp_path, u34, par34):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.json"
    a.write_text(matroid_to_text(u34))
    b.write_text(matroid_to_json(par34))
    return str(a), str(b)


def test_hvector_flag(files, capsys):
    assert main(["hvector", files[0]]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["h"] == [{"S": [], "value": 1}, {"S": [1], "value": 3}, {"S": [2], "value": 5}, {"S": [1, 2], "value": 3}]
    assert main(["hvector", files[0], "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["S,f,h", "0,1,1", "1,4,3", "2,6,5", "3,12,3"]


def test_hvector_modes(files, capsys):
    assert main(["hvector", files[0], "--coarse"]) == 0
    assert json.loads(capsys.readouterr().out) == {"f": [1, 10, 12], "h": [1, 8, 3]}
    assert main(["hvector", files[0], "--independence"]) == 0
    assert json.loads(capsys.readouterr().out) == {"f": [1, 4, 6, 4], "h": [1, 1, 1, 1]}
    assert main(["hvector", files[0], "--sr"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [(r["chains"], r["relation_rank"], r["quotient_dim"], r["agree"]) for r in rows] == [
        (1, 0, 1, True), (4, 1, 3, True), (6, 1, 5, True), (12, 9, 3, True),
    ]
    assert main(["hvector", files[1], "--sr", "--format", "csv"]) == 0
    assert capsys.readouterr().out.startswith("S_bits,chains,relation_rank,quotient_dim,h_S,agree\n")


def test_check_pair(files, capsys):
    assert main(["check-pair", *files]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["weak"] and out["rank_preserving"] and not out["strong"]
    assert out["flag_h_monotone"] is True
    assert out["details"]["violations"] == []
    assert main(["check-pair", files[1], files[0]]) == 0
    out = json.loads(capsys.readouterr().out)
    assert not out["weak"] and out["flag_h_monotone"] is None


def test_check_pair_rank_changing():
    out = check_pair(uniform(3, 4), from_bases(4, [(1, 2), (1, 3)]))
    assert out["weak"] and not out["rank_preserving"]
    assert out["details"]["coarse_h_A"] == [1, 8, 3]
    assert out["details"]["violations"] == []


def test_enumerate(tmp_path, capsys):
    out = tmp_path / "m.jsonl"
    assert main(["enumerate", "--n", "3", "--r", "2", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 7
    assert main(["enumerate", "--n", "2"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 5


def test_suite(capsys):
    assert main(["suite", "--n-max", "3", "--seed", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] and report["seed"] == 1 and report["catalog_size"] == 24
    assert main(["suite", "--n-max", "3", "--checks", "h-routes,duality", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name,scheduled,passed,failed,seconds"
    assert [l.split(",")[0] for l in lines[1:]] == ["h-routes", "duality"]


def test_suite_iso_sources_and_linear(capsys):
    argv = ["suite", "--n-max", "3", "--random-linear", "3", "--linear-n-max", "5", "--checks", "h-routes,bijections", "--iso-sources"]
    assert main(argv) == 0
    assert json.loads(capsys.readouterr().out)["catalog_size"] == 27
