import json

import pytest

from jetframe.cli import main


def run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main([*argv, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_gen_compact(tmp_path):
    code, frame = run(tmp_path, "gen", "--n", "2", "--k", "2", "--d", "3", "--case", "compact")
    assert code == 0
    assert max(f["pole_order"] for f in frame["fields"]) == 8


def test_gen_complete_intersection(tmp_path):
    code, frame = run(tmp_path, "gen", "--n", "2", "--k", "1", "--d", "1,2")
    assert code == 0 and frame["config"]["degrees"] == [1, 2]


def test_gen_log(tmp_path):
    code, frame = run(tmp_path, "gen", "--n", "1", "--k", "1", "--d", "2", "--case", "log")
    assert code == 0
    assert any(f["tag"] == "T_wq" for f in frame["fields"])


def test_verify_frame_file(tmp_path):
    fpath = tmp_path / "frame.json"
    assert main(["gen", "--n", "2", "--k", "1", "--d", "2", "--out", str(fpath)]) == 0
    code, rep = run(tmp_path, "verify", "--all", "--points", "3", "--seed", "7", str(fpath))
    assert code == 0 and rep["pass"]


def test_verify_missing_field_fails(tmp_path):
    fpath = tmp_path / "frame.json"
    main(["gen", "--n", "2", "--k", "2", "--d", "3", "--out", str(fpath)])
    data = json.loads(fpath.read_text())
    data["fields"] = [f for f in data["fields"] if not (f["tag"] == "T_jq" and f["params"]["j"] == 1)]
    fpath.write_text(json.dumps(data))
    code, rep = run(tmp_path, "verify", "--suite", "rank", "--points", "1", str(fpath))
    assert code == 1 and not rep["pass"]
    assert rep["rank_results"][0]["rank"] == rep["rank_results"][0]["expected"] - 1


def test_verify_identities_only(tmp_path):
    code, rep = run(tmp_path, "verify", "--suite", "identities", "--k", "2")
    assert code == 0 and rep["identity_suite"]


def test_pole_table(tmp_path, capsys):
    code, table = run(tmp_path, "pole", "--n", "2", "--k", "3", "--d", "4")
    assert code == 0 and table["max"] == 13
    assert "5k-2 = 13" in capsys.readouterr().err


def test_export(tmp_path):
    code, bell = run(tmp_path, "export", "--what", "bell", "--k", "2")
    assert code == 0 and bell["k"] == 2
    txt = tmp_path / "frame.txt"
    assert main(["export", "--n", "2", "--k", "1", "--d", "2", "--format", "text", "--out", str(txt)]) == 0
    assert "T_jq(j=2,q=0)" in txt.read_text()


def test_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        main(["verify", "--n", "2", "--k", "1", "--d", "2", "--suite", "rank", "--seed", "5",
              "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_usage_errors(tmp_path, capsys):
    assert main(["gen", "--n", "1", "--k", "1", "--d", "2"]) == 2
    assert main(["gen", "--k", "1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--d", "x,y"])
    assert exc.value.code != 0
    assert main(["verify", "--suite", "rank", str(tmp_path / "missing.json")]) == 2
