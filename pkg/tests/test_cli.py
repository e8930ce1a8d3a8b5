import json

import pytest
from sympy import Rational

from polyarrow import codec
from polyarrow.arrows import DoubleArrow
from polyarrow.linalg import matrix
from polyarrow.main import main
from polyarrow.run_config import RunConfig
from polyarrow.errors import ConfigError
from polyarrow.spaces import l1, real_line


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_space_command_prints_canonical_json(capsys):
    assert main(["space", "l1", "--dim", "2"]) == 0
    assert codec.decode_space(_stdout_json(capsys)) == l1(2)


def test_space_from_hand_written_json(tmp_path, capsys):
    path = tmp_path / "square.json"
    path.write_text(json.dumps({"dim": 2, "vertices": [["1", "1"], ["1", "-1"], ["0", "0"]]}), encoding="utf-8")
    assert main(["space", "from-json", str(path)]) == 0
    assert len(_stdout_json(capsys)["vertices"]) == 4


def test_classify_and_exactify(tmp_path, capsys, R, linf_2):
    path = tmp_path / "arrow.json"
    loose = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [0]]), matrix([[Rational(4, 5), 0]]))
    codec.write_json(path, codec.encode_arrow(loose))
    assert main(["arrow", "classify", str(path)]) == 0
    out = _stdout_json(capsys)
    assert out["class"]["beta"] == ["1", "5"]
    assert out["double"] is False
    assert main(["arrow", "exactify", str(path), "--eps", "1/5"]) == 0
    exact = codec.decode_arrow(_stdout_json(capsys)["arrow"])
    assert exact.back.matrix == matrix([[1, 0]])


def test_exactify_rejects_small_eps(tmp_path, capsys, R, linf_2):
    path = tmp_path / "arrow.json"
    loose = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [0]]), matrix([[Rational(4, 5), 0]]))
    codec.write_json(path, codec.encode_arrow(loose))
    assert main(["arrow", "exactify", str(path), "--eps", "1/10"]) == 1


def test_missing_input_is_a_config_error(tmp_path):
    assert main(["arrow", "classify", str(tmp_path / "absent.json")]) == 2


def test_pushout_build_writes_the_space(tmp_path, line_into_l1, R):
    i_path, j_path = tmp_path / "i.json", tmp_path / "j.json"
    codec.write_json(i_path, codec.encode_operator(line_into_l1.fwd))
    codec.write_json(j_path, codec.encode_operator(DoubleArrow.identity(R).fwd))
    assert main(["pushout", "build", "--i", str(i_path), "--j", str(j_path), "--out", str(tmp_path / "po")]) == 0
    data = codec.read_json(tmp_path / "po" / "pushout.json")
    assert data["space"]["dim"] == 2
    assert data["certificate"]["passed"]


def test_catalog_engine_and_export(tmp_path, capsys):
    catalog_path = tmp_path / "catalog.json"
    assert main(["catalog", "gen", "--max-dim", "1", "--max-denom", "2", "--out", str(catalog_path)]) == 0
    catalog = codec.load("catalog", catalog_path)
    assert len(catalog.entries) == 1

    space_path = tmp_path / "line.json"
    codec.write_json(space_path, codec.encode_space(real_line()))
    run_dir = tmp_path / "run"
    assert main([
        "engine", "run", "--seed-space", str(space_path), "--catalog", str(catalog_path),
        "--steps", "2", "--budget", "1", "--out", str(run_dir),
    ]) == 0
    assert (run_dir / "state.json").exists()
    capsys.readouterr()

    probe_path = tmp_path / "probe.json"
    assert main(["export", "--state", str(run_dir), "--object", "probe:0", "--out", str(probe_path)]) == 0
    target_path = tmp_path / "target.json"
    codec.write_json(target_path, codec.encode_arrow(catalog.entries[0].arrow))
    capsys.readouterr()

    assert main([
        "engine", "audit", "--state", str(run_dir), "--target", str(target_path), "--probe", str(probe_path),
        "--eps", "1", "--stage", "0",
    ]) == 0
    assert _stdout_json(capsys)["outcome"] == "ok"

    assert main(["export", "--state", str(run_dir), "--object", "stage:7", "--out", str(tmp_path / "x.json")]) == 1
    assert main(["export", "--state", str(run_dir), "--object", "nothing", "--out", str(tmp_path / "x.json")]) == 2


def test_verify_unknown_suite():
    assert main(["verify", "no-such-suite", "--no-history"]) == 2


def test_verify_writes_reports(tmp_path, capsys):
    out = tmp_path / "reports"
    assert main(["verify", "norming", "--instances", "2", "--no-history", "--out", str(out)]) == 0
    report = codec.read_json(out / "norming.json")
    assert report["passed"]
    assert [item["index"] for item in report["instances"]] == [0, 1]
    assert "norming: PASS 2/2" in capsys.readouterr().out


def test_verify_records_history(tmp_path, monkeypatch, capsys):
    config = {"history_db": str(tmp_path / "history.sqlite3")}
    monkeypatch.setattr("polyarrow.main.load_config", lambda path=None: config)
    for _ in range(2):
        assert main(["verify", "norming", "--instances", "2"]) == 0
    assert "differs" not in capsys.readouterr().out


def test_run_config_validation():
    config = RunConfig.build("verify", {}, instances=3, eps="1/4")
    assert config.instances == 3
    assert config.eps == Rational(1, 4)
    assert config.digest() == RunConfig.build("verify", {}, instances=3, eps="1/4", out="elsewhere").digest()
    assert config.digest() != RunConfig.build("verify", {}, instances=4, eps="1/4").digest()
    with pytest.raises(ConfigError):
        RunConfig.build("verify", {}, instances=0)
    with pytest.raises(ConfigError):
        RunConfig.build("verify", {}, eps="0.25")
