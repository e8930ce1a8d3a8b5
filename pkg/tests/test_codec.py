import json

import pytest
from sympy import Rational

from polyarrow import codec
from polyarrow.certificates import Certificate
from polyarrow.engine import EngineParams, init, run
from polyarrow.errors import ConfigError
from polyarrow.linalg import matrix
from polyarrow.spaces import from_vertices, l1


def test_rationals_are_string_pairs():
    assert codec.encode_rational(Rational(-3, 4)) == ["-3", "4"]
    assert codec.decode_rational(["6", "8"]) == Rational(3, 4)
    assert codec.decode_rational("5/10") == Rational(1, 2)
    with pytest.raises(ConfigError):
        codec.decode_rational(["1", "0"])
    with pytest.raises(ConfigError):
        codec.decode_rational("0.5")


def test_floats_never_reach_the_output():
    assert codec.encode_value({"n": 3, "x": Rational(1, 3), "ok": True}) == {"n": 3, "x": ["1", "3"], "ok": True}
    with pytest.raises(ConfigError):
        codec.encode_value(0.5)


def test_canonical_text_is_stable():
    first = codec.dumps({"b": 1, "a": [1, 2]})
    second = codec.dumps({"a": [1, 2], "b": 1})
    assert first == second
    assert first.endswith("\n")
    assert codec.digest({"b": 1, "a": [1, 2]}) == codec.digest(json.loads(first))


def test_empty_matrices_keep_their_shape():
    data = codec.encode_matrix(matrix([], shape=(0, 2)))
    assert data["shape"] == [0, 2]
    assert codec.decode_matrix(data).shape == (0, 2)


def test_hand_written_space_is_hulled():
    data = {"dim": 2, "vertices": [["1", "0"], ["0", "1"], [["1", "2"], ["1", "2"]]]}
    X = codec.decode_space(data)
    assert X == l1(2)
    with pytest.raises(ConfigError):
        codec.decode_space({"vertices": []})


def test_space_with_facets_is_trusted():
    hexagon = from_vertices([(1, 0), (0, 1), (1, 1)], label="H")
    again = codec.decode_space(json.loads(codec.dumps(codec.encode_space(hexagon))))
    assert again == hexagon
    assert again.label == "H"
    assert set(again.facets) == set(hexagon.facets)


def test_arrow_and_certificate_survive_json(line_into_l1):
    arrow = codec.decode("arrow", json.loads(codec.dumps(codec.encode(line_into_l1))))
    assert arrow == line_into_l1
    cert = Certificate("demo")
    cert.check_le("bound", Rational(1, 3), Rational(1, 2))
    cert.check_true("flag", False, gated=False)
    cert.record("count", 2)
    again = codec.decode("certificate", codec.encode(cert))
    assert again.checks == cert.checks
    assert again.passed
    assert again.values == {"count": 2}


def test_state_round_trip(R, line_catalog):
    params = EngineParams.from_config(grid_levels=0, max_entries=1, seed=0)
    state = run(init(R, line_catalog, params), 2)
    data = codec.encode(state)
    again = codec.decode("state", json.loads(codec.dumps(data)))
    assert again == state
    assert codec.dumps(codec.encode(again)) == codec.dumps(data)


def test_state_version_is_checked(R, line_catalog):
    data = codec.encode(init(R, line_catalog, EngineParams.from_config()))
    data["version"] = 99
    with pytest.raises(ConfigError):
        codec.decode("state", data)
    with pytest.raises(ConfigError):
        codec.decode("polytope", {})


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(ConfigError):
        codec.read_json(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigError):
        codec.read_json(broken)
    path = codec.write_json(tmp_path / "nested" / "x.json", {"a": 1})
    assert codec.read_json(path) == {"a": 1}
