import pytest
from sympy import Rational

from polyarrow.certificates import Certificate
from polyarrow.errors import CertificateError, ConfigError
from polyarrow.utils import format_rational, load_config, load_strings, parse_rational, sha256_hex


@pytest.mark.parametrize("raw, value", [
    ("3/4", Rational(3, 4)),
    ("-2", Rational(-2)),
    (5, Rational(5)),
    (["2", "-6"], Rational(-1, 3)),
])
def test_parse_rational(raw, value):
    assert parse_rational(raw) == value


@pytest.mark.parametrize("raw", ["1.5", "1/0", True, ["1"], "p/q"])
def test_parse_rational_rejects(raw):
    with pytest.raises(ConfigError):
        parse_rational(raw)


def test_format_rational():
    assert format_rational(Rational(6, 3)) == "2"
    assert format_rational(Rational(-1, 8)) == "-1/8"


def test_packaged_config_and_strings():
    config = load_config()
    assert config["dimension_cap"] == 8
    assert config["suite_instances"] == 20
    strings = load_strings("en")
    assert "{suites}" in strings["help"]
    with pytest.raises(ConfigError):
        load_config("/nonexistent/polyarrow.yaml")


def test_sha256_hex():
    assert sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"


def test_certificate_gating():
    cert = Certificate("demo")
    assert cert.check_le("small", Rational(1, 3), Rational(1, 2))
    assert not cert.check_lt("strict", Rational(1), Rational(1), gated=False)
    assert cert.passed
    cert.check_eq("equal", Rational(1), Rational(2))
    assert cert.failed_names() == ["equal"]
    with pytest.raises(CertificateError) as info:
        cert.require()
    assert info.value.details == {"failed": ["equal"]}


def test_certificate_merge_prefixes_names():
    inner = Certificate("inner")
    inner.check_true("flag", True)
    inner.record("value", 3)
    outer = Certificate("outer")
    outer.merge(inner, "part")
    assert outer.find("part.flag").passed
    assert outer.values == {"part.value": 3}
    with pytest.raises(KeyError):
        outer.find("flag")
