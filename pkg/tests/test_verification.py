import io
import logging

import pytest
from sympy import Rational

from polyarrow.certificates import Certificate
from polyarrow.codec import digest
from polyarrow.errors import (
    CertificateError, ConfigError, DimensionCapExceededError, HypothesisError, SingularOperatorError, ToolkitError,
)
from polyarrow.run_config import RunConfig
from polyarrow.utils import load_strings
from polyarrow.verification import (
    EXIT_CONFIG, EXIT_FAILED, SUITES, InstanceGenerator, handle_toolkit_error, resolve_suites,
)

logger = logging.getLogger("tests")

SMALL = {"max_dim": 2, "max_denom": 4}
LINE_ONLY = {"catalog", "engine-audit"}


def _config(name: str, **flags) -> RunConfig:
    sizes = dict(SMALL, max_dim=1) if name in LINE_ONLY else dict(SMALL)
    values = dict(seed=3, instances=3, steps=2, no_history=True, **sizes)
    values.update(flags)
    return RunConfig.build("verify", {}, **values)


def _run(name: str, **flags):
    return SUITES[name](_config(name, **flags), logger, load_strings("en")).run()


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_on_small_instances(name):
    report = _run(name)
    assert report["suite"] == name
    assert report["failed"] == [], report["instances"]
    assert report["passed"]


def test_reports_are_deterministic():
    assert digest(_run("isom")) == digest(_run("isom"))
    assert digest(_run("isom")) != digest(_run("isom", seed=4))


def test_perturbation_suite_with_a_fixed_eps():
    report = _run("close", eps="1/10")
    assert report["parameters"]["eps"] == [["1", "10"]]
    assert report["passed"]


def test_engine_audit_follows_the_configured_resolution():
    config = _config("engine-audit", eps="1/10")
    cert = SUITES["engine-audit"](config, logger, load_strings("en")).run_instance(0)
    assert config.max_denom == 4
    assert cert.values["max_denom"] == 4
    assert cert.values["resolution"] == Rational(1, 4)
    assert cert.values["eps"] == Rational(1, 10)
    assert cert.find("audit[0].gamma").passed
    assert cert.passed


def test_approximation_suite_with_a_fixed_eps():
    report = _run("approx", eps="1/10")
    assert report["parameters"]["eps"] == [["1", "10"]]
    assert report["passed"]


def test_suite_names():
    assert resolve_suites("all") == list(SUITES)
    assert resolve_suites("skeleton") == ["skeleton"]
    with pytest.raises(ConfigError):
        resolve_suites("everything")


def test_instance_generator_is_seeded():
    first, second = InstanceGenerator(5, 3, 8), InstanceGenerator(5, 3, 8)
    assert [first.rational() for _ in range(10)] == [second.rational() for _ in range(10)]
    chain = InstanceGenerator(1, 3, 4).chain(3, 4)
    assert len(chain) == 3
    assert all(link.arrow_class.is_double for link in chain)
    assert all(0 < InstanceGenerator(2, 2, 6).positive() <= 1 for _ in range(5))


@pytest.mark.parametrize("error, code", [
    (ConfigError("bad flag"), EXIT_CONFIG),
    (DimensionCapExceededError(9, 8, 40), EXIT_CONFIG),
    (SingularOperatorError("singular"), EXIT_CONFIG),
    (CertificateError("bound", Certificate("x")), EXIT_FAILED),
    (HypothesisError("eps too large"), EXIT_FAILED),
    (ToolkitError("other"), EXIT_FAILED),
])
def test_error_exit_codes(error, code):
    stream = io.StringIO()
    assert handle_toolkit_error(error, logger, load_strings("en"), stream) == code
    assert stream.getvalue().strip()


def test_cap_message_names_the_environment_variable():
    stream = io.StringIO()
    handle_toolkit_error(DimensionCapExceededError(9, 8, 40), logger, load_strings("en"), stream)
    assert "POLYARROW_DIMENSION_CAP" in stream.getvalue()
    assert "40 vertices" in stream.getvalue()
