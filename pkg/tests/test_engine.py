from dataclasses import replace

import pytest
from sympy import Rational

from polyarrow.arrows import DoubleArrow
from polyarrow.catalog import gen_double_arrows
from polyarrow.engine import (
    AuditReport, EngineParams, audit_extension, audit_series, candidate_at, extension_at, init,
    run, skeleton_check, stage_candidates, stage_inclusion, stage_projection, step,
)
from polyarrow.errors import CertificateError, HypothesisError, SpaceMismatchError
from polyarrow.linalg import matrix
from polyarrow.spaces import l1


@pytest.fixture
def params():
    return EngineParams.from_config(grid_levels=0, max_entries=1, seed=0)


@pytest.fixture
def two_steps(R, line_catalog, params):
    return run(init(R, line_catalog, params), 2)


def test_params_ignore_missing_overrides():
    params = EngineParams.from_config(grid_levels=None, max_entries=5)
    assert params.max_entries == 5
    assert params.grid_levels == 3


def test_initial_state(R, line_catalog, params):
    state = init(R, line_catalog, params)
    assert state.n == 0
    assert state.X == R
    assert state.pending == ()
    assert state.entries() == []


def test_stage_enumeration_order(R, line_catalog, params):
    state = init(R, line_catalog, params)
    candidates = list(stage_candidates(state, 0))
    assert [(ci, m) for ci, m, _ in candidates] == [(0, 0), (0, 0)]
    assert candidates[0][2].fwd.matrix == matrix([[-1]])
    assert candidate_at(state, (0, 1))[2].fwd.matrix == matrix([[1]])
    assert candidate_at(state, (0, 2)) is None


def test_steps_grow_a_complemented_chain(two_steps):
    state = two_steps
    assert state.n == 2
    assert [P.dim for P in state.stages] == [1, 1, 1]
    assert all(link.arrow_class.is_double for link in state.inclusions)
    assert [e.key for e in state.entries()] == [(0, 0), (0, 1)]
    assert state.pending == ((1, 0),)
    assert all(record.certificate.passed for record in state.ledger)


def test_pending_items_are_taken_first(two_steps):
    state = step(two_steps)
    assert state.ledger[-1].entries[0].key == (1, 0)


def test_composite_inclusions_and_projections(two_steps):
    state = two_steps
    whole = stage_inclusion(state, 0, 2)
    assert whole.arrow_class.is_double
    assert stage_projection(state, 0).matrix == whole.back.matrix
    assert stage_inclusion(state, 1, 1) == DoubleArrow.identity(state.stages[1])
    with pytest.raises(HypothesisError):
        stage_inclusion(state, 2, 1)


def test_extension_of_a_recorded_item(two_steps):
    ext = extension_at(two_steps, 0, 0)
    assert ext.target == two_steps.stages[1]
    assert ext.arrow_class.beta == 0


def test_audit_of_recorded_probes(two_steps, line_catalog):
    target = line_catalog.entries[0].arrow
    eps = Rational(1) + line_catalog.resolution
    for entry in two_steps.entries():
        report = audit_extension(two_steps, target, entry.probe, eps, stage=entry.stage)
        assert report.outcome == AuditReport.OK
        assert report.found_step == entry.step
        assert max(report.defects) <= 4 * eps


def test_audit_replaces_an_almost_projection(two_steps, line_catalog):
    entry = two_steps.entries()[0]
    probe = DoubleArrow(entry.probe.fwd, entry.probe.back.scaled(Rational(9, 10)))
    assert probe.arrow_class.beta == Rational(1, 10)
    eps = Rational(1) + line_catalog.resolution
    report = audit_extension(two_steps, line_catalog.entries[0].arrow, probe, eps, stage=entry.stage)
    assert report.outcome == AuditReport.OK
    assert report.notes["projection_perturbed"]
    assert report.certificate.find("perturbation.identity_on_X").passed
    assert report.probe.back.matrix == entry.probe.back.matrix


def test_audit_without_items_is_insufficient(R, line_catalog, params, two_steps):
    probe = two_steps.entries()[0].probe
    state = init(R, line_catalog, params)
    report = audit_extension(state, line_catalog.entries[0].arrow, probe, 1, stage=0)
    assert report.outcome == AuditReport.INSUFFICIENT
    assert report.defects is None


def test_audit_series_over_prefixes(two_steps, line_catalog):
    probe = two_steps.entries()[0].probe
    series = audit_series(two_steps, line_catalog.entries[0].arrow, probe, 2)
    assert len(series.reports) == 3
    assert series.reports[0].outcome == AuditReport.INSUFFICIENT
    assert series.reports[-1].outcome == AuditReport.OK


def test_audit_rejects_foreign_targets(two_steps, line_into_l1):
    probe = two_steps.entries()[0].probe
    with pytest.raises(HypothesisError):
        audit_extension(two_steps, DoubleArrow.identity(l1(2)), probe, 1)


def test_skeleton_of_coordinate_chain(line_into_l1):
    up = DoubleArrow.from_matrices(l1(2), l1(3), matrix([[1, 0], [0, 1], [0, 0]]), matrix([[1, 0, 0], [0, 1, 0]]))
    cert = skeleton_check([line_into_l1, up])
    assert cert.passed
    assert cert.values["norms"] == [1, 1]
    assert skeleton_check([]).passed


def test_skeleton_rejects_loose_or_broken_chains(R, line_into_l1, linf_2):
    loose = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [0]]), matrix([[1, Rational(1, 2)]]))
    with pytest.raises(CertificateError):
        skeleton_check([loose])
    with pytest.raises(SpaceMismatchError):
        skeleton_check([line_into_l1, line_into_l1])


@pytest.fixture
def plane_catalog(R, l1_2):
    """Only the arrows R <-> l1^2, so every pushed-out item adds a dimension."""
    full = gen_double_arrows([R, l1_2], max_denom=1)
    return replace(full, entries=tuple(e for e in full.entries if (e.source_index, e.target_index) == (0, 1)))


@pytest.fixture
def growing(R, plane_catalog):
    params = EngineParams.from_config(grid_levels=0, max_entries=2, seed=0)
    return run(init(R, plane_catalog, params), 2)


def test_plane_items_grow_the_stages(growing):
    assert [P.dim for P in growing.stages] == [1, 2, 4]
    assert [len(record.entries) for record in growing.ledger] == [1, 2]
    for record in growing.ledger:
        assert record.certificate.passed
        assert record.certificate.find("dimension_growth").passed


def test_every_composite_inclusion_is_exact(growing):
    for k in range(growing.n + 1):
        for j in range(k + 1):
            assert stage_inclusion(growing, j, k).arrow_class.is_double
    last = growing.ledger[-1].certificate
    assert [last.find(f"composite[{j}]").passed for j in range(2)] == [True, True]


def test_extension_of_a_later_slot(growing, plane_catalog):
    entry = growing.ledger[1].entries[1]
    u = plane_catalog.entries[entry.catalog_index].arrow
    ext = extension_at(growing, 1, 1)
    assert ext.source == u.target
    assert ext.target == growing.stages[2]
    assert ext.arrow_class.beta == 0
    lifted = stage_inclusion(growing, entry.stage, 2).fwd @ entry.probe.fwd
    assert (ext.fwd @ u.fwd).matrix == lifted.matrix


def test_audit_on_growing_stages(growing, plane_catalog):
    eps = Rational(1, 10)
    for entry in growing.entries():
        target = plane_catalog.entries[entry.catalog_index].arrow
        report = audit_extension(growing, target, entry.probe, eps, stage=entry.stage)
        assert report.outcome == AuditReport.OK
        assert report.certificate.find("gamma").passed
