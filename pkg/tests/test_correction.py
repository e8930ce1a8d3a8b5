import pytest
from sympy import Rational

from polyarrow.arrows import DoubleArrow, Operator
from polyarrow.engine import approx_round, stage_arrow
from polyarrow.errors import HypothesisError
from polyarrow.linalg import identity, matrix
from polyarrow.pushout import correction_double, correction_factor, correction_space
from polyarrow.spaces import SUM_INF

TENTH = Rational(1, 10)


def test_correction_space_embeds_both_ends(R, l1_2):
    f = Operator(R, l1_2, matrix([[1], [0]]))
    corr = correction_space(f, TENTH)
    assert corr.certificate.passed
    assert corr.space.dim == 3
    assert corr.i_f.constants == (1, 1)
    assert corr.j_f.constants == (1, 1)
    assert corr.certificate.values["defect"] <= TENTH


def test_exact_isometry_needs_no_extra_dimension(R, l1_2):
    f = Operator(R, l1_2, matrix([[1], [0]]))
    corr = correction_space(f, 0)
    assert corr.space.dim == 2
    assert (corr.j_f @ f).matrix == corr.i_f.matrix


def test_max_middle_norm_is_reported(R, l1_2):
    f = Operator(R, l1_2, matrix([[1], [0]]))
    corr = correction_space(f, TENTH, middle_norm=SUM_INF)
    assert corr.middle_norm == SUM_INF
    assert not corr.certificate.find("i_f_upper").gated


def test_correction_space_hypotheses(R, l1_2):
    with pytest.raises(HypothesisError):
        correction_space(Operator(R, l1_2, matrix([[2], [0]])), TENTH)
    with pytest.raises(HypothesisError):
        correction_space(Operator(R, l1_2, matrix([[1], [0]])), 1)


def test_universal_property(R, l1_2):
    f = Operator(R, l1_2, matrix([[1], [0]]))
    corr = correction_space(f, TENTH)
    k = Operator(R, R, matrix([[Rational(19, 20)]]))
    l = Operator(l1_2, R, matrix([[1, 0]]))
    gamma = correction_factor(corr, k, l)
    assert (gamma @ corr.i_f).matrix == k.matrix
    assert (gamma @ corr.j_f).matrix == l.matrix
    with pytest.raises(HypothesisError):
        correction_factor(corr, k.scaled(Rational(1, 2)), l)


def test_correcting_an_almost_projection(R, l1_2):
    d = DoubleArrow.from_matrices(R, l1_2, matrix([[1], [0]]), matrix([[Rational(9, 10), 0]]))
    E, di, dj, cert = correction_double(d, TENTH)
    assert cert.passed
    assert di.arrow_class.beta == 0
    assert dj.arrow_class.beta == 0
    assert (di.back @ dj.fwd).matrix == d.back.matrix
    assert (dj.back @ di.fwd).matrix == d.fwd.matrix
    assert E == di.target == dj.target


def test_correction_rejects_loose_arrows(R, l1_2):
    d = DoubleArrow.from_matrices(R, l1_2, matrix([[1], [0]]), matrix([[Rational(1, 2), 0]]))
    with pytest.raises(HypothesisError):
        correction_double(d, TENTH)


def test_approximation_round_inside_the_whole_space(line_into_l1, l1_2):
    result = approx_round(line_into_l1, DoubleArrow.identity(l1_2), 0)
    assert result.certificate.passed
    assert result.G1.dim == 2
    assert result.di.arrow_class.beta == 0
    assert result.dj.arrow_class.beta == 0
    assert result.certificate.values["forward_distance"] == 0


def test_stage_arrow_projects_with_norm_one(l1_2):
    stage = stage_arrow(l1_2, [(1, 0)])
    assert stage.arrow_class.is_double
    assert stage.fwd.matrix == matrix([[1], [0]])


def test_approximation_rejects_large_eps(line_into_l1, l1_2):
    with pytest.raises(HypothesisError):
        approx_round(line_into_l1, DoubleArrow.identity(l1_2), Rational(1, 3))


def test_approximation_round_at_a_tenth(R, l1_2):
    d = DoubleArrow.from_matrices(R, l1_2, matrix([[1], [0]]), matrix([[Rational(9, 10), 0]]))
    result = approx_round(d, DoubleArrow.identity(l1_2), TENTH)
    values = result.certificate.values
    assert result.certificate.passed
    assert values["eps_prime"] == 0
    assert values["forward_distance"] == Rational(3, 13)
    assert values["backward_distance"] == 0
    assert result.corrected.arrow_class.within(1 + 6 * TENTH, 6 * TENTH, 1, contractive=True)
    assert result.certificate.find("commutativity_6eps").passed
    assert (result.di.back @ result.dj.fwd).matrix == result.corrected.back.matrix
    assert (result.dj.back @ result.di.fwd).matrix == result.corrected.fwd.matrix


def test_approximation_round_into_a_nearby_stage(R, linf_2):
    d = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [Rational(1, 40)]]), matrix([[1, 0]]))
    result = approx_round(d, [(1, 0)], TENTH)
    values = result.certificate.values
    assert result.certificate.passed
    assert values["eps_prime"] == Rational(1, 40)
    assert values["stage_dimension"] == 1
    assert values["forward_distance"] <= 4 * TENTH
    assert values["backward_distance"] <= 4 * TENTH
    assert result.certificate.find("perturbed_class_6eps").passed
    assert result.certificate.find("forward_commutativity").passed


def test_approximation_inside_an_exact_substage(line_into_l1):
    result = approx_round(line_into_l1, [(1, 0)], 0)
    values = result.certificate.values
    assert result.corrected.arrow_class.is_double
    assert values["forward_distance"] == values["backward_distance"] == 0
    assert values["commutativity"] == 0


def test_approximation_rejects_a_distant_stage(R, linf_2):
    d = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [Rational(1, 2)]]), matrix([[1, 0]]))
    with pytest.raises(HypothesisError):
        approx_round(d, [(1, 0)], TENTH)
