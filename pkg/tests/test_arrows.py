import pytest
from hypothesis import given, settings
from sympy import ImmutableMatrix, Rational

from polyarrow.arrows import (
    ArrowClass, DoubleArrow, Operator, arrow_distance_search, classify, commutativity_defects,
    compose, certify_compose, exactify_projection, intertwiner, is_isometry, isometry_constants,
    normalize_isometry, op_norm, perturb_projection, scale_to_contractive, scaled_perturbation,
)
from polyarrow.errors import HypothesisError, NotInjectiveError, SpaceMismatchError
from polyarrow.linalg import identity, matrix
from polyarrow.spaces import l1, real_line, section_space

from strategies import positive_rationals


def test_identity_norms_between_l1_and_linf(l1_2, linf_2):
    assert op_norm(Operator(linf_2, l1_2, identity(2))) == 2
    assert isometry_constants(Operator(l1_2, linf_2, identity(2))) == (1, Rational(1, 2))


def test_rank_deficient_operator_has_no_constants(l1_2, R):
    with pytest.raises(NotInjectiveError):
        isometry_constants(Operator(R, l1_2, matrix([[0], [0]])))


def test_composition_checks_spaces(l1_2, linf_2, R):
    f = Operator(R, l1_2, matrix([[1], [0]]))
    with pytest.raises(SpaceMismatchError):
        f @ f
    assert (Operator.identity(l1_2) @ f).matrix == f.matrix


def test_classify_line_into_linf(R, linf_2):
    d = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [0]]), matrix([[1, Rational(1, 2)]]))
    cls = classify(d)
    assert cls == ArrowClass(Rational(1), Rational(0), Rational(3, 2), True)
    assert not cls.is_double
    assert cls.within(1, 0, 2)
    assert not cls.within(1, 0, 1)


def test_coordinate_arrow_is_double(line_into_l1):
    assert line_into_l1.arrow_class.is_double
    assert DoubleArrow.identity(line_into_l1.target).arrow_class.as_tuple() == (1, 0, 1, True)


def test_mismatched_pair_is_rejected(R, l1_2, linf_2):
    with pytest.raises(SpaceMismatchError):
        DoubleArrow(Operator(R, l1_2, matrix([[1], [0]])), Operator(linf_2, R, matrix([[1, 0]])))


def test_composite_of_double_arrows(line_into_l1, l1_2):
    up = DoubleArrow.from_matrices(l1_2, l1(3), matrix([[1, 0], [0, 1], [0, 0]]), matrix([[1, 0, 0], [0, 1, 0]]))
    composite = compose(line_into_l1, up)
    assert composite.arrow_class.is_double
    assert composite.fwd.matrix == matrix([[1], [0], [0]])
    cert = certify_compose(line_into_l1, up)
    assert cert.passed
    assert cert.find("contractive").passed


@settings(max_examples=25, deadline=None)
@given(s=positive_rationals, t=positive_rationals)
def test_rescaling_reaches_a_contractive_arrow(s, t):
    R = real_line()
    d = DoubleArrow.from_matrices(R, R, matrix([[s]]), matrix([[t]]))
    if d.arrow_class.gamma < 1:
        with pytest.raises(HypothesisError):
            scale_to_contractive(d)
        return
    scaled = scale_to_contractive(d)
    assert scaled.arrow_class.contractive
    assert scaled.back.norm == 1


def test_exact_projection_from_an_almost_left_inverse(R, linf_2):
    d = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [0]]), matrix([[Rational(4, 5), 0]]))
    assert d.arrow_class.beta == Rational(1, 5)
    exact = exactify_projection(d, Rational(1, 5))
    assert exact.back.matrix == matrix([[1, 0]])
    assert exact.arrow_class.beta == 0
    with pytest.raises(HypothesisError):
        exactify_projection(d, Rational(1, 10))


def test_commutativity_defects_of_a_triangle(line_into_l1, l1_2, R):
    same = DoubleArrow.from_matrices(l1_2, l1_2, matrix([[1, 0], [0, 1]]), matrix([[1, 0], [0, 1]]))
    assert commutativity_defects(line_into_l1, line_into_l1, same) == (0, 0)
    shifted = DoubleArrow.from_matrices(R, l1_2, matrix([[0], [1]]), matrix([[0, 1]]))
    assert commutativity_defects(shifted, line_into_l1, same) == (2, 1)


def test_normalized_isometry_is_contractive(R, l1_2):
    T = Operator(R, l1_2, matrix([[Rational(11, 10)], [0]]))
    assert is_isometry(T, Rational(1, 10))
    assert not is_isometry(T, Rational(1, 10), contractive=True)
    scaled, cert = normalize_isometry(T, Rational(1, 10))
    assert cert.passed
    assert scaled.norm == 1


def test_distance_between_equal_arrows_is_zero(line_into_l1):
    bound = arrow_distance_search(line_into_l1, line_into_l1)
    assert bound.epsilon == 0
    assert bound.exact


def test_distance_through_a_symmetry(line_into_l1, R, l1_2):
    flipped = DoubleArrow.from_matrices(R, l1_2, matrix([[-1], [0]]), matrix([[-1, 0]]))
    bound = arrow_distance_search(line_into_l1, flipped)
    assert bound.epsilon == 0
    assert bound.a is not None and bound.b is not None
    assert bound.b.matrix * line_into_l1.fwd.matrix == flipped.fwd.matrix * bound.a.matrix


def test_intertwiner_commutes_for_exact_arrows(line_into_l1):
    one = identity(1)
    b = intertwiner(line_into_l1, line_into_l1, one, identity(2))
    assert b * line_into_l1.fwd.matrix == line_into_l1.fwd.matrix * one


def _line_projection(E):
    A = section_space(E, [(1, 0)], label="A[1]")
    return A, Operator(E, A, matrix([[1, 0]]))


def test_unperturbed_projection_is_kept(l1_2):
    _, p = _line_projection(l1_2)
    tau, p_prime, cert = perturb_projection(l1_2, [(1, 0)], p, [(1, 0)], 0)
    assert cert.passed
    assert p_prime.matrix == p.matrix
    assert cert.values["distance"] == 0


def test_perturbed_projection_onto_a_tilted_line(l1_2):
    eta = Rational(1, 10)
    _, p = _line_projection(l1_2)
    tau, p_prime, cert = perturb_projection(l1_2, [(1, 0)], p, [(1, eta)], eta)
    assert cert.passed
    assert cert.values["C"] == 1
    assert cert.values["delta"] == 1
    assert tau.constants == (Rational(11, 10), Rational(11, 10))
    assert p_prime.norm == Rational(11, 10)
    onto = matrix([[1], [eta]]) * p_prime.matrix
    assert onto * onto == onto
    small_tau, big_p = scaled_perturbation(tau, p_prime, eta)
    assert small_tau.norm == 1
    assert big_p.matrix == p_prime.matrix * Rational(11, 10)


def test_perturbation_hypotheses(l1_2):
    _, p = _line_projection(l1_2)
    with pytest.raises(HypothesisError):
        perturb_projection(l1_2, [(1, 0)], p, [(1, Rational(1, 5))], Rational(1, 10))
    with pytest.raises(HypothesisError):
        perturb_projection(l1_2, [(1, 0)], p, [(1, 0)], Rational(1, 3))
    with pytest.raises(HypothesisError):
        perturb_projection(l1_2, [(1, 0)], p, [(1, Rational(1, 20))], 0)
