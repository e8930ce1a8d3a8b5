import pytest
from sympy import Rational

from polyarrow.arrows import DoubleArrow, Operator
from polyarrow.errors import HypothesisError, NotInjectiveError, SpaceMismatchError
from polyarrow.linalg import identity, matrix
from polyarrow.pushout import (
    complemented_pushout, factor, multi_pushout_extension, pushout, pushout_retraction,
)


def test_pushout_of_two_identities_is_the_line(R):
    one = Operator.identity(R)
    po = pushout(one, one)
    assert po.po == R
    assert po.certificate.passed
    assert (po.j_prime @ po.i).matrix == (po.i_prime @ po.j).matrix


def test_pushout_keeps_an_isometric_leg(R, l1_2):
    i = Operator(R, l1_2, matrix([[1], [0]]))
    j = Operator(R, R, matrix([[Rational(1, 2)]]))
    po = pushout(i, j)
    assert po.po.dim == 2
    assert po.i_prime.constants == (1, 1)
    assert po.certificate.find("commutes").passed


def test_pushout_rejects_bad_legs(R, l1_2):
    with pytest.raises(NotInjectiveError):
        pushout(Operator(R, l1_2, matrix([[0], [0]])), Operator.identity(R))
    with pytest.raises(SpaceMismatchError):
        pushout(Operator.identity(R), Operator.identity(l1_2))


def test_factor_through_the_pushout(R):
    one = Operator.identity(R)
    po = pushout(one, one)
    gamma = factor(po, one, one)
    assert gamma.matrix == identity(1)
    with pytest.raises(HypothesisError):
        factor(po, one, one.scaled(2))


def test_retraction_inverts_the_parallel_leg(R, line_into_l1):
    po = pushout(line_into_l1.fwd, Operator.identity(R))
    r = pushout_retraction(po, line_into_l1.back)
    assert (r @ po.i_prime).matrix == identity(1)
    assert r.norm == 1


def test_complemented_pushout_of_an_exact_arrow(R, line_into_l1):
    result = complemented_pushout(line_into_l1, DoubleArrow.identity(R))
    assert result.certificate.passed
    assert result.po.po.dim == 2
    assert result.di_prime.arrow_class.is_double
    assert result.dj_prime.arrow_class.is_double
    assert result.po.back_i is not None


def test_doubly_commutative_variant(R, line_into_l1):
    result = complemented_pushout(line_into_l1, DoubleArrow.identity(R), doubly_commutative=True)
    assert result.doubly_commutative
    assert result.certificate.find("forward_projections").passed
    assert result.certificate.values["variant"] == "doubly_commutative"


def test_complemented_pushout_needs_an_exact_first_arrow(R, linf_2):
    loose = DoubleArrow.from_matrices(R, linf_2, matrix([[1], [0]]), matrix([[Rational(4, 5), 0]]))
    with pytest.raises(HypothesisError):
        complemented_pushout(loose, DoubleArrow.identity(R))
    with pytest.raises(HypothesisError):
        complemented_pushout(DoubleArrow.identity(R), loose, doubly_commutative=True)


def test_single_item_extension(R, line_into_l1):
    result = multi_pushout_extension(line_into_l1, None, DoubleArrow.identity(R), None)
    assert result.stage_one is not None
    assert result.po_arrow.arrow_class.is_double
    assert result.j_restricted.source == line_into_l1.target


def test_two_item_extension(R, line_into_l1):
    result = multi_pushout_extension(line_into_l1, line_into_l1, DoubleArrow.identity(R), Operator.identity(R))
    assert result.certificate.passed
    assert result.main.po.dim == 3
    assert result.po_arrow.arrow_class.is_double
    assert result.j_restricted.arrow_class.beta == 0
    with pytest.raises(SpaceMismatchError):
        multi_pushout_extension(line_into_l1, line_into_l1, DoubleArrow.identity(R), None)
