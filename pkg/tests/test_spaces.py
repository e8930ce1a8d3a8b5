import pytest
from hypothesis import given, settings
from sympy import ImmutableMatrix, Rational

from polyarrow.errors import DependentBasisError, DimensionMismatchError, GeometryError, HypothesisError
from polyarrow.geometry import Polytope
from polyarrow.spaces import (
    NormedSpace, SUM_1, SUM_INF, bm_search, column_norms, direct_sum, dual_space, framing_delta,
    from_vertices, isometries_between, l1, l1_framing, linf, map_norm, norm, quotient_space,
    real_line, section_space,
)

from strategies import vectors

HALF = Rational(1, 2)


def test_norms_of_the_standard_spaces(l1_2, linf_2):
    assert norm(l1_2, (1, -2)) == 3
    assert norm(linf_2, (1, -2)) == 2
    assert column_norms(l1_2, ImmutableMatrix([[1, 1], [1, -3]])) == [2, 4]
    with pytest.raises(DimensionMismatchError):
        norm(l1_2, (1, 2, 3))


def test_asymmetric_ball_is_rejected():
    ball = Polytope(1, ((0,), (1,)), False)
    with pytest.raises(GeometryError):
        NormedSpace(1, ball)


def test_line_is_one_dimensional_l1(R):
    assert R == l1(1) == linf(1)
    assert str(R) == "R"
    assert R.vertices == ((-1,), (1,))


def test_duality_exchanges_l1_and_linf(l1_2, linf_2):
    assert dual_space(l1_2) == linf_2
    assert dual_space(dual_space(l1_2)) == l1_2


@settings(max_examples=30, deadline=None)
@given(x=vectors(2), phi=vectors(2))
def test_dual_norm_bounds_pairings(x, phi):
    X = from_vertices([(1, 0), (0, 1), (1, 1)])
    pairing = sum(a * b for a, b in zip(phi, x))
    assert abs(pairing) <= norm(dual_space(X), phi) * norm(X, x)


def test_direct_sums_of_lines(R, l1_2, linf_2):
    assert direct_sum(R, R, SUM_1) == l1_2
    assert direct_sum(R, R, SUM_INF) == linf_2
    with pytest.raises(GeometryError):
        direct_sum(R, R, 2)


def test_quotient_norm_is_distance_to_kernel(l1_2):
    Q, q = quotient_space(l1_2, [(1, 1)])
    assert Q.dim == 1
    assert norm(Q, tuple(q * ImmutableMatrix([1, 0]))) == 1
    assert norm(Q, tuple(q * ImmutableMatrix([1, 1]))) == 0
    with pytest.raises(GeometryError):
        quotient_space(l1_2, [(1, 0), (0, 1)])


def test_sections_carry_the_induced_norm(l1_2, linf_2, R):
    assert section_space(linf_2, [(1, 1)]) == R
    half_line = section_space(l1_2, [(1, 1)])
    assert half_line.vertices == ((-HALF,), (HALF,))
    with pytest.raises(DependentBasisError):
        section_space(l1_2, [(1, 1), (2, 2)])


def test_map_norm_between_balls(l1_2, linf_2):
    one = ImmutableMatrix([[1, 0], [0, 1]])
    assert map_norm(one, linf_2, l1_2) == 2
    assert map_norm(one, l1_2, linf_2) == 1


def test_framing_delta_of_unit_bases(l1_2, linf_2):
    units = [(1, 0), (0, 1)]
    assert framing_delta(l1_2, units) == 1
    assert framing_delta(linf_2, units) == 2
    with pytest.raises(HypothesisError):
        framing_delta(l1_2, [(2, 0), (0, 1)])
    with pytest.raises(DependentBasisError):
        framing_delta(l1_2, [(1, 0)])


def test_l1_framing_of_l1_is_exact(l1_2):
    basis, delta = l1_framing(l1_2)
    assert delta == 1
    assert len(basis) == 2
    assert all(norm(l1_2, b) == 1 for b in basis)


def test_isometries_of_the_square(linf_2, l1_2):
    group = isometries_between(linf_2, linf_2)
    assert len(group) == 8
    assert ImmutableMatrix([[1, 0], [0, 1]]) in group
    assert isometries_between(linf_2, l1_2) != []


def test_banach_mazur_distance_of_the_plane(l1_2, linf_2):
    value, t = bm_search(l1_2, linf_2)
    assert value == 1
    assert map_norm(t, l1_2, linf_2) * map_norm(t.inv(), linf_2, l1_2) == 1
    hexagon = from_vertices([(1, 0), (0, 1), (1, 1)])
    assert bm_search(hexagon, l1_2)[0] > 1
