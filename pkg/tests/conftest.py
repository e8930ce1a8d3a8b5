import pytest
from sympy import Rational

from polyarrow.arrows import DoubleArrow
from polyarrow.catalog import gen_double_arrows
from polyarrow.linalg import matrix
from polyarrow.spaces import l1, linf, real_line
from polyarrow.utils import DIMENSION_CAP_ENV


@pytest.fixture(autouse=True)
def _default_dimension_cap(monkeypatch):
    monkeypatch.delenv(DIMENSION_CAP_ENV, raising=False)


@pytest.fixture
def R():
    return real_line()


@pytest.fixture
def l1_2():
    return l1(2)


@pytest.fixture
def linf_2():
    return linf(2)


@pytest.fixture
def line_into_l1(R, l1_2):
    """t -> (t, 0) with the coordinate projection back: a (1, 0, 1)-arrow R <-> l1^2."""
    return DoubleArrow.from_matrices(R, l1_2, matrix([[1], [0]]), matrix([[1, 0]]))


@pytest.fixture
def line_catalog(R):
    return gen_double_arrows([R], max_denom=2, seed=0)


@pytest.fixture
def half():
    return Rational(1, 2)
