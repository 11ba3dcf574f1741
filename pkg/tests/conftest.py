import pytest

from bhkmirror.diagonal_symmetry import DiagonalGroup, exponential_element
from bhkmirror.invertible_poly import exponent_matrix, parse_polynomial, weight_system
from bhkmirror.multimirror import build_corpus

FERMAT = "x0^5+x1^5+x2^5+x3^5+x4^5"
CHAIN = "x0^4*x1+x1^4*x2+x2^4*x3+x3^4*x4+x4^5"
MIXED = "x0^4*x1+x1^5+x2^5+x3^5+x4^5"


def setup(text, group=None):
    e = exponent_matrix(parse_polynomial(text))
    j = exponential_element(weight_system(e))
    return e, DiagonalGroup(e.size, group if group is not None else [j])


@pytest.fixture(scope="session")
def fermat():
    return setup(FERMAT)


@pytest.fixture(scope="session")
def chain():
    return setup(CHAIN)


@pytest.fixture(scope="session")
def mixed():
    return setup(MIXED)


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(4, 12, 200)
