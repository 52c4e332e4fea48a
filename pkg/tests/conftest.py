import pytest

from evoalg import SolverConfig, chain_algebra, exact_algebra, float_algebra

# its general system has a single non-trivial real solution, (1, 0, 0),
# while the full complex solution set is rich
LONE_REAL_ROWS = [[1, -2, -3], [0, 0, 1], [0, 1, 1]]


@pytest.fixture
def cfg():
    return SolverConfig()


@pytest.fixture
def lone_real_float():
    return float_algebra(LONE_REAL_ROWS)


@pytest.fixture
def lone_real_exact():
    return exact_algebra(LONE_REAL_ROWS)


@pytest.fixture
def e1():
    # e_1^2 = e_1, e_2^2 = 0
    return exact_algebra([[1, 0], [0, 0]])


@pytest.fixture
def e2():
    # e_1^2 = e_2^2 = e_1
    return exact_algebra([[1, 0], [1, 0]])


@pytest.fixture
def chain2():
    return chain_algebra(2)
