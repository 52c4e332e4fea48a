"""Two-backend linear algebra: examples, oracles, and agreement properties."""

import itertools

import numpy as np
import pytest

from evoalg import gq
from evoalg.errors import BackendMismatch, SingularMatrix
from evoalg.scalar_linalg import (
    EXACT,
    FLOAT,
    GaussianRational,
    Matrix,
    determinant,
    exact_matrix,
    float_matrix,
    identity,
    is_nonsingular,
    matmul,
    matvec,
    rank,
    solve_linear,
    to_float,
)

LONE_REAL = [[1, -2, -3], [0, 0, 1], [0, 1, 1]]


def leibniz_det(rows):
    """Independent determinant oracle: full permutation expansion."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):  # count inversions
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


class TestGaussianRational:
    def test_field_ops_are_exact(self):
        a = gq("1/3", "1/7")
        b = gq("-2/5", 3)
        assert (a + b) - b == a
        assert (a * b) / b == a
        assert a - a == gq(0)
        assert str(gq("1/2")) == "1/2"

    def test_floats_are_rejected(self):
        with pytest.raises(BackendMismatch):
            gq(0.5)
        with pytest.raises(BackendMismatch):
            exact_matrix([[0.5]])

    def test_mixing_backends_raises(self):
        with pytest.raises(BackendMismatch):
            gq(1) * 0.5

    def test_complex_conversion(self):
        assert complex(gq("1/2", "-3/4")) == complex(0.5, -0.75)


class TestSolveLinear:
    def test_identity(self):
        x, res = solve_linear(float_matrix(np.eye(3)), [1, 2, 3])
        assert x == (1 + 0j, 2 + 0j, 3 + 0j)
        assert res == 0.0

    def test_permutation(self):
        x, _ = solve_linear(float_matrix([[0, 1], [1, 0]]), [5, 7])
        assert x == (7 + 0j, 5 + 0j)

    def test_rank_deficient_raises(self):
        for backend_matrix in (float_matrix, exact_matrix):
            with pytest.raises(SingularMatrix):
                solve_linear(backend_matrix([[2, 0], [0, 0]]), [1, 1])

    def test_exact_solutions_reproduce_rhs_exactly(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            n = int(rng.integers(1, 5))
            rows = [[int(v) for v in rng.integers(-5, 6, n)] for _ in range(n)]
            A = exact_matrix(rows)
            if not is_nonsingular(A):
                continue
            b = [gq(int(v), int(w)) for v, w in zip(rng.integers(-5, 6, n), rng.integers(-5, 6, n))]
            x, res = solve_linear(A, b)
            assert res == 0.0
            assert all((p - q).is_zero for p, q in zip(matvec(A, x), b))

    def test_float_residual_bound(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n = int(rng.integers(2, 7))
            A = float_matrix(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
            b = list(rng.standard_normal(n) + 1j * rng.standard_normal(n))
            x, res = solve_linear(A, b)
            assert res <= 1e-8 * max(abs(v) for v in b)


class TestDeterminant:
    def test_identity(self):
        assert determinant(identity(4, FLOAT)) == 1 + 0j
        assert determinant(identity(4, EXACT)) == gq(1)

    def test_lone_real_matrix_against_leibniz(self):
        # cofactor/permutation oracle gives -1
        assert leibniz_det(LONE_REAL) == -1
        assert determinant(exact_matrix(LONE_REAL)) == gq(-1)
        assert abs(determinant(float_matrix(LONE_REAL)) - (-1)) < 1e-12

    def test_repeated_column_structure(self):
        assert determinant(float_matrix([[1, 0], [1, 0]])) == 0j
        assert determinant(exact_matrix([[1, 0], [1, 0]])).is_zero

    def test_multiplicative_exact(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            n = int(rng.integers(1, 5))
            A = exact_matrix([[int(v) for v in row] for row in rng.integers(-4, 5, (n, n))])
            B = exact_matrix([[int(v) for v in row] for row in rng.integers(-4, 5, (n, n))])
            assert determinant(matmul(A, B)) == determinant(A) * determinant(B)

    def test_multiplicative_float(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            n = int(rng.integers(2, 6))
            A = float_matrix(rng.standard_normal((n, n)))
            B = float_matrix(rng.standard_normal((n, n)))
            lhs = determinant(matmul(A, B))
            rhs = determinant(A) * determinant(B)
            if abs(rhs) < 1e-3:  # skip ill-conditioned draws
                continue
            assert abs(lhs - rhs) <= 1e-8 * abs(rhs)


class TestRank:
    def test_zero_matrix(self):
        r = rank(float_matrix([[0, 0], [0, 0]]))
        assert r.rank == 0 and r.basis == ()

    def test_identity(self):
        assert rank(identity(5, FLOAT)).rank == 5
        assert rank(identity(5, EXACT)).rank == 5

    def test_proportional_rows(self):
        assert rank(float_matrix([[1, 0], [1, 0]]), tol=1e-10).rank == 1
        assert rank(exact_matrix([[1, 0], [1, 0]])).rank == 1

    def test_rref_is_canonical_for_the_row_space(self):
        # same row space, different generators -> identical exact RREF
        A = exact_matrix([[1, 2, 3], [0, 1, 1]])
        B = exact_matrix([[1, 3, 4], [2, 5, 7], [1, 2, 3]])
        assert rank(A).basis == rank(B).basis

    def test_backend_agreement_on_random_integer_matrices(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            n = int(rng.integers(1, 7))
            rows = [[int(v) for v in row] for row in rng.integers(-5, 6, (n, n))]
            ex, fl = exact_matrix(rows), float_matrix(rows)
            assert rank(ex).rank == rank(fl, tol=1e-8).rank
            assert is_nonsingular(ex) == is_nonsingular(fl, tol=1e-8)


def test_to_float_is_one_way():
    A = exact_matrix([["1/2", 0], [0, 3]])
    F = to_float(A)
    assert F.backend == FLOAT
    assert F.entries[0][0] == 0.5 + 0j
    with pytest.raises(BackendMismatch):
        exact_matrix([[0.5, 0], [0, 3]])


def test_matvec_and_matmul_shapes():
    A = float_matrix([[1, 2], [3, 4], [5, 6]])
    assert matvec(A, (1, 1)) == (3 + 0j, 7 + 0j, 11 + 0j)
    B = matmul(A, float_matrix([[1, 0], [0, 1]]))
    assert B.entries == A.entries
