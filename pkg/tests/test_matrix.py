import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import nonparabolic_eps, seeds
from twoproduct.algebra import CompositionClass, UnsupportedError
from twoproduct.matrix import (
    MatrixAlgebra,
    SquareMatrix,
    apply_J,
    hermitean_split,
    is_hermitean,
    kron,
    mat_alpha,
    mat_sigma,
    pauli,
    random_matrix,
)
from twoproduct.scalar import ClassMismatchError, PairScalar

ELLIPTIC_1 = CompositionClass(-1, 1)
HYPERBOLIC_1 = CompositionClass(1, 1)


def test_commutator_bracket_of_pauli_x_y():
    sx, sy, sz = pauli(-1)
    assert mat_alpha(sx, sy, ELLIPTIC_1) == sz.scale(-2)


def test_jordan_product_of_paulis():
    sx, sy, _ = pauli(-1)
    I = SquareMatrix.identity(2)
    assert mat_sigma(sx, sx) == I
    assert mat_sigma(sx, sy).is_zero()


@given(nonparabolic_eps, seeds)
def test_unit_and_self_brackets(eps, seed):
    cls = CompositionClass(eps, 1)
    B = random_matrix(random.Random(seed), 3, eps)
    I = SquareMatrix.identity(3, eps)
    assert mat_alpha(I, B, cls).is_zero()
    assert mat_alpha(B, B, cls).is_zero()
    assert mat_sigma(I, B) == B


@given(nonparabolic_eps, seeds)
def test_apply_J_twice_multiplies_by_eps(eps, seed):
    A = random_matrix(random.Random(seed), 2, eps)
    assert apply_J(apply_J(A)) == A.scale(eps)


def test_apply_J_of_identity():
    u = PairScalar.unit(1)
    assert apply_J(SquareMatrix.identity(2, 1)) == SquareMatrix([[u, 0], [0, u]], 1)


def test_hermitean_split_edge_cases():
    sx, sy, _ = pauli(-1)
    H = sx + sy
    K = apply_J(sx)
    assert hermitean_split(H) == (H, SquareMatrix.zeros(2))
    assert hermitean_split(K) == (SquareMatrix.zeros(2), K)


@given(seeds, st.integers(min_value=1, max_value=4))
def test_hermitean_split_recomposes(seed, dim):
    A = random_matrix(random.Random(seed), dim, -1)
    H, K = hermitean_split(A)
    assert H + K == A
    assert is_hermitean(H)
    assert K.conjugate_transpose() == -K


@given(seeds)
def test_products_of_hermitean_matrices_are_hermitean(seed):
    rng = random.Random(seed)
    A, _ = hermitean_split(random_matrix(rng, 3, -1))
    B, _ = hermitean_split(random_matrix(rng, 3, -1))
    assert is_hermitean(mat_sigma(A, B))
    assert is_hermitean(mat_alpha(A, B, ELLIPTIC_1))


@given(nonparabolic_eps, seeds, st.sampled_from((Fraction(1), Fraction(1, 3), Fraction(5, 2))))
def test_minus_product_is_operator_multiplication(eps, seed, hbar):
    alg = MatrixAlgebra(CompositionClass(eps, hbar), 2)
    rng = random.Random(seed)
    A, B = alg.random_element(rng), alg.random_element(rng)
    expected = A @ B if eps == -1 else B @ A
    assert alg.beta(A, B, -1) == expected
    assert alg.beta(A, B, +1) == (B @ A if eps == -1 else A @ B)


def test_parabolic_and_formal_hbar_are_rejected():
    with pytest.raises(UnsupportedError):
        MatrixAlgebra(CompositionClass(0, 1))
    with pytest.raises(UnsupportedError):
        MatrixAlgebra(CompositionClass(-1))
    sx, sy, _ = pauli(0)
    with pytest.raises(UnsupportedError):
        mat_alpha(sx, sy, CompositionClass(0, 1))


def test_shape_checks():
    with pytest.raises(ValueError):
        SquareMatrix([[1, 2]])
    with pytest.raises(ValueError):
        SquareMatrix.identity(2) @ SquareMatrix.identity(3)
    with pytest.raises(ClassMismatchError):
        SquareMatrix.identity(2, -1) @ SquareMatrix.identity(2, 1)
    alg = MatrixAlgebra(ELLIPTIC_1, 2)
    with pytest.raises(ClassMismatchError):
        alg.alpha(SquareMatrix.identity(3), SquareMatrix.identity(3))


def test_kron_shapes_and_identity():
    sx, _, sz = pauli(-1)
    assert kron(sx, sz).dim == 4
    assert kron(SquareMatrix.identity(2), SquareMatrix.identity(2)) == SquareMatrix.identity(4)
    assert kron(sx, sz)[0, 2] == 1 and kron(sx, sz)[1, 3] == -1


@given(nonparabolic_eps, seeds)
def test_matmul_matches_entrywise_definition(eps, seed):
    rng = random.Random(seed)
    A, B = random_matrix(rng, 3, eps), random_matrix(rng, 3, eps)
    C = A @ B
    for i in range(3):
        for j in range(3):
            assert C[i, j] == sum((A[i, k] * B[k, j] for k in range(3)), PairScalar(0, 0, eps))


def test_random_matrix_entry_ranges():
    rng = random.Random(0)
    for _ in range(20):
        for row in random_matrix(rng, 4, 1).rows:
            for x in row:
                for part in (x.re, x.im):
                    assert abs(part) <= 9
                    assert 12 % part.denominator == 0


def test_generators_are_paulis():
    sx, sy, _ = pauli(1)
    assert MatrixAlgebra(HYPERBOLIC_1, 2).generators() == (sx, sy)
    assert MatrixAlgebra(HYPERBOLIC_1, 3).generators() == ()
