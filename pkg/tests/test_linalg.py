from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices, small_ints
from vmrtkit.errors import BadPrime, DimensionMismatch
from vmrtkit.linalg import (PRIMES, Echelon, QMatrix, Subspace, inverse, is_prime, kernel_basis,
                            left_kernel_basis, matmul_mod, rank, rank_mod_p, rref, solve_in_span,
                            solve_square, to_modp)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def test_rref_example():
    R, piv = rref([[2, 4], [1, 2]])
    assert R.to_rows() == [(1, 2), (0, 0)]
    assert piv == [0]


def test_kernel_example():
    K = kernel_basis([[1, 1]])
    assert K.dim == 1
    v = K.basis[0]
    assert v[0] == -v[1] != 0


def test_identity_has_full_rank_and_zero_kernel():
    I = QMatrix.identity(4)
    assert rank(I) == 4
    assert kernel_basis(I).dim == 0


def test_primes_are_30_bit_primes():
    for p in PRIMES:
        assert is_prime(p) and p.bit_length() == 30


def test_to_modp_rejects_denominator_divisible_by_p():
    with pytest.raises(BadPrime):
        to_modp(Fraction(1, 7), 7)


@given(matrices())
def test_rref_is_idempotent_and_preserves_row_space(M):
    R, piv = rref(M)
    R2, piv2 = rref(R)
    assert R2 == R and piv2 == piv
    assert Subspace.span(M, len(M[0])) == Subspace.span(R.to_rows(), len(M[0]))


@given(matrices())
def test_rank_nullity(M):
    n = len(M[0])
    assert rank(M) + kernel_basis(M).dim == n


@given(matrices())
def test_kernel_vectors_are_annihilated(M):
    for v in kernel_basis(M).basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in M)
    for v in left_kernel_basis(M).basis:
        assert all(sum(v[i] * M[i][j] for i in range(len(M))) == 0 for j in range(len(M[0])))


@given(matrices())
def test_two_primes_agree_with_rational_rank(M):
    r = rank(M)
    assert rank_mod_p(M, PRIMES[0]) == r == rank_mod_p(M, PRIMES[1])


@given(matrices(), matrices())
def test_sum_intersection_dimension_formula(A, B):
    n = min(len(A[0]), len(B[0]))
    U = Subspace.span([r[:n] for r in A], n)
    V = Subspace.span([r[:n] for r in B], n)
    assert U.sum(V).dim + U.intersect(V).dim == U.dim + V.dim
    assert U.sum(V).contains_subspace(U)
    assert U.contains_subspace(U.intersect(V))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                        min_size=n, max_size=n)))
def test_inverse_roundtrip_when_invertible(A):
    if rank(A) < len(A):
        with pytest.raises(ZeroDivisionError):
            inverse(A)
        return
    Ainv = inverse(A)
    n = len(A)
    assert matmul(A, Ainv) == [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def test_solve_square_and_solve_in_span():
    A = [[2, 1], [1, 1]]
    X = solve_square(A, [[3, 1], [2, 0]])
    assert matmul(A, X) == [[3, 1], [2, 0]]
    assert solve_in_span([[1, 0, 1], [0, 1, 1]], [2, 3, 5]) == [2, 3]
    assert solve_in_span([[1, 0, 1], [0, 1, 1]], [2, 3, 4]) is None


def test_matmul_mod_matches_exact_products():
    rng = np.random.default_rng(3)
    p = PRIMES[0]
    a = rng.integers(0, p, (7, 9), dtype=np.int64)
    b = rng.integers(0, p, (9, 5), dtype=np.int64)
    exact = (a.astype(object) @ b.astype(object)) % p
    assert (matmul_mod(a, b, p).astype(object) == exact).all()


def test_modular_echelon_coordinates_and_membership():
    p = PRIMES[1]
    ech = Echelon(4, p)
    ech.add_rows([[1, 2, 3, 4], [0, 1, 1, 1]])
    assert ech.rank == 2
    assert ech.contains([1, 3, 4, 5])
    assert not ech.contains([0, 0, 0, 1])


def test_subspace_rejects_mixed_fields():
    U = Subspace.span([[1, 0]], 2)
    V = U.reduce_mod(PRIMES[0])
    with pytest.raises(DimensionMismatch):
        U.sum(V)
