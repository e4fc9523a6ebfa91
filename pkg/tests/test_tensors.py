from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import small_ints
from vmrtkit.tensors import (Poly, PolyMap, SymForm, VValuedSymMap, contract, jacobian, monomials,
                             polarize_eval, sym_dim)

x, y, z = Poly.variables(3)


def test_polarization_examples():
    F = SymForm(2, 2, Poly.variables(2)[0] * Poly.variables(2)[1])
    assert F.tensor_entry((0, 1)) == Fraction(1, 2)
    u, v = Poly.variables(2)
    G = SymForm(2, 3, u * u * v)
    assert G.tensor_entry((0, 0, 1)) == Fraction(1, 3)
    assert polarize_eval(G, [[1, 0], [1, 0], [0, 1]]) == Fraction(1, 3)


def test_contracting_the_determinant():
    a = Poly.variables(4)
    det = SymForm(4, 2, a[0] * a[3] - a[1] * a[2])
    assert contract(det, [1, 0, 0, 0]) == SymForm(4, 1, a[3] * Fraction(1, 2))


def test_jacobian_of_a_curve():
    t = Poly.variables(1)[0]
    J = jacobian(PolyMap(1, (t, t * t)), [3])
    assert J.to_rows() == [(1,), (6,)]


def test_monomial_count():
    for n in range(1, 5):
        for d in range(4):
            assert len(monomials(n, d)) == sym_dim(n, d)


forms = st.lists(small_ints, min_size=10, max_size=10).map(
    lambda c: SymForm.from_coeffs(3, 3, dict(zip(monomials(3, 3), c))))
vectors = st.lists(small_ints, min_size=3, max_size=3)


@given(forms, vectors, vectors)
def test_contractions_commute(F, u, v):
    assert contract(contract(F, u), v) == contract(contract(F, v), u)


@given(forms, vectors)
def test_contraction_evaluates_to_the_form(F, u):
    # iota_u F evaluated at u is F(u): Euler's identity divided by the degree
    assert contract(F, u)(u) == F(u)


@given(forms, vectors, vectors, vectors)
def test_polarization_is_symmetric_and_diagonal(F, u, v, w):
    val = polarize_eval(F, [u, v, w])
    assert val == polarize_eval(F, [w, u, v]) == polarize_eval(F, [v, w, u])
    assert polarize_eval(F, [u, u, u]) == F(u)


@given(forms, vectors)
def test_slice_of_vector_valued_map(F, w):
    A = VValuedSymMap(3, 3, (F, F.scale(2)))
    S = A.slice(w)
    assert S.d == 2 and S(([1, 0, 0], [0, 1, 0]))[1] == 2 * S(([1, 0, 0], [0, 1, 0]))[0]


def test_poly_composition_and_derivative():
    p = x * x * y + 3 * z
    assert p.deriv(0) == 2 * x * y
    assert p([1, 2, 3]) == 11
    assert p.is_homogeneous() is False
    assert p.homogeneous_part(3) == x * x * y
