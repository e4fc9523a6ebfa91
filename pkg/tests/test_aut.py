from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vmrtkit.aut import (AutAlgebra, AutConfig, aut_from_quadrics, aut_from_samples, prolong,
                         prolong_annihilator, prolong_k, prolong_k_report, verify_flow)
from vmrtkit.linalg import PRIMES, Subspace
from vmrtkit.tensors import Poly, SymForm, VValuedSymMap
from vmrtkit.zoo import parse_variety

GOLDEN = json.loads((Path(__file__).parent / "data" / "aut_dims.json").read_text())


def expected_dims(kind: str, n: int, m: int = 0) -> tuple[int, int]:
    """(dim aut, dim aut^(1)) from the classical description of each cone.

    Quadric cone in C^n: conformal algebra so(n) + scalars, prolonging to C^n.
    Rank-one a x b matrices: gl_a + gl_b modulo the common scalar, prolonging
    to the matrices themselves.  Rank-one symmetric and rank-two skew n x n
    matrices: gl_n, prolonging to Sym^2 and Lambda^2 respectively.
    """
    if kind == "quadric":
        return n * (n - 1) // 2 + 1, n
    if kind == "segre":
        return n * n + m * m - 1, n * m
    if kind == "veronese":
        return n * n, n * (n + 1) // 2
    if kind == "pluecker":
        return n * n, n * (n - 1) // 2
    raise ValueError(kind)


CASES = [("quadric:3", ("quadric", 3)), ("quadric:4", ("quadric", 4)), ("quadric:5", ("quadric", 5)),
         ("segre:2x2", ("segre", 2, 2)), ("segre:2x3", ("segre", 2, 3)), ("veronese:2", ("veronese", 2)),
         ("veronese:3", ("veronese", 3)), ("pluecker:4", ("pluecker", 4)), ("pluecker:5", ("pluecker", 5))]


def test_golden_file_matches_the_closed_forms():
    for spec, args in CASES:
        assert tuple(GOLDEN[spec]) == expected_dims(*args)


@pytest.mark.parametrize("spec,args", CASES, ids=[c[0] for c in CASES])
def test_aut_and_first_prolongation(spec, args):
    X = parse_variety(spec)
    g = aut_from_samples(X)
    assert (g.dim, prolong(g).dim) == expected_dims(*args)


@pytest.mark.parametrize("spec", ["quadric:4", "segre:2x3", "veronese:3", "pluecker:5"])
def test_sampling_and_quadric_routes_agree(spec):
    X = parse_variety(spec)
    a, b = aut_from_samples(X), aut_from_quadrics(X)
    assert a.basis == b.basis
    assert a.is_closed() and a.contains_identity()


@pytest.mark.parametrize("spec", ["quadric:4", "segre:2x2", "veronese:3", "pluecker:4"])
def test_slice_and_annihilator_prolongations_agree(spec):
    g = aut_from_samples(parse_variety(spec))
    assert prolong(g).basis == prolong_annihilator(g).basis


@pytest.mark.parametrize("p", PRIMES)
def test_modular_routes_agree_and_are_closed(p):
    X = parse_variety("pluecker:5")
    g = aut_from_samples(X, p=p)
    assert g.dim == 25 and g.is_closed()
    assert prolong(g).dim == prolong_annihilator(g).dim == 10


def test_sampling_history_is_monotone():
    g = aut_from_samples(parse_variety("segre:3x3"), AutConfig(seed=4))
    assert all(a >= b for a, b in zip(g.history, g.history[1:]))
    assert g.history[-1] == g.dim == 17


def test_scalars_alone_do_not_prolong():
    N = 4
    ident = [1 if i == j else 0 for i in range(N) for j in range(N)]
    g = AutAlgebra(N, Subspace.span([ident], N * N), "scalars")
    assert prolong(g).dim == 0
    assert prolong_annihilator(g).dim == 0


def test_second_prolongations_vanish():
    # Sym^2 cone: the second prolongation is zero, as for every IHSS VMRT cone
    rep = prolong_k_report(parse_variety("veronese:2"), 2)
    assert rep.dims == [4, 3, 0]
    assert rep.certified
    assert prolong_k(parse_variety("quadric:4"), 2, AutConfig(certify=False)) == [7, 4, 0]


def test_verify_flow_accepts_prolongation_elements_and_rejects_others():
    X = parse_variety("segre:2x2")
    P = prolong(aut_from_samples(X))
    for A in P.maps():
        assert verify_flow(A, X)
    z = Poly.variables(4)
    bad = VValuedSymMap(4, 2, (SymForm(4, 2, z[0] * z[0]),) + tuple(SymForm(4, 2, 0 * z[0]) for _ in range(3)))
    assert not verify_flow(bad, X)
    zero = VValuedSymMap(4, 2, tuple(SymForm(4, 2, 0 * z[0]) for _ in range(4)))
    assert verify_flow(zero, X)


@given(st.integers(0, 2**31))
def test_dimension_is_independent_of_the_seed(seed):
    g = aut_from_samples(parse_variety("quadric:4"), AutConfig(seed=seed), p=PRIMES[0])
    assert g.dim == 7
