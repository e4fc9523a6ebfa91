from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vmrtkit.aut import aut_from_quadrics, prolong
from vmrtkit.errors import BadDimension, InvalidSymbolSystem, NotTubeModel
from vmrtkit.euler import (SymbolSystem, base_locus, bracket_fixed_check, build_model, drho_x, duality,
                           embed, embed_via_gamma, inversion, lambda_image, mdot, on_variety,
                           pair_action, rho_x, rho_y, shipped_tube_models, symbol_system, validate,
                           verify_representations, vmrt_variety)
from vmrtkit.linalg import PRIMES
from vmrtkit.tensors import Poly, SymForm
from vmrtkit.zoo import sample_point

SHIPPED = [S.name for S in shipped_tube_models()]
SPECS = {S.name: S for S in shipped_tube_models()}


@lru_cache(maxsize=None)
def model(name: str):
    return build_model(SPECS[name])


@pytest.mark.parametrize("spec,dims", [
    ("minors:2", (1, 4, 1)), ("minors:3", (1, 9, 9, 1)), ("sym_minors:3", (1, 6, 6, 1)),
    ("pfaffian:4", (1, 6, 1)), ("pfaffian:5", (1, 10, 5)), ("pfaffian:6", (1, 15, 15, 1)),
    ("quadric:5", (1, 5, 1)), ("linear:3", (1, 3))])
def test_level_dimensions(spec, dims):
    S = symbol_system(spec)
    validate(S)
    assert S.dims == dims


def test_minor_counts_follow_binomials():
    for n in range(1, 4):
        assert symbol_system(f"minors:{n}").dims == tuple(comb(n, k) ** 2 for k in range(n + 1))


def test_tube_flags():
    assert symbol_system("pfaffian:6").is_tube and not symbol_system("pfaffian:5").is_tube
    assert not symbol_system("linear:2").is_tube
    with pytest.raises(NotTubeModel):
        duality(build_model(symbol_system("pfaffian:5")))


def test_validation_rejects_systems_not_closed_under_contraction():
    x = Poly.variables(2)
    S = SymbolSystem("bad", 2, ((SymForm(2, 0, Poly.const(2, 1)),),
                                (SymForm(2, 1, x[0]), SymForm(2, 1, x[1])),
                                (SymForm(2, 2, x[0] * x[1]),),
                                (SymForm(2, 3, x[0] * x[0] * x[0]),)))
    with pytest.raises(InvalidSymbolSystem):
        validate(S)
    missing = SymbolSystem("short", 2, (S.levels[0], S.levels[1][:1]))
    with pytest.raises(InvalidSymbolSystem):
        validate(missing)


@pytest.mark.parametrize("spec", ["cubic:3", "minors:x", "pfaffian:3"])
def test_bad_specs(spec):
    with pytest.raises(BadDimension):
        symbol_system(spec)


vec9 = st.lists(st.integers(-5, 5), min_size=9, max_size=9)


@given(vec9, vec9)
def test_embedding_translation_and_gamma_route(u, w):
    M = model("minors(3)")
    f = embed(M, u)
    assert not any(f - embed_via_gamma(M, u))
    assert on_variety(M, f) is True
    assert not any(mdot(rho_x(M, w), f) - embed(M, [a + b for a, b in zip(u, w)]))


@given(vec9)
def test_dual_action_fixes_the_base_point(w):
    M = model("minors(3)")
    assert not any(mdot(rho_y(M, w), M.e0()) - M.e0())


def test_off_variety_points_are_detected():
    M = model("quadric(4)")
    v = embed(M, [1, 2, 3, 4])
    v[-1] += 1
    assert on_variety(M, v) is False
    v[0] = 0
    assert on_variety(M, v) is None


def test_duality_exchanges_the_grading():
    M = model("minors(2)")
    J = duality(M)
    u = [Fraction(x) for x in (2, 1, 1, 3)]
    top = M.symbol.levels[-1][0](u)
    assert not any(mdot(J, embed(M, u)) - embed(M, inversion(M.symbol, u)) * top)


@pytest.mark.parametrize("name", SHIPPED)
def test_representation_identities(name):
    rep = verify_representations(model(name), seed=1, n_points=6)
    assert rep.ok, rep


@pytest.mark.parametrize("name", SHIPPED)
def test_lambda_image_is_the_prolongation(name):
    M = model(name)
    img, ker = lambda_image(M)
    assert ker == 0 and img.dim == M.W_dim
    X = vmrt_variety(M.symbol)
    if X.N <= 10:
        assert prolong(aut_from_quadrics(X)).basis == img
    else:
        p = PRIMES[0]
        assert prolong(aut_from_quadrics(X, p)).basis == img.reduce_mod(p)


@pytest.mark.parametrize("name", SHIPPED)
def test_base_locus_is_the_vmrt(name):
    M = model(name)
    bl = base_locus(M, seed=2)
    assert bl.l0 == 2
    X = vmrt_variety(M.symbol)
    rng = np.random.default_rng(3)
    assert all(bl(sample_point(X, rng)[1]) for _ in range(20))
    assert not any(bl([int(x) for x in rng.integers(-10**6, 10**6 + 1, M.W_dim)]) for _ in range(20))


@pytest.mark.parametrize("name", ["minors(2)", "sym_minors(3)", "pfaffian(4)", "quadric(5)"])
def test_levi_elements_and_pair_action(name):
    M = model(name)
    n = M.W_dim
    rng = np.random.default_rng(5)
    unit = np.eye(n, dtype=int).tolist()
    for a in range(n):
        w = rng.integers(-3, 4, n).tolist()
        assert bracket_fixed_check(M, (unit[a], unit[(a * 7 + 1) % n]), w).ok
    pa = pair_action(M, rng.integers(-3, 4, n).tolist(), rng.integers(-3, 4, n).tolist())
    assert pa.euler
    assert set(pa.source_weights) == {-1} and set(pa.sink_weights) == {1}


def test_drho_x_shifts_degree_up():
    M = model("sym_minors(2)")
    D = drho_x(M, [1, 0, 0])
    assert not D[M.block(0), :].any()
    assert D[M.block(1), M.block(0)].any()
