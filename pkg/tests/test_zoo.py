from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from vmrtkit.errors import BadDimension, ParseError
from vmrtkit.linalg import Subspace
from vmrtkit.tensors import Poly, SymForm, monomials
from vmrtkit.zoo import (ihss_vmrt_zoo, make_severi, make_spinor5, make_sympl_vmrt, parse_variety,
                         quadrics_vanish_identically, sample_point, tangent_rank)

SMALL = [X for X in ihss_vmrt_zoo() if X.N <= 15]


@pytest.mark.parametrize("X", SMALL, ids=lambda X: X.name)
def test_stored_quadrics_vanish_on_the_chart(X):
    assert quadrics_vanish_identically(X)


@pytest.mark.parametrize("X", ihss_vmrt_zoo(), ids=lambda X: X.name)
def test_generic_tangent_rank_is_the_cone_dimension(X):
    t, _ = sample_point(X, 11)
    assert tangent_rank(X, t) == X.cone_dim


@pytest.mark.parametrize("spec,count", [("segre:3x3", 9), ("veronese:3", 6), ("veronese:4", 20),
                                        ("pluecker:5", 5), ("quadric:5", 1)])
def test_number_of_quadrics(spec, count):
    assert len(parse_variety(spec).quadrics) == count


def test_spinor_and_severi_quadric_counts():
    assert len(make_spinor5().quadrics) == 10
    assert len(make_severi().quadrics) == 27


def _spinor_oracle() -> list[SymForm]:
    """Pure-spinor relations written down directly from the chart layout."""
    z = Poly.variables(16)
    pair = {p: 1 + k for k, p in enumerate(combinations(range(5), 2))}

    def a(i, j):
        return z[pair[i, j]] if i < j else -z[pair[j, i]]

    def pf(i, j, k, l):
        return a(i, j) * a(k, l) - a(i, k) * a(j, l) + a(i, l) * a(j, k)

    y = z[11:]
    forms = []
    for k in range(5):
        rest = [x for x in range(5) if x != k]
        forms.append(z[0] * y[k] - pf(*rest))
    for i in range(5):
        forms.append(sum(((-1) ** k * a(i, k) * y[k] for k in range(5) if k != i), Poly.const(16, 0)))
    return [SymForm(16, 2, f) for f in forms]


def _coeff_span(forms) -> Subspace:
    mons = monomials(16, 2)
    return Subspace.span([[f.poly.coeff(m) for m in mons] for f in forms], len(mons))


def test_spinor_quadrics_match_an_independent_construction():
    X = make_spinor5()
    oracle = _spinor_oracle()
    for f in oracle:
        assert not f.poly(list(X.phi.components))
    assert _coeff_span(oracle) == _coeff_span(X.quadrics)


def test_parse_projection_drops_the_ambient_dimension():
    X = parse_variety("project(segre:3x3; 1,0,0,0,1,0,0,0,1)")
    assert X.N == 8
    assert X.cone_dim == 5


@pytest.mark.parametrize("spec,pos", [("cubic:3", 0), ("  banana", 2), ("project(segre:2x2; 1,x,0,0)", 21),
                                      ("project(segre:2x2; 1,0)", 18)])
def test_parse_errors_carry_a_position(spec, pos):
    with pytest.raises(ParseError) as info:
        parse_variety(spec)
    assert info.value.position == pos


def test_bad_dimensions_are_rejected():
    with pytest.raises(BadDimension):
        make_sympl_vmrt(1, 1)
    with pytest.raises(BadDimension):
        parse_variety("spinor:6")


def test_sampling_is_seeded():
    X = parse_variety("pluecker:5")
    assert sample_point(X, 5) == sample_point(X, 5)
    assert sample_point(X, np.random.default_rng(5)) == sample_point(X, 5)
    t, p = sample_point(X, 5)
    assert p == X(t) and any(p)
    assert all(isinstance(c, Fraction) for c in p)
