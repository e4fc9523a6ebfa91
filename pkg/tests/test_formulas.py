from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vmrtkit.aut import AutConfig, prolong_k
from vmrtkit.errors import BadDimension
from vmrtkit.formulas import (GRIDS, inequality_grid, projection_instances, segre_projection_dim,
                              veronese_projection_dim)
from vmrtkit.zoo import parse_variety


@pytest.mark.parametrize("family", sorted(GRIDS))
def test_grids_have_no_violations(family):
    res = inequality_grid(family, 6)
    assert res.ok and res.checked > 0 and not res.violations


def test_segre_stated_form_differs_from_the_gap():
    res = inequality_grid("segre", 6)
    assert res.checked == 205
    assert len(res.mismatches) == 165
    assert res.factored_ok
    for family in ("pluecker", "veronese", "sympl"):
        assert not inequality_grid(family, 6).mismatches


@given(st.integers(0, 30), st.integers(0, 30), st.integers(0, 30), st.integers(0, 30))
def test_segre_gap_factorization_is_an_identity(a, b, s, t):
    assert a * b - (a - s) * t - (b - t) * s == (a - s) * (b - t) + s * t


def test_unknown_family():
    with pytest.raises(BadDimension):
        inequality_grid("cubic")
    with pytest.raises(BadDimension):
        projection_instances("cubic")


def test_closed_forms_on_small_centres():
    identity3 = (1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert segre_projection_dim(3, 3, [identity3]) == 0
    assert segre_projection_dim(3, 3, [(1, 0, 0, 0, 0, 0, 0, 0, 0)]) == 4
    assert veronese_projection_dim(3, [(1, 0, 0, 0, 0, 0)]) == 3


FAST = [inst for fam in ("segre", "veronese", "pluecker", "sympl")
        for inst in projection_instances(fam)[:2]]


@pytest.mark.parametrize("inst", FAST, ids=lambda i: i.spec)
def test_brute_force_prolongation_matches_the_formula(inst):
    X = parse_variety(inst.spec)
    assert prolong_k(X, 1, AutConfig(seed=3))[1] == inst.expected
