from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vmrtkit.errors import BadType
from vmrtkit.roots import (Cocharacter, Marking, bb_fixed_points, bb_poset, build, classify_action,
                           equalized_extremal_markings, grading_dims, is_cominuscule, longest_word,
                           opposition_involution, simple_types, tube_family, tube_markings)


def n_roots(kind: str, n: int) -> int:
    return {"A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1)}.get(
        kind, {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}.get((kind, n)))


@pytest.mark.parametrize("kind,rank", simple_types(8), ids=lambda x: str(x))
def test_root_counts_and_longest_word(kind, rank):
    rs = build(kind, rank)
    assert len(rs.all_roots) == n_roots(kind, rank)
    assert len(longest_word(rs)) == n_roots(kind, rank) // 2


@pytest.mark.parametrize("kind,rank,iota", [
    ("A", 4, [4, 3, 2, 1]), ("B", 3, [1, 2, 3]), ("C", 4, [1, 2, 3, 4]), ("D", 4, [1, 2, 3, 4]),
    ("D", 5, [1, 2, 3, 5, 4]), ("E", 6, [6, 2, 5, 4, 3, 1]), ("E", 7, list(range(1, 8))),
    ("G", 2, [1, 2])])
def test_opposition_involution(kind, rank, iota):
    assert opposition_involution(build(kind, rank)) == iota


@pytest.mark.parametrize("kind,rank,node,count,dim", [
    ("A", 3, 2, comb(4, 2), 4), ("A", 5, 2, comb(6, 2), 8), ("B", 4, 1, 8, 7), ("C", 3, 3, 8, 6),
    ("D", 5, 1, 10, 8), ("D", 5, 5, 16, 10), ("E", 6, 1, 27, 16), ("E", 7, 7, 56, 27)])
def test_fixed_point_counts_and_grading(kind, rank, node, count, dim):
    rs = build(kind, rank)
    mk = Marking(rs, node)
    assert is_cominuscule(mk)
    fps = bb_fixed_points(mk, Cocharacter.sigma(rank, node))
    assert len(fps) == count
    assert all(len(fp.tangent_weights) == dim for fp in fps)
    g = grading_dims(rs, Cocharacter.sigma(rank, node))
    assert g[1] == g[-1] == dim and set(g) == {-1, 0, 1}


def test_tube_markings_up_to_rank_7():
    got = sorted(tube_markings(7))
    want = sorted([("A", 1, 1), ("A", 3, 2), ("A", 5, 3), ("A", 7, 4)]
                  + [("B", n, 1) for n in range(2, 8)] + [("C", n, n) for n in range(2, 8)]
                  + [("D", n, 1) for n in range(4, 8)] + [("D", 4, 3), ("D", 4, 4), ("D", 6, 5), ("D", 6, 6)]
                  + [("E", 7, 7)])
    assert got == want
    assert all(tube_family(*m) is not None for m in got)


def test_equalized_extremal_markings_are_exactly_the_tube_ones():
    found = equalized_extremal_markings(7)
    assert all(r.tube for r in found)
    assert sorted((r.kind, r.rank, r.node) for r in found) == sorted(tube_markings(7))


def test_non_tube_marking_has_no_such_action():
    mk = Marking(build("E", 6), 1)
    assert not any(classify_action(mk, b).two_isolated_extremal_euler for b in range(1, 7))


def test_freudenthal_variety_has_source_and_sink():
    cl = classify_action(Marking(build("E", 7), 7), 7)
    assert cl.equalized and len(cl.euler_sources) == 1 and len(cl.euler_sinks) == 1
    assert cl.n_fixed == 56


@pytest.mark.parametrize("m", tube_markings(6), ids=lambda m: f"{m[0]}{m[1]}/P{m[2]}")
def test_source_has_a_unique_successor_of_codimension_one(m):
    kind, rank, node = m
    mk = Marking(build(kind, rank), node)
    for beta in range(1, rank + 1):
        if classify_action(mk, beta).two_isolated_extremal_euler:
            res = bb_poset(mk, Cocharacter.sigma(rank, beta))
            assert res.ok and res.v_minus and set(res.v_minus) == {1}


def test_bad_node_is_rejected():
    with pytest.raises(BadType):
        Marking(build("A", 3), 4)


markings = st.sampled_from([(k, r) for k, r in simple_types(6)]).flatmap(
    lambda kr: st.tuples(st.just(kr[0]), st.just(kr[1]), st.integers(1, kr[1]), st.integers(1, kr[1])))


@given(markings)
def test_reversing_the_cocharacter_negates_weights(m):
    kind, rank, node, beta = m
    mk = Marking(build(kind, rank), node)
    s = Cocharacter.sigma(rank, beta)
    a = bb_fixed_points(mk, s)
    b = bb_fixed_points(mk, s.reversed())
    assert [tuple(-w for w in fp.tangent_weights) for fp in a] == [fp.tangent_weights for fp in b]
    cl = classify_action(mk, beta)
    assert len(cl.euler_sources) <= 1 and len(cl.euler_sinks) <= 1
