from __future__ import annotations

from vmrtkit.octonions import JordanElem, Octonion, rank_one_chart
from vmrtkit.tensors import Poly

P = Poly.variables(24)
a = Octonion.from_coords(P[0:8])
b = Octonion.from_coords(P[8:16])


def test_norm_is_multiplicative():
    assert (a * b).norm() == a.norm() * b.norm()


def test_alternative_laws():
    assert (a * a) * b == a * (a * b)
    assert (b * a) * a == b * (a * a)


def test_conjugation_gives_the_norm():
    n = a.norm()
    prod = a * a.conj()
    assert prod.coords() == (n, 0, 0, 0, 0, 0, 0, n)


def test_rank_one_chart_has_zero_adjugate():
    Q = Poly.variables(16)
    u = Octonion.from_coords(Q[:8])
    v = Octonion.from_coords(Q[8:])
    X = rank_one_chart(u, v, one=Poly.const(16, 1))
    assert all(not c for c in X.adjugate().coords())


def test_adjugate_of_identity():
    one = Octonion(1, (0, 0, 0), (0, 0, 0), 1)
    zero = Octonion(0, (0, 0, 0), (0, 0, 0), 0)
    E = JordanElem((1, 1, 1), (zero, zero, zero))
    assert E.adjugate() == E
    assert one.norm() == 1
