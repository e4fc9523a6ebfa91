"""Split octonions in the Zorn vector-matrix model and the 27-dimensional Jordan algebra.

An octonion is a 2x2 "matrix" ``[[a, v], [w, b]]`` with scalars a, b and
3-vectors v, w.  Coordinates are flattened as ``(a, v1, v2, v3, w1, w2, w3, b)``.
Coefficients may be any ring elements supporting + - * (Fractions or Polys),
so the same code serves numeric checks and symbolic identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def _dot(x, y):
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]


def _cross(x, y):
    return (x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0])


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _scale(c, x):
    return tuple(c * a for a in x)


@dataclass(frozen=True)
class Octonion:
    a: object
    v: tuple
    w: tuple
    b: object

    @classmethod
    def from_coords(cls, c: Sequence) -> "Octonion":
        if len(c) != 8:
            raise ValueError("an octonion has 8 coordinates")
        return cls(c[0], tuple(c[1:4]), tuple(c[4:7]), c[7])

    def coords(self) -> tuple:
        return (self.a, *self.v, *self.w, self.b)

    def __add__(self, o: "Octonion") -> "Octonion":
        return Octonion(self.a + o.a, _add(self.v, o.v), _add(self.w, o.w), self.b + o.b)

    def __sub__(self, o: "Octonion") -> "Octonion":
        return self + o.scale(-1)

    def scale(self, c) -> "Octonion":
        return Octonion(c * self.a, _scale(c, self.v), _scale(c, self.w), c * self.b)

    def __mul__(self, o: "Octonion") -> "Octonion":
        a, v, w, b = self.a, self.v, self.w, self.b
        a2, v2, w2, b2 = o.a, o.v, o.w, o.b
        return Octonion(
            a * a2 + _dot(v, w2),
            _add(_add(_scale(a, v2), _scale(b2, v)), _scale(-1, _cross(w, w2))),
            _add(_add(_scale(a2, w), _scale(b, w2)), _cross(v, v2)),
            b * b2 + _dot(w, v2),
        )

    def conj(self) -> "Octonion":
        return Octonion(self.b, _scale(-1, self.v), _scale(-1, self.w), self.a)

    def norm(self):
        """The split quadratic form N(x) = ab - v.w, so that x * conj(x) = N(x) * 1."""
        return self.a * self.b - _dot(self.v, self.w)


def octonion_zero(zero=0) -> Octonion:
    return Octonion(zero, (zero,) * 3, (zero,) * 3, zero)


@dataclass(frozen=True)
class JordanElem:
    """Hermitian 3x3 octonion matrix with diagonal (al1, al2, al3).

    Off-diagonal entries are x12 = c3, x13 = conj(c2), x23 = c1.
    Coordinates are flattened as ``(al1, al2, al3, c1[8], c2[8], c3[8])``.
    """

    al: tuple
    c: tuple[Octonion, Octonion, Octonion]

    @classmethod
    def from_coords(cls, x: Sequence) -> "JordanElem":
        if len(x) != 27:
            raise ValueError("a Jordan element has 27 coordinates")
        return cls(tuple(x[:3]), tuple(Octonion.from_coords(x[3 + 8 * i: 11 + 8 * i]) for i in range(3)))

    def coords(self) -> tuple:
        return (*self.al, *self.c[0].coords(), *self.c[1].coords(), *self.c[2].coords())

    def adjugate(self) -> "JordanElem":
        """The quadratic adjoint X^#; it vanishes exactly on rank-one elements."""
        a1, a2, a3 = self.al
        c1, c2, c3 = self.c
        return JordanElem(
            (a2 * a3 - c1.norm(), a3 * a1 - c2.norm(), a1 * a2 - c3.norm()),
            (
                c2.conj() * c3.conj() - c1.scale(a1),
                c3.conj() * c1.conj() - c2.scale(a2),
                c1.conj() * c2.conj() - c3.scale(a3),
            ),
        )


def rank_one_chart(u: Octonion, v: Octonion, one=1) -> JordanElem:
    """Rank-one element with al1 = 1, c3 = u, c2 = v on the dense cell."""
    return JordanElem((one, u.norm(), v.norm()), ((u * v).conj(), v, u))
