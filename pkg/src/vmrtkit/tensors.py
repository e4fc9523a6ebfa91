"""Polynomials, symmetric forms, polarization and contraction.

A homogeneous polynomial ``f`` of degree ``d`` on Q^n is stored by its monomial
coefficients; the symmetric multilinear form ``P_f`` with ``P_f(v,...,v) = f(v)``
is recovered on demand by the inclusion-exclusion polarization formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch
from .linalg import QMatrix, to_fraction

Exps = tuple[int, ...]


def sym_dim(n: int, d: int) -> int:
    """Dimension of Sym^d of an n-dimensional space."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return comb(n + d - 1, d)


def monomials(n: int, d: int) -> list[Exps]:
    """All exponent vectors of degree d in n variables, in the fixed order.

    The order is lexicographically decreasing (x_0^d first), which is also the
    order of ``combinations_with_replacement(range(n), d)``.
    """
    out = []
    for idx in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in idx:
            e[i] += 1
        out.append(tuple(e))
    return out


def multiset_to_exps(idx: Iterable[int], n: int) -> Exps:
    e = [0] * n
    for i in idx:
        e[i] += 1
    return tuple(e)


class Poly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, object] | None = None):
        self.nvars = nvars
        self.terms: dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise DimensionMismatch(f"exponent {e} in {nvars} variables")
                c = to_fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, nvars: int) -> list["Poly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        return cls(n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return _raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_fraction(other)
            if not c:
                return Poly(self.nvars)
            return _raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return _raw(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self == Poly.const(self.nvars, other)

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # queries ----------------------------------------------------------------
    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def homogeneous_part(self, d: int) -> "Poly":
        return _raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coeff(self, e: Exps) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def deriv(self, i: int) -> "Poly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return _raw(self.nvars, t)

    def __call__(self, point: Sequence):
        """Evaluate at numbers or substitute polynomials (composition)."""
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point of length {len(point)} for {self.nvars} variables")
        if not self.terms:
            return _zero_like(point)
        powers: dict[tuple[int, int], object] = {}

        def pw(i: int, k: int):
            key = (i, k)
            if key not in powers:
                powers[key] = point[i] if k == 1 else pw(i, k - 1) * point[i]
            return powers[key]

        total = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = pw(i, k) * term
            total = term if total is None else total + term
        if not isinstance(total, Poly):
            total = to_fraction(total)
        return total

    def eval_mod(self, point: Sequence[int], p: int) -> int:
        """Evaluate at integer residues modulo p."""
        acc = 0
        for e, c in self.terms.items():
            term = c.numerator * pow(c.denominator, -1, p) % p
            for i, k in enumerate(e):
                if k:
                    term = term * pow(int(point[i]), k, p) % p
            acc += term
        return acc % p


def _raw(nvars: int, terms: dict) -> Poly:
    p = Poly.__new__(Poly)
    p.nvars = nvars
    p.terms = terms
    return p


def _zero_like(point: Sequence):
    for x in point:
        if isinstance(x, Poly):
            return Poly(x.nvars)
    return Fraction(0)


# ---------------------------------------------------------------------------
# symmetric forms


@dataclass(frozen=True)
class SymForm:
    """A homogeneous degree-d polynomial on Q^n viewed as a symmetric d-linear form."""

    n: int
    d: int
    poly: Poly

    def __post_init__(self):
        if self.poly.nvars != self.n:
            raise DimensionMismatch("polynomial ring does not match n")
        if not self.poly.is_homogeneous(self.d):
            raise ValueError(f"polynomial is not homogeneous of degree {self.d}")

    @classmethod
    def from_coeffs(cls, n: int, d: int, coeffs: Mapping[Exps, object]) -> "SymForm":
        return cls(n, d, Poly(n, coeffs))

    @classmethod
    def zero(cls, n: int, d: int) -> "SymForm":
        return cls(n, d, Poly(n))

    @property
    def coeffs(self) -> dict[Exps, Fraction]:
        return dict(self.poly.terms)

    def coeff_vector(self) -> list[Fraction]:
        """Coefficients listed in the fixed monomial order."""
        return [self.poly.coeff(e) for e in monomials(self.n, self.d)]

    def __call__(self, v: Sequence) -> Fraction:
        return self.poly(v)

    def __add__(self, other: "SymForm") -> "SymForm":
        _same_shape(self, other)
        return SymForm(self.n, self.d, self.poly + other.poly)

    def __sub__(self, other: "SymForm") -> "SymForm":
        _same_shape(self, other)
        return SymForm(self.n, self.d, self.poly - other.poly)

    def scale(self, c) -> "SymForm":
        return SymForm(self.n, self.d, self.poly * c)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymForm) and (self.n, self.d) == (other.n, other.d) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.n, self.d, self.poly))

    def tensor_entry(self, idx: Sequence[int]) -> Fraction:
        """P_f(e_{i1}, ..., e_{id}) read off from the coefficients.

        A monomial x^I with multinomial coefficient d!/I! appears in the full
        expansion that many times, so the symmetric tensor entry is coeff/multinomial.
        """
        e = multiset_to_exps(idx, self.n)
        mult = factorial(self.d)
        for k in e:
            mult //= factorial(k)
        return self.poly.coeff(e) / mult


def _same_shape(a: SymForm, b: SymForm) -> None:
    if (a.n, a.d) != (b.n, b.d):
        raise DimensionMismatch(f"forms of shape {(a.n, a.d)} and {(b.n, b.d)}")


def _vec_sum(vs: Sequence[Sequence], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for v in vs:
        for i, x in enumerate(v):
            out[i] += to_fraction(x)
    return out


def polarize_eval(F: SymForm, args: Sequence[Sequence]) -> Fraction:
    """Evaluate the symmetric multilinear form P_f on d vectors.

    Uses P_f(v_1..v_d) = (1/d!) sum over nonempty S of (-1)^(d-|S|) f(sum_{i in S} v_i).
    """
    d = F.d
    if len(args) != d:
        raise DimensionMismatch(f"{len(args)} arguments for a degree-{d} form")
    for a in args:
        if len(a) != F.n:
            raise DimensionMismatch(f"argument of length {len(a)} in dimension {F.n}")
    if d == 0:
        return F.poly.coeff(())
    total = Fraction(0)
    for r in range(1, d + 1):
        sign = -1 if (d - r) % 2 else 1
        for S in combinations(range(d), r):
            total += sign * F.poly(_vec_sum([args[i] for i in S], F.n))
    return total / factorial(d)


def contract(F: SymForm, w: Sequence) -> SymForm:
    """The degree d-1 form v -> P_f(w, v, ..., v); zero on degree-0 input."""
    if len(w) != F.n:
        raise DimensionMismatch(f"vector of length {len(w)} in dimension {F.n}")
    if F.d == 0:
        return SymForm.zero(F.n, 0)
    acc = Poly(F.n)
    for j, wj in enumerate(w):
        wj = to_fraction(wj)
        if wj:
            acc = acc + F.poly.deriv(j) * wj
    return SymForm(F.n, F.d - 1, acc * Fraction(1, F.d))


@dataclass(frozen=True)
class VValuedSymMap:
    """A symmetric map Sym^d Q^n -> Q^N given by one SymForm per output coordinate."""

    n: int
    d: int
    components: tuple[SymForm, ...]

    def __post_init__(self):
        for c in self.components:
            if (c.n, c.d) != (self.n, self.d):
                raise DimensionMismatch("component shape mismatch")

    @property
    def N(self) -> int:
        return len(self.components)

    def __call__(self, args: Sequence[Sequence]) -> tuple[Fraction, ...]:
        return tuple(polarize_eval(c, args) for c in self.components)

    def diagonal(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(c(v) for c in self.components)

    def slice(self, w: Sequence) -> "VValuedSymMap":
        """The map A(w, ., ..., .) of degree d-1."""
        return VValuedSymMap(self.n, self.d - 1, tuple(contract(c, w) for c in self.components))

    def matrix(self) -> QMatrix:
        """Linear maps only: the N x n matrix of a degree-1 map."""
        if self.d != 1:
            raise ValueError("matrix() needs a degree-1 map")
        rows = []
        for c in self.components:
            rows.append([c.poly.coeff(tuple(1 if j == i else 0 for j in range(self.n))) for i in range(self.n)])
        return QMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# polynomial maps


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map Q^m -> Q^N."""

    m: int
    components: tuple[Poly, ...]

    def __post_init__(self):
        for c in self.components:
            if c.nvars != self.m:
                raise DimensionMismatch(f"component in {c.nvars} variables, expected {self.m}")

    @property
    def N(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return max((c.degree for c in self.components), default=0)

    def __call__(self, t: Sequence) -> list:
        if len(t) != self.m:
            raise DimensionMismatch(f"parameter of length {len(t)}, expected {self.m}")
        return [c(t) for c in self.components]

    def derivative_map(self, i: int) -> "PolyMap":
        return PolyMap(self.m, tuple(c.deriv(i) for c in self.components))

    def jacobian_polys(self) -> list[list[Poly]]:
        return [[c.deriv(j) for j in range(self.m)] for c in self.components]


def jacobian(phi: PolyMap, t: Sequence) -> QMatrix:
    """N x m matrix of partial derivatives of phi at t."""
    if len(t) != phi.m:
        raise DimensionMismatch(f"parameter of length {len(t)}, expected {phi.m}")
    t = [to_fraction(x) for x in t]
    rows = [[c.deriv(j)(t) for j in range(phi.m)] for c in phi.components]
    return QMatrix.from_rows(rows) if rows else QMatrix(0, phi.m, [])
