"""Parametrized cone varieties: quadrics, Segre, Veronese, Pluecker, spinor, Severi,
the symplectic-Grassmannian model, and their linear projections.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Sequence

import numpy as np

from .errors import BadDimension, DegenerateParametrization, ParseError, SecantViolation
from .linalg import Echelon, QMatrix, Subspace, rank
from .octonions import Octonion, JordanElem, rank_one_chart
from .tensors import Poly, PolyMap, SymForm, jacobian, monomials

SAMPLE_HEIGHT = 10
SAMPLE_ATTEMPTS = 100
SECANT_SAMPLES = 200


@dataclass(frozen=True)
class ParamVariety:
    """Affine cone given as the closure of the image of ``phi``.

    ``cone_dim`` is the dimension of the cone, i.e. the rank of the tangent
    space at a generic point.  It equals m unless the parametrization has
    positive-dimensional fibres, as for the Segre and Pluecker charts.
    """

    name: str
    N: int
    m: int
    phi: PolyMap
    cone_dim: int
    quadrics: tuple[SymForm, ...] | None = None
    expected_dim_aut1: int | None = None
    check: str = "secant"

    def __post_init__(self):
        if self.phi.N != self.N or self.phi.m != self.m:
            raise BadDimension(f"{self.name}: phi has shape {self.phi.m}->{self.phi.N}")

    def __call__(self, t: Sequence) -> list[Fraction]:
        return self.phi(t)


def _sym2(vars_: Sequence[Poly]) -> list[Poly]:
    return [vars_[i] * vars_[j] for i, j in combinations_with_replacement(range(len(vars_)), 2)]


def _quad(N: int, terms: dict[tuple[int, int], int]) -> SymForm:
    coeffs: dict[tuple, Fraction] = {}
    for (i, j), c in terms.items():
        e = [0] * N
        e[i] += 1
        e[j] += 1
        e = tuple(e)
        coeffs[e] = coeffs.get(e, 0) + c
    return SymForm.from_coeffs(N, 2, coeffs)


def _independent(forms: list[SymForm]) -> tuple[SymForm, ...]:
    """Keep the forms that enlarge the span, in order."""
    if not forms:
        return ()
    ech = Echelon(len(monomials(forms[0].n, 2)))
    kept = []
    for f in forms:
        if ech.add_rows([f.coeff_vector()]):
            kept.append(f)
    return tuple(kept)


def make_quadric(n: int) -> ParamVariety:
    """Cone over the smooth quadric x0*x_{n-1} = sum_{0<i<n-1} x_i^2, chart s*(1, t, q(t))."""
    if n < 3:
        raise BadDimension("quadric needs n >= 3")
    P = Poly.variables(n - 1)
    t, s = P[: n - 2], P[n - 2]
    q = sum((x * x for x in t), Poly(n - 1))
    comps = [s] + [s * x for x in t] + [s * q]
    terms = {(0, n - 1): 1}
    for i in range(1, n - 1):
        terms[(i, i)] = -1
    return ParamVariety(f"quadric:{n}", n, n - 1, PolyMap(n - 1, tuple(comps)), n - 1,
                        (_quad(n, terms),), expected_dim_aut1=n)


def make_segre(a: int, b: int) -> ParamVariety:
    """Rank <= 1 matrices u v^T in Q^(a x b), row-major coordinates."""
    if a < 2 or b < 2:
        raise BadDimension("segre needs a, b >= 2")
    P = Poly.variables(a + b)
    u, v = P[:a], P[a:]
    comps = tuple(u[i] * v[j] for i in range(a) for j in range(b))
    N = a * b
    quads = []
    for i, k in combinations(range(a), 2):
        for j, l in combinations(range(b), 2):
            quads.append(_quad(N, {(i * b + j, k * b + l): 1, (i * b + l, k * b + j): -1}))
    return ParamVariety(f"segre:{a}x{b}", N, a + b, PolyMap(a + b, comps), a + b - 1,
                        tuple(quads), expected_dim_aut1=a * b)


def sym_index(n: int) -> dict[tuple[int, int], int]:
    """Coordinate index of the (i, j) entry, i <= j, of a symmetric n x n matrix."""
    idx = {}
    for k, (i, j) in enumerate(combinations_with_replacement(range(n), 2)):
        idx[(i, j)] = idx[(j, i)] = k
    return idx


def skew_index(n: int) -> dict[tuple[int, int], int]:
    """Coordinate index of the (i, j) entry, i < j, of a skew n x n matrix."""
    return {(i, j): k for k, (i, j) in enumerate(combinations(range(n), 2))}


def make_veronese2(n: int) -> ParamVariety:
    """Rank <= 1 symmetric matrices u u^T; coordinates x_ij (i <= j) with x_ij = u_i u_j."""
    if n < 2:
        raise BadDimension("veronese needs n >= 2")
    u = Poly.variables(n)
    N = n * (n + 1) // 2
    idx = sym_index(n)
    quads = []
    for i, k in combinations(range(n), 2):
        for j, l in combinations(range(n), 2):
            quads.append(_quad(N, {(idx[i, j], idx[k, l]): 1, (idx[i, l], idx[k, j]): -1}))
    return ParamVariety(f"veronese:{n}", N, n, PolyMap(n, tuple(_sym2(u))), n,
                        _independent(quads), expected_dim_aut1=N)


def make_pluecker_rank2(n: int) -> ParamVariety:
    """Decomposable bivectors u ^ v with coordinates x_ij = u_i v_j - u_j v_i (i < j)."""
    if n < 4:
        raise BadDimension("pluecker needs n >= 4")
    P = Poly.variables(2 * n)
    u, v = P[:n], P[n:]
    comps = tuple(u[i] * v[j] - u[j] * v[i] for i, j in combinations(range(n), 2))
    N = n * (n - 1) // 2
    idx = skew_index(n)
    quads = []
    for i, j, k, l in combinations(range(n), 4):
        quads.append(_quad(N, {(idx[i, j], idx[k, l]): 1, (idx[i, k], idx[j, l]): -1,
                               (idx[i, l], idx[j, k]): 1}))
    return ParamVariety(f"pluecker:{n}", N, 2 * n, PolyMap(2 * n, comps), 2 * n - 3,
                        tuple(quads), expected_dim_aut1=N)


def pfaffian4(A: dict[tuple[int, int], object], i: int, j: int, k: int, l: int):
    return A[i, j] * A[k, l] - A[i, k] * A[j, l] + A[i, l] * A[j, k]


def derive_quadrics(phi: PolyMap) -> tuple[SymForm, ...]:
    """Basis (canonical echelon form) of the degree-2 forms vanishing on the image of phi."""
    N = phi.N
    mons = monomials(N, 2)
    pulled = []
    for e in mons:
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        pulled.append(phi.components[idx[0]] * phi.components[idx[1]])
    support = sorted({t for p in pulled for t in p.terms})
    # rows: parameter monomials; columns: quadratic monomials
    rows = [[p.coeff(t) for p in pulled] for t in support]
    ech = Echelon(len(mons))
    ech.add_rows(rows)
    kernel = Subspace.span(ech.kernel_vectors(), len(mons))
    return tuple(SymForm.from_coeffs(N, 2, dict(zip(mons, vec))) for vec in kernel.basis)


@lru_cache(maxsize=None)
def make_spinor5() -> ParamVariety:
    """Cone over the 10-dimensional spinor variety in P^15 via pure spinors.

    Chart: s * (1, A_ij for i < j, Pf of the 4x4 principal minor omitting k),
    with A a 5x5 skew matrix.
    """
    P = Poly.variables(11)
    s, a = P[0], P[1:]
    A = {}
    for k, (i, j) in enumerate(combinations(range(5), 2)):
        A[i, j] = a[k]
    pfs = []
    for omit in range(5):
        rest = [x for x in range(5) if x != omit]
        pfs.append(pfaffian4(A, *rest))
    comps = tuple([s] + [s * x for x in a] + [s * f for f in pfs])
    phi = PolyMap(11, comps)
    return ParamVariety("spinor:5", 16, 11, phi, 11, derive_quadrics(phi), expected_dim_aut1=16)


def jordan_adjugate_quadrics() -> tuple[SymForm, ...]:
    """The 27 components of X^# as quadratic forms on the 27 Jordan coordinates."""
    X = JordanElem.from_coords(Poly.variables(27))
    return tuple(SymForm(27, 2, c) for c in X.adjugate().coords())


@lru_cache(maxsize=None)
def make_severi() -> ParamVariety:
    """Cone over the Cayley plane in P^26: s * X(u, v) with X the rank-one chart."""
    P = Poly.variables(17)
    s = P[0]
    u = Octonion.from_coords(P[1:9])
    v = Octonion.from_coords(P[9:17])
    X = rank_one_chart(u, v, one=Poly.const(17, 1))
    comps = tuple(s * c for c in X.coords())
    return ParamVariety("severi", 27, 17, PolyMap(17, comps), 17,
                        jordan_adjugate_quadrics(), expected_dim_aut1=27)


def make_sympl_vmrt(k: int, mq: int) -> ParamVariety:
    """(w w^T, w q^T) for w in Q^k, q in Q^mq: second Veronese projected from P(Sym^2 Q)."""
    if k < 2 or mq < 1:
        raise BadDimension("sympl needs k >= 2 and m >= 1")
    P = Poly.variables(k + mq)
    w, q = P[:k], P[k:]
    comps = tuple(_sym2(w) + [w[i] * q[j] for i in range(k) for j in range(mq)])
    N = k * (k + 1) // 2 + k * mq
    return ParamVariety(f"sympl:{k},{mq}", N, k + mq, PolyMap(k + mq, comps), k + mq,
                        None, expected_dim_aut1=k * (k + 1) // 2, check="variety")


# ---------------------------------------------------------------------------
# sampling and checks


def sample_params(X: ParamVariety, rng: np.random.Generator) -> list[Fraction]:
    return [Fraction(int(x)) for x in rng.integers(-SAMPLE_HEIGHT, SAMPLE_HEIGHT + 1, X.m)]


def sample_point(X: ParamVariety, seed) -> tuple[list[Fraction], list[Fraction]]:
    """Seeded sample (t, phi(t)) with phi(t) != 0."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(SAMPLE_ATTEMPTS):
        t = sample_params(X, rng)
        p = X.phi(t)
        if any(p):
            return t, p
    raise DegenerateParametrization(f"{X.name}: {SAMPLE_ATTEMPTS} samples all mapped to 0")


def tangent_rank(X: ParamVariety, t: Sequence) -> int:
    """Rank of span(jacobian columns, phi(t))."""
    J = jacobian(X.phi, t)
    p = X.phi(t)
    rows = [list(J.row(i)) + [p[i]] for i in range(X.N)]
    return rank(rows)


def quadrics_vanish_identically(X: ParamVariety) -> bool:
    """Symbolic check that every stored quadric pulls back to the zero polynomial."""
    for q in X.quadrics or ():
        if q.poly(list(X.phi.components)):
            return False
    return True


# ---------------------------------------------------------------------------
# projections


@dataclass(frozen=True)
class QuotientMap:
    """Fixed linear map V -> V/L that keeps the non-pivot coordinates of L's echelon basis."""

    L: Subspace
    keep: tuple[int, ...] = field(init=False)
    matrix: QMatrix = field(init=False)

    def __post_init__(self):
        N = self.L.ambient_dim
        piv = [next(i for i, x in enumerate(b) if x) for b in self.L.basis]
        keep = tuple(i for i in range(N) if i not in piv)
        rows = []
        for c in keep:
            row = [Fraction(0)] * N
            row[c] = Fraction(1)
            for b, pc in zip(self.L.basis, piv):
                if b[c]:
                    row[pc] -= b[c]
            rows.append(row)
        object.__setattr__(self, "keep", keep)
        object.__setattr__(self, "matrix", QMatrix.from_rows(rows) if rows else QMatrix(0, N, []))

    def __call__(self, v: Sequence) -> tuple[Fraction, ...]:
        return self.matrix @ v


def _check_avoidance(X: ParamVariety, L: Subspace, mode: str, seed: int) -> None:
    ech = Echelon(X.N)
    ech.add_rows(list(L.basis))
    rng = np.random.default_rng(seed)
    for _ in range(SECANT_SAMPLES):
        _, p1 = sample_point(X, rng)
        if mode == "variety":
            if ech.contains(p1):
                raise SecantViolation(f"sampled point of {X.name} lies in L")
            continue
        _, p2 = sample_point(X, rng)
        lam = Fraction(int(rng.integers(-SAMPLE_HEIGHT, SAMPLE_HEIGHT + 1)))
        pt = [a + lam * b for a, b in zip(p1, p2)]
        if any(pt) and ech.contains(pt):
            raise SecantViolation(f"sampled secant point of {X.name} lies in L")


def project(X: ParamVariety, L: Subspace, check: str | None = None, seed: int = 0) -> ParamVariety:
    """Compose phi with the quotient by L.

    ``check`` is "secant" (no sampled secant point in L), "variety" (no sampled
    point of the cone in L) or "none"; it defaults to the variety's own setting.
    """
    if L.ambient_dim != X.N:
        raise BadDimension(f"L lives in dimension {L.ambient_dim}, variety in {X.N}")
    if L.p is not None:
        raise BadDimension("projection centre must be rational")
    if L.dim >= X.N:
        raise BadDimension("projection centre must be a proper subspace")
    if L.dim == 0:
        return X
    mode = check or X.check
    if mode != "none":
        _check_avoidance(X, L, mode, seed)
    Q = QuotientMap(L)
    comps = []
    for r in range(Q.matrix.rows):
        acc = Poly(X.m)
        for j, c in enumerate(Q.matrix.row(r)):
            if c:
                acc = acc + X.phi.components[j] * c
        comps.append(acc)
    vecs = "; ".join(",".join(str(x) for x in b) for b in L.basis)
    return ParamVariety(f"project({X.name}; {vecs})", X.N - L.dim, X.m, PolyMap(X.m, tuple(comps)),
                        X.cone_dim, None, None, check=X.check)


# ---------------------------------------------------------------------------
# variety-spec DSL


_BASE_RE = {
    "quadric": re.compile(r"quadric\s*:\s*(\d+)"),
    "segre": re.compile(r"segre\s*:\s*(\d+)\s*x\s*(\d+)"),
    "veronese": re.compile(r"veronese\s*:\s*(\d+)"),
    "pluecker": re.compile(r"pluecker\s*:\s*(\d+)"),
    "spinor": re.compile(r"spinor\s*:\s*(\d+)"),
    "severi": re.compile(r"severi"),
    "sympl": re.compile(r"sympl\s*:\s*(\d+)\s*,\s*(\d+)"),
}


def _parse_base(text: str, offset: int) -> ParamVariety:
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    for kind, rx in _BASE_RE.items():
        m = rx.fullmatch(s)
        if not m:
            continue
        args = [int(g) for g in m.groups()]
        if kind == "quadric":
            return make_quadric(*args)
        if kind == "segre":
            return make_segre(*args)
        if kind == "veronese":
            return make_veronese2(*args)
        if kind == "pluecker":
            return make_pluecker_rank2(*args)
        if kind == "spinor":
            if args[0] != 5:
                raise BadDimension("only spinor:5 is available")
            return make_spinor5()
        if kind == "severi":
            return make_severi()
        return make_sympl_vmrt(*args)
    raise ParseError(f"unknown variety {s!r}", offset + lead)


def _parse_vector(text: str, offset: int) -> list[Fraction]:
    body = text.strip().strip("()[]")
    if not body:
        raise ParseError("empty vector", offset)
    out = []
    start = offset + text.index(body)
    for m in re.finditer(r"[^,]+", body):
        part = m.group()
        try:
            out.append(Fraction(part.strip()))
        except (ValueError, ZeroDivisionError):
            lead = len(part) - len(part.lstrip())
            raise ParseError(f"bad rational {part.strip()!r}", start + m.start() + lead) from None
    return out


def parse_variety(spec: str, seed: int = 0) -> ParamVariety:
    """Parse "quadric:n", "segre:a x b", ..., or "project(<base>; v1; v2; ...)"."""
    s = spec.strip()
    if s.startswith("project"):
        open_ = s.find("(")
        if open_ < 0 or not s.endswith(")"):
            raise ParseError("project(...) needs parentheses", len(s))
        inner = s[open_ + 1:-1]
        parts = inner.split(";")
        pos = open_ + 1
        base = _parse_base(parts[0], pos)
        pos += len(parts[0]) + 1
        vecs = []
        for part in parts[1:]:
            v = _parse_vector(part, pos)
            if len(v) != base.N:
                raise ParseError(f"vector of length {len(v)} for ambient dimension {base.N}", pos)
            vecs.append(v)
            pos += len(part) + 1
        return project(base, Subspace.span(vecs, base.N), seed=seed)
    return _parse_base(spec, 0)


def ihss_vmrt_zoo() -> list[ParamVariety]:
    """Representative VMRT models for every row of the classical list of IHSS."""
    return [
        make_quadric(3), make_quadric(4), make_quadric(5), make_quadric(6),
        make_segre(2, 2), make_segre(2, 3), make_segre(3, 3),
        make_pluecker_rank2(4), make_pluecker_rank2(5), make_pluecker_rank2(6),
        make_veronese2(2), make_veronese2(3), make_veronese2(4),
        make_spinor5(), make_severi(),
    ]
