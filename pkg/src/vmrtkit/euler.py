"""Graded models of Euler-symmetric varieties built from symbol systems.

A symbol system F = F^0 + ... + F^r (F^k inside Sym^k W*) determines the
dual graded space V = V_0 + ... + V_r, the embedding
``f(u) = e_0 + sum_k Pi_k(u, ..., u)``, the nilpotent operators Gamma_u and
the vector-group representation rho_x.  For the tube models shipped here a
grading-reversing duality J of the cone gives the opposite representation
rho_y, from which the lambda map into the prolongation of the VMRT cone is
assembled.

All matrices are numpy object arrays of Fractions acting on V in the basis
e_0 | V_1 basis | ... | V_r basis, each V_k basis dual to the chosen basis of F^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, lcm
from typing import Callable, Sequence

import numpy as np

from .errors import (BadDimension, DegeneratePair, InvalidSymbolSystem, NotTubeModel)
from .linalg import Echelon, Subspace, inverse, solve_in_span, solve_square
from .tensors import Poly, SymForm, VValuedSymMap, contract, monomials

Matrix = np.ndarray


# ---------------------------------------------------------------------------
# symbol systems


@dataclass(frozen=True)
class SymbolSystem:
    """Graded system of forms on W; ``levels[k]`` is a basis of F^k."""

    name: str
    W_dim: int
    levels: tuple[tuple[SymForm, ...], ...]
    kind: str = "custom"
    size: int = 0

    @property
    def rank(self) -> int:
        return len(self.levels) - 1

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(F) for F in self.levels)

    @property
    def is_tube(self) -> bool:
        if self.kind in ("minors", "sym_minors", "quadric"):
            return True
        return self.kind == "pfaffian" and self.size % 2 == 0


def _span_echelon(forms: Sequence[SymForm], n: int, d: int) -> Echelon:
    ech = Echelon(len(monomials(n, d)))
    if forms:
        ech.add_rows([f.coeff_vector() for f in forms])
    return ech


def closure_failures(S: SymbolSystem) -> list[tuple[int, int, int]]:
    """(k, basis form index, direction) triples where iota_{e_a} F^k leaves F^{k-1}."""
    n = S.W_dim
    bad = []
    for k in range(1, S.rank + 1):
        lower = _span_echelon(S.levels[k - 1], n, k - 1)
        for j, phi in enumerate(S.levels[k]):
            for a in range(n):
                e = [0] * n
                e[a] = 1
                if not lower.contains(contract(phi, e).coeff_vector()):
                    bad.append((k, j, a))
    return bad


def validate(S: SymbolSystem) -> None:
    """Raise InvalidSymbolSystem unless S is a symbol system in the strict sense."""
    n = S.W_dim
    if S.rank < 1:
        raise InvalidSymbolSystem("need at least F^0 and F^1")
    F0 = S.levels[0]
    if len(F0) != 1 or F0[0].d != 0 or F0[0].poly.coeff((0,) * n) == 0:
        raise InvalidSymbolSystem("F^0 must be the constants")
    for k, F in enumerate(S.levels):
        if any(f.n != n or f.d != k for f in F):
            raise InvalidSymbolSystem(f"level {k} holds forms of the wrong shape")
        if _span_echelon(F, n, k).rank != len(F):
            raise InvalidSymbolSystem(f"level {k} is not linearly independent")
    if len(S.levels[1]) != n:
        raise InvalidSymbolSystem("F^1 must be all of W*")
    if not S.levels[-1]:
        raise InvalidSymbolSystem("top level is empty")
    bad = closure_failures(S)
    if bad:
        raise InvalidSymbolSystem(f"contraction leaves the system at {bad[:3]}")


def _det(M: list[list]):
    """Determinant by Laplace expansion along the first row (small sizes, ring entries)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0] * 0


def _pf(M: list[list], idx: Sequence[int]):
    """Pfaffian of the principal skew submatrix on ``idx`` (expansion along the first index)."""
    if not idx:
        return 1
    i = idx[0]
    total = None
    for pos in range(1, len(idx)):
        j = idx[pos]
        rest = idx[1:pos] + idx[pos + 1:]
        term = M[i][j] * _pf(M, rest)
        if (pos - 1) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _const_level(n: int) -> tuple[SymForm, ...]:
    return (SymForm(n, 0, Poly.const(n, 1)),)


def _linear_level(n: int) -> tuple[SymForm, ...]:
    return tuple(SymForm(n, 1, Poly.var(n, i)) for i in range(n))


def _independent_forms(forms: Sequence[SymForm], n: int, d: int) -> tuple[SymForm, ...]:
    ech = Echelon(len(monomials(n, d)))
    kept = []
    for f in forms:
        if f.poly and ech.add_rows([f.coeff_vector()]):
            kept.append(f)
    return tuple(kept)


def minors_symbol_system(n: int) -> SymbolSystem:
    """F^k = all k x k minors of a generic n x n matrix (row-major coordinates)."""
    if n < 1:
        raise BadDimension("minors need n >= 1")
    N = n * n
    X = Poly.variables(N)
    M = [[X[i * n + j] for j in range(n)] for i in range(n)]
    levels = [_const_level(N), _linear_level(N)]
    for k in range(2, n + 1):
        forms = []
        for I in combinations(range(n), k):
            for J in combinations(range(n), k):
                forms.append(SymForm(N, k, _det([[M[i][j] for j in J] for i in I])))
        levels.append(tuple(forms))
    return SymbolSystem(f"minors({n})", N, tuple(levels), "minors", n)


def minor_labels(n: int, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(rows, cols) of the k-minors in the order used by :func:`minors_symbol_system`."""
    if k == 0:
        return [((), ())]
    return [(I, J) for I in combinations(range(n), k) for J in combinations(range(n), k)]


def sym_minors_symbol_system(n: int) -> SymbolSystem:
    """F^k = span of the k x k minors of a generic symmetric n x n matrix."""
    if n < 1:
        raise BadDimension("symmetric minors need n >= 1")
    N = n * (n + 1) // 2
    Y = Poly.variables(N)
    idx = {}
    for k, (i, j) in enumerate(combinations_with_replacement(range(n), 2)):
        idx[i, j] = idx[j, i] = k
    M = [[Y[idx[i, j]] for j in range(n)] for i in range(n)]
    levels = [_const_level(N), _linear_level(N)]
    for k in range(2, n + 1):
        forms = [SymForm(N, k, _det([[M[i][j] for j in J] for i in I]))
                 for I in combinations(range(n), k) for J in combinations(range(n), k)]
        levels.append(_independent_forms(forms, N, k))
    return SymbolSystem(f"sym_minors({n})", N, tuple(levels), "sym_minors", n)


def pfaffian_symbol_system(m: int) -> SymbolSystem:
    """F^k = all 2k x 2k principal sub-Pfaffians of a generic skew m x m matrix.

    Even m gives the tube models; odd m (for instance m = 5, the spinor
    tenfold) is accepted for embedding and base-locus work only.
    """
    if m < 4:
        raise BadDimension("pfaffian systems need m >= 4")
    N = m * (m - 1) // 2
    Z = Poly.variables(N)
    A = [[None] * m for _ in range(m)]
    for k, (i, j) in enumerate(combinations(range(m), 2)):
        A[i][j] = Z[k]
        A[j][i] = -Z[k]
    levels = [_const_level(N), _linear_level(N)]
    for k in range(2, m // 2 + 1):
        levels.append(tuple(SymForm(N, k, _pf(A, list(I))) for I in combinations(range(m), 2 * k)))
    return SymbolSystem(f"pfaffian({m})", N, tuple(levels), "pfaffian", m)


def quadric_form(n: int) -> Poly:
    """w_0 w_{n-1} - sum_{0<i<n-1} w_i^2, the form used by the quadric cone in the zoo."""
    w = Poly.variables(n)
    q = w[0] * w[n - 1]
    for i in range(1, n - 1):
        q = q - w[i] * w[i]
    return q


def quadric_symbol_system(n: int) -> SymbolSystem:
    if n < 3:
        raise BadDimension("quadric system needs n >= 3")
    levels = (_const_level(n), _linear_level(n), (SymForm(n, 2, quadric_form(n)),))
    return SymbolSystem(f"quadric({n})", n, levels, "quadric", n)


def linear_symbol_system(n: int) -> SymbolSystem:
    """Rank-one system F = (constants, W*): the model is a projective space."""
    if n < 1:
        raise BadDimension("need n >= 1")
    return SymbolSystem(f"linear({n})", n, (_const_level(n), _linear_level(n)), "linear", n)


def symbol_system(spec: str) -> SymbolSystem:
    """Parse "minors:n", "sym_minors:n", "pfaffian:m", "quadric:n" or "linear:n"."""
    kind, _, arg = spec.partition(":")
    makers = {"minors": minors_symbol_system, "sym_minors": sym_minors_symbol_system,
              "pfaffian": pfaffian_symbol_system, "quadric": quadric_symbol_system,
              "linear": linear_symbol_system}
    if kind not in makers or not arg.strip().isdigit():
        raise BadDimension(f"unknown symbol system {spec!r}")
    return makers[kind](int(arg))


# ---------------------------------------------------------------------------
# graded model


def _zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    out = np.empty((n, m), dtype=object)
    out.fill(Fraction(0))
    return out


def _eye(n: int) -> Matrix:
    out = _zeros(n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def _vec(x: Sequence) -> np.ndarray:
    return np.array([Fraction(v) for v in x], dtype=object)


def _scaled(A: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer array and common denominator d with A = ints / d."""
    flat = [Fraction(x) for x in A.flat]
    d = lcm(*(x.denominator for x in flat)) if flat else 1
    ints = np.empty(len(flat), dtype=object)
    ints[:] = [x.numerator * (d // x.denominator) for x in flat]
    return ints.reshape(A.shape), d


def mdot(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of Fraction arrays; uses int64 BLAS-free numpy when entries are small."""
    Ai, da = _scaled(A)
    Bi, db = _scaled(B)
    inner = A.shape[-1]
    ma = max((abs(x) for x in Ai.flat), default=0)
    mb = max((abs(x) for x in Bi.flat), default=0)
    if ma * mb * max(inner, 1) < 2**62:
        P = Ai.astype(np.int64).dot(Bi.astype(np.int64)).astype(object)
    else:
        P = Ai.dot(Bi)
    den = da * db
    out = np.empty(P.size, dtype=object)
    out[:] = [Fraction(int(x), den) for x in P.flat]
    return out.reshape(P.shape)


@dataclass
class GradedModel:
    symbol: SymbolSystem
    offsets: tuple[int, ...]
    gamma_basis: tuple[Matrix, ...]  # Gamma_{e_a} for a = 0..W_dim-1
    _J: Matrix | None = field(default=None, repr=False)
    _Jinv: Matrix | None = field(default=None, repr=False)
    _gamma_flat: tuple[Matrix, int] | None = field(default=None, repr=False)
    _dx_scaled: tuple[Matrix, int] | None = field(default=None, repr=False)

    @property
    def r(self) -> int:
        return self.symbol.rank

    @property
    def V_dims(self) -> tuple[int, ...]:
        return self.symbol.dims

    @property
    def dim(self) -> int:
        return self.offsets[-1]

    @property
    def W_dim(self) -> int:
        return self.symbol.W_dim

    @property
    def weights(self) -> tuple[int, ...]:
        """Weight of the grading action on each V_k: w_k = -k."""
        return tuple(-k for k in range(self.r + 1))

    @property
    def is_projective_space(self) -> bool:
        return self.r == 1

    def block(self, k: int) -> slice:
        return slice(self.offsets[k], self.offsets[k + 1])

    def e0(self) -> np.ndarray:
        v = _vec([0] * self.dim)
        v[0] = Fraction(1)
        return v

    def e_top(self) -> np.ndarray:
        if self.V_dims[-1] != 1:
            raise NotTubeModel(f"{self.symbol.name}: top level is not one-dimensional")
        v = _vec([0] * self.dim)
        v[self.dim - 1] = Fraction(1)
        return v

    def Pi(self, k: int) -> VValuedSymMap:
        return VValuedSymMap(self.W_dim, k, self.symbol.levels[k])

    def grading(self) -> Matrix:
        H = _zeros(self.dim)
        for k in range(self.r + 1):
            for i in range(self.offsets[k], self.offsets[k + 1]):
                H[i, i] = Fraction(-k)
        return H


def build_model(S: SymbolSystem) -> GradedModel:
    """Dual graded space and the operators Gamma_{e_a} (transposes of contraction)."""
    validate(S)
    n = S.W_dim
    offsets = [0]
    for d in S.dims:
        offsets.append(offsets[-1] + d)
    total = offsets[-1]
    gammas = []
    for a in range(n):
        e = [0] * n
        e[a] = 1
        G = _zeros(total)
        for k in range(S.rank):
            basis = [f.coeff_vector() for f in S.levels[k]]
            for j, phi in enumerate(S.levels[k + 1]):
                vec = solve_in_span(basis, contract(phi, e).coeff_vector())
                if vec is None:
                    raise InvalidSymbolSystem("contraction is not in the span of the lower level")
                for i, c in enumerate(vec):
                    if c:
                        G[offsets[k + 1] + j, offsets[k] + i] = c
        gammas.append(G)
    return GradedModel(S, tuple(offsets), tuple(gammas))


def embed(M: GradedModel, u: Sequence) -> np.ndarray:
    """f(u) = e_0 + sum_k Pi_k(u, ..., u) computed from the forms."""
    u = [Fraction(x) for x in u]
    if len(u) != M.W_dim:
        raise BadDimension(f"vector of length {len(u)} for W of dimension {M.W_dim}")
    return _vec([phi(u) for F in M.symbol.levels for phi in F])


def on_variety(M: GradedModel, v: Sequence) -> bool | None:
    """Whether v lies on the cone over the closure of f(W); None when the V_0 entry is zero.

    On the open chart v_0 != 0 the test is exact: v = v_0 f(v_1 / v_0).
    """
    v = _vec(v)
    if v[0] == 0:
        return None
    u = [x / v[0] for x in v[M.block(1)]]
    return not any(v - embed(M, u) * v[0])


def gamma(M: GradedModel, u: Sequence) -> Matrix:
    if M._gamma_flat is None:
        M._gamma_flat = _scaled(np.array([G.reshape(-1) for G in M.gamma_basis], dtype=object))
    flat, den = M._gamma_flat
    u = [Fraction(c) for c in u]
    du = 1
    for c in u:
        du = lcm(du, c.denominator)
    coeffs = np.array([int(c * du) for c in u], dtype=object)
    total = den * du
    out = np.empty(M.dim * M.dim, dtype=object)
    for idx, x in enumerate(coeffs.dot(flat)):
        out[idx] = Fraction(int(x), total)
    return out.reshape(M.dim, M.dim)


def embed_via_gamma(M: GradedModel, u: Sequence) -> np.ndarray:
    """f(u) = sum_k Gamma_u^k e_0."""
    G = gamma(M, u)
    v = M.e0()
    total = v.copy()
    for _ in range(M.r):
        v = mdot(G, v)
        total = total + v
    return total


def rho_x(M: GradedModel, u: Sequence) -> Matrix:
    """On V_k: v_k -> sum_{l >= k} C(l, k) Gamma_u^{l-k} v_k."""
    G = gamma(M, u)
    powers = [_eye(M.dim)]
    for _ in range(M.r):
        powers.append(mdot(powers[-1], G))
    R = _zeros(M.dim)
    for k in range(M.r + 1):
        cols = M.block(k)
        for l in range(k, M.r + 1):
            R[:, cols] = R[:, cols] + powers[l - k][:, cols] * comb(l, k)
    return R


def drho_x(M: GradedModel, u: Sequence) -> Matrix:
    """Derivative at t = 0 of rho_x(t u): (k+1) Gamma_u on V_k."""
    G = gamma(M, u)
    D = _zeros(M.dim)
    for k in range(M.r):
        cols = M.block(k)
        D[:, cols] = G[:, cols] * (k + 1)
    return D


def derivative_at_zero(family: Callable[[Fraction], Matrix], degree: int) -> Matrix:
    """Exact derivative at 0 of a matrix polynomial in t of the given degree (Lagrange)."""
    ts = [Fraction(i) for i in range(degree + 1)]
    vals = [family(t) for t in ts]
    out = vals[0] * 0
    for i, ti in enumerate(ts):
        # d/dt of the Lagrange basis polynomial l_i at t = 0
        others = [tj for j, tj in enumerate(ts) if j != i]
        denom = Fraction(1)
        for tj in others:
            denom *= ti - tj
        deriv = Fraction(0)
        for skip in range(len(others)):
            prod = Fraction(1)
            for j, tj in enumerate(others):
                if j != skip:
                    prod *= -tj
            deriv += prod
        out = out + vals[i] * (deriv / denom)
    return out


# ---------------------------------------------------------------------------
# duality and the opposite representation


def _matrix_of(kind: str, size: int, u: Sequence[Fraction]) -> list[list[Fraction]]:
    if kind == "minors":
        return [[u[i * size + j] for j in range(size)] for i in range(size)]
    if kind == "sym_minors":
        idx = {}
        for k, (i, j) in enumerate(combinations_with_replacement(range(size), 2)):
            idx[i, j] = idx[j, i] = k
        return [[u[idx[i, j]] for j in range(size)] for i in range(size)]
    if kind == "pfaffian":
        A = [[Fraction(0)] * size for _ in range(size)]
        for k, (i, j) in enumerate(combinations(range(size), 2)):
            A[i][j] = u[k]
            A[j][i] = -u[k]
        return A
    raise NotTubeModel(kind)


def _coords_of(kind: str, size: int, A: list[list[Fraction]]) -> list[Fraction]:
    if kind == "minors":
        return [A[i][j] for i in range(size) for j in range(size)]
    if kind == "sym_minors":
        return [A[i][j] for i, j in combinations_with_replacement(range(size), 2)]
    return [A[i][j] for i, j in combinations(range(size), 2)]


def inversion(S: SymbolSystem, u: Sequence) -> list[Fraction] | None:
    """The birational involution of W exchanged by the duality, or None where undefined.

    Matrix models use the matrix inverse; the quadric model uses u / q(u).
    """
    u = [Fraction(x) for x in u]
    if S.kind == "quadric":
        q = S.levels[2][0](u)
        return None if q == 0 else [x / q for x in u]
    A = _matrix_of(S.kind, S.size, u)
    try:
        return _coords_of(S.kind, S.size, inverse(A))
    except ZeroDivisionError:
        return None


def duality(M: GradedModel, seed: int = 0, extra: int = 8) -> Matrix:
    """Grading-reversing J with J f(u) = top(u) f(inv(u)), solved by interpolation.

    J maps V_{r-k} onto V_k.  It is fitted on generic samples and then verified
    on ``extra`` fresh samples, so a model without such a duality raises.
    """
    S = M.symbol
    if not S.is_tube:
        raise NotTubeModel(f"{S.name} is not a tube model")
    if M._J is not None:
        return M._J
    rng = np.random.default_rng(seed)
    r = M.r
    top = S.levels[r][0]

    def sample():
        while True:
            u = [Fraction(int(x)) for x in rng.integers(-6, 7, M.W_dim)]
            t = top(u)
            inv = inversion(S, u) if t else None
            if inv is not None:
                return embed(M, u), embed(M, inv) * t

    J = _zeros(M.dim)
    pairs = [sample() for _ in range(max(M.V_dims) + 4)]
    for k in range(r + 1):
        src, dst = M.block(r - k), M.block(k)
        d = M.V_dims[r - k]
        ech = Echelon(d)
        chosen = []
        for fu, g in pairs:
            if ech.add_rows([list(fu[src])]):
                chosen.append((fu, g))
            if len(chosen) == d:
                break
        while len(chosen) < d:
            fu, g = sample()
            pairs.append((fu, g))
            if ech.add_rows([list(fu[src])]):
                chosen.append((fu, g))
        A = [list(fu[src]) for fu, _ in chosen]  # rows: samples
        B = [list(g[dst]) for _, g in chosen]
        Xt = solve_square(A, B)  # A X = B with X = J_k^T
        for i in range(len(Xt)):
            for j in range(len(Xt[0])):
                J[dst.start + j, src.start + i] = Xt[i][j]
    for _ in range(extra):
        fu, g = sample()
        if any(mdot(J, fu) - g):
            raise NotTubeModel(f"{S.name}: no grading-reversing duality of the assumed shape")
    M._J = J
    M._Jinv = _inv_matrix(J)
    return J


def _inv_matrix(A: Matrix) -> Matrix:
    return np.array(inverse(A.tolist()), dtype=object)


def rho_y(M: GradedModel, w: Sequence) -> Matrix:
    J = duality(M)
    return mdot(mdot(J, rho_x(M, w)), M._Jinv)


def drho_y(M: GradedModel, w: Sequence) -> Matrix:
    J = duality(M)
    return mdot(mdot(J, drho_x(M, w)), M._Jinv)


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return mdot(A, B) - mdot(B, A)


# ---------------------------------------------------------------------------
# identities for the vector-group representations


def block_profile(M: GradedModel, A: Matrix) -> set[int]:
    """Set of degree shifts l - k for which the (V_l, V_k) block of A is nonzero."""
    shifts = set()
    for k in range(M.r + 1):
        for l in range(M.r + 1):
            if any(x for x in A[M.block(l), M.block(k)].flat):
                shifts.add(l - k)
    return shifts


def _unit(n: int, a: int) -> list[int]:
    return [1 if i == a else 0 for i in range(n)]


@dataclass
class RepresentationReport:
    model: str
    homomorphism: bool
    translation: bool
    slicewise_derivative: bool
    derivative_interpolated: bool
    gamma_commute: bool
    embed_agree: bool
    lowering: bool | None
    drho_y_kills_e0: bool | None
    fixes_e0: bool | None
    preserves_variety: bool | None

    @property
    def ok(self) -> bool:
        return all(v for v in vars(self).values() if isinstance(v, bool))


def verify_representations(M: GradedModel, seed: int = 0, n_points: int = 20) -> RepresentationReport:
    """Exact checks of the rho_x identities and, for tube models, of rho_y degree lowering."""
    rng = np.random.default_rng(seed)
    n = M.W_dim

    def rnd():
        return [Fraction(int(x)) for x in rng.integers(-5, 6, n)]

    hom = trans = emb = True
    for _ in range(n_points):
        u, u2 = rnd(), rnd()
        s = [a + b for a, b in zip(u, u2)]
        if (mdot(rho_x(M, u), rho_x(M, u2)) != rho_x(M, s)).any():
            hom = False
        if any(mdot(rho_x(M, u2), embed(M, u)) - embed(M, s)):
            trans = False
        if any(embed(M, u) - embed_via_gamma(M, u)):
            emb = False
    slice_ok = interp_ok = True
    for a in range(n):
        e = _unit(n, a)
        D = drho_x(M, e)
        G = M.gamma_basis[a]
        for k in range(M.r + 1):
            if (D[:, M.block(k)] != G[:, M.block(k)] * (k + 1)).any():
                slice_ok = False
        Dt = derivative_at_zero(lambda t: rho_x(M, [t * x for x in e]), M.r)
        if (Dt != D).any():
            interp_ok = False
    commute = all((mdot(M.gamma_basis[a], M.gamma_basis[b]) == mdot(M.gamma_basis[b], M.gamma_basis[a])).all()
                  for a in range(n) for b in range(a + 1, n))
    lowering = kills = fixes = stays = None
    if M.symbol.is_tube:
        lowering = kills = fixes = stays = True
        e0 = M.e0()
        for a in range(n):
            Dy = drho_y(M, _unit(n, a))
            if not block_profile(M, Dy) <= {-1}:
                lowering = False
            if any(mdot(Dy, e0)):
                kills = False
        for _ in range(min(n_points, 5)):
            w = rnd()
            if any(mdot(rho_y(M, w), e0) - e0):
                fixes = False
            if on_variety(M, mdot(rho_y(M, w), embed(M, rnd()))) is False:
                stays = False
    return RepresentationReport(M.symbol.name, hom, trans, slice_ok, interp_ok, commute, emb, lowering, kills, fixes, stays)


# ---------------------------------------------------------------------------
# base locus


@dataclass
class BaseLocus:
    model: GradedModel
    l0: int

    def contains(self, w: Sequence) -> bool:
        w = [Fraction(x) for x in w]
        return any(w) and all(phi(w) == 0 for phi in self.model.symbol.levels[self.l0])

    def __call__(self, w: Sequence) -> bool:
        return self.contains(w)


def base_locus(M: GradedModel, seed: int = 0, n_random: int = 50) -> BaseLocus:
    """Base locus of the fundamental forms at the smallest level with diagonal zeros on probes.

    Probes are the coordinate vectors of W plus seeded random vectors; the
    chain of inclusions Bs(F^2) within Bs(F^3) within ... is asserted on them.
    """
    if M.r < 2:
        raise BadDimension("base locus needs a system of rank >= 2")
    n = M.W_dim
    rng = np.random.default_rng(seed)
    probes = [_unit(n, a) for a in range(n)]
    probes += [[int(x) for x in rng.integers(-5, 6, n)] for _ in range(n_random)]
    probes = [[Fraction(x) for x in p] for p in probes if any(p)]
    zero = {k: [all(phi(p) == 0 for phi in M.symbol.levels[k]) for p in probes] for k in range(2, M.r + 1)}
    for k in range(2, M.r):
        for a, b in zip(zero[k], zero[k + 1]):
            if a and not b:
                raise AssertionError(f"base loci not nested at level {k}")
    l0 = next((k for k in range(2, M.r + 1) if any(zero[k])), None)
    if l0 is None:
        raise AssertionError("no probe lies in any base locus")
    return BaseLocus(M, l0)


# ---------------------------------------------------------------------------
# the lambda map


def lambda_tensor(M: GradedModel, w: Sequence) -> list[Fraction]:
    """Tensor entries A[a; i <= l] of (alpha, xi) -> [[drho_y(w), drho_x(alpha)], drho_x(xi)] e_0.

    V_1 is identified with W through Pi_1, whose basis is the coordinate forms.
    """
    n = M.W_dim
    Dy = drho_y(M, w)
    if any(Dy[:, 0]):
        raise AssertionError("drho_y does not kill e_0")
    # with drho_y(w) e_0 = 0 the double bracket expands to three matrix-vector
    # terms; they are evaluated on integer-scaled copies sharing one denominator
    if M._dx_scaled is None:
        M._dx_scaled = _scaled(np.array([drho_x(M, _unit(n, a)) for a in range(n)], dtype=object))
    X, dx = M._dx_scaled
    Y, dy = _scaled(Dy)
    a_vec = [X[l][:, 0] for l in range(n)]
    c_vec = [Y.dot(v) for v in a_vec]
    den = dy * dx * dx
    vals = {}
    for i in range(n):
        for l in range(n):
            v = Y.dot(X[i].dot(a_vec[l])) - X[i].dot(c_vec[l]) - X[l].dot(c_vec[i])
            if any(v[M.block(k)].any() for k in range(M.r + 1) if k != 1):
                raise AssertionError("lambda value leaves V_1")
            vals[i, l] = np.array([Fraction(int(x), den) for x in v[M.block(1)]], dtype=object)
    for i in range(n):
        for l in range(i + 1, n):
            if any(vals[i, l] - vals[l, i]):
                raise AssertionError("lambda value is not symmetric")
    ms = list(combinations_with_replacement(range(n), 2))
    return [vals[i, l][a] for a in range(n) for i, l in ms]


def lambda_map(M: GradedModel) -> list[list[Fraction]]:
    """Rows lambda(e_b) for the basis of W, in the canonical prolongation coordinates."""
    if not M.symbol.is_tube:
        raise NotTubeModel(f"{M.symbol.name} is not a tube model")
    return [lambda_tensor(M, _unit(M.W_dim, b)) for b in range(M.W_dim)]


def lambda_image(M: GradedModel) -> tuple[Subspace, int]:
    """(image subspace, kernel dimension) of lambda."""
    rows = lambda_map(M)
    img = Subspace.span(rows, len(rows[0]))
    return img, M.W_dim - img.dim


# ---------------------------------------------------------------------------
# Levi elements fixing the two base points


@dataclass
class BracketCheck:
    block_diagonal: bool
    c: Fraction
    bracket_formula: bool
    first_order: bool

    @property
    def ok(self) -> bool:
        return self.block_diagonal and self.bracket_formula and self.first_order


def bracket_fixed_check(M: GradedModel, pair: tuple[Sequence, Sequence], w: Sequence) -> BracketCheck:
    """gamma = [drho_x(alpha), drho_y(beta)] preserves each V_k and acts on W as gamma|V1 - c."""
    alpha, beta = pair
    g = commutator(drho_x(M, alpha), drho_y(M, beta))
    diag = block_profile(M, g) <= {0}
    c = g[0, 0]
    w = [Fraction(x) for x in w]
    V1 = M.block(1)
    Pi1w = _vec([0] * M.dim)
    Pi1w[V1] = _vec(w)
    lhs = (mdot(g, Pi1w) - Pi1w * c)
    rhs = mdot(commutator(g, drho_x(M, w)), M.e0())
    formula = not any(lhs - rhs)
    # first-order equivariance of the chart: gamma f(w) = c f(w) + d f_w(w_dot)
    wdot = list(lhs[V1])
    f = embed(M, w)
    Gw, Gd = gamma(M, w), gamma(M, wdot)
    df = _vec([0] * M.dim)
    v = M.e0()
    powers = [v]
    for _ in range(M.r):
        powers.append(mdot(Gw, powers[-1]))
    for k in range(1, M.r + 1):
        df = df + mdot(Gd, powers[k - 1]) * k
    first = not any(mdot(g, f) - f * c - df)
    return BracketCheck(diag, c, formula, first)


@dataclass
class PairAction:
    g: Matrix
    H: Matrix
    source: np.ndarray
    sink: np.ndarray
    source_weights: list[Fraction]
    sink_weights: list[Fraction]

    @property
    def euler(self) -> bool:
        return all(x == -1 for x in self.source_weights) and all(x == 1 for x in self.sink_weights)


def pair_action(M: GradedModel, u: Sequence, w: Sequence) -> PairAction:
    """Conjugate the grading action by g = rho_x(u) rho_y(w) and read weights at g[e_0], g[e_r].

    Weights are those of H' = g H g^-1 on the cone tangent space modulo the
    point itself: -1 at the translated source and +1 at the translated sink.
    """
    g = mdot(rho_x(M, u), rho_y(M, w))
    try:
        ginv = _inv_matrix(g)
    except ZeroDivisionError:
        raise DegeneratePair("change of basis is singular") from None
    H = mdot(mdot(g, M.grading()), ginv)
    r = M.r
    src, snk = mdot(g, M.e0()), mdot(g, M.e_top())

    def rel_weights(point_block: int, tangent_block: int) -> list[Fraction]:
        base = M.grading()[M.offsets[point_block], M.offsets[point_block]]
        out = []
        for j in range(M.offsets[tangent_block], M.offsets[tangent_block + 1]):
            v = g[:, j]
            Hv = mdot(H, v)
            # eigenvector check: H' v = mu v
            idx = next(i for i, x in enumerate(v) if x)
            mu = Hv[idx] / v[idx]
            if any(Hv - v * mu):
                raise DegeneratePair("conjugated weight space is not an eigenspace")
            out.append(mu - base)
        return out

    return PairAction(g, H, src, snk, rel_weights(0, 1), rel_weights(r, r - 1))


# ---------------------------------------------------------------------------
# pairing with the zoo


def vmrt_variety(S: SymbolSystem):
    """The zoo cone that should coincide with the base locus of S."""
    from .zoo import make_pluecker_rank2, make_quadric, make_segre, make_spinor5, make_veronese2
    if S.kind == "minors":
        return make_segre(S.size, S.size)
    if S.kind == "sym_minors":
        return make_veronese2(S.size)
    if S.kind == "pfaffian":
        return make_pluecker_rank2(S.size)
    if S.kind == "quadric":
        return make_quadric(S.size)
    raise BadDimension(f"no zoo partner for {S.name}")


def shipped_tube_models() -> list[SymbolSystem]:
    return [minors_symbol_system(2), minors_symbol_system(3), sym_minors_symbol_system(2),
            sym_minors_symbol_system(3), pfaffian_symbol_system(4), pfaffian_symbol_system(6),
            quadric_symbol_system(3), quadric_symbol_system(4), quadric_symbol_system(5)]
