"""Infinitesimal automorphisms of cones and their prolongations.

Endomorphisms g of V = Q^N are flattened row-major (index ``a*N + b`` holds
g[a, b]).  A symmetric map A: Sym^{k+1} V -> V is stored by its tensor entries
``A[a; i_0 <= ... <= i_k]``, flattened output-major over multisets in
``combinations_with_replacement`` order; this is the canonical coordinate
system in which prolongations from different routes are compared.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Sequence

import numpy as np

from .errors import (DegenerateParametrization, NoIdeal, NonStabilizing, PrimeDisagreement)
from .linalg import (PRIMES, Echelon, Subspace, array_modp, kernel_basis, matmul_mod,
                     random_prime, to_modp)
from .tensors import Poly, PolyMap, SymForm, VValuedSymMap
from .zoo import ParamVariety, sample_params, sample_point

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AutConfig:
    """Knobs for the sampled computation of aut and for prime selection."""

    seed: int = 0
    window: int = 3
    holdout: int = 5
    max_samples: int = 200
    primes: tuple[int, int] = PRIMES
    certify: bool | None = None  # None: certify over Q when N <= 10
    certify_limit: int = 10


@dataclass
class AutAlgebra:
    N: int
    basis: Subspace
    provenance: str
    history: list[int] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def p(self) -> int | None:
        return self.basis.p

    def matrices(self) -> list[np.ndarray]:
        dtype = object if self.p is None else np.int64
        return [np.array(b, dtype=dtype).reshape(self.N, self.N) for b in self.basis.basis]

    def contains(self, g) -> bool:
        flat = list(np.asarray(g, dtype=object).reshape(-1))
        if self.p is not None:
            flat = [to_modp(x, self.p) for x in flat]
        return self.basis.contains(flat)

    def is_closed(self) -> bool:
        """Check [b_i, b_j] in the span for every pair of basis elements."""
        mats = self.matrices()
        comms = []
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if self.p is None:
                    c = mats[i] @ mats[j] - mats[j] @ mats[i]
                else:
                    c = np.mod(matmul_mod(mats[i], mats[j], self.p) - matmul_mod(mats[j], mats[i], self.p), self.p)
                comms.append(list(c.reshape(-1)))
        if not comms:
            return True
        ech = Echelon(self.N * self.N, self.p)
        ech.add_rows(list(self.basis.basis))
        if self.p is None:
            return all(ech.contains(c) for c in comms)
        return all(ech.contains_many(np.array(comms, dtype=np.int64)))

    def contains_identity(self) -> bool:
        return self.contains(np.eye(self.N, dtype=np.int64))


# ---------------------------------------------------------------------------
# tangent spaces

_DERIV_CACHE: dict[int, tuple[PolyMap, list[list[Poly]]]] = {}


def _derivs(phi: PolyMap) -> list[list[Poly]]:
    hit = _DERIV_CACHE.get(id(phi))
    if hit is None or hit[0] is not phi:
        hit = (phi, phi.jacobian_polys())
        _DERIV_CACHE[id(phi)] = hit
    return hit[1]


def tangent_matrix(X: ParamVariety, t: Sequence, p: int | None = None) -> list[list]:
    """N x (m+1) matrix [jacobian | phi(t)] over Q or F_p."""
    D = _derivs(X.phi)
    if p is None:
        t = [Fraction(x) for x in t]
        return [[d(t) for d in D[i]] + [X.phi.components[i](t)] for i in range(X.N)]
    ti = [to_modp(x, p) for x in t]
    return [[d.eval_mod(ti, p) for d in D[i]] + [X.phi.components[i].eval_mod(ti, p)] for i in range(X.N)]


def tangent_annihilators(X: ParamVariety, t: Sequence, p: int | None = None) -> tuple[int, list[tuple]]:
    """(rank of T_p, covectors vanishing on T_p)."""
    T = tangent_matrix(X, t, p)
    cols = [[T[r][c] for r in range(X.N)] for c in range(len(T[0]))]
    ech = Echelon(X.N, p)
    ech.add_rows(cols)
    return ech.rank, ech.kernel_vectors()


def tangent_space(X: ParamVariety, t: Sequence, p: int | None = None) -> Subspace:
    T = tangent_matrix(X, t, p)
    cols = [[T[r][c] for r in range(X.N)] for c in range(len(T[0]))]
    return Subspace.span(cols, X.N, p)


# ---------------------------------------------------------------------------
# aut from samples


def aut_from_samples(X: ParamVariety, cfg: AutConfig = AutConfig(), p: int | None = None) -> AutAlgebra:
    """All g with g.q in T_q at sampled points q, sampled until the dimension stabilizes."""
    N = X.N
    rng = np.random.default_rng(cfg.seed)
    ech = Echelon(N * N, p)
    history: list[int] = []
    stable = 0
    need = cfg.window
    in_holdout = False
    for n in range(cfg.max_samples):
        t, _ = sample_point(X, rng)
        r, annih = tangent_annihilators(X, t, p)
        if r != X.cone_dim:
            if n == 0:
                raise DegenerateParametrization(
                    f"{X.name}: tangent rank {r} at the first sample, expected {X.cone_dim}")
            history.append(history[-1])
            continue
        pt = tangent_matrix(X, t, p)
        q = [row[-1] for row in pt]
        if p is None:
            rows = [[l * x for l in ell for x in q] for ell in annih]
        else:
            ell = np.array(annih, dtype=np.int64).reshape(len(annih), N)
            qv = np.array(q, dtype=np.int64)
            rows = np.mod(ell[:, :, None] * qv[None, None, :], p).reshape(len(annih), N * N)
        before = ech.rank
        if len(rows):
            ech.add_rows(rows)
        history.append(N * N - ech.rank)
        if ech.rank == before:
            stable += 1
        else:
            stable = 0
            in_holdout = False
            need = cfg.window
        if stable >= need:
            if in_holdout:
                return AutAlgebra(N, _kernel(ech, p), "sampled", history)
            in_holdout = True
            stable = 0
            need = cfg.holdout
    raise NonStabilizing(f"{X.name}: dimension not stable after {cfg.max_samples} samples")


def _kernel(ech: Echelon, p: int | None) -> Subspace:
    return Subspace.span(ech.kernel_vectors(), ech.ncols, p)


# ---------------------------------------------------------------------------
# aut from quadrics


def gram_matrix(q: SymForm) -> list[list[Fraction]]:
    """Symmetric S with q(x) = x^T S x."""
    n = q.n
    S = [[Fraction(0)] * n for _ in range(n)]
    for e, c in q.poly.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            S[i][i] += c
        else:
            S[i][j] += c / 2
            S[j][i] += c / 2
    return S


def _upper(N: int) -> list[tuple[int, int]]:
    return list(combinations_with_replacement(range(N), 2))


def aut_from_quadrics(X: ParamVariety, p: int | None = None) -> AutAlgebra:
    """All g with g^T S_q + S_q g in the span of the Gram matrices, for every quadric q."""
    if not X.quadrics:
        raise NoIdeal(f"{X.name} carries no quadrics")
    N = X.N
    up = _upper(N)
    D = len(up)
    pos = {ab: r for r, ab in enumerate(up)}
    grams = [gram_matrix(q) for q in X.quadrics]
    span_rows = [[S[a][b] for a, b in up] for S in grams]
    mu = kernel_basis(span_rows, p).basis  # covectors killing span{S_q}
    ech = Echelon(N * N, p)
    M = np.array(mu, dtype=np.int64) if (p is not None and mu) else None
    for S in grams:
        if not mu:
            break
        # T[(a,b), (c,d)]: coefficient of g[c,d] in (S g + g^T S)[a,b], a <= b
        nz = [(a, c, S[a][c] if p is None else to_modp(S[a][c], p))
              for a in range(N) for c in range(N) if S[a][c]]
        if p is None:
            T = [[Fraction(0)] * (N * N) for _ in range(D)]
        else:
            T = np.zeros((D, N * N), dtype=np.int64)
        for a, c, v in nz:
            for b in range(a, N):  # (S g)[a,b] picks up S[a,c] g[c,b]
                T[pos[a, b]][c * N + b] += v
        for c, b, v in nz:
            for a in range(b + 1):  # (g^T S)[a,b] picks up g[c,a] S[c,b]
                T[pos[a, b]][c * N + a] += v
        if p is None:
            rows = []
            for m in mu:
                rows.append([sum(m[r] * T[r][k] for r in range(D) if m[r] and T[r][k]) for k in range(N * N)])
            ech.add_rows(rows)
        else:
            ech.add_rows(matmul_mod(M, np.mod(T, p), p))
    return AutAlgebra(N, _kernel(ech, p), "ideal")


# ---------------------------------------------------------------------------
# prolongations


def multisets(N: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(N), k))


@dataclass
class Prolongation:
    """Order-k prolongation; basis rows are tensor entries over (output, multiset of size k+1)."""

    N: int
    k: int
    basis: Subspace

    @property
    def dim(self) -> int:
        return self.basis.dim

    def tensor_rows(self) -> list[tuple]:
        return list(self.basis.basis)

    def maps(self) -> list[VValuedSymMap]:
        """Basis elements as symmetric maps (rational prolongations only)."""
        if self.basis.p is not None:
            raise ValueError("maps() needs a rational prolongation")
        return [tensor_to_map(row, self.N, self.k + 1) for row in self.basis.basis]


def tensor_to_map(row: Sequence, N: int, d: int) -> VValuedSymMap:
    ms = multisets(N, d)
    D = len(ms)
    comps = []
    for a in range(N):
        coeffs = {}
        for j, M in enumerate(ms):
            v = row[a * D + j]
            if v:
                e = [0] * N
                for i in M:
                    e[i] += 1
                mult = factorial(d)
                for x in e:
                    mult //= factorial(x)
                coeffs[tuple(e)] = Fraction(v) * mult
        comps.append(SymForm.from_coeffs(N, d, coeffs))
    return VValuedSymMap(N, d, tuple(comps))


def map_to_tensor(A: VValuedSymMap) -> list[Fraction]:
    ms = multisets(A.n, A.d)
    return [c.tensor_entry(M) for c in A.components for M in ms]


def _aut_tensor_rows(g: AutAlgebra) -> list[tuple]:
    # order 0: g[a, l] is the tensor entry A[a; (l,)]
    return list(g.basis.basis)


def prolong_next(prev_rows: Sequence[Sequence], N: int, k: int, p: int | None) -> Subspace:
    """Order-k prolongation from a basis of the order-(k-1) structure (slice route).

    Unknowns c[i, j] define slices A_i = sum_j c[i, j] B_j; the symmetry equations
    force A_i(e_{M - i}) = A_{i'}(e_{M - i'}) for every multiset M of size k+1.
    """
    r = len(prev_rows)
    nvars = N * r
    if r == 0:
        return Subspace.zero(N * len(multisets(N, k + 1)), p)
    prev_ms = multisets(N, k)
    pos = {M: j for j, M in enumerate(prev_ms)}
    Dp = len(prev_ms)
    if p is None:
        B = [[[Fraction(row[a * Dp + j]) for j in range(Dp)] for a in range(N)] for row in prev_rows]
    else:
        B = np.array(prev_rows, dtype=np.int64).reshape(r, N, Dp)
    ech = Echelon(nvars, p)
    pending = []

    def flush():
        if pending:
            ech.add_rows(np.vstack(pending) if p is not None else pending)
            pending.clear()

    for M in multisets(N, k + 1):
        distinct = sorted(set(M))
        for i, i2 in zip(distinct, distinct[1:]):
            m1 = list(M)
            m1.remove(i)
            m2 = list(M)
            m2.remove(i2)
            j1, j2 = pos[tuple(m1)], pos[tuple(m2)]
            if p is None:
                for a in range(N):
                    row = {}
                    for j in range(r):
                        if B[j][a][j1]:
                            row[i * r + j] = B[j][a][j1]
                        if B[j][a][j2]:
                            row[i2 * r + j] = row.get(i2 * r + j, 0) - B[j][a][j2]
                    if row:
                        pending.append(row)
            else:
                blk = np.zeros((N, nvars), dtype=np.int64)
                blk[:, i * r:(i + 1) * r] = B[:, :, j1].T
                blk[:, i2 * r:(i2 + 1) * r] = np.mod(blk[:, i2 * r:(i2 + 1) * r] - B[:, :, j2].T, p)
                pending.append(blk)
        if p is None and len(pending) > 2000:
            flush()
        if p is not None and len(pending) * N >= 4096:
            flush()
    flush()
    coeff_vecs = ech.kernel_vectors()
    # convert c to tensor entries: A[a; M] = A_i[a; M - i] with i = min(M)
    new_ms = multisets(N, k + 1)
    D = len(new_ms)
    rows = []
    if p is None:
        for c in coeff_vecs:
            vec = [Fraction(0)] * (N * D)
            for jm, M in enumerate(new_ms):
                i = M[0]
                sub = pos[M[1:]]
                for a in range(N):
                    s = sum((c[i * r + j] * B[j][a][sub] for j in range(r) if c[i * r + j]), Fraction(0))
                    vec[a * D + jm] = s
            rows.append(vec)
        return Subspace.span(rows, N * D, None)
    if not coeff_vecs:
        return Subspace.zero(N * D, p)
    C = np.array(coeff_vecs, dtype=np.int64).reshape(len(coeff_vecs), N, r)
    first = np.array([M[0] for M in new_ms])
    sub = np.array([pos[M[1:]] for M in new_ms])
    out = np.zeros((len(coeff_vecs), N, D), dtype=np.int64)
    for a in range(N):
        Ba = B[:, a, :][:, sub]  # r x D
        for i in range(N):
            cols = np.flatnonzero(first == i)
            if cols.size:
                out[:, a, cols] = matmul_mod(C[:, i, :], Ba[:, cols], p)
    return Subspace.span(out.reshape(len(coeff_vecs), N * D), N * D, p)


def prolong(g: AutAlgebra) -> Prolongation:
    """First prolongation of g by the slice route."""
    return Prolongation(g.N, 1, prolong_next(_aut_tensor_rows(g), g.N, 1, g.p))


def prolong_annihilator(g: AutAlgebra) -> Prolongation:
    """First prolongation solved directly in the tensor entries of A (cross-check route).

    Unknowns are the N * N(N+1)/2 entries; each slice A(e_i, .) is required to
    be annihilated by every covector vanishing on g.
    """
    N, p = g.N, g.p
    ms = multisets(N, 2)
    D = len(ms)
    pos = {M: j for j, M in enumerate(ms)}
    eta = kernel_basis(list(g.basis.basis), p).basis if g.dim else [
        tuple(1 if k == x else 0 for k in range(N * N)) for x in range(N * N)]
    ech = Echelon(N * D, p)
    rows = []
    for i in range(N):
        for e in eta:
            row = {}
            for a in range(N):
                for l in range(N):
                    c = e[a * N + l]
                    if c:
                        key = a * D + pos[tuple(sorted((i, l)))]
                        row[key] = row.get(key, 0) + c
            if p is None:
                rows.append(row)
            else:
                dense = np.zeros(N * D, dtype=np.int64)
                for kk, v in row.items():
                    dense[kk] = v % p
                rows.append(dense)
    if rows:
        ech.add_rows(rows if p is None else np.array(rows))
    return Prolongation(N, 1, _kernel(ech, p))


# ---------------------------------------------------------------------------
# dimension reports


@dataclass
class ProlongReport:
    name: str
    dims: list[int]
    primes: list[int]
    certified: bool
    notes: list[str] = field(default_factory=list)


def _dims_over(X: ParamVariety, kmax: int, cfg: AutConfig, p: int | None) -> list[int]:
    g = aut_from_samples(X, cfg, p)
    dims = [g.dim]
    rows = _aut_tensor_rows(g)
    for k in range(1, kmax + 1):
        S = prolong_next(rows, X.N, k, p)
        if S.dim > X.N * dims[-1]:
            raise AssertionError(f"{X.name}: prolongation bound violated ({S.dim} > {X.N}*{dims[-1]})")
        dims.append(S.dim)
        rows = list(S.basis)
        if not rows:
            dims.extend([0] * (kmax - k))
            break
    return dims


def prolong_k_report(X: ParamVariety, kmax: int, cfg: AutConfig = AutConfig()) -> ProlongReport:
    """Dimensions [dim aut, dim aut^(1), ..., dim aut^(kmax)] with two-prime agreement."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    p1, p2 = cfg.primes
    d1 = _dims_over(X, kmax, cfg, p1)
    d2 = _dims_over(X, kmax, cfg, p2)
    rep = ProlongReport(X.name, d1, [p1, p2], False)
    certify = cfg.certify if cfg.certify is not None else X.N <= cfg.certify_limit
    if d1 != d2:
        p3 = random_prime(np.random.default_rng(cfg.seed))
        d3 = _dims_over(X, kmax, cfg, p3)
        rep.primes.append(p3)
        rep.notes.append(f"primes disagree: {d1} vs {d2}; third prime gives {d3}")
        log.warning("%s: %s", X.name, rep.notes[-1])
        certify = True
    if certify:
        dq = _dims_over(X, kmax, cfg, None)
        rep.certified = True
        if dq != rep.dims:
            rep.notes.append(f"rational dims {dq} replace modular dims {rep.dims}")
        rep.dims = dq
    elif d1 != d2:
        raise PrimeDisagreement(f"{X.name}: {rep.notes[-1]}")
    return rep


def prolong_k(X: ParamVariety, kmax: int, cfg: AutConfig = AutConfig()) -> list[int]:
    return prolong_k_report(X, kmax, cfg).dims


# ---------------------------------------------------------------------------


def verify_flow(A: VValuedSymMap, X: ParamVariety, n_samples: int = 10, seed: int = 0) -> bool:
    """True iff the quadratic field v -> A(v, v) is tangent to the cone at sampled points."""
    if A.d != 2:
        raise ValueError("verify_flow needs a degree-2 map")
    rng = np.random.default_rng(seed)
    checked = 0
    while checked < n_samples:
        t, _ = sample_point(X, rng)
        T = tangent_matrix(X, t)
        cols = [[T[r][c] for r in range(X.N)] for c in range(len(T[0]))]
        ech = Echelon(X.N)
        ech.add_rows(cols)
        if ech.rank != X.cone_dim:
            continue
        q = [row[-1] for row in T]
        if not ech.contains(A.diagonal(q)):
            return False
        checked += 1
    return True
