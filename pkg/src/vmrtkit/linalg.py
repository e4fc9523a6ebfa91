"""Exact linear algebra over the rationals and over prime fields.

Two backends share one incremental row-echelon interface (:class:`Echelon`):

* over Q, rows are sparse ``{column: Fraction}`` dicts reduced with exact
  rational arithmetic;
* over F_p, rows are dense ``int64`` numpy arrays; blocks of rows are reduced
  against the current basis with an exact modular matrix product built from
  16-bit limbs and float64 BLAS calls.

Every subspace is stored by its reduced row-echelon basis, so two subspaces
computed along different routes are equal iff their bases are equal as data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPrime, DimensionMismatch

Rat = Fraction

# two fixed 30-bit primes for the modular fast path
PRIMES: tuple[int, int] = (1073741789, 1073741783)

_BLOCK = 256
_LIMB = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: np.random.Generator, bits: int = 30) -> int:
    """Draw a random prime with exactly ``bits`` bits."""
    while True:
        n = int(rng.integers(1 << (bits - 1), 1 << bits)) | 1
        if is_prime(n):
            return n


# ---------------------------------------------------------------------------
# scalar conversions


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    return Fraction(x)


def to_modp(x, p: int) -> int:
    """Reduce an integer or rational scalar into F_p."""
    if isinstance(x, (int, np.integer)):
        return int(x) % p
    x = to_fraction(x)
    den = x.denominator % p
    if den == 0:
        raise BadPrime(f"denominator {x.denominator} vanishes mod {p}")
    return x.numerator * pow(den, -1, p) % p


def array_modp(rows, p: int) -> np.ndarray:
    """Convert a 2-D array-like of integers/rationals to an int64 array mod p."""
    if isinstance(rows, np.ndarray) and rows.dtype.kind in "iu":
        return np.mod(rows.astype(np.int64, copy=False), p)
    arr = np.asarray(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    out = np.empty(arr.shape, dtype=np.int64)
    for idx, x in np.ndenumerate(arr):
        out[idx] = to_modp(x, p)
    return out


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for int64 inputs already reduced into [0, p), p < 2**31.

    Each factor is split into two 16-bit limbs; every partial product is below
    2**32, so float64 sums stay exact for inner dimensions below 2**21.
    """
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    ah, al = np.divmod(a, _LIMB)
    bh, bl = np.divmod(b, _LIMB)
    ah, al, bh, bl = (m.astype(np.float64) for m in (ah, al, bh, bl))

    def part(x, y):
        return np.mod((x @ y).astype(np.int64), p)

    hh = part(ah, bh)
    mid = np.mod(part(ah, bl) + part(al, bh), p)
    ll = part(al, bl)
    s1 = _LIMB % p
    s2 = (_LIMB * _LIMB) % p
    return np.mod(np.mod(hh * s2, p) + np.mod(mid * s1, p) + ll, p)


# ---------------------------------------------------------------------------
# incremental echelon forms


class _RationalEchelon:
    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = dict(row)
        # basis rows are reduced, so one pass over pivot columns suffices
        for c in sorted(set(row) & self.rows.keys()):
            f = row.get(c)
            if not f:
                continue
            for k, v in self.rows[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add_rows(self, rows) -> int:
        added = 0
        for raw in rows:
            row = _sparse_row(raw)
            if len(row) and max(row) >= self.ncols:
                raise DimensionMismatch("row longer than the ambient dimension")
            r = self.reduce(row)
            if not r:
                continue
            c = min(r)
            inv = 1 / r[c]
            r = {k: v * inv for k, v in r.items()}
            for b in self.rows.values():
                f = b.get(c)
                if f:
                    for k, v in r.items():
                        nv = b.get(k, 0) - f * v
                        if nv:
                            b[k] = nv
                        else:
                            b.pop(k, None)
            self.rows[c] = r
            added += 1
        return added

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[tuple]:
        out = []
        for c in self.pivots:
            vec = [Fraction(0)] * self.ncols
            for k, v in self.rows[c].items():
                vec[k] = v
            out.append(tuple(vec))
        return out

    def contains(self, v) -> bool:
        return not self.reduce(_sparse_row(v))

    def coordinates(self, v) -> dict[int, Fraction] | None:
        row = _sparse_row(v)
        if self.reduce(row):
            return None
        return {c: row.get(c, Fraction(0)) for c in self.pivots}


def _sparse_row(raw) -> dict[int, Fraction]:
    if isinstance(raw, dict):
        return {int(k): to_fraction(v) for k, v in raw.items() if v}
    return {i: to_fraction(x) for i, x in enumerate(raw) if x}


class _ModpEchelon:
    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.B = np.zeros((0, ncols), dtype=np.int64)
        self.piv: list[int] = []
        self.free = np.arange(ncols)

    def _reduce_block(self, R: np.ndarray) -> np.ndarray:
        """Reduce rows against the basis; the result vanishes on pivot columns.

        B is reduced, so B[:, piv] is the identity and only free columns need work.
        """
        if not self.piv or not R.shape[0]:
            return R
        out = np.zeros_like(R)
        f = self.free
        out[:, f] = np.mod(R[:, f] - matmul_mod(R[:, self.piv], self.B[:, f], self.p), self.p)
        return out

    def add_rows(self, rows) -> int:
        R = array_modp(rows, self.p)
        if R.size == 0:
            return 0
        if R.shape[1] != self.ncols:
            raise DimensionMismatch(f"expected {self.ncols} columns, got {R.shape[1]}")
        added = 0
        for start in range(0, R.shape[0], _BLOCK):
            added += self._add_block(R[start:start + _BLOCK])
        return added

    def _add_block(self, R: np.ndarray) -> int:
        p = self.p
        f = self.free
        R = self._reduce_block(R)[:, f]
        R = R[np.any(R != 0, axis=1)]
        if R.shape[0] == 0:
            return 0
        Rf, local = _rref_dense(R, p)
        if not local:
            return 0
        newpiv = [int(f[c]) for c in local]
        R = np.zeros((Rf.shape[0], self.ncols), dtype=np.int64)
        R[:, f] = Rf
        if self.B.shape[0]:
            self.B[:, f] = np.mod(self.B[:, f] - matmul_mod(self.B[:, newpiv], Rf, p), p)
        B = np.vstack([self.B, R])
        piv = self.piv + newpiv
        order = np.argsort(piv, kind="stable")
        self.B = B[order]
        self.piv = [piv[i] for i in order]
        self.free = np.setdiff1d(np.arange(self.ncols), self.piv)
        return len(newpiv)

    @property
    def pivots(self) -> list[int]:
        return list(self.piv)

    def basis(self) -> list[tuple]:
        return [tuple(int(x) for x in row) for row in self.B]

    def contains(self, v) -> bool:
        r = self._reduce_block(array_modp([v], self.p))
        return not np.any(r)

    def contains_many(self, rows) -> np.ndarray:
        r = self._reduce_block(array_modp(rows, self.p))
        return ~np.any(r != 0, axis=1)

    def coordinates(self, v) -> dict[int, int] | None:
        row = array_modp([v], self.p)
        if np.any(self._reduce_block(row)):
            return None
        return {c: int(row[0, c]) for c in self.piv}


def _rref_dense(R: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced echelon form over F_p of a dense block; returns nonzero rows and pivots.

    Large blocks are split in halves so that most of the work happens in
    :func:`matmul_mod`; small blocks use plain row operations.
    """
    R = R[np.any(R != 0, axis=1)]
    if R.shape[0] == 0:
        return np.zeros((0, R.shape[1]), dtype=np.int64), []
    if R.shape[0] <= 32:
        return _rref_small(R, p)
    half = R.shape[0] // 2
    top, piv1 = _rref_dense(R[:half], p)
    bottom = R[half:]
    if piv1:
        bottom = np.mod(bottom - matmul_mod(bottom[:, piv1], top, p), p)
    bot, piv2 = _rref_dense(bottom, p)
    if not piv2:
        return top, piv1
    if piv1:
        top = np.mod(top - matmul_mod(top[:, piv2], bot, p), p)
    B = np.vstack([top, bot])
    piv = piv1 + piv2
    order = np.argsort(piv, kind="stable")
    return B[order], [piv[i] for i in order]


def _rref_small(R: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R = R.copy()
    rows: list[int] = []
    pivots: list[int] = []
    for i in range(R.shape[0]):
        nz = np.flatnonzero(R[i])
        if nz.size == 0:
            continue
        c = int(nz[0])
        R[i] = np.mod(R[i] * pow(int(R[i, c]), -1, p), p)
        others = [j for j in range(R.shape[0]) if j != i and R[j, c]]
        if others:
            f = R[others, c].reshape(-1, 1)
            R[others] = np.mod(R[others] - f * R[i], p)
        rows.append(i)
        pivots.append(c)
    if not rows:
        return np.zeros((0, R.shape[1]), dtype=np.int64), []
    order = np.argsort(pivots, kind="stable")
    return R[[rows[k] for k in order]], [pivots[k] for k in order]


class Echelon:
    """Incrementally maintained reduced row-echelon basis over Q (``p=None``) or F_p."""

    def __init__(self, ncols: int, p: int | None = None):
        self.ncols = ncols
        self.p = p
        self._impl = _RationalEchelon(ncols) if p is None else _ModpEchelon(ncols, p)

    def add_rows(self, rows) -> int:
        """Add rows; return how many increased the rank."""
        return self._impl.add_rows(rows)

    @property
    def rank(self) -> int:
        return len(self._impl.pivots)

    @property
    def pivots(self) -> list[int]:
        return self._impl.pivots

    def basis(self) -> list[tuple]:
        return self._impl.basis()

    def contains(self, v) -> bool:
        return self._impl.contains(v)

    def contains_many(self, rows) -> list[bool]:
        if self.p is None:
            return [self._impl.contains(r) for r in rows]
        return list(self._impl.contains_many(rows))

    def coordinates(self, v):
        """Coefficients of ``v`` on the basis rows keyed by pivot column, or None."""
        return self._impl.coordinates(v)

    def kernel_vectors(self) -> list[tuple]:
        """A basis (not yet canonical) of the right kernel of the row space."""
        piv = self.pivots
        free = sorted(set(range(self.ncols)) - set(piv))
        basis = self.basis()
        zero = Fraction(0) if self.p is None else 0
        one = Fraction(1) if self.p is None else 1
        out = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for row, c in zip(basis, piv):
                if row[f]:
                    v[c] = -row[f] if self.p is None else (-row[f]) % self.p
            out.append(tuple(v))
        return out

    def to_subspace(self) -> "Subspace":
        return Subspace(self.ncols, tuple(self.basis()), self.p)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n stored by its canonical reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple[tuple, ...]
    p: int | None = None

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, p: int | None = None) -> "Subspace":
        ech = Echelon(ambient_dim, p)
        vectors = list(vectors)
        if vectors:
            ech.add_rows(vectors)
        return ech.to_subspace()

    @classmethod
    def zero(cls, ambient_dim: int, p: int | None = None) -> "Subspace":
        return cls(ambient_dim, (), p)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _echelon(self) -> Echelon:
        ech = Echelon(self.ambient_dim, self.p)
        if self.basis:
            ech.add_rows(list(self.basis))
        return ech

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient dims {self.ambient_dim} != {other.ambient_dim}")
        if self.p != other.p:
            raise DimensionMismatch(f"fields differ: {self.p} vs {other.p}")

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dim {self.ambient_dim}")
        return self._echelon().contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        ech = self._echelon()
        return all(ech.contains_many(list(other.basis))) if other.basis else True

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim, self.p)
        k1 = self.dim
        # x = a.B1 = b.B2  <=>  (a, b) in ker [B1; -B2]^T
        stacked = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        cols = [[stacked[r][c] for r in range(len(stacked))] for c in range(self.ambient_dim)]
        ech = Echelon(len(stacked), self.p)
        ech.add_rows(cols)
        vecs = []
        for coeffs in ech.kernel_vectors():
            vec = [sum(coeffs[i] * self.basis[i][c] for i in range(k1)) for c in range(self.ambient_dim)]
            if self.p is not None:
                vec = [x % self.p for x in vec]
            vecs.append(vec)
        return Subspace.span(vecs, self.ambient_dim, self.p)

    def reduce_mod(self, p: int) -> "Subspace":
        """Image of a rational subspace in F_p^n (re-echelonized)."""
        if self.p is not None:
            raise ValueError("subspace is already modular")
        return Subspace.span([[to_modp(x, p) for x in v] for v in self.basis], self.ambient_dim, p)


# ---------------------------------------------------------------------------
# rational matrices


class QMatrix:
    """Dense matrix of Fractions, immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(to_fraction(x) for x in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.to_rows())
        return f"QMatrix([{body}])"

    @property
    def T(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for j in range(other.cols):
                    out.append(sum((r[k] * other[k, j] for k in range(self.cols) if r[k]), Fraction(0)))
            return QMatrix(self.rows, other.cols, out)
        v = list(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(sum((a * to_fraction(b) for a, b in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))


def _as_rows(M) -> tuple[list, int]:
    if isinstance(M, QMatrix):
        return M.to_rows(), M.cols
    if isinstance(M, np.ndarray):
        return [list(r) for r in M], M.shape[1]
    rows = [list(r) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def rref(M) -> tuple[QMatrix, list[int]]:
    """Reduced row-echelon form over Q and its pivot columns (zero rows kept at the bottom)."""
    rows, ncols = _as_rows(M)
    ech = Echelon(ncols)
    if rows:
        ech.add_rows(rows)
    basis = ech.basis()
    pad = [tuple([Fraction(0)] * ncols)] * (len(rows) - len(basis))
    return QMatrix.from_rows(basis + pad) if rows else QMatrix(0, ncols, []), ech.pivots


def rank(M, p: int | None = None) -> int:
    rows, ncols = _as_rows(M)
    ech = Echelon(ncols, p)
    if rows:
        ech.add_rows(rows)
    return ech.rank


def rank_mod_p(M, p: int) -> int:
    """Rank of M reduced mod p; raises BadPrime if a denominator vanishes mod p."""
    return rank(M, p)


def kernel_basis(M, p: int | None = None) -> Subspace:
    """Canonical basis of the right kernel {v : M v = 0}."""
    rows, ncols = _as_rows(M)
    ech = Echelon(ncols, p)
    if rows:
        ech.add_rows(rows)
    return Subspace.span(ech.kernel_vectors(), ncols, p)


def left_kernel_basis(M, p: int | None = None) -> Subspace:
    """Canonical basis of {w : w^T M = 0}."""
    rows, ncols = _as_rows(M)
    cols = [[rows[r][c] for r in range(len(rows))] for c in range(ncols)]
    return kernel_basis(cols, p) if cols else Subspace.span(
        [[1 if i == j else 0 for j in range(len(rows))] for i in range(len(rows))], len(rows), p)


def solve_in_span(basis: Sequence[Sequence], v: Sequence, p: int | None = None) -> list | None:
    """Coefficients c with sum c_i basis_i = v, or None when v is outside the span.

    The basis vectors must be linearly independent.
    """
    k = len(basis)
    n = len(v)
    # unknowns c_0..c_{k-1} and a homogenizing column for -v
    rows = [[basis[i][j] for i in range(k)] + [-v[j] if p is None else (-v[j]) % p] for j in range(n)]
    ech = Echelon(k + 1, p)
    ech.add_rows(rows)
    for vec in ech.kernel_vectors():
        if vec[k]:
            scale = 1 / vec[k] if p is None else pow(int(vec[k]), -1, p)
            if p is None:
                return [x * scale for x in vec[:k]]
            return [x * scale % p for x in vec[:k]]
    return None


def solve_square(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list[Fraction]]:
    """X with A X = B over Q for square invertible A (B given as rows)."""
    n = len(A)
    if any(len(r) != n for r in A) or len(B) != n:
        raise DimensionMismatch("solve_square needs a square system")
    k = len(B[0]) if n else 0
    aug = [[to_fraction(x) for x in A[i]] + [to_fraction(x) for x in B[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:n + k] for row in aug]


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    return solve_square(A, [[1 if i == j else 0 for j in range(n)] for i in range(n)])
