"""Closed-form prolongation dimensions for linear projections, and the inequality grids.

Each family of rank-one cones (rank <= 1 matrices, rank <= 1 symmetric matrices,
rank <= 2 skew matrices and the projected Veronese of W + Q) has a formula for
the first prolongation of a biregular projection from a centre L, in terms of
the images and kernels of the matrices in L.  The grids check the strict gap
between that prolongation and the ambient dimension over all small parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import BadDimension
from .linalg import Echelon
from .zoo import skew_index, sym_index


def _row_span_dim(rows: Sequence[Sequence], ncols: int) -> int:
    ech = Echelon(ncols)
    if rows:
        ech.add_rows(rows)
    return ech.rank


def segre_projection_dim(a: int, b: int, L: Sequence[Sequence]) -> int:
    """dim Hom(B / Im L, Ker L) for L inside a x b matrices (row-major vectors).

    A matrix M acts as x -> x^T M from Q^a to Q^b, so Im L is the span of all
    rows and Ker L the common left kernel.
    """
    mats = [[[Fraction(v[i * b + j]) for j in range(b)] for i in range(a)] for v in L]
    t = _row_span_dim([row for M in mats for row in M], b)
    stacked = [[M[i][j] for M in mats for j in range(b)] for i in range(a)]
    s = a - _row_span_dim([list(col) for col in zip(*stacked)], a) if mats else a
    return (b - t) * s


def _sym_rows(n: int, v: Sequence) -> list[list[Fraction]]:
    idx = sym_index(n)
    return [[Fraction(v[idx[i, j]]) for j in range(n)] for i in range(n)]


def _skew_rows(n: int, v: Sequence) -> list[list[Fraction]]:
    idx = skew_index(n)
    out = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), k in idx.items():
        out[i][j] = Fraction(v[k])
        out[j][i] = -Fraction(v[k])
    return out


def veronese_projection_dim(n: int, L: Sequence[Sequence]) -> int:
    """dim Sym^2 (W / Im L) for L inside symmetric n x n matrices."""
    t = _row_span_dim([r for v in L for r in _sym_rows(n, v)], n)
    return (n - t) * (n - t + 1) // 2


def pluecker_projection_dim(n: int, L: Sequence[Sequence]) -> int:
    """dim Lambda^2 (W / Im L) for L inside skew n x n matrices."""
    t = _row_span_dim([r for v in L for r in _skew_rows(n, v)], n)
    return (n - t) * (n - t - 1) // 2


def sympl_projection_dim(k: int, m: int, L: Sequence[Sequence]) -> int:
    """dim Sym^2 (W / Im_W L) for L inside Sym^2 W + W (x) Q, dim W = k, dim Q = m."""
    ns = k * (k + 1) // 2
    rows = []
    for v in L:
        rows += _sym_rows(k, v[:ns])
        eta = [[Fraction(v[ns + i * m + j]) for j in range(m)] for i in range(k)]
        rows += [list(col) for col in zip(*eta)]
    t = _row_span_dim(rows, k)
    return (k - t) * (k - t + 1) // 2


def projection_formula(kind: str, params: Sequence[int], L: Sequence[Sequence]) -> int:
    if kind == "segre":
        return segre_projection_dim(params[0], params[1], L)
    if kind == "veronese":
        return veronese_projection_dim(params[0], L)
    if kind == "pluecker":
        return pluecker_projection_dim(params[0], L)
    if kind == "sympl":
        return sympl_projection_dim(params[0], params[1], L)
    raise BadDimension(f"no projection formula for {kind}")


# ---------------------------------------------------------------------------
# concrete projection instances


@dataclass(frozen=True)
class ProjectionInstance:
    family: str
    kind: str
    params: tuple[int, ...]
    centre: tuple[tuple[int, ...], ...]

    @property
    def spec(self) -> str:
        base = {"segre": "segre:{}x{}", "veronese": "veronese:{}", "pluecker": "pluecker:{}",
                "sympl": "sympl:{},{}"}[self.kind].format(*self.params)
        vecs = "; ".join(",".join(str(x) for x in v) for v in self.centre)
        return f"project({base}; {vecs})"

    @property
    def expected(self) -> int:
        return projection_formula(self.kind, self.params, self.centre)


def _matrix_vec(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(x for r in rows for x in r)


def _diag(n: int, d: Sequence[int]) -> list[list[int]]:
    return [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]


def _sym_vec(n: int, d: Sequence[int]) -> tuple[int, ...]:
    return tuple(d[i] if i == j else 0 for i, j in sorted({(min(p), max(p)) for p in sym_index(n)}))


def _skew_vec(n: int, pairs: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    idx = skew_index(n)
    v = [0] * len(idx)
    for p in pairs:
        v[idx[p]] = 1
    return tuple(v)


def projection_instances(family: str) -> list[ProjectionInstance]:
    """Fixed shortlist of small centres with a known image/kernel profile."""
    if family == "segre":
        r3 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]
        r3_54 = r3 + [[0, 0, 0, 0]]
        return [
            ProjectionInstance(family, "segre", (3, 3), (_matrix_vec(_diag(3, [1, 1, 1])),)),
            ProjectionInstance(family, "segre", (4, 4), (_matrix_vec(r3),)),
            ProjectionInstance(family, "segre", (5, 4), (_matrix_vec(r3_54),)),
            ProjectionInstance(family, "segre", (4, 4), (_matrix_vec(_diag(4, [1, 1, 1, 1])),)),
        ]
    if family == "veronese":
        return [
            ProjectionInstance(family, "veronese", (3,), (_sym_vec(3, [1, 1, 1]),)),
            ProjectionInstance(family, "veronese", (4,), (_sym_vec(4, [1, 1, 1, 0]),)),
            ProjectionInstance(family, "veronese", (5,), (_sym_vec(5, [1, 1, 1, 0, 0]),)),
            ProjectionInstance(family, "veronese", (4,), (_sym_vec(4, [1, 1, 1, 1]),)),
        ]
    if family == "pluecker":
        three = [(0, 1), (2, 3), (4, 5)]
        return [
            ProjectionInstance(family, "pluecker", (6,), (_skew_vec(6, three),)),
            ProjectionInstance(family, "pluecker", (7,), (_skew_vec(7, three),)),
            ProjectionInstance(family, "pluecker", (8,), (_skew_vec(8, three),)),
            ProjectionInstance(family, "pluecker", (8,), (_skew_vec(8, three + [(6, 7)]),)),
        ]
    if family == "sympl":
        return [
            ProjectionInstance(family, "sympl", (3, 1), ((1, 0, 0, 1, 0, 1, 0, 0, 0),)),
            ProjectionInstance(family, "sympl", (3, 1), ((1, 0, 0, 1, 0, 0, 0, 0, 0),)),
            ProjectionInstance(family, "sympl", (3, 1), ((0, 0, 0, 0, 0, 0, 1, 0, 0),)),
        ]
    raise BadDimension(f"unknown projection family {family!r}")


# ---------------------------------------------------------------------------
# inequality grids


@dataclass(frozen=True)
class GridResult:
    """Outcome of one grid.

    ``violations`` lists tuples where the gap or the stated expression is not
    strictly positive.  ``mismatches`` lists tuples where the stated expression
    differs from the gap itself; that is reported but is not a violation.
    """

    family: str
    bound: int
    checked: int
    violations: tuple[tuple[int, ...], ...]
    mismatches: tuple[tuple[int, ...], ...]
    factored_ok: bool

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.violations and self.factored_ok


GridRow = tuple[tuple[int, ...], int, int, int]


def _segre_grid(bound: int) -> Iterator[GridRow]:
    # a >= b >= 3, s = dim Ker L < a, t = dim Im L < b
    for a in range(3, bound + 1):
        for b in range(3, a + 1):
            for s in range(a):
                for t in range(b):
                    gap = a * b - (a - s) * t - (b - t) * s
                    yield (a, b, s, t), gap, (a - t) * (b - t) + s * t, (a - s) * (b - t) + s * t


def _pluecker_grid(bound: int) -> Iterator[GridRow]:
    # n >= 6, 0 < t < n
    for n in range(6, bound + 1):
        for t in range(1, n):
            gap = n * (n - 1) // 2 - t * (t - 1) // 2 - (n - t) * (n - t - 1) // 2
            yield (n, t), gap, t * (n - t), t * (n - t)


def _veronese_grid(bound: int) -> Iterator[GridRow]:
    # n >= 3, 0 < r < n
    for n in range(3, bound + 1):
        for r in range(1, n):
            gap = n * (n + 1) // 2 - r * (r + 1) // 2 - (n - r) * (n - r + 1) // 2
            yield (n, r), gap, r * (n - r), r * (n - r)


def _sympl_grid(bound: int) -> Iterator[GridRow]:
    # k >= 2, m >= 1, 0 <= t < k
    for k in range(2, bound + 1):
        for m in range(1, bound + 1):
            for t in range(k):
                gap = (k * (k + 1) // 2 + k * m - t * (t + 1) // 2 - t * m
                       - (k - t) * (k - t + 1) // 2)
                yield (k, m, t), gap, (m + t) * (k - t), (m + t) * (k - t)


GRIDS: dict[str, Callable[[int], Iterator[GridRow]]] = {
    "segre": _segre_grid,
    "pluecker": _pluecker_grid,
    "veronese": _veronese_grid,
    "sympl": _sympl_grid,
}

STATED_FORMS = {
    "segre": "(a-t)(b-t)+st",
    "pluecker": "t(n-t)",
    "veronese": "r(n-r)",
    "sympl": "(m+t)(k-t)",
}


def inequality_grid(family: str, bound: int = 6) -> GridResult:
    """Check the strict lower bound on the dimension gap over every admissible tuple.

    The gap is the ambient dimension of the projection minus the largest
    possible centre minus the prolongation dimension.  For each tuple the gap
    and the stated closed form must both be positive, and the gap must equal
    its factored form.
    """
    if family not in GRIDS:
        raise BadDimension(f"unknown grid family {family!r}")
    checked = 0
    bad, mismatch = [], []
    factored_ok = True
    for params, gap, stated, factored in GRIDS[family](bound):
        checked += 1
        if gap <= 0 or stated <= 0:
            bad.append(params)
        if gap != stated:
            mismatch.append(params)
        if gap != factored:
            factored_ok = False
    return GridResult(family, bound, checked, tuple(bad), tuple(mismatch), factored_ok)


__all__ = [
    "GRIDS", "STATED_FORMS", "GridResult", "ProjectionInstance", "inequality_grid",
    "pluecker_projection_dim", "projection_formula", "projection_instances",
    "segre_projection_dim", "sympl_projection_dim", "veronese_projection_dim",
]
