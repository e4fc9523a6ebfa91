"""Root systems, Weyl-group orbits and torus-fixed-point weight data.

Nodes are numbered 1..rank in the Bourbaki convention throughout the public
API.  Roots and weights are stored in simple-root coordinates (tuples of
Fractions); inner products come from the Gram matrix of the simple roots in a
standard Euclidean model.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BadType, NotEulerSource

Vec = tuple[Fraction, ...]


def _e(n: int, *entries: tuple[int, object]) -> list[Fraction]:
    v = [Fraction(0)] * n
    for i, c in entries:
        v[i] += Fraction(c)
    return v


def simple_roots_standard(kind: str, rank: int) -> list[list[Fraction]]:
    """Simple roots in the usual Euclidean coordinates (Bourbaki numbering)."""
    h = Fraction(1, 2)
    if kind == "A" and rank >= 1:
        return [_e(rank + 1, (i, 1), (i + 1, -1)) for i in range(rank)]
    if kind == "B" and rank >= 2:
        return [_e(rank, (i, 1), (i + 1, -1)) for i in range(rank - 1)] + [_e(rank, (rank - 1, 1))]
    if kind == "C" and rank >= 2:
        return [_e(rank, (i, 1), (i + 1, -1)) for i in range(rank - 1)] + [_e(rank, (rank - 1, 2))]
    if kind == "D" and rank >= 4:
        return [_e(rank, (i, 1), (i + 1, -1)) for i in range(rank - 1)] + [_e(rank, (rank - 2, 1), (rank - 1, 1))]
    if kind == "E" and rank in (6, 7, 8):
        e8 = [[h, -h, -h, -h, -h, -h, -h, h], _e(8, (0, 1), (1, 1))]
        e8 += [_e(8, (i, -1), (i + 1, 1)) for i in range(6)]
        return [list(map(Fraction, v)) for v in e8[:rank]]
    if kind == "F" and rank == 4:
        return [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)), [h, -h, -h, -h]]
    if kind == "G" and rank == 2:
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    raise BadType(f"no root system of type {kind}{rank}")


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    simple_roots: tuple[tuple[Fraction, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Vec, ...]

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def all_roots(self) -> tuple[Vec, ...]:
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @property
    def negative_roots(self) -> tuple[Vec, ...]:
        return tuple(neg(r) for r in self.positive_roots)

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        g = self.gram
        return sum((u[i] * g[i][j] * v[j] for i in range(self.rank) if u[i] for j in range(self.rank) if v[j]),
                   Fraction(0))

    def reflect(self, v: Sequence, gamma: Sequence) -> Vec:
        """s_gamma(v) = v - 2 (v, gamma)/(gamma, gamma) gamma."""
        c = 2 * self.inner(v, gamma) / self.inner(gamma, gamma)
        return tuple(Fraction(a) - c * g for a, g in zip(v, gamma))

    def simple_reflect(self, v: Sequence, i: int) -> Vec:
        """Reflection in the 0-based simple root i."""
        c = sum((v[j] * self.cartan[j][i] for j in range(self.rank) if v[j]), Fraction(0))
        out = list(v)
        out[i] = Fraction(out[i]) - c
        return tuple(Fraction(x) for x in out)

    def apply_word(self, word: Sequence[int], v: Sequence) -> Vec:
        """Apply s_{word[0]} first, then s_{word[1]}, ... (0-based letters)."""
        out = tuple(Fraction(x) for x in v)
        for i in word:
            out = self.simple_reflect(out, i)
        return out

    def simple_root(self, i: int) -> Vec:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.rank))

    def fundamental_weight(self, node: int) -> Vec:
        """omega_node in simple-root coordinates (node is 1-based)."""
        k = node - 1
        # c with sum_i c_i A[i][j] = delta_{jk}: solve A^T c = e_k
        n = self.rank
        M = [[Fraction(self.cartan[i][j]) for i in range(n)] + [Fraction(1 if j == k else 0)] for j in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if M[r][col])
            M[col], M[piv] = M[piv], M[col]
            inv = 1 / M[col][col]
            M[col] = [x * inv for x in M[col]]
            for r in range(n):
                if r != col and M[r][col]:
                    f = M[r][col]
                    M[r] = [a - f * b for a, b in zip(M[r], M[col])]
        return tuple(M[i][n] for i in range(n))


def neg(v: Sequence) -> Vec:
    return tuple(-Fraction(x) for x in v)


ROOT_COUNTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


def expected_root_count(kind: str, rank: int) -> int:
    if kind == "A":
        return rank * (rank + 1)
    if kind in "BC":
        return 2 * rank * rank
    if kind == "D":
        return 2 * rank * (rank - 1)
    return ROOT_COUNTS[f"{kind}{rank}"]


@lru_cache(maxsize=None)
def build(kind: str, rank: int) -> RootSystem:
    """Complete root system generated from the simple roots by simple reflections."""
    kind = kind.upper()
    simple = simple_roots_standard(kind, rank)
    gram = tuple(tuple(sum((a * b for a, b in zip(u, v)), Fraction(0)) for v in simple) for u in simple)
    cartan = tuple(tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(rank)) for i in range(rank))
    rs = RootSystem(kind, rank, tuple(tuple(v) for v in simple), gram, cartan, ())
    seen = {rs.simple_root(i) for i in range(rank)}
    queue = deque(seen)
    while queue:
        r = queue.popleft()
        for i in range(rank):
            s = rs.simple_reflect(r, i)
            if all(x >= 0 for x in s) and s not in seen:
                seen.add(s)
                queue.append(s)
    pos = tuple(sorted(seen, key=lambda v: (sum(v), v)))
    rs = RootSystem(kind, rank, rs.simple_roots, gram, cartan, pos)
    if len(rs.all_roots) != expected_root_count(kind, rank):
        raise AssertionError(f"{rs.name}: {len(rs.all_roots)} roots generated")
    return rs


def highest_root(rs: RootSystem) -> Vec:
    return max(rs.positive_roots, key=sum)


def coefficient(rs: RootSystem, root: Sequence, node: int) -> int:
    """m_node(root): the coefficient of the simple root ``node`` (1-based)."""
    return int(root[node - 1])


@dataclass(frozen=True)
class Marking:
    rs: RootSystem
    alpha: int  # 1-based node

    def __post_init__(self):
        if not 1 <= self.alpha <= self.rs.rank:
            raise BadType(f"node {self.alpha} outside 1..{self.rs.rank}")

    @property
    def label(self) -> str:
        return f"{self.rs.name}/P{self.alpha}"


@dataclass(frozen=True)
class Cocharacter:
    values: tuple[int, ...]

    @classmethod
    def sigma(cls, rank: int, beta: int) -> "Cocharacter":
        """The cocharacter pairing to 1 with simple root ``beta`` (1-based) and 0 with the others."""
        return cls(tuple(1 if i == beta - 1 else 0 for i in range(rank)))

    def __call__(self, root: Sequence) -> int:
        return int(sum(c * v for c, v in zip(root, self.values) if v))

    def reversed(self) -> "Cocharacter":
        return Cocharacter(tuple(-v for v in self.values))


def is_cominuscule(mk: Marking) -> bool:
    return coefficient(mk.rs, highest_root(mk.rs), mk.alpha) == 1


def grading_dims(rs: RootSystem, sigma: Cocharacter) -> dict[int, int]:
    dims: dict[int, int] = {0: rs.rank}
    for r in rs.all_roots:
        k = sigma(r)
        dims[k] = dims.get(k, 0) + 1
    return dict(sorted(dims.items()))


def longest_word(rs: RootSystem) -> list[int]:
    """Reduced word (0-based letters, applied left to right) of w0.

    Walk from rho (all Dynkin labels 1) by simple reflections in positive labels
    until every label is negative.
    """
    labels = [1] * rs.rank
    word = []
    while True:
        i = next((j for j, x in enumerate(labels) if x > 0), None)
        if i is None:
            return word
        li = labels[i]
        labels = [labels[j] - li * rs.cartan[i][j] for j in range(rs.rank)]
        word.append(i)


def opposition_involution(rs: RootSystem) -> list[int]:
    """iota as a list: iota[i-1] = j means -w0(alpha_i) = alpha_j (1-based nodes)."""
    w0 = longest_word(rs)
    out = []
    for i in range(rs.rank):
        img = neg(rs.apply_word(w0, rs.simple_root(i)))
        j = next(k for k in range(rs.rank) if img == rs.simple_root(k))
        out.append(j + 1)
    return out


def is_ihss(mk: Marking) -> bool:
    return is_cominuscule(mk)


def is_tube_type(mk: Marking) -> bool:
    return is_ihss(mk) and opposition_involution(mk.rs)[mk.alpha - 1] == mk.alpha


# ---------------------------------------------------------------------------
# torus-fixed points of G/P


@dataclass(frozen=True)
class FixedPointDatum:
    word: tuple[int, ...]  # 1-based letters; the point is s_{word[-1]} ... s_{word[0]} omega
    weight: Vec  # w . omega_alpha in simple-root coordinates
    tangent_roots: tuple[Vec, ...]  # w theta for theta in Phi^- with m_alpha(theta) < 0
    tangent_weights: tuple[int, ...]


def nilradical_minus(mk: Marking) -> list[Vec]:
    return [r for r in mk.rs.negative_roots if r[mk.alpha - 1] < 0]


@lru_cache(maxsize=None)
def _orbit(mk: Marking) -> tuple[tuple[Vec, tuple[int, ...], tuple[Vec, ...]], ...]:
    """(w.omega, reduced word, w.theta for the nilradical) by BFS over simple reflections."""
    rs = mk.rs
    start = rs.fundamental_weight(mk.alpha)
    data = {start: ((), tuple(nilradical_minus(mk)))}
    queue = deque([start])
    while queue:
        lam = queue.popleft()
        word, troots = data[lam]
        for i in range(rs.rank):
            mu = rs.simple_reflect(lam, i)
            if mu not in data:
                data[mu] = (word + (i,), tuple(rs.simple_reflect(r, i) for r in troots))
                queue.append(mu)
    return tuple((lam, w, tr) for lam, (w, tr) in data.items())


def bb_fixed_points(mk: Marking, sigma: Cocharacter) -> list[FixedPointDatum]:
    """One datum per point of the W-orbit of omega_alpha, in BFS order."""
    return [FixedPointDatum(tuple(i + 1 for i in word), lam, troots, tuple(sigma(r) for r in troots))
            for lam, word, troots in _orbit(mk)]


@dataclass
class Classification:
    equalized: bool
    euler_sources: list[int]
    euler_sinks: list[int]
    n_fixed: int

    @property
    def two_isolated_extremal_euler(self) -> bool:
        return self.equalized and bool(self.euler_sources) and bool(self.euler_sinks)


def classify_action(mk: Marking, beta: int) -> Classification:
    """Weights of sigma_beta at every fixed point; sources have all weights +1, sinks all -1."""
    fps = bb_fixed_points(mk, Cocharacter.sigma(mk.rs.rank, beta))
    equalized = all(w in (-1, 0, 1) for fp in fps for w in fp.tangent_weights)
    sources = [k for k, fp in enumerate(fps) if all(w == 1 for w in fp.tangent_weights)]
    sinks = [k for k, fp in enumerate(fps) if all(w == -1 for w in fp.tangent_weights)]
    return Classification(equalized, sources, sinks, len(fps))


def simple_types(max_rank: int) -> list[tuple[str, int]]:
    out = []
    for n in range(1, max_rank + 1):
        out.append(("A", n))
    for n in range(2, max_rank + 1):
        out.append(("B", n))
    for n in range(2, max_rank + 1):
        out.append(("C", n))
    for n in range(4, max_rank + 1):
        out.append(("D", n))
    for n in (6, 7, 8):
        if n <= max_rank:
            out.append(("E", n))
    if max_rank >= 4:
        out.append(("F", 4))
    if max_rank >= 2:
        out.append(("G", 2))
    return out


@dataclass
class ExtremalRow:
    kind: str
    rank: int
    node: int
    betas: list[int]
    tube: bool


def equalized_extremal_markings(max_rank: int) -> list[ExtremalRow]:
    """Markings whose G/P admits an equalized sigma_beta with isolated Euler source and sink.

    Every simple type of rank <= max_rank, every cominuscule node and every
    simple beta is tried; ``tube`` records the independent involution test.
    """
    if max_rank < 2:
        raise ValueError("max_rank must be >= 2")
    rows = []
    for kind, rank in simple_types(max_rank):
        rs = build(kind, rank)
        for node in range(1, rank + 1):
            mk = Marking(rs, node)
            if not is_cominuscule(mk):
                continue
            betas = [b for b in range(1, rank + 1) if classify_action(mk, b).two_isolated_extremal_euler]
            if betas:
                rows.append(ExtremalRow(kind, rank, node, betas, is_tube_type(mk)))
    return rows


def tube_markings(max_rank: int) -> list[tuple[str, int, int]]:
    out = []
    for kind, rank in simple_types(max_rank):
        rs = build(kind, rank)
        for node in range(1, rank + 1):
            if is_tube_type(Marking(rs, node)):
                out.append((kind, rank, node))
    return out


def tube_family(kind: str, rank: int, node: int) -> str | None:
    """Name of the tube-type family a marking belongs to, or None."""
    if kind == "A" and rank % 2 == 1 and node == (rank + 1) // 2:
        return f"Gr({node},{2 * node})"
    if kind == "B" and node == 1:
        return f"Q^{2 * rank - 1}"
    if kind == "D" and node == 1:
        return f"Q^{2 * rank - 2}"
    if kind == "C" and node == rank:
        return f"Lag({rank},{2 * rank})"
    if kind == "D" and rank % 2 == 0 and node in (rank - 1, rank):
        return f"S_{rank}"
    if kind == "E" and rank == 7 and node == 7:
        return "E7/P7"
    return None


# ---------------------------------------------------------------------------
# moment graph and the order between fixed components


@dataclass
class PosetResult:
    ok: bool
    source: int
    reversed_sigma: bool
    components: list[list[int]]
    successor: int | None
    v_minus: list[int] = field(default_factory=list)


def _components(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return [find(x) for x in range(n)]


def bb_poset(mk: Marking, sigma: Cocharacter) -> PosetResult:
    """Moment-graph check that the Euler source has a unique immediate successor with v^- = 1.

    If the only Euler-type extremal point is a sink, sigma is reversed so that
    it becomes a source.
    """
    rs = mk.rs
    fps = bb_fixed_points(mk, sigma)
    reversed_sigma = False
    src = [k for k, fp in enumerate(fps) if fp.tangent_weights and all(w == 1 for w in fp.tangent_weights)]
    if not src:
        sigma = sigma.reversed()
        fps = bb_fixed_points(mk, sigma)
        reversed_sigma = True
        src = [k for k, fp in enumerate(fps) if fp.tangent_weights and all(w == 1 for w in fp.tangent_weights)]
    if not src:
        raise NotEulerSource(f"{mk.label}: no Euler-type extremal fixed point for {sigma.values}")
    x = src[0]
    index = {fp.weight: k for k, fp in enumerate(fps)}
    zero_edges = []
    up_edges = []
    for k, fp in enumerate(fps):
        for gamma, w in zip(fp.tangent_roots, fp.tangent_weights):
            other = index[rs.reflect(fp.weight, gamma)]
            if w == 0:
                zero_edges.append((k, other))
            elif w > 0:
                up_edges.append((k, other))
    comp = _components(len(fps), zero_edges)
    labels = sorted(set(comp))
    cid = {c: i for i, c in enumerate(labels)}
    ncomp = len(labels)
    succ = [set() for _ in range(ncomp)]
    for a, b in up_edges:
        ca, cb = cid[comp[a]], cid[comp[b]]
        if ca != cb:
            succ[ca].add(cb)
    # predecessors under the transitive closure
    preds = [set() for _ in range(ncomp)]
    for c in range(ncomp):
        stack = list(succ[c])
        seen = set()
        while stack:
            d = stack.pop()
            if d in seen:
                continue
            seen.add(d)
            stack.extend(succ[d])
        for d in seen:
            preds[d].add(c)
    cx = cid[comp[x]]
    members = [[k for k in range(len(fps)) if cid[comp[k]] == c] for c in range(ncomp)]
    cands = [c for c in range(ncomp) if c != cx and preds[c] == {cx}]
    if len(cands) != 1:
        return PosetResult(False, x, reversed_sigma, members, None)
    Y = cands[0]
    vminus = [sum(1 for w in fps[k].tangent_weights if w < 0) for k in members[Y]]
    return PosetResult(all(v == 1 for v in vminus), x, reversed_sigma, members, Y, vminus)


def bb_poset_check(mk: Marking, sigma: Cocharacter) -> bool:
    return bb_poset(mk, sigma).ok
