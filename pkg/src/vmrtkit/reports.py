"""Report rows for the command-line pipelines.

Every row function is a pure function of its arguments (including a per-row
seed) and returns a JSON-ready dict with a ``verdict`` of "PASS" or "FAIL".
Wall-clock times are collected separately by :func:`run_rows` so that a
report can be replayed and compared exactly.
"""

from __future__ import annotations

import hashlib
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import euler, roots
from .errors import BadType
from .aut import AutConfig, aut_from_quadrics, aut_from_samples, prolong_k_report
from .formulas import STATED_FORMS, inequality_grid, projection_formula, projection_instances
from .linalg import PRIMES
from .zoo import parse_variety, sample_point

SCHEMA = 1

# (spec, expected dim aut^(1), large)
IHSS_ROWS: tuple[tuple[str, int, bool], ...] = (
    ("quadric:3", 3, False), ("quadric:4", 4, False), ("quadric:5", 5, False), ("quadric:6", 6, False),
    ("segre:2x2", 4, False), ("segre:2x3", 6, False), ("segre:3x3", 9, False),
    ("veronese:2", 3, False), ("veronese:3", 6, False), ("veronese:4", 10, False),
    ("pluecker:4", 6, False), ("pluecker:5", 10, False), ("pluecker:6", 15, False),
    ("spinor:5", 16, True), ("severi", 27, True),
)

IHSS_ANCHOR = "dim aut^(1) of the VMRT cone equals the dimension of the IHSS it comes from"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    primes: tuple[int, int] = PRIMES
    stability_window: int = 3
    holdout: int = 5
    max_samples: int = 200
    certify_rational: bool | None = None

    def aut_config(self, seed: int) -> AutConfig:
        return AutConfig(seed=seed, window=self.stability_window, holdout=self.holdout,
                         max_samples=self.max_samples, primes=tuple(self.primes),
                         certify=self.certify_rational)

    def to_json(self) -> dict:
        d = asdict(self)
        d["primes"] = list(self.primes)
        return d


def row_seed(master: int, name: str) -> int:
    """Per-row seed: first 8 bytes of sha256(master seed, row name)."""
    digest = hashlib.sha256(f"{master}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


# ---------------------------------------------------------------------------
# prolongation rows

_PROJECT_RE = re.compile(r"project\(\s*(segre|veronese|pluecker|sympl)\s*:\s*(\d+)\s*(?:[x,]\s*(\d+))?\s*;(.*)\)\s*$")


def expectation_for(spec: str) -> tuple[int | None, str | None]:
    """Closed-form dim aut^(1) for a spec when one is known, with a descriptive anchor."""
    m = _PROJECT_RE.match(spec.strip())
    if m:
        kind = m.group(1)
        params = [int(m.group(2))] + ([int(m.group(3))] if m.group(3) else [])
        vecs = [[Fraction(x) for x in part.split(",")] for part in m.group(4).split(";") if part.strip()]
        forms = {"segre": "Hom(B/Im L, Ker L)", "veronese": "Sym^2 (W/Im L)^*",
                 "pluecker": "Lambda^2 (W/Im L)^*", "sympl": "Sym^2 (W/Im_W L)^*"}
        return projection_formula(kind, params, vecs), f"projection formula {forms[kind]}"
    if spec.strip().startswith("project"):
        return None, None
    X = parse_variety(spec)
    if X.expected_dim_aut1 is None:
        return None, None
    if X.name.startswith("sympl"):
        return X.expected_dim_aut1, "aut^(1) of the projected Veronese is Sym^2 W^*, dim k(k+1)/2"
    return X.expected_dim_aut1, IHSS_ANCHOR


def row_prolong(spec: str, order: int, seed: int, cfg: RunConfig) -> dict:
    X = parse_variety(spec, seed=seed)
    rep = prolong_k_report(X, order, cfg.aut_config(seed))
    expected, anchor = expectation_for(spec)
    row = {"name": spec, "seed": seed, "ambient_dim": X.N, "dims": rep.dims, "primes": rep.primes,
           "certified_rational": rep.certified, "notes": rep.notes,
           "expected": None if expected is None else {"aut1": expected, "anchor": anchor}}
    ok = expected is None or rep.dims[1] == expected
    if rep.dims[1] > 0:
        row["strictly_below_ambient"] = rep.dims[1] < X.N
    row["verdict"] = _verdict(ok)
    return row


def row_aut(spec: str, seed: int, cfg: RunConfig) -> dict:
    X = parse_variety(spec, seed=seed)
    p = cfg.primes[0] if X.N > 10 else None
    g = aut_from_samples(X, cfg.aut_config(seed), p)
    row = {"name": spec, "seed": seed, "ambient_dim": X.N, "field": "Q" if p is None else f"F_{p}",
           "dim_aut": g.dim, "samples_history": g.history, "closed_under_bracket": g.is_closed(),
           "contains_identity": g.contains_identity()}
    ok = row["closed_under_bracket"] and row["contains_identity"]
    if X.quadrics is not None:
        h = aut_from_quadrics(X, p)
        row["dim_aut_from_quadrics"] = h.dim
        row["routes_agree"] = g.basis == h.basis
        ok = ok and row["routes_agree"]
    row["verdict"] = _verdict(ok)
    return row


# ---------------------------------------------------------------------------
# root-system rows

_TYPE_RE = re.compile(r"([A-Ga-g])\s*(\d+)$")


def parse_type(text: str) -> tuple[str, int]:
    m = _TYPE_RE.match(text.strip())
    if not m:
        raise BadType(f"cannot read a Dynkin type from {text!r}")
    return m.group(1).upper(), int(m.group(2))


def row_classify(kind: str, rank: int, node: int, beta: int | None, fixed_points: bool) -> dict:
    rs = roots.build(kind, rank)
    mk = roots.Marking(rs, node)
    beta = node if beta is None else beta
    sigma = roots.Cocharacter.sigma(rank, beta)
    cl = roots.classify_action(mk, beta)
    family = roots.tube_family(kind, rank, node)
    row = {"name": f"{rs.name}/P{node}", "beta": beta,
           "grading_dims": {str(k): v for k, v in sorted(roots.grading_dims(rs, roots.Cocharacter.sigma(rank, node)).items())},
           "ihss": roots.is_ihss(mk), "tube": roots.is_tube_type(mk),
           "opposition_involution": roots.opposition_involution(rs),
           "n_fixed_points": cl.n_fixed, "equalized": cl.equalized,
           "euler_sources": cl.euler_sources, "euler_sinks": cl.euler_sinks,
           "expected": {"tube": family is not None, "family": family,
                        "anchor": "tube type iff the marking is on the classical list of tube domains"}}
    ok = row["tube"] == (family is not None)
    if row["ihss"] and cl.two_isolated_extremal_euler:
        res = roots.bb_poset(mk, sigma)
        row["poset"] = {"ok": res.ok, "source": res.source, "reversed": res.reversed_sigma,
                        "successor_size": None if res.successor is None else len(res.components[res.successor]),
                        "v_minus": res.v_minus}
        ok = ok and res.ok
    if fixed_points:
        row["fixed_points"] = [{"word": list(fp.word), "weights": list(fp.tangent_weights)}
                               for fp in roots.bb_fixed_points(mk, sigma)]
    row["verdict"] = _verdict(ok)
    return row


def rows_extremal(max_rank: int) -> list[dict]:
    found = roots.equalized_extremal_markings(max_rank)
    rows = []
    for r in found:
        family = roots.tube_family(r.kind, r.rank, r.node)
        rows.append({"name": f"{r.kind}{r.rank}/P{r.node}", "betas": r.betas, "tube": r.tube,
                     "family": family, "verdict": _verdict(r.tube and family is not None)})
    got = sorted((r.kind, r.rank, r.node) for r in found)
    want = sorted(roots.tube_markings(max_rank))
    families = sorted({re.match(r"[A-Za-z]+", roots.tube_family(*m)).group(0) for m in want})
    rows.append({"name": f"classification up to rank {max_rank}", "found": len(got), "tube_markings": len(want),
                 "families": families,
                 "expected": {"anchor": "equalized actions with two isolated extremal Euler points occur "
                                        "exactly on IHSS of tube type"},
                 "verdict": _verdict(got == want)})
    return rows


# ---------------------------------------------------------------------------
# inequality grids and projection instances


def row_grid(family: str, bound: int) -> dict:
    g = inequality_grid(family, bound)
    return {"name": f"grid:{family}", "bound": bound, "stated_form": STATED_FORMS[family],
            "checked": g.checked, "violations": [list(v) for v in g.violations],
            "stated_form_differs_from_gap": len(g.mismatches), "factored_gap_ok": g.factored_ok,
            "verdict": _verdict(g.ok)}


def row_instance(spec: str, seed: int, cfg: RunConfig) -> dict:
    return row_prolong(spec, 1, seed, cfg)


def instance_specs(family: str) -> list[str]:
    return [inst.spec for inst in projection_instances(family)]


# ---------------------------------------------------------------------------
# symbol-system rows


def _model(system: str) -> euler.GradedModel:
    return euler.build_model(euler.symbol_system(system))


def row_symbol_check(system: str) -> dict:
    S = euler.symbol_system(system)
    try:
        euler.validate(S)
        ok, err = True, None
    except euler.InvalidSymbolSystem as e:
        ok, err = False, str(e)
    return {"name": S.name, "dims": list(S.dims), "rank": S.rank, "tube": S.is_tube,
            "projective_space": S.rank == 1, "error": err, "verdict": _verdict(ok)}


def row_symbol_embed(system: str, point: Sequence) -> dict:
    M = _model(system)
    f = euler.embed(M, point)
    g = euler.embed_via_gamma(M, point)
    return {"name": M.symbol.name, "point": _jsonable(list(point)), "image": _jsonable(list(f)),
            "V_dims": list(M.V_dims), "verdict": _verdict(not any(f - g))}


def row_representations(system: str, seed: int, n_points: int) -> dict:
    M = _model(system)
    rep = euler.verify_representations(M, seed=seed, n_points=n_points)
    data = {k: v for k, v in vars(rep).items()}
    data["name"] = data.pop("model")
    data.update({"seed": seed, "n_points": n_points, "verdict": _verdict(rep.ok)})
    return data


def row_lambda(system: str, seed: int, cfg: RunConfig) -> dict:
    from .aut import prolong
    M = _model(system)
    img, ker = euler.lambda_image(M)
    X = euler.vmrt_variety(M.symbol)
    if X.N <= 10:
        g = aut_from_quadrics(X)
        P = prolong(g)
        equal = P.basis == img
        fields = ["Q"]
    else:
        equal = True
        for p in cfg.primes:
            P = prolong(aut_from_quadrics(X, p))
            equal = equal and P.basis == img.reduce_mod(p)
        fields = [f"F_{p}" for p in cfg.primes]
    return {"name": M.symbol.name, "partner": X.name, "seed": seed, "image_dim": img.dim,
            "kernel_dim": ker, "prolongation_dim": P.dim, "fields": fields,
            "image_equals_prolongation": equal,
            "verdict": _verdict(equal and ker == 0)}


def row_bracket(system: str, seed: int) -> dict:
    M = _model(system)
    rng = np.random.default_rng(seed)
    n = M.W_dim
    unit = [[1 if i == a else 0 for i in range(n)] for a in range(n)]
    checks = 0
    ok = True
    cs = set()
    for a in range(n):
        b = int(rng.integers(n))
        w = [int(x) for x in rng.integers(-3, 4, n)]
        res = euler.bracket_fixed_check(M, (unit[a], unit[b]), w)
        checks += 1
        ok = ok and res.ok
        cs.add(str(res.c))
    u = [int(x) for x in rng.integers(-3, 4, n)]
    w = [int(x) for x in rng.integers(-3, 4, n)]
    pa = euler.pair_action(M, u, w)
    return {"name": M.symbol.name, "seed": seed, "bracket_checks": checks, "bracket_ok": ok,
            "c_values": sorted(cs), "pair_action_euler": pa.euler,
            "verdict": _verdict(ok and pa.euler)}


def row_base_locus(system: str, seed: int, n_points: int = 100) -> dict:
    M = _model(system)
    bl = euler.base_locus(M, seed=seed)
    X = euler.vmrt_variety(M.symbol)
    rng = np.random.default_rng(seed)
    inside = sum(bl(sample_point(X, rng)[1]) for _ in range(n_points))
    generic = sum(bl([int(x) for x in rng.integers(-10**6, 10**6 + 1, M.W_dim)]) for _ in range(n_points))
    return {"name": M.symbol.name, "partner": X.name, "seed": seed, "l0": bl.l0,
            "vmrt_points_in_base_locus": inside, "generic_points_in_base_locus": generic,
            "n_points": n_points, "verdict": _verdict(inside == n_points and generic == 0)}


# ---------------------------------------------------------------------------
# running and assembling


@dataclass(frozen=True)
class Job:
    name: str
    fn: Callable[..., Any]
    args: tuple

    def __call__(self):
        return self.fn(*self.args)


def _timed(job: Job) -> tuple[Any, float]:
    t0 = time.perf_counter()
    out = job()
    return out, time.perf_counter() - t0


def _error_row(name: str, exc: Exception) -> dict:
    return {"name": name, "error": f"{type(exc).__name__}: {exc}", "verdict": "FAIL"}


def _run_one(job: Job) -> tuple[list[dict], float]:
    try:
        out, dt = _timed(job)
    except Exception as exc:  # reported per row, the rest of the report still runs
        return [_error_row(job.name, exc)], 0.0
    rows = out if isinstance(out, list) else [out]
    return rows, dt


def run_rows(jobs: Sequence[Job], n_jobs: int = 1) -> tuple[list[dict], dict[str, float]]:
    """Run jobs (optionally in a process pool) preserving order; return rows and timings."""
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    rows, timings = [], {}
    for job, (rs, dt) in zip(jobs, results):
        rows.extend(_jsonable(r) for r in rs)
        timings[job.name] = round(dt, 3)
    return rows, timings


def assemble(argv: Sequence[str], cfg: RunConfig, rows: list[dict], timings: dict[str, float]) -> dict:
    n_pass = sum(r["verdict"] == "PASS" for r in rows)
    return {"schema": SCHEMA, "command": list(argv), "config": cfg.to_json(), "rows": rows,
            "summary": {"pass": n_pass, "fail": len(rows) - n_pass, "ok": n_pass == len(rows)},
            "timings": timings}


def comparable(report: dict) -> dict:
    """The report without its wall-clock timings, for replay comparison."""
    return {k: v for k, v in report.items() if k != "timings"}
