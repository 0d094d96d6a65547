"""Verification campaigns over small instances, exact bound arithmetic, reports.

Every campaign returns a :class:`Report`: an ordered list of
:class:`VerificationRecord` plus a summary. Records are produced in instance
order whatever the number of workers, and wall-clock time lives only in the
trailer, so two runs with the same inputs produce identical report bodies.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from math import comb
from typing import Callable, Iterable, Sequence

from .clique import has_clique_of_order, max_clique_order
from .core import (
    Hypergraph,
    colex_rank,
    compress,
    compress_to_fixpoint,
    is_left_compressed,
    link,
    make_colex_graph,
    pair_link,
)
from .enumerate import (
    MAX_ISO_N,
    canonical_mask,
    count_graphs,
    enumerate_graphs,
    left_compressed_graphs,
    random_corpus,
)
from .errors import BudgetExceeded, InvalidArgument
from .solver import SolverOptions, complete_lagrangian, maximize

DEFAULT_BUDGET = 10**6
STRICT_MARGIN = 1e-9

SCALE_NOTE = (
    "Full-scale instances (r >= 4, t >= 55) cannot be enumerated; this campaign "
    "checks the bound arithmetic exactly and the clique/neighbourhood dichotomies "
    "on small (r, t) analogues instead."
)


# ---------------------------------------------------------------- records


@dataclass
class VerificationRecord:
    """One checked instance.

    ``kind`` fixes how pass/fail follows from the numbers:
    ``eq``  |computed - reference| <= tolerance
    ``le``  computed <= reference + tolerance
    ``lt``  reference - computed >= tolerance (tolerance is the strictness margin)
    ``exact`` computed == reference (integers, zero tolerance)
    """

    campaign: str
    instance: dict
    computed: float
    reference: float
    tolerance: float
    kind: str = "eq"
    clique_order: int | None = None
    detail: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def margin(self) -> float:
        c, ref, tol = self.computed, self.reference, self.tolerance
        if self.kind == "eq":
            return tol - abs(c - ref)
        if self.kind == "le":
            return ref + tol - c
        if self.kind == "lt":
            return (ref - c) - tol
        if self.kind == "exact":
            return 0.0 if c == ref else -1.0
        raise ValueError(f"unknown record kind {self.kind!r}")

    @property
    def passed(self) -> bool:
        return self.margin >= 0

    def to_record(self) -> dict:
        return {
            "campaign": self.campaign,
            "instance": self.instance,
            "computed": self.computed,
            "reference": self.reference,
            "clique_order": self.clique_order,
            "kind": self.kind,
            "tolerance": self.tolerance,
            "margin": self.margin,
            "pass": self.passed,
            "detail": self.detail,
        }


CSV_FIELDS = ["campaign", "instance", "computed", "reference", "clique_order", "kind",
              "tolerance", "margin", "pass", "detail"]


@dataclass
class Report:
    campaign: str
    seed: int
    records: list = field(default_factory=list)
    note: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passes(self) -> int:
        return sum(rec.passed for rec in self.records)

    @property
    def fails(self) -> int:
        return len(self.records) - self.passes

    @property
    def ok(self) -> bool:
        return self.fails == 0

    @property
    def worst(self) -> VerificationRecord | None:
        return min(self.records, key=lambda rec: rec.margin, default=None)

    def summary(self) -> dict:
        worst = self.worst
        return {
            "campaign": self.campaign,
            "instances": len(self.records),
            "passes": self.passes,
            "fails": self.fails,
            "worst_margin": None if worst is None else worst.margin,
            "seed": self.seed,
        }

    def header(self) -> dict:
        return {"header": True, "campaign": self.campaign, "note": self.note, **self.extra}

    def trailer(self) -> dict:
        return {
            "trailer": True,
            "wall_time": sum(rec.wall_time for rec in self.records),
            "instance_wall_times": [rec.wall_time for rec in self.records],
        }

    def body_lines(self) -> list[str]:
        lines = [json.dumps(self.header())]
        lines += [json.dumps(rec.to_record()) for rec in self.records]
        lines.append(json.dumps(self.summary()))
        return lines

    def write_jsonl(self, stream, trailer: bool = True) -> None:
        for line in self.body_lines():
            stream.write(line + "\n")
        if trailer:
            stream.write(json.dumps(self.trailer()) + "\n")

    def write_csv(self, stream) -> None:
        writer = csv.DictWriter(stream, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for rec in self.records:
            row = rec.to_record()
            row["instance"] = json.dumps(row["instance"])
            row["detail"] = json.dumps(row["detail"])
            writer.writerow(row)

    def to_jsonl(self, trailer: bool = False) -> str:
        buf = io.StringIO()
        self.write_jsonl(buf, trailer=trailer)
        return buf.getvalue()


def describe(G: Hypergraph) -> dict:
    return {"r": G.r, "n": G.n, "m": G.m, "signature": [colex_rank(e) for e in G.edges]}


def default_workers() -> int:
    env = os.environ.get("HYPERLAG_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _fan_out(func: Callable, items: Sequence, workers: int | None) -> list:
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunk))


def _check_budget(required: int, budget: int) -> None:
    if required > budget:
        raise BudgetExceeded(required, budget)


# ---------------------------------------------------------------- Motzkin-Straus


def _ms_instance(G: Hypergraph, tol: float, opts: SolverOptions) -> VerificationRecord:
    start = time.perf_counter()
    res = maximize(G, opts)
    omega = max_clique_order(G).order
    ref = 0.5 * (1 - 1 / omega)
    rec = VerificationRecord("ms", describe(G), res.lambda_value, ref, tol, "eq", omega,
                             {"support": list(res.support)})
    rec.wall_time = time.perf_counter() - start
    return rec


def verify_motzkin_straus(n_max: int | None = 5, tol: float = 1e-6, *,
                          graphs: Iterable[Hypergraph] | None = None,
                          opts: SolverOptions | None = None, workers: int | None = 1,
                          budget: int = DEFAULT_BUDGET) -> Report:
    """lam(G) = (1 - 1/omega(G)) / 2 for every 2-graph with an edge on <= n_max
    vertices (one per isomorphism class), or for the given graphs."""
    opts = opts or SolverOptions()
    if graphs is None:
        if n_max > MAX_ISO_N:
            raise InvalidArgument(f"exhaustive tier needs n_max <= {MAX_ISO_N}")
        _check_budget(2 ** comb(n_max, 2), budget)
        graphs = [G for m in range(1, comb(n_max, 2) + 1)
                  for G in enumerate_graphs(2, n_max, m, up_to_iso=True)]
    graphs = list(graphs)
    if any(G.r != 2 for G in graphs):
        raise InvalidArgument("Motzkin-Straus campaign takes 2-graphs")
    records = _fan_out(partial(_ms_instance, tol=tol, opts=opts), graphs, workers)
    return Report("ms", opts.seed, records)


# ---------------------------------------------------------------- colex plateau


def plateau_range(r: int, t: int) -> range:
    lo = comb(t - 1, r)
    return range(lo, lo + comb(t - 2, r - 1) + 1)


def _plateau_instance(m: int, r: int, t: int, tol: float, opts: SolverOptions):
    start = time.perf_counter()
    G = make_colex_graph(r, m)
    ref = complete_lagrangian(t - 1, r)
    res = maximize(G, opts)
    rec = VerificationRecord("plateau", describe(G), res.lambda_value, float(ref), tol, "eq",
                             detail={"reference_exact": str(ref), "support": list(res.support)})
    rec.wall_time = time.perf_counter() - start
    return rec


def verify_colex_plateau(r: int, t: int, tol: float = 1e-6, *, opts: SolverOptions | None = None,
                         workers: int | None = 1) -> Report:
    """lam(C_{r,m}) = lam([t-1]^(r)) for C(t-1,r) <= m <= C(t-1,r) + C(t-2,r-1)."""
    if r < 2 or t < r + 1:
        raise InvalidArgument("plateau campaign needs r >= 2 and t >= r + 1")
    opts = opts or SolverOptions()
    ms = list(plateau_range(r, t))
    records = _fan_out(partial(_plateau_instance, r=r, t=t, tol=tol, opts=opts), ms, workers)
    return Report("plateau", opts.seed, records, extra={"r": r, "t": t})


# ---------------------------------------------------------------- Frankl-Furedi


def _solve_instance(G: Hypergraph, opts: SolverOptions):
    start = time.perf_counter()
    res = maximize(G, opts)
    return res.lambda_value, time.perf_counter() - start


def verify_frankl_furedi(r: int, n: int, m: int, tol: float = 1e-6, *,
                         opts: SolverOptions | None = None, workers: int | None = 1,
                         budget: int = DEFAULT_BUDGET) -> Report:
    """No m-edge r-graph on [n] beats C_{r,m}, and C_{r,m} is among the maximizers."""
    opts = opts or SolverOptions()
    if m < 1 or m > comb(n, r):
        raise InvalidArgument(f"m must lie in [1, C({n},{r})]")
    _check_budget(count_graphs(r, n, m), budget)
    iso = n <= MAX_ISO_N
    graphs = list(enumerate_graphs(r, n, m, up_to_iso=iso))
    C = make_colex_graph(r, m)
    ref = maximize(C, opts).lambda_value
    solved = _fan_out(partial(_solve_instance, opts=opts), graphs, workers)

    records = []
    for G, (lam, wall) in zip(graphs, solved):
        rec = VerificationRecord("ff", describe(G), lam, ref, tol, "le")
        rec.wall_time = wall
        records.append(rec)
    best = max(lam for lam, _ in solved)
    maximizers = [describe(G)["signature"] for G, (lam, _) in zip(graphs, solved)
                  if lam >= best - tol]
    attained = ref >= best - tol
    if iso:
        target = canonical_mask(C.with_edges(C.edges, n))
        attained = attained and any(
            canonical_mask(G) == target
            for G, (lam, _) in zip(graphs, solved) if lam >= best - tol)
    records.append(VerificationRecord(
        "ff", {**describe(C), "role": "colex graph attains maximum"},
        float(attained), 1.0, 0.0, "exact",
        detail={"lambda_colex": ref, "lambda_max": best, "maximizers": maximizers}))
    return Report("ff", opts.seed, records,
                  extra={"r": r, "n": n, "m": m, "up_to_iso": iso, "raw_count": len(graphs)})


# ---------------------------------------------------------------- clique dichotomy


def _dichotomy_instance(G: Hypergraph, t: int, tol: float, margin: float, opts: SolverOptions):
    start = time.perf_counter()
    ref = float(complete_lagrangian(t - 1, G.r))
    lam = maximize(G, opts).lambda_value
    found, witness = has_clique_of_order(G, t - 1)
    omega = max_clique_order(G).order
    if found:
        rec = VerificationRecord("dichotomy", describe(G), lam, ref, tol, "eq", omega,
                                 {"side": "clique", "witness": list(witness)})
    else:
        rec = VerificationRecord("dichotomy", describe(G), lam, ref, margin, "lt", omega,
                                 {"side": "no-clique"})
    rec.wall_time = time.perf_counter() - start
    return rec


def verify_clique_dichotomy(r: int, t: int, tol: float = 1e-6, budget: int = DEFAULT_BUDGET, *,
                            graphs: Iterable[Hypergraph] | None = None,
                            margin: float = STRICT_MARGIN, opts: SolverOptions | None = None,
                            workers: int | None = 1) -> Report:
    """Split m-edge r-graphs on [t], C(t-1,r) <= m <= C(t-1,r) + C(t-2,r-1), by
    whether they contain a clique of order t-1. With the clique, lam must equal
    lam([t-1]^(r)) within tol; without it, lam must sit below by at least margin.
    """
    opts = opts or SolverOptions()
    if graphs is None:
        if t < r + 1:
            raise InvalidArgument("dichotomy campaign needs t >= r + 1")
        _check_budget(sum(count_graphs(r, t, m) for m in plateau_range(r, t)), budget)
        iso = t <= MAX_ISO_N
        graphs = [G for m in plateau_range(r, t) for G in enumerate_graphs(r, t, m, up_to_iso=iso)]
    graphs = list(graphs)
    records = _fan_out(partial(_dichotomy_instance, t=t, tol=tol, margin=margin, opts=opts),
                       graphs, workers)
    return Report("dichotomy", opts.seed, records, note=SCALE_NOTE,
                  extra={"r": r, "t": t, "strict_margin": margin})


# ---------------------------------------------------------------- bound formulas


def coeff_loose(r: int) -> int:
    return 2 ** (r - 3) - 1


def coeff_sharp(r: int) -> int:
    return (2 * r - 6) * 2 ** (r - 1) + 2 ** (r - 3) + (r - 4) * (2 * r - 7) - 1


@dataclass(frozen=True)
class BoundSummary:
    r: int
    t: int
    lower: int
    upper_loose: int
    upper_sharp: int
    coeff_loose: int
    coeff_sharp: int
    nonempty_sharp: bool

    @property
    def width_sharp(self) -> int:
        return self.upper_sharp - self.lower

    @property
    def plateau_top(self) -> int:
        return self.lower + comb(self.t - 2, self.r - 1)

    def to_record(self) -> dict:
        keys = ("r", "t", "lower", "upper_loose", "upper_sharp", "coeff_loose", "coeff_sharp",
                "nonempty_sharp", "width_sharp")
        return {k: getattr(self, k) for k in keys}


def theorem_bounds(r: int, t: int) -> BoundSummary:
    """Edge-count ranges C(t-1,r) <= m <= C(t-1,r) + C(t-2,r-1) - c (C(t-2,r-2) - 1)
    for the two coefficients c, in exact integer arithmetic."""
    if r < 4 or t < r + 1:
        raise InvalidArgument("bounds need r >= 4 and t >= r + 1")
    lower = comb(t - 1, r)
    top = lower + comb(t - 2, r - 1)
    pairs = comb(t - 2, r - 2) - 1
    c_loose, c_sharp = coeff_loose(r), coeff_sharp(r)
    upper_sharp = top - c_sharp * pairs
    return BoundSummary(r, t, lower, top - c_loose * pairs, upper_sharp, c_loose, c_sharp,
                        upper_sharp >= lower)


def first_nonempty_t(r: int, t_max: int) -> BoundSummary | None:
    for t in range(r + 1, t_max + 1):
        b = theorem_bounds(r, t)
        if b.nonempty_sharp:
            return b
    return None


def verify_bounds(r: int, t_max: int, t_min: int | None = None) -> Report:
    """Scan t and check upper_sharp <= upper_loose <= plateau top (for t >= r + 2)."""
    t_min = r + 1 if t_min is None else t_min
    records = []
    for t in range(t_min, t_max + 1):
        b = theorem_bounds(r, t)
        ok = b.upper_loose <= b.plateau_top and (t < r + 2 or b.upper_sharp <= b.upper_loose)
        records.append(VerificationRecord("bounds", {"r": r, "t": t}, int(ok), 1, 0.0, "exact",
                                          detail=b.to_record()))
    first = first_nonempty_t(r, t_max)
    extra = {"r": r, "t_max": t_max,
             "first_nonempty_t": None if first is None else first.t,
             "first_width": None if first is None else first.width_sharp}
    return Report("bounds", 0, records, note=SCALE_NOTE, extra=extra)


def power_inequality_holds(r: int, t: int) -> bool:
    return (t - r) ** (r - 2) * (t - 1) < (t - r + 1) ** (r - 1)


def check_power_inequality(r_min: int, r_max: int, t_max: int) -> Report:
    """(t-r)^(r-2) (t-1) < (t-r+1)^(r-1) for r_min <= r <= r_max, r <= t <= t_max."""
    if r_min < 4:
        raise InvalidArgument("power inequality is stated for r >= 4")
    records = []
    for r in range(r_min, r_max + 1):
        bad = [t for t in range(r, t_max + 1) if not power_inequality_holds(r, t)]
        records.append(VerificationRecord(
            "ineq", {"r": r, "t_min": r, "t_max": t_max}, len(bad), 0, 0.0, "exact",
            detail={"checked": max(0, t_max - r + 1), "counterexamples": bad[:20]}))
    return Report("ineq", 0, records, note=SCALE_NOTE, extra={"r_min": r_min, "r_max": r_max,
                                                               "t_max": t_max})


# ---------------------------------------------------------------- neighbourhood dichotomy


@dataclass
class NeighborhoodDiagnostic:
    r: int
    t: int
    precondition_ok: bool
    reason: str = ""
    window: int = 0
    missing_links: int = 0
    missing_sets: int = 0
    pair_bound: int = 0
    lam: float = float("nan")
    reference: float = float("nan")
    strict: bool = False
    link_disjunct: str = ""
    set_disjunct: str = ""

    @property
    def holds(self) -> bool:
        return self.precondition_ok and bool(self.link_disjunct) and bool(self.set_disjunct)

    def to_record(self) -> dict:
        return {k: getattr(self, k) for k in (
            "r", "t", "precondition_ok", "reason", "window", "missing_links", "missing_sets",
            "pair_bound", "lam", "reference", "strict", "link_disjunct", "set_disjunct")}


def check_neighborhood_dichotomy(G: Hypergraph, t: int | None = None, tol: float = STRICT_MARGIN,
                                 opts: SolverOptions | None = None) -> NeighborhoodDiagnostic:
    """Count missing sets in the window [t-2r+6] against 2^(r-1) |E_{(t-1)t}|.

    Each of the two statements holds if its count condition holds or lam(G)
    is below lam([t-1]^(r)) by at least tol. Precondition failures are
    reported in the result rather than raised.
    """
    t = G.n if t is None else t
    r = G.r
    diag = NeighborhoodDiagnostic(r, t, False)
    if G.n != t:
        diag.reason = f"graph is on [{G.n}], expected [{t}]"
        return diag
    if t - 1 < r or t - 2 * r + 6 < 1:
        diag.reason = "t too small for the window [t-2r+6]"
        return diag
    if not is_left_compressed(G):
        diag.reason = "not left-compressed"
        return diag
    inner = itertools.combinations(range(1, t), r)
    if all(e in G.edge_set for e in inner):
        diag.reason = f"contains [{t - 1}]^({r})"
        return diag
    diag.precondition_ok = True
    # the window never reaches t-1 (it does for r <= 3 without the cap)
    w = min(t - 2 * r + 6, t - 2)
    diag.window = w
    links = set(link(G, t - 1))
    diag.missing_links = sum(1 for A in itertools.combinations(range(1, w + 1), r - 1)
                             if A not in links)
    diag.missing_sets = sum(1 for e in itertools.combinations(range(1, w + 1), r)
                            if e not in G.edge_set)
    diag.pair_bound = 2 ** (r - 1) * len(pair_link(G, t - 1, t))
    diag.lam = maximize(G, opts).lambda_value
    diag.reference = float(complete_lagrangian(t - 1, r))
    diag.strict = diag.reference - diag.lam >= tol
    diag.link_disjunct = ("count" if diag.missing_links <= diag.pair_bound
                          else "strict" if diag.strict else "")
    diag.set_disjunct = ("count" if diag.missing_sets <= diag.pair_bound
                         else "strict" if diag.strict else "")
    return diag


def _nbhd_instance(G: Hypergraph, tol: float, opts: SolverOptions):
    start = time.perf_counter()
    d = check_neighborhood_dichotomy(G, G.n, tol, opts)
    rec = VerificationRecord("nbhd", describe(G), float(d.holds), 1.0, 0.0, "exact",
                             detail=d.to_record())
    rec.wall_time = time.perf_counter() - start
    return rec


def verify_neighborhood_dichotomy(r: int, t: int, tol: float = STRICT_MARGIN, *,
                                  opts: SolverOptions | None = None,
                                  workers: int | None = 1,
                                  budget: int = DEFAULT_BUDGET) -> Report:
    """Run the neighbourhood diagnostic on every left-compressed r-graph on [t]
    that has an edge and misses some r-set of [t-1]."""
    opts = opts or SolverOptions()
    inner = list(itertools.combinations(range(1, t), r))
    graphs = [G for G in left_compressed_graphs(r, t)
              if G.m and not all(e in G.edge_set for e in inner)]
    _check_budget(len(graphs), budget)
    records = _fan_out(partial(_nbhd_instance, tol=tol, opts=opts), graphs, workers)
    return Report("nbhd", opts.seed, records, note=SCALE_NOTE, extra={"r": r, "t": t})


# ---------------------------------------------------------------- compression


def _iso_key(G: Hypergraph):
    # lam is invariant under relabelling, so isomorphic images share one solve
    return canonical_mask(G) if G.n <= MAX_ISO_N else G.edge_set


def _compression_instance(G: Hypergraph, tol: float, opts: SolverOptions):
    start = time.perf_counter()
    base = maximize(G, opts).lambda_value
    seen = {_iso_key(G): base}
    steps = 0

    def solve(H):
        nonlocal steps
        key = _iso_key(H)
        if key not in seen:
            seen[key] = maximize(H, opts).lambda_value
            steps += 1
        return seen[key]

    worst = min(solve(compress(G, i, j))
                for i in range(1, G.n + 1) for j in range(i + 1, G.n + 1))
    F = compress_to_fixpoint(G)
    lam_f = solve(F)
    worst = min(worst, lam_f)
    # worst >= base - tol, phrased as base <= worst + tol
    rec = VerificationRecord("compress-mono", describe(G), base, worst, tol, "le",
                             detail={"lambda_fixpoint": lam_f, "distinct_solves": steps,
                                     "fixpoint_left_compressed": is_left_compressed(F)})
    rec.wall_time = time.perf_counter() - start
    return rec


def verify_compression_monotone(corpus: Iterable[Hypergraph] | None = None, tol: float = 1e-7, *,
                                count: int = 500, seed: int = 0,
                                opts: SolverOptions | None = None,
                                workers: int | None = 1) -> Report:
    """Single compression steps and the full compression never lower lam."""
    opts = opts or SolverOptions()
    graphs = list(corpus) if corpus is not None else random_corpus(count, seed)
    records = _fan_out(partial(_compression_instance, tol=tol, opts=opts), graphs, workers)
    return Report("compress-mono", seed, records)
