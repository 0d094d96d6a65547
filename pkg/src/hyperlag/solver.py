"""Lagrangians of r-graphs: evaluation, maximization over the simplex, diagnostics.

The objective is the edge-product polynomial
    lam(G, x) = sum over edges e of prod_{v in e} x_v
on the standard simplex. It is homogeneous of degree r with nonnegative
coefficients, so the multiplicative growth map
    x_i <- x_i * d_i lam(G, x) / (r * lam(G, x))
never decreases it. maximize() runs that map from several starts, prunes the
support, and reports the first-order optimality residuals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .clique import max_clique_order
from .core import (
    Hypergraph,
    is_left_compressed,
    link,
    link_difference,
    pair_link,
)
from .errors import DegenerateStart, InvalidArgument, PreconditionViolation


@dataclass(frozen=True)
class SolverOptions:
    max_iterations: int = 3000
    convergence_tolerance: float = 1e-10
    restarts: int = 32
    support_threshold: float = 1e-9
    seed: int = 0
    prune_tolerance: float = 1e-10
    check_every: int = 10

    def __post_init__(self):
        for name in ("max_iterations", "convergence_tolerance", "support_threshold",
                     "prune_tolerance", "check_every"):
            if not getattr(self, name) > 0:
                raise InvalidArgument(f"{name} must be positive")
        if self.restarts < 0 or self.seed < 0:
            raise InvalidArgument("restarts and seed must be nonnegative")


@dataclass
class OptResult:
    lambda_value: float
    weighting: np.ndarray
    support: tuple[int, ...]
    kkt_residual: float
    pair_cover_ok: bool
    iterations: int
    converged: bool
    restarts_used: int = 0

    def to_record(self) -> dict:
        return {
            "lambda": float(self.lambda_value),
            "weights": [float(v) for v in self.weighting],
            "support": list(self.support),
            "kkt": float(self.kkt_residual),
            "iters": int(self.iterations),
            "converged": bool(self.converged),
        }


def as_weighting(x, n: int | None = None) -> np.ndarray:
    """Check nonnegativity and normalise x onto the simplex."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or (n is not None and x.shape[0] != n):
        raise InvalidArgument(f"weighting must have length {n}")
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise InvalidArgument("weights must be finite and nonnegative")
    s = x.sum()
    if s <= 0:
        raise InvalidArgument("weights must not all vanish")
    return x / s


# ------------------------------------------------------------ vectorised kernel


class _Poly:
    """Batched values and gradients of lam(G, .) for rows of a weight matrix."""

    def __init__(self, G: Hypergraph):
        self.r = G.r
        self.n = G.n
        self.E = G.edge_array
        m = self.E.shape[0]
        self.scatter = np.zeros((m * G.r, G.n))
        self.scatter[np.arange(m * G.r), self.E.ravel()] = 1.0

    def values(self, X: np.ndarray) -> np.ndarray:
        return X[..., self.E].prod(-1).sum(-1)

    def grads(self, X: np.ndarray) -> np.ndarray:
        P = X[..., self.E]
        loo = np.empty_like(P)
        # leave-one-out products: prefix products, then multiply in suffixes
        loo[..., 0] = 1.0
        for k in range(1, self.r):
            loo[..., k] = loo[..., k - 1] * P[..., k - 1]
        acc = P[..., -1].copy()
        for k in range(self.r - 2, -1, -1):
            loo[..., k] *= acc
            if k:
                acc *= P[..., k]
        return loo.reshape(P.shape[:-2] + (-1,)) @ self.scatter

    def residuals(self, X: np.ndarray, threshold: float) -> np.ndarray:
        g = self.grads(X)
        lam = (X * g).sum(-1) / self.r
        dev = np.abs(g - self.r * lam[..., None])
        return np.where(X > threshold, dev, 0.0).max(-1)


def _iterate(poly: _Poly, X: np.ndarray, opts: SolverOptions):
    """Run the growth map on every row until its residual is below tolerance.

    Rows must have positive value. Returns (X, iterations, converged mask).
    """
    X = X.copy()
    active = np.arange(X.shape[0])
    converged = np.zeros(X.shape[0], dtype=bool)
    it = 0
    while it < opts.max_iterations and active.size:
        Y = X[active]
        for _ in range(opts.check_every):
            # sum(x * grad) = r * lam, so dividing by the row sum is the growth map
            Y = Y * poly.grads(Y)
            Y /= Y.sum(-1, keepdims=True)
        it += opts.check_every
        X[active] = Y
        done = poly.residuals(Y, opts.support_threshold) <= opts.convergence_tolerance
        converged[active[done]] = True
        active = active[~done]
    return X, it, converged


def _clean(x: np.ndarray, threshold: float) -> np.ndarray:
    x = np.where(x > threshold, x, 0.0)
    return x / x.sum()


# ------------------------------------------------------------ point evaluation


def evaluate(G: Hypergraph, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise InvalidArgument(f"weighting has length {x.shape}, graph has {G.n} vertices")
    if not G.edges:
        return 0.0
    return float(x[G.edge_array].prod(-1).sum())


def family_value(sets: Sequence[Sequence[int]], x) -> float:
    """Sum over a set family of the product of (1-based) weights."""
    x = np.asarray(x, dtype=float)
    return float(sum(np.prod([x[v - 1] for v in A]) for A in sets))


def link_value(G: Hypergraph, i: int, x) -> float:
    """lam(E_i, x), which is the partial derivative of lam(G, .) at x in coordinate i."""
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise InvalidArgument("weighting length does not match the graph")
    return family_value(link(G, i), x)


def growth_step(G: Hypergraph, x) -> np.ndarray:
    x = as_weighting(x, G.n)
    value = evaluate(G, x)
    if value <= 0:
        raise DegenerateStart("lam(G, x) = 0; reseed before iterating")
    y = x * _Poly(G).grads(x)
    return y / y.sum()


def complete_lagrangian(t: int, r: int) -> Fraction:
    """lam([t]^(r)) = C(t, r) / t^r, attained by the uniform weighting."""
    if t < r:
        raise InvalidArgument("need t >= r")
    return Fraction(comb(t, r), t**r)


# ------------------------------------------------------------ maximization


def _pair_cover(G: Hypergraph, support: Sequence[int]) -> bool:
    covered = set()
    for e in G.edges:
        covered.update(itertools.combinations(e, 2))
    return all(p in covered for p in itertools.combinations(sorted(support), 2))


def _finish(G: Hypergraph, poly: _Poly, x, iters, converged, opts, restarts_used) -> OptResult:
    x = _clean(x, opts.support_threshold)
    support = tuple(int(i) + 1 for i in np.flatnonzero(x > opts.support_threshold))
    lam = evaluate(G, x)
    g = poly.grads(x)
    kkt = float(max((abs(g[i - 1] - G.r * lam) for i in support), default=0.0))
    return OptResult(
        lambda_value=lam,
        weighting=x,
        support=support,
        kkt_residual=kkt,
        pair_cover_ok=_pair_cover(G, support),
        iterations=int(iters),
        converged=bool(converged),
        restarts_used=restarts_used,
    )


def _preference(lam, x, best_lam, threshold, tol):
    """Sort key: within tol of the best value, fewer positive weights first,
    then the lexicographically largest descending weight sequence."""
    near = lam >= best_lam - tol
    return (not near, int(np.sum(x > threshold)), tuple(-np.sort(x)[::-1]))


def _choose(values, X, opts):
    best = values.max()
    keys = [_preference(values[k], X[k], best, opts.support_threshold, opts.prune_tolerance)
            for k in range(len(values))]
    return min(range(len(values)), key=keys.__getitem__)


def _edge_seed(G: Hypergraph, rng) -> np.ndarray:
    x = np.zeros(G.n)
    e = G.edges[rng.integers(G.m)]
    x[[v - 1 for v in e]] = 1.0 / G.r
    return x


def _prune(G, poly, x, opts, rng):
    """Drop support vertices one at a time while the value does not fall.

    All single-vertex removals are tried as one batch; the accepted one is
    the best value, ties going to the smaller removed weight.
    """
    iters = 0
    lam = evaluate(G, x)
    while True:
        support = [int(i) for i in np.flatnonzero(x > 0)]
        if len(support) <= G.r:
            return x, iters
        rows = []
        for i in sorted(support, key=lambda v: x[v]):
            y = x.copy()
            y[i] = 0.0
            y /= y.sum()
            if evaluate(G, y) <= 0:
                y = _edge_seed(G, rng)
            rows.append(y)
        Y, it, _ = _iterate(poly, np.array(rows), opts)
        iters += it
        Y = np.array([_clean(y, opts.support_threshold) for y in Y])
        vals = poly.values(Y)
        ok = np.flatnonzero(vals >= lam - opts.prune_tolerance)
        if ok.size == 0:
            return x, iters
        k = ok[np.argmax(vals[ok] >= vals[ok].max() - opts.prune_tolerance)]
        x, lam = Y[k], max(lam, float(vals[k]))


def maximize(G: Hypergraph, opts: SolverOptions | None = None) -> OptResult:
    """Estimate lam(G) by multistart growth iterations with support pruning."""
    opts = opts or SolverOptions()
    poly = _Poly(G)
    if not G.edges:
        x = np.full(G.n, 1.0 / G.n) if G.n else np.zeros(0)
        return OptResult(0.0, x, tuple(range(1, G.n + 1)), 0.0, _pair_cover(G, range(1, G.n + 1)),
                         0, True, 0)
    rng = np.random.default_rng(opts.seed)
    clique = max_clique_order(G).witness
    starts = [np.full(G.n, 1.0 / G.n), np.zeros(G.n)]
    # uniform on a maximum clique already attains the complete-graph value
    starts[1][[v - 1 for v in clique]] = 1.0 / len(clique)
    starts += list(rng.dirichlet(np.ones(G.n), size=opts.restarts))
    starts = [s if evaluate(G, s) > 0 else _edge_seed(G, rng) for s in starts]
    X, iters, conv = _iterate(poly, np.array(starts), opts)
    X = np.array([_clean(x, opts.support_threshold) for x in X])
    k = _choose(poly.values(X), X, opts)
    x = X[k]

    x, it = _prune(G, poly, x, opts, rng)
    iters += it

    if is_left_compressed(G):
        # an optimal weighting of a left-compressed graph can be taken nonincreasing
        y = np.sort(x)[::-1].copy()
        if evaluate(G, y) >= evaluate(G, x) - opts.prune_tolerance:
            x = y

    X, it, conv = _iterate(poly, x[None, :], opts)
    iters += it
    return _finish(G, poly, X[0], iters, conv[0], opts, opts.restarts)


def _compositions(total: int, parts: int):
    """Positive integer vectors of the given length summing to total."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield [bounds[k + 1] - bounds[k] for k in range(parts)]


def oracle_maximize(G: Hypergraph, depth: int = 10, opts: SolverOptions | None = None) -> OptResult:
    """Exhaustive reference maximizer for small n.

    Every vertex subset that spans an edge is tried as a support, starting
    from its uniform weighting and from every strictly positive point of
    the grid with spacing 1/depth on that face; each start is refined by
    the growth map and the best result kept.
    """
    opts = opts or SolverOptions()
    if not G.edges:
        return maximize(G, opts)
    poly = _Poly(G)
    rows = []
    for k in range(G.r, G.n + 1):
        for S in itertools.combinations(range(G.n), k):
            Sset = set(S)
            if not any(Sset.issuperset(e) for e in G.edge_array.tolist()):
                continue
            x = np.zeros(G.n)
            x[list(S)] = 1.0 / k
            rows.append(x)
            for c in _compositions(depth, k):
                x = np.zeros(G.n)
                x[list(S)] = np.array(c, dtype=float) / depth
                rows.append(x)
    X, iters, conv = _iterate(poly, np.array(rows), opts)
    X = np.array([_clean(x, opts.support_threshold) for x in X])
    k = _choose(poly.values(X), X, opts)
    return _finish(G, poly, X[k], iters, conv[k], opts, len(rows))


# ------------------------------------------------------------ diagnostics


@dataclass
class GapCheck:
    residual: float
    ordered: bool
    pairs_checked: list = field(default_factory=list)


def remark_gap_check(G: Hypergraph, x, tol: float = 1e-8) -> GapCheck:
    """Compare weight gaps with link ratios on a left-compressed graph.

    For support vertices i < j with lam(E_ij, x) > 0 the optimality
    conditions force x_i - x_j = lam(E_{i minus j}, x) / lam(E_ij, x). The
    residual is the worst deviation; ``ordered`` reports whether the
    weights are nonincreasing up to tol.
    """
    if not is_left_compressed(G):
        raise PreconditionViolation("gap identity needs a left-compressed graph")
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise InvalidArgument("weighting length does not match the graph")
    support = [i + 1 for i in np.flatnonzero(x > 0)]
    worst = 0.0
    pairs = []
    for i, j in itertools.combinations(support, 2):
        denom = family_value(pair_link(G, i, j), x)
        if denom <= 0:
            continue
        ratio = family_value(link_difference(G, i, j), x) / denom
        dev = abs((x[i - 1] - x[j - 1]) - ratio)
        pairs.append((i, j, dev))
        worst = max(worst, dev)
    ordered = bool(np.all(np.diff(x) <= tol))
    return GapCheck(worst, ordered, pairs)
