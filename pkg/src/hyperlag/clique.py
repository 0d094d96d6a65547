"""Maximum cliques in r-graphs.

A clique of order t is a t-set all of whose r-subsets are edges. Any set of
fewer than r vertices qualifies vacuously, so the empty graph is assigned
order 0 and a graph with an edge has order at least r.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .core import Hypergraph
from .errors import InvalidArgument


@dataclass(frozen=True)
class CliqueResult:
    order: int
    witness: tuple[int, ...]


def is_clique(G: Hypergraph, vertices) -> bool:
    return all(e in G.edge_set for e in itertools.combinations(sorted(vertices), G.r))


def has_clique_of_order(G: Hypergraph, t: int) -> tuple[bool, tuple[int, ...] | None]:
    """Brute force over t-subsets of [n]; returns (found, witness)."""
    if t < G.r:
        raise InvalidArgument(f"clique order {t} is below the uniformity {G.r}")
    for S in itertools.combinations(range(1, G.n + 1), t):
        if is_clique(G, S):
            return True, S
    return False, None


def _extends(edges, clique, u, r) -> bool:
    if len(clique) < r - 1:
        return True
    return all(tuple(sorted(A + (u,))) in edges for A in itertools.combinations(clique, r - 1))


def max_clique_order(G: Hypergraph) -> CliqueResult:
    """Branch and bound over vertices in descending-degree order."""
    if not G.edges:
        return CliqueResult(0, ())
    r = G.r
    edges = G.edge_set
    deg = {v: 0 for v in range(1, G.n + 1)}
    for e in G.edges:
        for v in e:
            deg[v] += 1
    order = sorted(deg, key=lambda v: (-deg[v], v))

    # greedy seed
    best = list(G.edges[0])
    greedy = []
    for v in order:
        if _extends(edges, tuple(greedy), v, r):
            greedy.append(v)
    if len(greedy) > len(best) and is_clique(G, greedy):
        best = greedy

    def expand(clique, cand):
        nonlocal best
        for k, v in enumerate(cand):
            if len(clique) + len(cand) - k <= len(best):
                return
            # a vertex in a clique of order q lies in C(q-1, r-1) edges
            if deg[v] < comb(len(best), r - 1):
                continue
            new = clique + (v,)
            rest = tuple(u for u in cand[k + 1 :] if _extends(edges, new, u, r))
            if not rest:
                if len(new) > len(best) and len(new) >= r:
                    best = list(new)
            else:
                expand(new, rest)

    expand((), tuple(order))
    witness = tuple(sorted(best))
    if not is_clique(G, witness):
        raise AssertionError(f"clique search produced a non-clique {witness}")
    return CliqueResult(len(witness), witness)
