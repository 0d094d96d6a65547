"""Small-instance generators: all m-edge r-graphs on [n], optionally one per
isomorphism class, and left-compressed graphs (down-sets of the domination order).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Iterator

import numpy as np

from .core import Hypergraph, colex_rank, colex_unrank, unit_shifts
from .errors import InvalidArgument

MAX_ISO_N = 7
_CHUNK = 2048


@lru_cache(maxsize=None)
def _perm_table(n: int, r: int) -> np.ndarray:
    """table[p, k] = colex rank of the image of the k-th r-set of [n] under
    the p-th permutation (identity first)."""
    sets = [colex_unrank(r, k) for k in range(comb(n, r))]
    perms = list(itertools.permutations(range(1, n + 1)))
    table = np.empty((len(perms), len(sets)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for k, s in enumerate(sets):
            table[p, k] = colex_rank([perm[v - 1] for v in s])
    return table


def canonical_mask(G: Hypergraph) -> int:
    """Minimum over all relabelings of the edge bitmask (bit k = colex rank k)."""
    if G.n > MAX_ISO_N:
        raise InvalidArgument(f"canonical form is limited to n <= {MAX_ISO_N}")
    table = _perm_table(G.n, G.r)
    idx = [colex_rank(e) for e in G.edges]
    if not idx:
        return 0
    masks = (np.int64(1) << table[:, idx]).sum(1)
    return int(masks.min())


def are_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    if (G.r, G.m) != (H.r, H.m):
        return False
    n = max(G.n, H.n)
    return canonical_mask(G.with_edges(G.edges, n)) == canonical_mask(H.with_edges(H.edges, n))


def count_graphs(r: int, n: int, m: int) -> int:
    """Number of labeled m-edge r-graphs on [n]."""
    return comb(comb(n, r), m)


def enumerate_graphs(r: int, n: int, m: int, up_to_iso: bool = False) -> Iterator[Hypergraph]:
    """Every m-edge subset of [n]^(r), in lexicographic order of colex-rank tuples.

    With ``up_to_iso`` only the canonical member of each isomorphism class is
    produced: the one whose edge bitmask is minimal over all n! relabelings.
    """
    N = comb(n, r)
    if m < 0 or m > N:
        raise InvalidArgument(f"m={m} outside [0, C({n},{r})={N}]")
    sets = [colex_unrank(r, k) for k in range(N)]
    combos = itertools.combinations(range(N), m)
    if not up_to_iso:
        for c in combos:
            yield Hypergraph(r, n, tuple(sets[k] for k in c))
        return
    if n > MAX_ISO_N:
        raise InvalidArgument(f"isomorphism rejection is limited to n <= {MAX_ISO_N}")
    if m == 0:
        yield Hypergraph(r, n, ())
        return
    powers = np.int64(1) << _perm_table(n, r)
    while True:
        chunk = np.array(list(itertools.islice(combos, _CHUNK)), dtype=np.intp)
        if chunk.size == 0:
            return
        masks = powers[:, chunk].sum(-1)  # (perms, chunk)
        keep = masks[0] == masks.min(0)
        for c in chunk[keep]:
            yield Hypergraph(r, n, tuple(sets[k] for k in c))


def left_compressed_graphs(r: int, n: int) -> Iterator[Hypergraph]:
    """All left-compressed r-graphs on [n] (including the empty one).

    r-sets are visited in colex order, which extends the domination order,
    so a set may be added once its unit shifts are already present.
    """
    sets = [colex_unrank(r, k) for k in range(comb(n, r))]

    def rec(k, chosen):
        if k == len(sets):
            yield Hypergraph(r, n, tuple(chosen))
            return
        yield from rec(k + 1, chosen)
        s = sets[k]
        if all(d in chosen for d in unit_shifts(s)):
            chosen.add(s)
            yield from rec(k + 1, chosen)
            chosen.remove(s)

    yield from rec(0, set())


def random_graph(rng: np.random.Generator, r: int, n: int, p: float | None = None) -> Hypergraph:
    sets = list(itertools.combinations(range(1, n + 1), r))
    p = rng.uniform(0.2, 0.8) if p is None else p
    keep = rng.random(len(sets)) < p
    return Hypergraph(r, n, tuple(s for s, k in zip(sets, keep) if k))


def random_corpus(count: int, seed: int = 0, r_max: int = 4, n_max: int = 7,
                  min_edges: int = 1) -> list[Hypergraph]:
    """Random small r-graphs (2 <= r <= r_max, r + 1 <= n <= n_max)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        r = int(rng.integers(2, r_max + 1))
        n = int(rng.integers(r + 1, n_max + 1))
        G = random_graph(rng, r, n)
        if G.m >= min_edges:
            out.append(G)
    return out
