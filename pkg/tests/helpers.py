import itertools

import numpy as np

from hyperlag.core import Hypergraph


def G(r, n, *edges):
    """Build an r-graph from edges written as digit strings, e.g. G(3, 4, 123, 124)."""
    return Hypergraph(r, n, tuple(tuple(int(c) for c in str(e)) for e in edges))


def slow_value(H, x):
    """Edge-product polynomial evaluated with plain Python loops."""
    return sum(float(np.prod([x[v - 1] for v in e])) for e in H.edges)


def slow_clique_order(H):
    """Largest t such that some t-set has all its r-subsets as edges."""
    best = 0
    for t in range(H.r, H.n + 1):
        if any(all(s in H.edge_set for s in itertools.combinations(S, H.r))
               for S in itertools.combinations(range(1, H.n + 1), t)):
            best = t
    return best
