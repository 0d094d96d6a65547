import itertools

import numpy as np
import pytest

from hyperlag.clique import has_clique_of_order, is_clique, max_clique_order
from hyperlag.core import Hypergraph, make_colex_graph, make_complete
from hyperlag.enumerate import random_graph
from hyperlag.errors import InvalidArgument

from helpers import G, slow_clique_order


def test_examples():
    assert max_clique_order(Hypergraph(3, 5, ())).order == 0
    assert max_clique_order(G(3, 5, 123)).order == 3
    assert max_clique_order(make_complete(5, 3)).order == 5
    assert max_clique_order(G(2, 4, 12, 13, 14, 23, 24)).order == 3
    # C_{3,5} holds [4]^(3) plus the edge 125
    assert max_clique_order(make_colex_graph(3, 5)).order == 4


def test_has_clique_of_order():
    H = make_colex_graph(3, 5)
    found, witness = has_clique_of_order(H, 4)
    assert found and witness == (1, 2, 3, 4)
    assert has_clique_of_order(H, 5) == (False, None)
    with pytest.raises(InvalidArgument):
        has_clique_of_order(H, 2)


def test_small_sets_are_vacuous_cliques():
    assert is_clique(G(3, 4, 123), (1, 4))


@pytest.mark.parametrize("n", range(1, 7))
def test_exhaustive_graphs_agree_with_subset_search(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    index = {p: k for k, p in enumerate(pairs)}
    subsets = [(len(S), sum(1 << index[p] for p in itertools.combinations(S, 2)))
               for t in range(2, n + 1) for S in itertools.combinations(range(1, n + 1), t)]
    for mask in range(1 << len(pairs)):
        expect = max((t for t, sub in subsets if mask & sub == sub), default=0)
        H = Hypergraph(2, n, tuple(p for k, p in enumerate(pairs) if mask >> k & 1))
        res = max_clique_order(H)
        assert res.order == expect, H
        assert res.order == 0 or is_clique(H, res.witness)


def test_random_hypergraphs_agree_with_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(300):
        r = int(rng.integers(2, 5))
        H = random_graph(rng, r, int(rng.integers(r, 9)))
        res = max_clique_order(H)
        assert res.order == slow_clique_order(H)
        if res.order:
            assert len(res.witness) == res.order
            assert has_clique_of_order(Hypergraph(H.r, H.n, H.edges), res.order)[0]
            assert is_clique(H, res.witness)


def test_adding_an_edge_never_lowers_the_order():
    rng = np.random.default_rng(11)
    for _ in range(500):
        r = int(rng.integers(2, 5))
        n = int(rng.integers(r + 1, 9))
        H = random_graph(rng, r, n)
        missing = [s for s in itertools.combinations(range(1, n + 1), r) if s not in H.edge_set]
        if not missing:
            continue
        extra = missing[int(rng.integers(len(missing)))]
        bigger = H.with_edges(H.edges + (extra,))
        assert max_clique_order(bigger).order >= max_clique_order(H).order
