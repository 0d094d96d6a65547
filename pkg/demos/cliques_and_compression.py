"""Clique orders, left-compression and the normalization of a compressed graph."""

from hyperlag.clique import max_clique_order
from hyperlag.core import (
    Hypergraph,
    compress,
    compress_to_fixpoint,
    is_left_compressed,
    normalize_left_compressed,
)
from hyperlag.solver import maximize


def main():
    G = Hypergraph(3, 6, ((1, 2, 6), (2, 3, 5), (2, 5, 6), (3, 5, 6), (1, 4, 5)))
    res = max_clique_order(G)
    print("graph:", G.dumps())
    print(f"maximum clique order {res.order}, witness {res.witness}")
    print(f"lambda {maximize(G).lambda_value:.8f}, left-compressed: {is_left_compressed(G)}")

    H = compress(G, 1, 5)
    print("\nmoving 5 onto 1 where possible:", H.dumps())
    print(f"lambda {maximize(H).lambda_value:.8f}")

    F = compress_to_fixpoint(G)
    print("\nrepeating until nothing moves:", F.dumps())
    print(f"lambda {maximize(F).lambda_value:.8f}, left-compressed: {is_left_compressed(F)}")

    # a left-compressed graph is already closed under descendants, so show one that is not
    K = Hypergraph(3, 5, ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 5)))
    N = normalize_left_compressed(K, 5)
    print("\nreplacing edges by missing descendants, keeping 234 out:")
    print(f"  {K.dumps()}  lambda {maximize(K).lambda_value:.8f}")
    print(f"  {N.dumps()}  lambda {maximize(N).lambda_value:.8f}")


if __name__ == "__main__":
    main()
