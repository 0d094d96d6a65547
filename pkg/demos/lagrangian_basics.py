"""Evaluate and maximize the edge-product polynomial of a few small r-graphs."""

import numpy as np

from hyperlag.core import Hypergraph, make_colex_graph, make_complete
from hyperlag.solver import complete_lagrangian, evaluate, growth_step, maximize, oracle_maximize


def show(name, G):
    res = maximize(G)
    weights = np.array2string(res.weighting, precision=4, suppress_small=True)
    print(f"{name:<28} lambda = {res.lambda_value:.10f}  support {res.support}")
    print(f"{'':<28} weights {weights}  kkt {res.kkt_residual:.1e}")


def main():
    triangle = Hypergraph(2, 3, ((1, 2), (1, 3), (2, 3)))
    x = np.array([0.5, 0.3, 0.2])
    print("Growth map on the triangle, starting from", x)
    for step in range(5):
        print(f"  step {step}: value {evaluate(triangle, x):.6f}  weights {np.round(x, 6)}")
        x = growth_step(triangle, x)

    print("\nMaximizers found by multistart growth plus support pruning:")
    show("triangle", triangle)
    show("path 12, 23", Hypergraph(2, 3, ((1, 2), (2, 3))))
    show("single 3-edge", Hypergraph(3, 3, ((1, 2, 3),)))
    show("[4]^(3)", make_complete(4, 3))
    show("C_(3,6)", make_colex_graph(3, 6))

    print("\nExact values for complete graphs:")
    for t, r in ((3, 2), (4, 3), (5, 3), (6, 4)):
        print(f"  [{t}]^({r}): {complete_lagrangian(t, r)}")

    G = Hypergraph(3, 5, ((1, 2, 3), (1, 4, 5), (2, 4, 5), (3, 4, 5)))
    fast, slow = maximize(G), oracle_maximize(G, 8)
    print(f"\nSolver against the exhaustive oracle: {fast.lambda_value:.12f} vs {slow.lambda_value:.12f}")


if __name__ == "__main__":
    main()
