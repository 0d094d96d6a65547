"""Walk through the colex order: ranks, unranking and the initial segments C_{r,m}."""

from hyperlag.core import colex_rank, colex_unrank, make_colex_graph


def main():
    print("The first ten 3-sets in colex order, with their ranks:")
    for k in range(10):
        s = colex_unrank(3, k)
        print(f"  {k:2d}  {s}  rank back -> {colex_rank(s)}")

    print("\nA set comes earlier when its largest differing element is smaller,")
    print("so every 3-set of [4] precedes any set containing 5.")

    for m in (4, 5, 7, 10):
        G = make_colex_graph(3, m)
        print(f"\nC_(3,{m}) lives on [{G.n}]:")
        print("  " + G.dumps())


if __name__ == "__main__":
    main()
