"""Run the small verification campaigns and print their summaries."""

from hyperlag.lab import (
    verify_clique_dichotomy,
    verify_colex_plateau,
    verify_frankl_furedi,
    verify_motzkin_straus,
    verify_neighborhood_dichotomy,
)


def main():
    print("2-graphs on 5 vertices: lambda against (1 - 1/omega)/2")
    print(" ", verify_motzkin_straus(5).summary())

    print("\nColex initial segments across the plateau for r=3, t=6")
    for rec in verify_colex_plateau(3, 6).records:
        print(f"  m={rec.instance['m']:2d}  lambda {rec.computed:.10f}  "
              f"reference {rec.detail['reference_exact']}")

    print("\nEvery 5-edge 3-graph on [6] against C_(3,5)")
    rep = verify_frankl_furedi(3, 6, 5)
    print(" ", rep.summary())
    print("  attainment:", rep.records[-1].detail["lambda_max"], rep.records[-1].computed == 1.0)

    print("\nClique dichotomy on [5]")
    rep = verify_clique_dichotomy(3, 5)
    others = [rec.computed for rec in rep.records if rec.detail["side"] == "no-clique"]
    print(" ", rep.summary())
    print(f"  largest lambda without a 4-clique: {max(others):.8f} (1/16 = {1 / 16:.8f})")

    print("\nNeighbourhood diagnostic on left-compressed 3-graphs on [6]")
    print(" ", verify_neighborhood_dichotomy(3, 6).summary())


if __name__ == "__main__":
    main()
