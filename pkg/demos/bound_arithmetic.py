"""Exact integer arithmetic behind the edge-count ranges and the power inequality."""

from hyperlag.lab import (
    check_power_inequality,
    coeff_loose,
    coeff_sharp,
    first_nonempty_t,
    theorem_bounds,
)


def main():
    print(" r      loose      sharp")
    for r in range(4, 9):
        print(f"{r:2d}  {coeff_loose(r):9d}  {coeff_sharp(r):9d}")

    for r in (4, 5):
        b = first_nonempty_t(r, 2000)
        print(f"\nr={r}: the sharper range is first nonempty at t={b.t}")
        print(f"  [{b.lower}, {b.upper_sharp}] (width {b.width_sharp}); weaker upper end {b.upper_loose}")
        prev = theorem_bounds(r, b.t - 1)
        print(f"  at t={b.t - 1} the upper end {prev.upper_sharp} is below {prev.lower}")

    rep = check_power_inequality(4, 12, 10**4)
    print("\n(t-r)^(r-2) (t-1) < (t-r+1)^(r-1), 4 <= r <= 12, t <= 10^4:", rep.summary())


if __name__ == "__main__":
    main()
