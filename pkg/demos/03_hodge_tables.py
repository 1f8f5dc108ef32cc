"""Hodge tables of complete fans.

For a complete fan the same face complexes, assembled over all cones of the
fan, compute the Hodge numbers h^{p,q} of the associated proper variety;
their alternating sums give the Betti numbers, which for simplicial complete
fans must match the h-vector of the face counts.

Run:  python3 demos/03_hodge_tables.py
"""

from toricdef import fan_from_cones, hodge_table


def show(name, fan):
    table = hodge_table(fan)
    n = table.rank
    print(f"== {name} (rank {n}, {len(fan.rays)} rays, complete={fan.is_complete()})")
    header = "      " + "  ".join(f"q={q}" for q in range(n + 1))
    print(header)
    for p in range(n + 1):
        print(f"  p={p} " + "  ".join(f"{table.h(p, q):3d}" for q in range(n + 1)))
    print("  betti:", [table.betti(k) for k in range(2 * n + 1)])
    print()


def main():
    plane = fan_from_cones(((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)), 2)
    show("projective plane", plane)

    quadric = fan_from_cones(
        ((1, 0), (0, 1), (-1, 0), (0, -1)),
        ((0, 1), (1, 2), (2, 3), (0, 3)),
        2,
    )
    show("product of two lines", quadric)

    weighted = fan_from_cones(((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (0, 2)), 2)
    show("weighted plane P(1,1,2)", weighted)

    threefold = fan_from_cones(
        ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)),
        ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)),
        3,
    )
    show("projective 3-space", threefold)


if __name__ == "__main__":
    main()
