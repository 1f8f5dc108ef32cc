"""Combinatorial certificates for the defect of a 4-dimensional cone.

Three cheap tests can decide the defect without building any complex:

* euler    — if the boundary has more facets than rays, the defect is 1;
* shelling — a facet order whose first r-2 steps each introduce a new ray
             forces defect 0;
* star     — a ray all of whose facets are simplicial, while the remaining
             rays still span, forces defect 1.

Each verdict carries a witness that can be re-checked independently.  The
shelling certificate rests on a filtration of the level-3 complex by facet
order, also exposed here.

Run:  python3 demos/05_certificates.py
"""

from pathlib import Path

from toricdef import (
    cohomology,
    cone_from_rays,
    euler_criterion,
    lcdef_variety,
    line_shelling,
    shelling_filtration,
    shelling_ray_criterion,
    simplicial_star_criterion,
)
from toricdef.cli import parse_document

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

GLUED = ((2, 2, 0, 1), (2, -2, 0, 1), (-2, 2, 0, 1), (-2, -2, 0, 1),
         (0, 0, 2, 1), (3, 0, 1, 1))


def verdicts(name, cone):
    print(f"== {name}  (true defect of the variety: {lcdef_variety(cone)})")
    for crit in (euler_criterion, shelling_ray_criterion, simplicial_star_criterion):
        v = crit(cone)
        witness = f"  witness {v.witness}" if v.conclusive else ""
        print(f"  {v.criterion:16s} {v.verdict}{witness}")
    print()


def main():
    cube = cone_from_rays(
        tuple((x, y, z, 1) for x in (1, -1) for y in (1, -1) for z in (1, -1)), 4
    )
    verdicts("cone over the 3-cube", cube)

    glued = cone_from_rays(GLUED, 4)
    verdicts("pyramid glued to a simplex along a square", glued)

    doc = parse_document((FIXTURES / "paper_cone_13.txt").read_text())
    verdicts("13-ray cone (defect 1, all three inconclusive)",
             cone_from_rays(doc.rays, doc.rank))

    # The filtration behind the shelling certificate: facets are removed one
    # at a time, and the quotient complexes grow toward the full level-3
    # complex while every stage stays a complex of complementary size.
    print("filtration of the glued cone's level-3 complex along a line shelling:")
    filt = shelling_filtration(glued, line_shelling(glued, seed=0))
    for k in range(filt.depth + 1):
        s, q = filt.sub(k), filt.quotient(k)
        print(f"  after {k} facets: kept {s.dims} H={cohomology(s)}  "
              f"dropped {q.dims} H={cohomology(q)}")


if __name__ == "__main__":
    main()
