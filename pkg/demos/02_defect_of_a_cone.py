"""The face complexes of a cone and its local cohomological defect.

For each level l the cone carries a finite cochain complex whose degree-m
term collects exterior powers of the annihilators of its m-dimensional
faces.  The defect reads off how far the top cohomology of these complexes
reaches beyond the range that smooth (or simplicial) cones allow.

Run:  python3 demos/02_defect_of_a_cone.py
"""

from pathlib import Path

from toricdef import (
    cone_cohomology_table,
    cone_from_rays,
    is_simplicial,
    lcdef_cone,
    lcdef_variety,
)
from toricdef.cli import parse_document

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    doc = parse_document((FIXTURES / name).read_text())
    return cone_from_rays(doc.rays, doc.rank)


def main():
    for name in ("paper_cone_A.txt", "paper_cone_B.txt", "paper_cone_13.txt"):
        cone = load(name)
        print(f"== {name}: {len(cone.rays)} rays, dim {cone.dim}, "
              f"simplicial={is_simplicial(cone)}")
        table = cone_cohomology_table(cone)
        for l, dims, coh in table.rows:
            print(f"  level {l}: term dims {dims}  cohomology {coh}")
        print(f"  defect of the cone:    {lcdef_cone(cone)}")
        print(f"  defect of the variety: {lcdef_variety(cone)}")
        print()

    # Simplicial cones always have defect zero; the shortcut and the full
    # computation agree.
    orthant = cone_from_rays(
        ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), 4
    )
    print("orthant defect (shortcut):", lcdef_cone(orthant))
    print("orthant defect (full):    ", lcdef_cone(orthant, shortcut_simplicial=False))


if __name__ == "__main__":
    main()
