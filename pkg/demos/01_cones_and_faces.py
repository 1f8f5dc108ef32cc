"""Cones, face lattices, and the bundled example cones.

Run:  python3 demos/01_cones_and_faces.py
"""

from pathlib import Path

from toricdef import cone_from_rays, face_lattice, line_shelling, pyramid
from toricdef.cli import parse_document

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def show(name, cone):
    lat = face_lattice(cone)
    print(f"{name}: rank {cone.rank}, dim {cone.dim}, {len(cone.rays)} rays")
    print(f"  face counts by dimension: {lat.face_counts()}")
    print(f"  diamond property holds:   {lat.check_diamond()}")


def main():
    # A cone is the positive hull of integer vectors; generators are reduced
    # to primitive extreme rays automatically.
    quadrant = cone_from_rays(((2, 0), (0, 3), (1, 1)), 2)
    print("redundant input ray dropped:", quadrant.rays)
    show("quadrant", quadrant)

    # The cone over a 3-cube, placed at height one; its facets are the cube's
    # facets, none of which are simplicial.
    cube = cone_from_rays(
        tuple((x, y, z, 1) for x in (1, -1) for y in (1, -1) for z in (1, -1)), 4
    )
    show("cone over the 3-cube", cube)

    # Facet orderings: a line shelling always exists and is checked exactly.
    sh = line_shelling(cube, seed=0)
    print("  a line shelling of its facets:", sh.keys())

    # The bundled documents parse into the same objects.
    doc = parse_document((FIXTURES / "paper_cone_A.txt").read_text())
    cone_a = cone_from_rays(doc.rays, doc.rank)
    show("bundled 14-ray cone (defect one)", cone_a)

    # A pyramid adds one transversal ray in a lattice of one higher rank.
    top = pyramid(quadrant, (0, 0, 1))
    show("pyramid over the quadrant", top)


if __name__ == "__main__":
    main()
