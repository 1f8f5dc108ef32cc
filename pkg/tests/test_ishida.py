"""Face-indexed cochain complexes and the local cohomological defect."""

import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_cone
from toricdef import (
    NotAComplex,
    ValidationError,
    cohomology,
    cone_cohomology_table,
    cone_from_rays,
    face_lattice,
    fan_cohomology_table,
    fan_from_cones,
    graded_piece,
    is_simplicial,
    ishida_cone,
    ishida_fan,
    lcdef_cone,
    lcdef_variety,
    restricted_complex,
)


def mats_equal(a, b):
    return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# small exact values


def test_projective_line_table():
    fan = fan_from_cones(((1,), (-1,)), ((0,), (1,)), 1)
    table = fan_cohomology_table(fan)
    assert table.level(0) == (1,)
    assert table.level(1) == (0, 1)
    cx = ishida_fan(fan, 1)
    assert cx.dims == (1, 2)


def test_quadrant_level_two():
    c = cone_from_rays(((1, 0), (0, 1)), 2)
    cx = ishida_cone(c, 2)
    assert cx.dims == (1, 2, 1)
    assert cohomology(cx) == (0, 0, 0)


def test_orthant_dims_follow_binomials(orthant3):
    for l in range(4):
        cx = ishida_cone(orthant3, l)
        expected = tuple(comb(3 - m, l - m) * comb(3, m) for m in range(l + 1))
        assert cx.dims == expected


def test_level_out_of_range(orthant3, p2_fan):
    with pytest.raises(ValidationError):
        ishida_cone(orthant3, 4)
    with pytest.raises(ValidationError):
        ishida_cone(orthant3, -1)
    with pytest.raises(ValidationError):
        ishida_fan(p2_fan, 3)


def test_thirteen_ray_middle_levels(cone_13):
    cx = ishida_cone(cone_13, 3)
    assert cx.dims == (4, 39, 48, 13)
    assert cohomology(cx) == (0, 1, 1, 0)
    table = cone_cohomology_table(cone_13)
    assert table.level(3) == (0, 1, 1, 0)


# ---------------------------------------------------------------------------
# defect values


def test_defect_of_fixture_cones(cone_a, cone_b, cone_13, orthant4):
    assert lcdef_cone(cone_a) == 1
    assert lcdef_cone(cone_b) == 0
    assert lcdef_cone(cone_13) == 1
    assert lcdef_cone(orthant4) == 0


def test_defect_of_fixture_varieties(cone_a, cone_b, glued_cone):
    assert lcdef_variety(cone_a) == 1
    assert lcdef_variety(cone_b) == 0
    assert lcdef_variety(glued_cone) == 1


def test_simplicial_shortcut_agrees(cone_b, orthant4, cube_cone):
    for cone in (cone_b, orthant4, cube_cone):
        assert lcdef_cone(cone, shortcut_simplicial=False) == lcdef_cone(cone)


def test_is_simplicial(orthant4, cube_cone, cone_a):
    assert is_simplicial(orthant4)
    assert not is_simplicial(cube_cone)
    assert not is_simplicial(cone_a)


# ---------------------------------------------------------------------------
# representative independence of the differential


def test_normal_shift_leaves_matrices_unchanged(cone_13):
    lat = face_lattice(cone_13)

    def shift(mu, tau, n):
        rows = lat.span_in_cone[mu.ray_indices]
        if not rows:
            return n
        return tuple(a + 2 * b for a, b in zip(n, rows[0]))

    plain = ishida_cone(cone_13, 2)
    shifted = ishida_cone(cone_13, 2, normal_override=shift)
    assert plain.dims == shifted.dims
    assert mats_equal(plain.diffs, shifted.diffs)


def test_fan_normal_shift_leaves_matrices_unchanged(p112_fan):
    def shift(mu, tau, n):
        rows = mu.span_rows
        if not rows:
            return n
        return tuple(a - 3 * b for a, b in zip(n, rows[0]))

    plain = ishida_fan(p112_fan, 2)
    shifted = ishida_fan(p112_fan, 2, normal_override=shift)
    assert mats_equal(plain.diffs, shifted.diffs)


def test_invalid_normals_are_rejected():
    c = cone_from_rays(((1, 0), (0, 1)), 2)

    def corrupt(mu, tau, n):
        if mu.dim == 0 and tau.ray_indices == frozenset({0}):
            return tuple(3 * x for x in n)
        return n

    with pytest.raises(NotAComplex):
        ishida_cone(c, 2, normal_override=corrupt)


# ---------------------------------------------------------------------------
# graded pieces vs restricted complexes


def test_graded_matches_restricted_on_facets(cone_a):
    lat = face_lattice(cone_a)
    facets = lat.faces_by_dim[3][:2]
    for tau in facets:
        for l in (1, 2):
            g = graded_piece(cone_a, l, tau.key)
            r = restricted_complex(cone_a, l, tau.key)
            assert cohomology(g) == cohomology(r)


def test_restricted_complex_of_top_is_whole_complex(cone_13):
    lat = face_lattice(cone_13)
    top = lat.top()
    r = restricted_complex(cone_13, 2, top.key)
    assert cohomology(r) == cohomology(ishida_cone(cone_13, 2))


# ---------------------------------------------------------------------------
# randomized invariants


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None, derandomize=True)
def test_random_cone_invariants(seed):
    rng = random.Random(seed)
    d = rng.randrange(2, 5)
    cone = random_cone(rng, d)
    val = lcdef_cone(cone)
    assert 0 <= val <= max(0, d - 3)
    assert lcdef_cone(cone, shortcut_simplicial=False) == val
    if is_simplicial(cone):
        assert val == 0
    # middle-degree vanishing at level p whenever 2p >= dim
    for p in range((d + 1) // 2, d + 1):
        assert cohomology(ishida_cone(cone, p))[p] == 0
