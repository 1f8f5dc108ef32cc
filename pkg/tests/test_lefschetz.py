"""Divisor lifts, the levelwise extension of complexes, connecting maps,
Hodge tables, and the Lefschetz-type checks built on them."""

import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import betti_oracle, interior_vector, lift_identities, random_cone
from toricdef import (
    NotAmple,
    NotComplete,
    NotQCartier,
    ValidationError,
    WrongDimension,
    cohomology,
    cone_from_rays,
    connecting_map,
    fan_from_cones,
    hard_lefschetz_injectivity_check,
    hodge_table,
    ishida_fan,
    lcdef4_via_exceptional,
    lefschetz_equivalence_check,
    les_theorem,
    lifted_complex,
    star_quotient,
    support_data,
)
from toricdef.exact_linalg import matrix_rank


# ---------------------------------------------------------------------------
# support data


def test_weighted_plane_support_data(p112_fan):
    D = support_data(p112_fan, (0, 0, 1))
    assert D.cartier_denominator == 2
    assert D.alpha == (Fraction(0), Fraction(0), Fraction(1))
    for key in p112_fan.by_key:
        expected = 2 if key == frozenset({0, 2}) else 1
        assert D.vertical_index(key) == expected


def test_support_data_validates_length(p2_fan):
    with pytest.raises(ValidationError):
        support_data(p2_fan, (1, 1))


def test_not_locally_solvable():
    fan = fan_from_cones(
        ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)), ((0, 1, 2, 3),), 3
    )
    with pytest.raises(NotQCartier):
        support_data(fan, (0, 0, 0, 1))


def test_scaled_support_data(p112_fan):
    D = support_data(p112_fan, (0, 0, 1))
    D3 = D.scaled(3)
    assert D3.alpha == (Fraction(0), Fraction(0), Fraction(3))
    assert D3.cartier_denominator == 2


# ---------------------------------------------------------------------------
# the lifted complexes and their exact structure


def test_top_complex_matches_plain_fan_complex(cone_a):
    fan, D = star_quotient(cone_a, (0, 0, 0, 1))
    L = lifted_complex(fan, D, 2)
    plain = ishida_fan(fan, 3)
    assert L.top.dims == plain.dims
    assert len(L.top.diffs) == len(plain.diffs)
    for a, b in zip(L.top.diffs, plain.diffs):
        assert np.array_equal(a, b)


def test_middle_dims_are_sums(p112_fan):
    D = support_data(p112_fan, (0, 0, 1))
    for p in range(2):
        L = lifted_complex(p112_fan, D, p)
        for t, m, b in zip(L.top.dims, L.middle.dims, L.bottom.dims):
            assert m == t + b


def test_termwise_exactness(p112_fan):
    D = support_data(p112_fan, (0, 0, 1))
    L = lifted_complex(p112_fan, D, 1)
    for inc, proj, t, b in zip(L.include, L.project, L.top.dims, L.bottom.dims):
        assert matrix_rank(inc) == t
        assert matrix_rank(proj) == b
        if t and b:
            assert not np.any(proj @ inc)


# ---------------------------------------------------------------------------
# lattice identities of the two lifts


def test_lift_identities_weighted_plane(p112_fan):
    lift_identities(p112_fan, support_data(p112_fan, (0, 0, 1)))


def test_lift_identities_quotient_of_defect_cone(cone_a):
    fan, D = star_quotient(cone_a, (0, 0, 0, 1))
    lift_identities(fan, D)


# ---------------------------------------------------------------------------
# connecting maps


def test_connecting_map_plane(p2_fan):
    D = support_data(p2_fan, (1, 1, 1))
    assert connecting_map(p2_fan, D, 1, 1).tolist() == [[-3]]


def test_connecting_map_quadric(p1p1_fan):
    D = support_data(p1p1_fan, (1, 1, 1, 1))
    assert connecting_map(p1p1_fan, D, 1, 1).tolist() == [[-2, -2]]


def test_connecting_map_weighted(p112_fan):
    D = support_data(p112_fan, (0, 0, 1))
    assert connecting_map(p112_fan, D, 1, 1).tolist() == [[Fraction(-1, 2)]]
    assert connecting_map(p112_fan, D.scaled(3), 1, 1).tolist() == [[Fraction(-3, 2)]]


def test_connecting_scales_linearly(cone_a):
    fan, D = star_quotient(cone_a, (0, 0, 0, 1))
    D2 = D.scaled(2)
    for p in (1, 2):
        for l in range(3):
            m1 = connecting_map(fan, D, p, l)
            m2 = connecting_map(fan, D2, p, l)
            assert np.array_equal(m2, 2 * m1)


# ---------------------------------------------------------------------------
# Hodge tables


def test_hodge_plane(p2_fan):
    H = hodge_table(p2_fan)
    for p in range(3):
        for q in range(3):
            assert H.h(p, q) == (1 if p == q else 0)
    assert [H.betti(k) for k in range(5)] == [1, 0, 1, 0, 1]


def test_hodge_quadric(p1p1_fan):
    H = hodge_table(p1p1_fan)
    assert H.h(1, 1) == 2
    assert [H.betti(k) for k in range(5)] == [1, 0, 2, 0, 1]


def test_hodge_weighted(p112_fan):
    H = hodge_table(p112_fan)
    assert [H.h(p, p) for p in range(3)] == [1, 1, 1]
    assert H.h(0, 1) == 0 and H.h(1, 0) == 0


def test_hodge_betti_oracle(p2_fan, p1p1_fan, p112_fan):
    for fan in (p2_fan, p1p1_fan, p112_fan):
        H = hodge_table(fan)
        halves = betti_oracle(fan)
        for k in range(fan.rank + 1):
            assert H.betti(2 * k) == halves[k]
            assert H.betti(2 * k + 1) == 0


def test_hodge_requires_complete():
    fan = fan_from_cones(((1, 0), (0, 1)), ((0, 1),), 2)
    with pytest.raises(NotComplete):
        hodge_table(fan)


# ---------------------------------------------------------------------------
# long exact sequences


def test_les_defect_cone(cone_a):
    rep = les_theorem(cone_a, (0, 0, 0, 1))
    assert rep.all_exact
    assert {r.level for r in rep.rows} == {0, 1, 2, 3}
    row = rep.row(3)
    assert row.h_cone == (0, 3, 1, 0)
    assert row.h_middle == row.h_cone
    assert row.h_top == (0, 0, 0, 1)
    assert row.h_bottom == (0, 3, 2, 0)


def test_les_cube(cube_cone):
    rep = les_theorem(cube_cone, (0, 0, 0, 1))
    assert rep.all_exact


def test_les_random_cones():
    rng = random.Random(7)
    for _ in range(3):
        cone = random_cone(rng, 3)
        rho = tuple(sum(r[i] for r in cone.rays) for i in range(3))
        assert les_theorem(cone, rho).all_exact


# ---------------------------------------------------------------------------
# the vanishing equivalence


def test_equivalence_on_defect_cone(cone_a):
    rep = lefschetz_equivalence_check(cone_a, 2, 2)
    assert rep.theorem_applicable
    assert rep.h_cone == 1 and not rep.vanishes
    assert not rep.delta_in_injective
    assert rep.delta_out_surjective
    assert rep.agree


def test_equivalence_on_simplicial_cone(orthant4):
    rep = lefschetz_equivalence_check(orthant4, 1, 1)
    assert rep.theorem_applicable and rep.vanishes and rep.agree


def test_equivalence_trivial_range(orthant4):
    rep = lefschetz_equivalence_check(orthant4, 4, 1)
    assert not rep.theorem_applicable and rep.h_cone == 0


# ---------------------------------------------------------------------------
# dimension-four defect via the exceptional route


def test_defect_via_quotient(cone_a, cone_b, cone_13):
    assert lcdef4_via_exceptional(cone_a, (0, 0, 0, 1)) is True
    assert lcdef4_via_exceptional(cone_b, interior_vector(cone_b)) is False
    assert lcdef4_via_exceptional(cone_13, interior_vector(cone_13)) is True


def test_defect_via_quotient_needs_dim_four(orthant3):
    with pytest.raises(WrongDimension):
        lcdef4_via_exceptional(orthant3, (1, 1, 1))


# ---------------------------------------------------------------------------
# hard Lefschetz-type injectivity


def test_injectivity_on_surfaces(p2_fan, p112_fan, p1p1_fan):
    for fan, alpha in (
        (p2_fan, (1, 1, 1)),
        (p112_fan, (0, 0, 1)),
        (p1p1_fan, (1, 1, 1, 1)),
    ):
        rep = hard_lefschetz_injectivity_check(fan, support_data(fan, alpha))
        assert rep.all_injective


def test_injectivity_on_quotient_fans(cone_a, cone_b, glued_cone, cube_cone, cone_13):
    for cone in (cone_a, cone_b, glued_cone, cube_cone, cone_13):
        fan, D = star_quotient(cone, interior_vector(cone))
        rep = hard_lefschetz_injectivity_check(fan, D)
        assert rep.all_injective
        for p, rank, target, ok in rep.checks:
            assert ok and rank == target


def test_injectivity_check_values(cone_a):
    fan, D = star_quotient(cone_a, (0, 0, 0, 1))
    rep = hard_lefschetz_injectivity_check(fan, D)
    assert rep.checks == ((0, 1, 1, True), (1, 2, 2, True))


def test_injectivity_requires_ample(p2_fan):
    with pytest.raises(NotAmple):
        hard_lefschetz_injectivity_check(p2_fan, support_data(p2_fan, (0, 0, 0)))


def test_injectivity_requires_complete():
    fan = fan_from_cones(((1, 0), (0, 1)), ((0, 1),), 2)
    D = support_data(fan, (1, 1))
    with pytest.raises(NotComplete):
        hard_lefschetz_injectivity_check(fan, D)


# ---------------------------------------------------------------------------
# quotient complexes really compute the cone cohomology


def test_middle_complex_matches_cone(cone_13):
    from toricdef import ishida_cone

    fan, D = star_quotient(cone_13, interior_vector(cone_13))
    for l in (1, 2, 3):
        L = lifted_complex(fan, D, l - 1)
        cone_h = cohomology(ishida_cone(cone_13, l))
        mid_h = tuple(L.coh_dim("middle", i) for i in range(len(cone_h)))
        assert mid_h == cone_h
