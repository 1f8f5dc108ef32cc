"""Shared fixtures: frozen ray lists, standard fans, seeded random generators,
and independent oracles used across the test suite."""

import random
from math import comb

import pytest

from toricdef import cone_from_rays, fan_from_cones

# ---------------------------------------------------------------------------
# frozen ray lists

A_RAYS = (
    (1, 0, 0, 1), (-1, 0, 0, 1), (0, -1, 0, 1), (0, 1, 0, 1),
    (0, 0, 1, 1), (0, 0, -1, 1),
    (1, 1, 1, 2), (-1, 1, 1, 2), (1, -1, 1, 2), (-1, -1, 1, 2),
    (1, 1, -1, 2), (-1, 1, -1, 2), (1, -1, -1, 2), (-1, -1, -1, 2),
)

B_RAYS = (
    (1, 0, 0, 1), (0, 1, 0, 1), (-1, 0, 1, 2), (-1, 0, 0, 1),
    (0, -1, 0, 1), (0, 0, -1, 1),
    (2, 3, 1, 5), (1, 1, -1, 2), (2, -3, 1, 5), (1, -1, -1, 2),
    (-2, 1, 1, 3), (-1, 1, -1, 2), (-2, -1, 1, 3), (-1, -1, -1, 2),
)

T13_RAYS = (
    (1, 1, 0, 1), (1, 0, 1, 1), (1, -1, 0, 1), (1, 0, -1, 1),
    (1, 1, 1, 0), (1, 1, -1, 0), (1, -1, 1, 0), (1, -1, -1, 0),
    (1, 1, 0, -1), (1, -1, 0, -1), (1, 0, -1, -1), (1, 0, 1, -1),
    (1, 1, 1, 1),
)

# cone over a square pyramid with a simplex glued onto one triangular face
GLUED_RAYS = (
    (2, 2, 0, 1), (2, -2, 0, 1), (-2, 2, 0, 1), (-2, -2, 0, 1),
    (0, 0, 2, 1), (3, 0, 1, 1),
)

CUBE_RAYS = tuple((x, y, z, 1) for x in (1, -1) for y in (1, -1) for z in (1, -1))


@pytest.fixture(scope="session")
def cone_a():
    return cone_from_rays(A_RAYS, 4)


@pytest.fixture(scope="session")
def cone_b():
    return cone_from_rays(B_RAYS, 4)


@pytest.fixture(scope="session")
def cone_13():
    return cone_from_rays(T13_RAYS, 4)


@pytest.fixture(scope="session")
def glued_cone():
    return cone_from_rays(GLUED_RAYS, 4)


@pytest.fixture(scope="session")
def cube_cone():
    return cone_from_rays(CUBE_RAYS, 4)


@pytest.fixture(scope="session")
def orthant4():
    return cone_from_rays(((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), 4)


@pytest.fixture(scope="session")
def orthant3():
    return cone_from_rays(((1, 0, 0), (0, 1, 0), (0, 0, 1)), 3)


@pytest.fixture(scope="session")
def square_cone():
    return cone_from_rays(((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)), 3)


def make_p2():
    return fan_from_cones(((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (2, 0)), 2)


def make_p1p1():
    return fan_from_cones(
        ((1, 0), (0, 1), (-1, 0), (0, -1)), ((0, 1), (1, 2), (2, 3), (3, 0)), 2
    )


def make_p112():
    return fan_from_cones(((1, 0), (0, 1), (-1, -2)), ((0, 1), (1, 2), (2, 0)), 2)


@pytest.fixture(scope="session")
def p2_fan():
    return make_p2()


@pytest.fixture(scope="session")
def p1p1_fan():
    return make_p1p1()


@pytest.fixture(scope="session")
def p112_fan():
    return make_p112()


# ---------------------------------------------------------------------------
# seeded random generators


def random_cone(rng: random.Random, rank: int, extra_rays: int | None = None):
    """A full-dimensional strongly convex cone: the cone over a random lattice
    polytope placed at height one."""
    if extra_rays is None:
        extra_rays = rng.randrange(1, 4)
    want = rank + extra_rays
    while True:
        pts = set()
        while len(pts) < want:
            pts.add(tuple(rng.randrange(-3, 4) for _ in range(rank - 1)) + (1,))
        cone = cone_from_rays(sorted(pts), rank)
        if cone.dim == rank:
            return cone


def interior_vector(cone, weights=None):
    """A strictly interior vector: a positive combination of all rays."""
    if weights is None:
        weights = [1] * len(cone.rays)
    return tuple(
        sum(w * r[i] for w, r in zip(weights, cone.rays)) for i in range(cone.rank)
    )


def random_interior(rng: random.Random, cone):
    return interior_vector(cone, [rng.randrange(1, 4) for _ in cone.rays])


def random_apex(rng: random.Random, rank: int):
    """An apex for a pyramid over a rank-``rank`` cone: last coordinate nonzero."""
    head = [rng.randrange(-2, 3) for _ in range(rank)]
    return tuple(head) + (rng.choice((-2, -1, 1, 2)),)


def _primitive(v):
    from math import gcd

    g = 0
    for c in v:
        g = gcd(g, c)
    return tuple(c // g for c in v)


def random_complete_simplicial_fan(rng: random.Random, rank: int, splits: int):
    """Random stellar subdivisions of the standard simplex fan: stays
    complete and simplicial at every step."""
    rays = [tuple(1 if i == j else 0 for i in range(rank)) for j in range(rank)]
    rays.append(tuple(-1 for _ in range(rank)))
    maximal = [tuple(sorted(set(range(rank + 1)) - {i})) for i in range(rank + 1)]
    for _ in range(splits):
        pick = rng.randrange(len(maximal))
        cone_idx = maximal.pop(pick)
        new_ray = _primitive(
            tuple(sum(rays[i][k] for i in cone_idx) for k in range(rank))
        )
        rays.append(new_ray)
        j = len(rays) - 1
        for drop in cone_idx:
            maximal.append(tuple(sorted((set(cone_idx) - {drop}) | {j})))
    return fan_from_cones(rays, maximal, rank)


# ---------------------------------------------------------------------------
# oracles


def betti_oracle(fan):
    """Even Betti numbers of a complete simplicial fan from its face counts
    alone (the h-vector); odd Betti numbers vanish."""
    n = fan.rank
    counts = fan.face_counts()  # counts[j] = number of j-dimensional cones
    out = []
    for k in range(n + 1):
        out.append(
            sum((-1) ** (i - k) * comb(i, k) * counts[n - i] for i in range(k, n + 1))
        )
    return out


def lift_identities(fan, divisor):
    """Assert the three lattice identities tying the graph and epigraph lifts
    of each face (and covering pair) of a divisor's fan."""
    from toricdef import normal_generator
    from toricdef.exact_linalg import reduce_mod_rows
    from toricdef.ishida import _fan_normal

    n = fan.rank
    vertical = (0,) * n + (1,)
    faces = list(fan.by_key.values())
    pairs = [
        (m, t)
        for m in faces
        for t in faces
        if m.dim + 1 == t.dim and m.ray_indices < t.ray_indices
    ]
    assert pairs
    for mu, tau in pairs:
        lm = divisor.lifted[mu.ray_indices]
        lt = divisor.lifted[tau.ray_indices]
        orient = [
            lt.hat_rays[i]
            for i, ridx in enumerate(sorted(tau.ray_indices))
            if ridx not in mu.ray_indices
        ]
        n_hat = normal_generator(lm.hat_span, lt.hat_span, orient)
        n_til = normal_generator(lm.tilde_span, lt.tilde_span, orient)
        # the embedded quotient-fan normal agrees with the epigraph normal
        n_emb = _fan_normal(fan, mu, tau) + (0,)
        assert reduce_mod_rows(n_emb, lm.tilde_span) == reduce_mod_rows(
            n_til, lm.tilde_span
        )
        # graph and epigraph normals agree after clearing the vertical indices
        left = tuple(lm.vertical_index * x for x in n_hat)
        right = tuple(lt.vertical_index * x for x in n_til)
        assert reduce_mod_rows(left, lm.tilde_span) == reduce_mod_rows(
            right, lm.tilde_span
        )
    for face in faces:
        lf = divisor.lifted[face.ray_indices]
        n_vert = normal_generator(lf.hat_span, lf.tilde_span, [vertical])
        scaled = tuple(lf.vertical_index * x for x in n_vert)
        assert reduce_mod_rows(scaled, lf.hat_span) == reduce_mod_rows(
            vertical, lf.hat_span
        )
