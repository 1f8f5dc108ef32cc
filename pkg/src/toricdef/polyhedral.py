"""Rational polyhedral cones, face lattices, fans, and shellings.

Cones are given by extreme rays (primitive integer vectors); all convexity
questions (strong convexity, redundancy, membership, separation) reduce to
exact rational feasibility via :func:`toricdef.exact_linalg.nonnegative_combination`,
so no floating point is involved anywhere.

Face enumeration is deliberately unsophisticated: candidate facets come from
(d-1)-subsets of rays and are validated as supporting hyperplanes, and the
remaining faces are intersections of facets.  This is quadratic-ish in the
number of faces, which is the right trade at the scale this package targets
(tens of rays).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import exact_linalg as xl
from .errors import (
    ApexInHyperplane,
    InvalidShelling,
    NotAPermutation,
    NotCovering,
    NotFullDim,
    NotInterior,
    NotStronglyConvex,
    ValidationError,
    WrongDimension,
    ZeroVector,
)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _ivec(v) -> tuple[int, ...]:
    out = []
    for x in v:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValidationError(f"expected an integer vector, got {v!r}")
            x = x.numerator
        if not isinstance(x, int):
            raise ValidationError(f"expected an integer vector, got {v!r}")
        out.append(int(x))
    return tuple(out)


class Cone:
    """A strongly convex rational polyhedral cone, by extreme rays.

    Instances come out of :func:`cone_from_rays`; the constructor trusts its
    input.  ``rays`` keeps the order in which surviving input rays appeared,
    and all face bookkeeping refers to rays by index into this tuple.
    """

    __slots__ = ("rank", "rays", "dim", "_lattice")

    def __init__(self, rank: int, rays: tuple[tuple[int, ...], ...], dim: int):
        self.rank = rank
        self.rays = rays
        self.dim = dim
        self._lattice = None

    def __repr__(self) -> str:
        return f"Cone(rank={self.rank}, dim={self.dim}, rays={len(self.rays)})"

    def face_lattice(self) -> "FaceLattice":
        return face_lattice(self)


def cone_from_rays(vectors, rank: int | None = None) -> Cone:
    """Build a cone from integer generators.

    Generators are primitivized and deduplicated, non-extreme generators are
    dropped, and strong convexity is verified.  Raises ZERO_VECTOR on a zero
    generator and NOT_STRONGLY_CONVEX if the positive hull contains a line.
    """
    vecs = [_ivec(v) for v in vectors]
    if not vecs:
        raise ValidationError("at least one generator is required")
    if rank is None:
        rank = len(vecs[0])
    if any(len(v) != rank for v in vecs):
        raise ValidationError("generators of mixed lengths")
    if any(not any(v) for v in vecs):
        raise ZeroVector("zero generator")
    prim = []
    for v in vecs:
        p = xl.primitive_vector(v)
        if p not in prim:
            prim.append(p)
    # strong convexity: no nontrivial nonnegative combination vanishes
    cols = [p + (1,) for p in prim]
    if xl.nonnegative_combination(cols, (0,) * rank + (1,)) is not None:
        raise NotStronglyConvex("generators positively span a line")
    # drop generators lying in the hull of the others, until stable
    changed = True
    while changed:
        changed = False
        for j, p in enumerate(prim):
            others = [q for i, q in enumerate(prim) if i != j]
            if others and xl.nonnegative_combination(others, p) is not None:
                prim.pop(j)
                changed = True
                break
    dim = xl.matrix_rank(xl.integer_matrix(prim, rank))
    return Cone(rank, tuple(prim), dim)


@dataclass(frozen=True)
class Face:
    """A face of a cone, identified by the set of extreme rays it contains.

    ``span_rows`` is the canonical Hermite basis of the sublattice
    ``span(face) cap Z^rank``; ``perp_rows`` the canonical basis of the
    saturated annihilator lattice in the dual.
    """

    ray_indices: frozenset[int]
    dim: int
    span_rows: tuple[tuple[int, ...], ...]
    perp_rows: tuple[tuple[int, ...], ...]

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.ray_indices))


class FaceLattice:
    """All faces of a cone, graded by dimension, with covering relations.

    Besides the ambient data stored on each :class:`Face`, the lattice keeps
    an intrinsic coordinate system (a lattice basis of the cone's span) in
    which the cone is full-dimensional; facet inequalities, interiority
    tests and shellings live there.
    """

    def __init__(self, cone: Cone):
        self.cone = cone
        n, d = cone.rank, cone.dim
        self.span_rows = tuple(xl.saturation_rows(cone.rays, n)) if cone.rays else ()
        bmat = xl.integer_matrix(self.span_rows, n)
        coords = []
        for r in cone.rays:
            x = xl.solve_matrix(bmat.T, xl.integer_matrix([r], n).T)
            assert x is not None
            coords.append(tuple(xl._as_int(x[i, 0]) for i in range(d)))
        self.ray_coords = tuple(coords)

        facet_sets, facet_normals = self._enumerate_facets()
        self.facet_normals = facet_normals  # key -> intrinsic inner normal

        keys: set[frozenset[int]] = {frozenset(range(len(cone.rays)))}
        keys.update(facet_sets)
        queue = list(facet_sets)
        while queue:
            a = queue.pop()
            for b in facet_sets:
                c = a & b
                if c not in keys:
                    keys.add(c)
                    queue.append(c)
        keys.add(frozenset())

        self.by_key: dict[frozenset[int], Face] = {}
        for k in keys:
            rays = [cone.rays[i] for i in sorted(k)]
            span = tuple(xl.saturation_rows(rays, n)) if rays else ()
            perp = tuple(xl.integer_kernel_rows(xl.integer_matrix(rays, n)))
            self.by_key[k] = Face(k, len(span), span, perp)
        self.faces_by_dim: dict[int, tuple[Face, ...]] = {}
        for m in range(d + 1):
            fs = [f for f in self.by_key.values() if f.dim == m]
            fs.sort(key=lambda f: f.key)
            self.faces_by_dim[m] = tuple(fs)

        # intrinsic span/perp per face (coordinates w.r.t. span_rows)
        self.span_in_cone: dict[frozenset[int], tuple] = {}
        self.perp_in_cone: dict[frozenset[int], tuple] = {}
        for k in keys:
            cs = [self.ray_coords[i] for i in sorted(k)]
            self.span_in_cone[k] = tuple(xl.saturation_rows(cs, d)) if cs else ()
            self.perp_in_cone[k] = tuple(
                xl.integer_kernel_rows(xl.integer_matrix(cs, d))
            )

        self.covers: dict[frozenset[int], tuple[Face, ...]] = {}
        for m in range(d):
            for f in self.faces_by_dim[m]:
                ups = [
                    g
                    for g in self.faces_by_dim[m + 1]
                    if f.ray_indices < g.ray_indices
                ]
                self.covers[f.ray_indices] = tuple(ups)
        self._below_memo: dict[frozenset[int], tuple[Face, ...]] = {}
        self._shell_memo: dict[tuple, bool] = {}

    def _enumerate_facets(self):
        cone = self.cone
        d = cone.dim
        coords = self.ray_coords
        m = len(coords)
        facet_sets: list[frozenset[int]] = []
        normals: dict[frozenset[int], tuple[int, ...]] = {}
        if d == 0:
            return facet_sets, normals
        for sub in itertools.combinations(range(m), d - 1):
            if any(set(sub) <= s for s in facet_sets):
                continue
            mat = xl.integer_matrix([coords[i] for i in sub], d)
            kern = xl.integer_kernel_rows(mat)
            if len(kern) != 1:
                continue
            u = kern[0]
            vals = [_dot(u, c) for c in coords]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                u = tuple(-x for x in u)
                vals = [-v for v in vals]
            else:
                continue
            fs = frozenset(i for i, v in enumerate(vals) if v == 0)
            if fs not in normals:
                facet_sets.append(fs)
                normals[fs] = u
        return facet_sets, normals

    # -- queries ----------------------------------------------------------

    @property
    def all_faces(self) -> list[Face]:
        return [f for m in sorted(self.faces_by_dim) for f in self.faces_by_dim[m]]

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(self.faces_by_dim[m]) for m in sorted(self.faces_by_dim))

    def top(self) -> Face:
        return self.by_key[frozenset(range(len(self.cone.rays)))]

    def meet(self, f: Face, g: Face) -> Face:
        return self.by_key[f.ray_indices & g.ray_indices]

    def covered_by(self, f: Face) -> tuple[Face, ...]:
        """Faces of one dimension less contained in ``f``."""
        key = f.ray_indices
        if key not in self._below_memo:
            self._below_memo[key] = tuple(
                g
                for g in self.faces_by_dim.get(f.dim - 1, ())
                if g.ray_indices < key
            )
        return self._below_memo[key]

    def check_diamond(self) -> bool:
        """Every 2-step interval in the lattice has exactly two midpoints."""
        for lo in self.all_faces:
            for hi in self.all_faces:
                if hi.dim == lo.dim + 2 and lo.ray_indices <= hi.ray_indices:
                    mids = [
                        g
                        for g in self.faces_by_dim[lo.dim + 1]
                        if lo.ray_indices <= g.ray_indices <= hi.ray_indices
                    ]
                    if len(mids) != 2:
                        return False
        return True

    def interior_coords(self, v) -> list[Fraction] | None:
        """Intrinsic coordinates of ``v`` if it lies in the cone's span."""
        bmat = xl.integer_matrix(self.span_rows, self.cone.rank)
        x = xl.solve_matrix(bmat.T, xl.rational_matrix([v], self.cone.rank).T)
        if x is None:
            return None
        return [x[i, 0] for i in range(self.cone.dim)]

    def is_interior(self, v) -> bool:
        """Strict relative interiority of an ambient vector."""
        cs = self.interior_coords(v)
        if cs is None:
            return False
        if self.cone.dim == 0:
            return all(x == 0 for x in v)
        return all(_dot(g, cs) > 0 for g in self.facet_normals.values())

    def normal_generator(self, mu: Face, tau: Face) -> tuple[int, ...]:
        orient = [self.cone.rays[i] for i in sorted(tau.ray_indices - mu.ray_indices)]
        return normal_generator(mu.span_rows, tau.span_rows, orient)


def face_lattice(cone: Cone) -> FaceLattice:
    """The (cached) face lattice of a cone."""
    if cone._lattice is None:
        cone._lattice = FaceLattice(cone)
    return cone._lattice


def normal_generator(mu_span_rows, tau_span_rows, orientation_vectors) -> tuple[int, ...]:
    """Canonical lift of the positive primitive generator of the rank-one
    quotient of two nested saturated lattices.

    ``mu_span_rows`` and ``tau_span_rows`` are Hermite bases with the mu
    lattice of corank one inside the tau lattice; ``orientation_vectors``
    are lattice elements (e.g. rays of the bigger face not in the smaller)
    whose quotient images must come out positive.  The result is reduced
    modulo the mu lattice, so it is a canonical representative; any other
    valid representative differs by a mu-lattice element.
    """
    if len(tau_span_rows) != len(mu_span_rows) + 1:
        raise NotCovering("lattices do not differ in rank by one")
    width = len(tau_span_rows[0])
    dt = len(tau_span_rows)
    bt = xl.integer_matrix(tau_span_rows, width)
    if mu_span_rows:
        bm = xl.integer_matrix(mu_span_rows, width)
        cm = xl.solve_matrix(bt.T, bm.T)
        if cm is None:
            raise NotCovering("mu lattice is not inside tau lattice")
        cmat = xl.integer_matrix(cm.T.tolist(), dt)
    else:
        cmat = xl.zeros_matrix(0, dt)
    kern = xl.integer_kernel_rows(cmat)
    if len(kern) != 1:
        raise NotCovering("quotient is not of rank one")
    w = kern[0]
    signs = []
    for r in orientation_vectors:
        x = xl.solve_matrix(bt.T, xl.integer_matrix([r], width).T)
        if x is None:
            raise NotCovering("orientation vector outside the tau lattice span")
        signs.append(_dot(w, (xl._as_int(x[i, 0]) for i in range(dt))))
    if not signs or 0 in signs or (min(signs) < 0 < max(signs)):
        raise NotCovering("orientation vectors do not fix a positive side")
    if signs[0] < 0:
        w = tuple(-x for x in w)
    y = xl.solve_unit_pairing(w)
    lift = tuple(
        sum(y[i] * tau_span_rows[i][j] for i in range(dt)) for j in range(width)
    )
    return xl.reduce_mod_rows(lift, mu_span_rows)


def pyramid(cone: Cone, apex) -> Cone:
    """The join of a cone (embedded at extra coordinate zero) with an apex
    ray; the apex must leave the original hyperplane."""
    apex = _ivec(apex)
    if len(apex) != cone.rank + 1:
        raise ValidationError("apex must live in one more coordinate")
    if apex[-1] == 0:
        raise ApexInHyperplane("apex lies in the original hyperplane")
    if not any(apex):
        raise ZeroVector("zero apex")
    rays = [r + (0,) for r in cone.rays] + [xl.primitive_vector(apex)]
    out = cone_from_rays(rays, cone.rank + 1)
    assert len(out.rays) == len(cone.rays) + 1
    assert out.dim == cone.dim + 1
    return out


# ---------------------------------------------------------------------------
# fans


class Fan:
    """A fan: primitive rays plus maximal cones given by ray-index sets.

    All faces of all maximal cones are enumerated and shared; pairwise
    compatibility (cones meet in a common face) is verified exactly via a
    strict separating functional unless ``validate=False``.
    """

    __slots__ = (
        "rank",
        "rays",
        "maximal",
        "by_key",
        "faces_by_dim",
        "covers",
        "max_containing",
        "_complete",
        "_normal_memo",
    )

    def __init__(self, rank, rays, maximal, by_key, faces_by_dim, covers, max_containing):
        self.rank = rank
        self.rays = rays
        self.maximal = maximal
        self.by_key = by_key
        self.faces_by_dim = faces_by_dim
        self.covers = covers
        self.max_containing = max_containing
        self._complete = None
        self._normal_memo = {}

    def __repr__(self) -> str:
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, maximal={len(self.maximal)})"

    @property
    def all_faces(self) -> list[Face]:
        return [f for m in sorted(self.faces_by_dim) for f in self.faces_by_dim[m]]

    def face_counts(self) -> tuple[int, ...]:
        return tuple(
            len(self.faces_by_dim.get(m, ())) for m in range(self.rank + 1)
        )

    def is_complete(self, samples: int = 24) -> bool:
        """Exact boundary pairing plus randomized coverage sampling."""
        if self._complete is not None:
            return self._complete
        max_keys = [frozenset(k) for k in self.maximal]
        ok = not any(self.by_key[k].dim != self.rank for k in max_keys)
        if ok:
            for wall in self.faces_by_dim.get(self.rank - 1, ()):
                cnt = sum(1 for k in max_keys if wall.ray_indices <= k)
                if cnt != 2:
                    ok = False
                    break
        if ok:
            rng = random.Random(0x5EED)
            for _ in range(samples):
                v = tuple(rng.randint(-40, 40) for _ in range(self.rank))
                if not any(
                    xl.nonnegative_combination(
                        [self.rays[i] for i in sorted(k)], v
                    )
                    is not None
                    for k in self.maximal
                ):
                    ok = False
                    break
        self._complete = ok
        return ok


def _strictly_separable(columns) -> bool:
    """Is there u with <u, c> > 0 for every column?  (Equivalently the
    positive hull of the columns is strongly convex and misses zero.)"""
    if any(not any(c) for c in columns):
        return False
    if not columns:
        return True
    width = len(columns[0])
    cols = [tuple(c) + (1,) for c in columns]
    return xl.nonnegative_combination(cols, (0,) * width + (1,)) is None


def fan_from_cones(rays, maximal_sets, rank: int | None = None, validate: bool = True) -> Fan:
    """Assemble a fan from shared rays and maximal cones (ray-index lists)."""
    rays = tuple(_ivec(r) for r in rays)
    if not rays:
        raise ValidationError("a fan needs at least one ray")
    if rank is None:
        rank = len(rays[0])
    for r in rays:
        if len(r) != rank:
            raise ValidationError("rays of mixed lengths")
        if not any(r):
            raise ZeroVector("zero ray")
        if r != xl.primitive_vector(r):
            raise ValidationError(f"ray {r} is not primitive")
    if len(set(rays)) != len(rays):
        raise ValidationError("duplicate rays")
    maximal = tuple(tuple(sorted(set(int(i) for i in s))) for s in maximal_sets)
    if not maximal:
        raise ValidationError("a fan needs at least one maximal cone")
    for s in maximal:
        if any(i < 0 or i >= len(rays) for i in s):
            raise ValidationError("cone refers to a missing ray")

    by_key: dict[frozenset[int], Face] = {}
    cone_faces: list[set[frozenset[int]]] = []
    for s in maximal:
        sub = cone_from_rays([rays[i] for i in s], rank)
        if len(sub.rays) != len(s):
            raise ValidationError(f"cone {s} is not generated by extreme rays")
        lat = face_lattice(sub)
        local = sorted(s)
        fkeys: set[frozenset[int]] = set()
        for f in lat.all_faces:
            gkey = frozenset(local[i] for i in f.ray_indices)
            fkeys.add(gkey)
            if gkey not in by_key:
                by_key[gkey] = Face(gkey, f.dim, f.span_rows, f.perp_rows)
        cone_faces.append(fkeys)

    if validate:
        for (ia, sa), (ib, sb) in itertools.combinations(enumerate(maximal), 2):
            common = frozenset(sa) & frozenset(sb)
            if common not in cone_faces[ia] or common not in cone_faces[ib]:
                raise ValidationError(
                    f"cones {sa} and {sb} share rays {sorted(common)} but not a face"
                )
            perp = by_key[common].perp_rows
            proj = xl.integer_matrix(perp, rank) if perp else xl.zeros_matrix(0, rank)
            cols = []
            for i in sa:
                if i not in common:
                    cols.append(tuple(_dot(p, rays[i]) for p in perp))
            for i in sb:
                if i not in common:
                    cols.append(tuple(-_dot(p, rays[i]) for p in perp))
            if not _strictly_separable(cols):
                raise ValidationError(
                    f"cones {sa} and {sb} overlap beyond their common face"
                )

    faces_by_dim: dict[int, tuple[Face, ...]] = {}
    top = max(f.dim for f in by_key.values())
    for m in range(top + 1):
        fs = [f for f in by_key.values() if f.dim == m]
        fs.sort(key=lambda f: f.key)
        faces_by_dim[m] = tuple(fs)
    covers: dict[frozenset[int], tuple[Face, ...]] = {}
    for m in range(top):
        for f in faces_by_dim[m]:
            covers[f.ray_indices] = tuple(
                g
                for g in faces_by_dim.get(m + 1, ())
                if f.ray_indices < g.ray_indices
            )
    max_containing: dict[frozenset[int], tuple[tuple[int, ...], ...]] = {}
    for k in by_key:
        max_containing[k] = tuple(s for s in maximal if k <= set(s))
    return Fan(rank, rays, maximal, by_key, faces_by_dim, covers, max_containing)


def star_quotient(cone: Cone, rho) -> tuple[Fan, "object"]:
    """Quotient a full-dimensional cone by an interior ray.

    Returns the complete fan ``E`` induced on the quotient lattice by the
    faces of the cone, together with the support divisor data recording the
    height function: after a unimodular change of coordinates taking ``rho``
    to the last basis vector, the boundary of the cone is the graph of a
    piecewise linear function on ``E``, and the divisor is its class.
    """
    n = cone.rank
    if cone.dim != n:
        raise NotFullDim("star quotient needs a full-dimensional cone")
    if n < 2:
        raise WrongDimension("star quotient needs dimension at least two")
    rho = xl.primitive_vector(_ivec(rho))
    lat = face_lattice(cone)
    if not lat.is_interior(rho):
        raise NotInterior(f"{rho} is not interior to the cone")

    rho_col = xl.integer_matrix([rho], n).T
    u, d, _ = xl.smith_normal_form(rho_col)
    assert d[0, 0] == 1
    perm = list(range(1, n)) + [0]
    t_rows = [tuple(int(u[i, j]) for j in range(n)) for i in perm]
    if sum(a * b for a, b in zip(t_rows[-1], rho)) < 0:
        t_rows[-1] = tuple(-x for x in t_rows[-1])
    tmat = xl.integer_matrix(t_rows, n)
    assert tuple(int(x) for x in xl.mat_mul(tmat, rho_col).T[0]) == (0,) * (n - 1) + (1,)

    heights = []
    projected = []
    alphas = []
    for r in cone.rays:
        img = tuple(int(x) for x in xl.mat_mul(tmat, xl.integer_matrix([r], n).T).T[0])
        base, h = img[:-1], img[-1]
        assert any(base), "a ray projects to zero; rho was not interior"
        p = xl.primitive_vector(base)
        g = next(b // pb for b, pb in zip(base, p) if pb != 0)
        heights.append(h)
        projected.append(p)
        alphas.append(Fraction(h, g))

    maximal = [tuple(sorted(f.ray_indices)) for f in lat.faces_by_dim[n - 1]]
    fan = fan_from_cones(projected, maximal, n - 1)
    assert fan.is_complete()
    assert fan.face_counts() == lat.face_counts()[:-1]

    from .lefschetz import support_data

    divisor = support_data(fan, alphas)
    return fan, divisor


# ---------------------------------------------------------------------------
# shellings


@dataclass(frozen=True)
class Shelling:
    """An ordered list of the facets of a cone."""

    cone: Cone
    order: tuple[Face, ...]

    def keys(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.key for f in self.order)


def _attach_ok(lat: FaceLattice, placed_keys, g: Face) -> bool:
    """Shelling attachment condition for appending facet ``g`` after the
    faces with keys ``placed_keys``: the maximal meets with earlier facets
    must all be facets of ``g``, and some shelling of the boundary of ``g``
    must start with exactly that set."""
    if not placed_keys:
        return True
    meets = {g.ray_indices & k for k in placed_keys}
    maximal = [k for k in meets if not any(k < other for other in meets)]
    cover_keys = {f.ray_indices for f in lat.covered_by(g)}
    if any(k not in cover_keys for k in maximal):
        return False
    return _prefix_shellable(lat, g, frozenset(maximal))


def _prefix_shellable(lat: FaceLattice, face: Face, initial: frozenset) -> bool:
    """Can a shelling of the boundary of ``face`` start with the facet set
    ``initial`` (in some order)?  Memoized over the tail states."""
    if face.dim <= 2:
        return True
    facets = lat.covered_by(face)
    all_keys = frozenset(f.ray_indices for f in facets)
    by_key = {f.ray_indices: f for f in facets}

    def complete(placed: frozenset) -> bool:
        if placed == all_keys:
            return True
        state = (face.ray_indices, placed)
        if state in lat._shell_memo:
            return lat._shell_memo[state]
        res = False
        for k in sorted(all_keys - placed, key=sorted):
            if _attach_ok(lat, placed, by_key[k]) and complete(placed | {k}):
                res = True
                break
        lat._shell_memo[state] = res
        return res

    def head(placed: frozenset) -> bool:
        if len(placed) == len(initial):
            return complete(placed)
        for k in sorted(initial - placed, key=sorted):
            if _attach_ok(lat, placed, by_key[k]) and head(placed | {k}):
                return True
        return False

    if not initial <= all_keys:
        return False
    return head(frozenset())


def is_shelling(cone: Cone, order) -> bool:
    """Check the recursive shelling condition for an ordering of the facets.

    Raises NOT_A_PERMUTATION unless ``order`` lists each facet exactly once.
    """
    if isinstance(order, Shelling):
        order = order.order
    if cone.dim < 2:
        raise WrongDimension("shellings need dimension at least two")
    lat = face_lattice(cone)
    facets = lat.faces_by_dim[cone.dim - 1]
    keys = [f.ray_indices for f in order]
    if len(keys) != len(facets) or set(keys) != {f.ray_indices for f in facets}:
        raise NotAPermutation("order is not a permutation of the facets")
    placed: list[frozenset[int]] = []
    for f in order:
        g = lat.by_key[f.ray_indices]
        if not _attach_ok(lat, placed, g):
            return False
        placed.append(g.ray_indices)
    return True


def line_shelling(cone: Cone, seed: int = 0) -> Shelling:
    """A shelling of the facets from a generic line through the cross-section.

    A strictly interior dual vector cuts a polytopal cross-section; a random
    line through an interior point, generic against all facet hyperplanes,
    orders the facets by signed crossing time (outgoing crossings first).
    The classical sweep argument makes this a shelling, and the result is
    re-verified before being returned.
    """
    d = cone.dim
    if d < 2:
        raise WrongDimension("shellings need dimension at least two")
    lat = face_lattice(cone)
    facets = lat.faces_by_dim[d - 1]
    normals = {f.ray_indices: lat.facet_normals[f.ray_indices] for f in facets}
    w = tuple(sum(g[i] for g in normals.values()) for i in range(d))
    assert all(_dot(w, c) > 0 for c in lat.ray_coords)
    centre_raw = tuple(sum(c[i] for c in lat.ray_coords) for i in range(d))
    scale = Fraction(1, _dot(w, centre_raw))
    centre = tuple(scale * x for x in centre_raw)

    rng = random.Random(seed)
    ww = _dot(w, w)
    for _ in range(256):
        z = tuple(rng.randint(-9, 9) for _ in range(d))
        proj = Fraction(_dot(w, z), ww)
        v = tuple(Fraction(zi) - proj * wi for zi, wi in zip(z, w))
        if all(x == 0 for x in v):
            continue
        pairings = {k: _dot(g, v) for k, g in normals.items()}
        if any(p == 0 for p in pairings.values()):
            continue
        times = {k: Fraction(-_dot(normals[k], centre), p) for k, p in pairings.items()}
        outgoing = sorted((k for k, p in pairings.items() if p < 0), key=lambda k: times[k])
        incoming = sorted((k for k, p in pairings.items() if p > 0), key=lambda k: times[k])
        ts = [times[k] for k in outgoing + incoming]
        if len(set(ts)) != len(ts):
            continue
        order = tuple(lat.by_key[k] for k in outgoing + incoming)
        if is_shelling(cone, order):
            return Shelling(cone, order)
    raise InvalidShelling("no generic shelling line found; seed space exhausted")
