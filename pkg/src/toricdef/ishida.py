"""Ishida complexes of cones and fans, their cohomology, and the local
cohomological defect.

The degree-``m`` term of the level-``l`` complex of a cone is the direct sum,
over faces of dimension ``m``, of the ``(l-m)``-th exterior power of the
face's annihilator in the dual space; the differential is the sum over
covering pairs of contraction with a lattice normal of the smaller face
inside the bigger one.  Contraction kills forms that vanish on the smaller
face, so the normal's ambiguity (an element of the smaller face's span
lattice) never reaches the matrices; the anticommutation of the two paths
through any 2-step interval of the face lattice makes the square of the
differential vanish, and the builder verifies this on every assembly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact_linalg as xl
from .errors import NotAComplex, ValidationError
from .polyhedral import Cone, Face, Fan, cone_from_rays, face_lattice, normal_generator


@dataclass(frozen=True)
class Block:
    """One labeled summand of a term of a labeled complex."""

    face_key: tuple
    exterior_degree: int
    basis: xl.ExteriorBasis
    offset: int

    @property
    def size(self) -> int:
        return self.basis.size


@dataclass(frozen=True)
class LabeledComplex:
    """A cochain complex in nonnegative degrees with block-labeled terms."""

    label: str
    terms: tuple[tuple[Block, ...], ...]
    diffs: tuple[np.ndarray, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(
            (sum(b.size for b in layer)) for layer in self.terms
        )

    def block(self, degree: int, face_key) -> Block | None:
        for b in self.terms[degree]:
            if b.face_key == face_key:
                return b
        return None


@dataclass(frozen=True)
class CohomologyTable:
    """Cohomology dimensions of the level-``l`` complexes of one object."""

    label: str
    rows: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]
    # each row: (level l, term dimensions, cohomology dimensions)

    def level(self, l: int) -> tuple[int, ...]:
        for lev, _, coh in self.rows:
            if lev == l:
                return coh
        raise KeyError(l)


def assemble_complex(label: str, layers, entry_fn, check: bool = True) -> LabeledComplex:
    """Assemble a labeled complex from per-degree block lists and a block
    entry callback ``entry_fn(degree, src_block, dst_block) -> matrix|None``.

    Verifies that consecutive differentials compose to zero and raises
    NOT_A_COMPLEX otherwise.
    """
    terms: list[tuple[Block, ...]] = []
    for layer in layers:
        off = 0
        row = []
        for fk, eb in layer:
            b = Block(fk, eb.degree, eb, off)
            row.append(b)
            off += b.size
        terms.append(tuple(row))
    diffs: list[np.ndarray] = []
    for i in range(len(terms) - 1):
        ncols = sum(b.size for b in terms[i])
        nrows = sum(b.size for b in terms[i + 1])
        d = xl.zeros_matrix(nrows, ncols)
        for sb in terms[i]:
            if sb.size == 0:
                continue
            for tb in terms[i + 1]:
                if tb.size == 0:
                    continue
                m = entry_fn(i, sb, tb)
                if m is None:
                    continue
                assert m.shape == (tb.size, sb.size)
                for (r, c), v in np.ndenumerate(m):
                    if v != 0:
                        d[tb.offset + r, sb.offset + c] = xl._as_int(v)
        diffs.append(d)
    if check:
        for i in range(len(diffs) - 1):
            if not xl.is_zero_matrix(xl.mat_mul(diffs[i + 1], diffs[i])):
                raise NotAComplex(f"{label}: differential does not square to zero at degree {i}")
    return LabeledComplex(label, tuple(terms), tuple(diffs))


def cohomology(cx: LabeledComplex) -> tuple[int, ...]:
    """Cohomology dimensions of a labeled complex, degree by degree."""
    dims = cx.dims
    ranks = [xl.matrix_rank(d) for d in cx.diffs]
    out = []
    for i, n in enumerate(dims):
        rin = ranks[i - 1] if i > 0 else 0
        rout = ranks[i] if i < len(ranks) else 0
        h = n - rout - rin
        if h < 0:
            raise NotAComplex(f"{cx.label}: negative cohomology dimension at degree {i}")
        out.append(h)
    return tuple(out)


# ---------------------------------------------------------------------------
# complexes of cones and fans


def _intrinsic_normal(lat, mu: Face, tau: Face):
    memo = getattr(lat, "_in_normal_memo", None)
    if memo is None:
        memo = {}
        lat._in_normal_memo = memo
    key = (mu.ray_indices, tau.ray_indices)
    if key not in memo:
        orient = [lat.ray_coords[i] for i in sorted(tau.ray_indices - mu.ray_indices)]
        memo[key] = normal_generator(
            lat.span_in_cone[mu.ray_indices],
            lat.span_in_cone[tau.ray_indices],
            orient,
        )
    return memo[key]


def ishida_cone(cone: Cone, l: int, normal_override=None) -> LabeledComplex:
    """The level-``l`` complex of a cone, in intrinsic coordinates.

    The cone is treated as full-dimensional inside its own span lattice, so
    the annihilator of a face of dimension ``m`` has dimension ``dim - m``.
    ``normal_override(mu, tau, normal) -> normal'`` lets callers retarget the
    normal representatives (used to demonstrate representative independence).
    """
    d = cone.dim
    if not 0 <= l <= d:
        raise ValidationError(f"level {l} outside 0..{d}")
    lat = face_lattice(cone)
    bases: dict[frozenset, xl.SubspaceBasis] = {}
    for f in lat.all_faces:
        bases[f.ray_indices] = xl.SubspaceBasis(d, lat.perp_in_cone[f.ray_indices])
    layers = []
    for m in range(min(l, d) + 1):
        layers.append(
            [
                (f.key, xl.ExteriorBasis(bases[f.ray_indices], l - m))
                for f in lat.faces_by_dim[m]
            ]
        )

    def entry(i, sb, tb):
        mu = lat.by_key[frozenset(sb.face_key)]
        tau = lat.by_key[frozenset(tb.face_key)]
        if not mu.ray_indices < tau.ray_indices:
            return None
        n = _intrinsic_normal(lat, mu, tau)
        if normal_override is not None:
            n = normal_override(mu, tau, n)
        return xl.contraction_matrix(n, sb.basis, tb.basis)

    return assemble_complex(f"cone level {l}", layers, entry)


def _fan_normal(fan: Fan, mu: Face, tau: Face):
    memo = fan._normal_memo
    key = (mu.ray_indices, tau.ray_indices)
    if key not in memo:
        orient = [fan.rays[i] for i in sorted(tau.ray_indices - mu.ray_indices)]
        memo[key] = normal_generator(mu.span_rows, tau.span_rows, orient)
    return memo[key]


def ishida_fan(fan: Fan, l: int, normal_override=None) -> LabeledComplex:
    """The level-``l`` complex of a fan in its ambient coordinates."""
    n = fan.rank
    if not 0 <= l <= n:
        raise ValidationError(f"level {l} outside 0..{n}")
    top = max(fan.faces_by_dim)
    layers = []
    for m in range(min(l, top) + 1):
        layer = []
        for f in fan.faces_by_dim.get(m, ()):
            base = xl.SubspaceBasis(n, f.perp_rows)
            layer.append((f.key, xl.ExteriorBasis(base, l - m)))
        layers.append(layer)

    def entry(i, sb, tb):
        mu = fan.by_key[frozenset(sb.face_key)]
        tau = fan.by_key[frozenset(tb.face_key)]
        if not mu.ray_indices < tau.ray_indices:
            return None
        nrm = _fan_normal(fan, mu, tau)
        if normal_override is not None:
            nrm = normal_override(mu, tau, nrm)
        return xl.contraction_matrix(nrm, sb.basis, tb.basis)

    return assemble_complex(f"fan level {l}", layers, entry)


def fan_cohomology_table(fan: Fan) -> CohomologyTable:
    rows = []
    for l in range(fan.rank + 1):
        cx = ishida_fan(fan, l)
        rows.append((l, cx.dims, cohomology(cx)))
    return CohomologyTable("fan", tuple(rows))


def cone_cohomology_table(cone: Cone) -> CohomologyTable:
    rows = []
    for l in range(cone.dim + 1):
        cx = ishida_cone(cone, l)
        rows.append((l, cx.dims, cohomology(cx)))
    return CohomologyTable("cone", tuple(rows))


# ---------------------------------------------------------------------------
# local cohomological defect


def is_simplicial(cone: Cone) -> bool:
    return len(cone.rays) == cone.dim


def lcdef_cone(cone: Cone, shortcut_simplicial: bool = True) -> int:
    """Cone-level contribution to the local cohomological defect.

    This is ``max(0, max { i - j : H^i of the level-(d-j) complex != 0 })``.
    The inner maximum exists because the level-0 complex always has
    one-dimensional cohomology in degree 0.  For simplicial cones the value
    is 0 (finite quotients of smooth affine charts have no defect);
    ``shortcut_simplicial`` returns that without computing, which the test
    suite cross-validates against the full computation.
    """
    d = cone.dim
    if d == 0:
        return 0
    if shortcut_simplicial and is_simplicial(cone):
        return 0
    best = None
    for l in range(d + 1):
        coh = cohomology(ishida_cone(cone, l))
        j = d - l
        for i, h in enumerate(coh):
            if h:
                c = i - j
                if best is None or c > best:
                    best = c
    assert best is not None
    return max(0, best)


def lcdef_variety(cone: Cone, shortcut_simplicial: bool = True) -> int:
    """Local cohomological defect: the maximum of the cone-level value over
    all faces (every point of the associated space has a neighborhood
    modeled on one of the faces)."""
    lat = face_lattice(cone)
    best = 0
    for f in lat.all_faces:
        if f.dim == 0:
            continue
        sub = cone_from_rays([cone.rays[i] for i in sorted(f.ray_indices)], cone.rank)
        best = max(best, lcdef_cone(sub, shortcut_simplicial=shortcut_simplicial))
    return best


# ---------------------------------------------------------------------------
# graded pieces


def _resolve_face(cone: Cone, tau) -> Face:
    lat = face_lattice(cone)
    if isinstance(tau, Face):
        return lat.by_key[tau.ray_indices]
    return lat.by_key[frozenset(tau)]


def graded_piece(cone: Cone, l: int, tau) -> LabeledComplex:
    """The weight-graded model of the level-``l`` complex at a face: the sum
    over ``j`` of ``C(codim, j)`` copies of the face's own level-``(l-j)``
    complex.

    For a weight in the relative interior of the face's dual cone the graded
    piece of the cone complex decomposes as exterior powers of the face's
    annihilator tensored with the face's complexes; this returns that direct
    sum with blocks labeled ``(j, copy, face_key)``.
    """
    d = cone.dim
    if not 0 <= l <= d:
        raise ValidationError(f"level {l} outside 0..{d}")
    face = _resolve_face(cone, tau)
    sub = cone_from_rays([cone.rays[i] for i in sorted(face.ray_indices)], cone.rank) if face.ray_indices else None
    dt = face.dim
    codim = d - dt
    if sub is None:
        # the zero face: the graded piece is a single exterior power in degree 0
        base = xl.SubspaceBasis(d, tuple(tuple(1 if i == j else 0 for i in range(d)) for j in range(d)))
        layers = [[(("wedge", l), xl.ExteriorBasis(base, l))]]
        return assemble_complex(f"graded piece level {l} at zero face", layers, lambda *a: None)

    pieces: list[tuple[int, int, LabeledComplex]] = []
    for j in range(max(0, l - dt), min(l, codim) + 1):
        inner = ishida_cone(sub, l - j)
        from math import comb

        for copy in range(comb(codim, j)):
            pieces.append((j, copy, inner))

    depth = max(len(p.terms) for _, _, p in pieces)
    layers = []
    for deg in range(depth):
        layer = []
        for j, copy, inner in pieces:
            if deg < len(inner.terms):
                for b in inner.terms[deg]:
                    layer.append(((j, copy, b.face_key), b.basis))
        layers.append(layer)

    index = {}
    for j, copy, inner in pieces:
        index[(j, copy)] = inner

    def entry(i, sb, tb):
        (js, cs, fks) = sb.face_key
        (jt, ct, fkt) = tb.face_key
        if (js, cs) != (jt, ct):
            return None
        inner = index[(js, cs)]
        if i + 1 >= len(inner.terms):
            return None
        src = inner.block(i, fks)
        dst = inner.block(i + 1, fkt)
        if src is None or dst is None or src.size == 0 or dst.size == 0:
            return None
        d_in = inner.diffs[i]
        out = xl.zeros_matrix(dst.size, src.size)
        for r in range(dst.size):
            for c in range(src.size):
                out[r, c] = d_in[dst.offset + r, src.offset + c]
        return out if not xl.is_zero_matrix(out) else None

    return assemble_complex(f"graded piece level {l} at {face.key}", layers, entry)


def restricted_complex(cone: Cone, l: int, tau) -> LabeledComplex:
    """The sub-poset model of the graded piece: the level-``l`` complex built
    from the faces contained in ``tau`` but with annihilators taken inside
    the ambient cone's span.  Its cohomology agrees with
    :func:`graded_piece`; the test suite verifies this on samples."""
    d = cone.dim
    if not 0 <= l <= d:
        raise ValidationError(f"level {l} outside 0..{d}")
    face = _resolve_face(cone, tau)
    lat = face_lattice(cone)
    below = [f for f in lat.all_faces if f.ray_indices <= face.ray_indices]
    bases = {
        f.ray_indices: xl.SubspaceBasis(d, lat.perp_in_cone[f.ray_indices])
        for f in below
    }
    layers = []
    for m in range(min(l, face.dim) + 1):
        layers.append(
            [
                (f.key, xl.ExteriorBasis(bases[f.ray_indices], l - m))
                for f in below
                if f.dim == m
            ]
        )

    def entry(i, sb, tb):
        mu = lat.by_key[frozenset(sb.face_key)]
        ta = lat.by_key[frozenset(tb.face_key)]
        if not mu.ray_indices < ta.ray_indices:
            return None
        n = _intrinsic_normal(lat, mu, ta)
        return xl.contraction_matrix(n, sb.basis, tb.basis)

    return assemble_complex(f"restricted level {l} at {face.key}", layers, entry)
