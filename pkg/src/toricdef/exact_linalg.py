"""Exact linear algebra over Q and over integer lattices.

All matrices in this package are numpy arrays with ``dtype=object`` whose
entries are Python ints or ``fractions.Fraction``.  Nothing here ever touches
floating point; determinism and exactness are the whole point.

Conventions
-----------
* A "rational matrix" has int/Fraction entries, a "integer matrix" has int
  entries only.  Vectors are plain tuples of ints/Fractions unless a shape
  is needed.
* Lattice bases are stored as *rows*.  ``hermite_rows`` fixes a canonical
  basis (row Hermite normal form, positive pivots, entries above a pivot
  reduced into ``[0, pivot)``), so two computations of the same lattice
  produce identical data.
* Kernels returned by :func:`rank_and_kernel` are *columns*.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

import numpy as np

from .errors import NotContained, SpanViolation, ZeroVector


class _Infinite:
    """Sentinel for an infinite lattice index (rank drop)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


# ---------------------------------------------------------------------------
# construction helpers


def object_matrix(rows, width: int | None = None) -> np.ndarray:
    """Build a 2-d object array from an iterable of rows.

    ``width`` is required when ``rows`` is empty, so that even degenerate
    matrices carry their true shape.
    """
    data = [list(r) for r in rows]
    if width is None:
        if not data:
            raise ValueError("width is required for a matrix with no rows")
        width = len(data[0])
    out = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        if len(row) != width:
            raise ValueError("ragged rows")
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def rational_matrix(rows, width: int | None = None) -> np.ndarray:
    out = object_matrix(rows, width)
    for idx, x in np.ndenumerate(out):
        out[idx] = _norm_scalar(Fraction(x))
    return out


def integer_matrix(rows, width: int | None = None) -> np.ndarray:
    out = object_matrix(rows, width)
    for idx, x in np.ndenumerate(out):
        out[idx] = _as_int(x)
    return out


def zeros_matrix(nrows: int, ncols: int) -> np.ndarray:
    out = np.empty((nrows, ncols), dtype=object)
    out[...] = 0
    return out


def identity_matrix(n: int) -> np.ndarray:
    out = zeros_matrix(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def _norm_scalar(x):
    """Collapse integral Fractions to int (faster arithmetic, cleaner repr)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _as_int(x) -> int:
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    raise ValueError(f"not an integer entry: {x!r}")


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that keeps object dtype even for empty factors."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros_matrix(a.shape[0], b.shape[1])
    return np.dot(a, b)


def mat_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(
        a[idx] == b[idx] for idx in np.ndindex(a.shape)
    )


def is_zero_matrix(a: np.ndarray) -> bool:
    return all(a[idx] == 0 for idx in np.ndindex(a.shape))


# ---------------------------------------------------------------------------
# elimination over Q


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Q.  Returns (R, pivot columns)."""
    r = np.array(m, dtype=object)
    nrows, ncols = r.shape
    for idx, x in np.ndenumerate(r):
        if not isinstance(x, (int, Fraction)):
            r[idx] = Fraction(x)
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        piv = next((i for i in range(row, nrows) if r[i, col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = Fraction(1, 1) / r[row, col]
        r[row] = [_norm_scalar(x * inv) for x in r[row]]
        for i in range(nrows):
            if i != row and r[i, col] != 0:
                factor = r[i, col]
                r[i] = [_norm_scalar(a - factor * b) for a, b in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
    return r, pivots


def rank_and_kernel(m: np.ndarray) -> tuple[int, np.ndarray]:
    """Rank and a basis (as columns) of the right kernel, over Q.

    The kernel basis is the standard one read off the reduced echelon form:
    one column per free variable, with substituted pivot entries.  This makes
    the output canonical for a given input matrix.
    """
    r, pivots = rref(m)
    ncols = m.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    kern = zeros_matrix(ncols, len(free))
    for j, fc in enumerate(free):
        kern[fc, j] = 1
        for i, pc in enumerate(pivots):
            kern[pc, j] = _norm_scalar(-r[i, fc])
    return len(pivots), kern


def solve_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One exact solution X of A X = B, or None if the system is insolvable."""
    if a.shape[0] != b.shape[0]:
        raise ValueError("shape mismatch in solve")
    aug = np.concatenate([a, b], axis=1) if a.size or b.size else zeros_matrix(a.shape[0], a.shape[1] + b.shape[1])
    r, pivots = rref(aug)
    n = a.shape[1]
    if any(p >= n for p in pivots):
        return None
    x = zeros_matrix(n, b.shape[1])
    for i, p in enumerate(pivots):
        for j in range(b.shape[1]):
            x[p, j] = r[i, n + j]
    return x


def integer_rank(m: np.ndarray) -> int:
    """Rank of an integer matrix via fraction-free elimination.

    Rows are renormalized by their gcd after each elimination step, which
    keeps entries near the size of the structured inputs this package
    produces.  Only the rank is computed, so the gcd scaling is harmless.
    """
    rows = [list(map(int, m[i])) for i in range(m.shape[0])]
    ncols = m.shape[1]
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < ncols:
        piv = None
        best = None
        for i in range(rank, nrows):
            v = rows[i][col]
            if v != 0 and (best is None or abs(v) < best):
                piv, best = i, abs(v)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pval = prow[col]
        for i in range(rank + 1, nrows):
            v = rows[i][col]
            if v == 0:
                continue
            ri = rows[i]
            g = gcd(v, pval)
            a, b = pval // g, v // g
            new = [a * x - b * y for x, y in zip(ri, prow)]
            h = 0
            for x in new:
                h = gcd(h, x)
                if h == 1:
                    break
            if h > 1:
                new = [x // h for x in new]
            rows[i] = new
        rank += 1
        col += 1
    return rank


def matrix_rank(m: np.ndarray) -> int:
    """Exact rank; integer matrices take the fraction-free path."""
    if m.size == 0:
        return 0
    if all(isinstance(x, (int, np.integer)) for _, x in np.ndenumerate(m)):
        return integer_rank(m)
    return len(rref(m)[1])


# ---------------------------------------------------------------------------
# integer lattice computations


def smith_normal_form(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form by tracked elementary operations.

    Returns unimodular ``U`` (rows ops) and ``V`` (column ops) and diagonal
    ``D`` with ``U @ A @ V = D``, nonnegative diagonal entries and
    ``D[i,i] | D[i+1,i+1]``.
    """
    m, n = a.shape
    d = [[_as_int(a[i, j]) for j in range(n)] for i in range(m)]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < m and t < n:
        piv = min(
            ((abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]),
            default=None,
        )
        if piv is None:
            break
        _, pi, pj = piv
        swap_rows(t, pi)
        swap_cols(t, pj)
        dirty = False
        for i in range(t + 1, m):
            if d[i][t]:
                q = d[i][t] // d[t][t]
                add_row(i, t, -q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if d[t][j]:
                q = d[t][j] // d[t][t]
                add_col(j, t, -q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue
        witness = next(
            ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
            None,
        )
        if witness is not None:
            add_row(t, witness[0], 1)
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    um = integer_matrix(u, m)
    vm = integer_matrix(v, n)
    dm = integer_matrix(d, n)
    assert mat_eq(mat_mul(mat_mul(um, a), vm), dm)
    return um, dm, vm


def hermite_rows(rows, width: int) -> list[tuple[int, ...]]:
    """Canonical row Hermite basis of the lattice generated by ``rows``."""
    work = [list(map(_as_int, r)) for r in rows]
    basis: list[list[int]] = []
    col = 0
    while col < width:
        live = [r for r in work if r[col] != 0]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            small = live[0]
            for r in live[1:]:
                q = r[col] // small[col]
                for k in range(width):
                    r[k] -= q * small[k]
            live = [r for r in live if r[col] != 0]
        pivot_row = live[0]
        work = [r for r in work if r is not pivot_row and any(r)]
        if pivot_row[col] < 0:
            pivot_row = [-x for x in pivot_row]
        for b in basis:
            if b[col]:
                q = b[col] // pivot_row[col]
                for k in range(width):
                    b[k] -= q * pivot_row[k]
        basis.append(list(pivot_row))
        col += 1
    return [tuple(r) for r in basis]


def integer_kernel_rows(a: np.ndarray) -> list[tuple[int, ...]]:
    """Canonical basis of the saturated lattice {x in Z^n : A x = 0}."""
    m, n = a.shape
    if m == 0:
        return [tuple(identity_matrix(n)[i]) for i in range(n)]
    _, d, v = smith_normal_form(a)
    r = sum(1 for i in range(min(m, n)) if d[i, i] != 0)
    cols = [tuple(int(v[i, j]) for i in range(n)) for j in range(r, n)]
    return hermite_rows(cols, n)


def saturation_rows(rows, width: int) -> list[tuple[int, ...]]:
    """Canonical basis of span_Q(rows) intersected with Z^width."""
    mat = integer_matrix(rows, width)
    perp = integer_kernel_rows(mat)
    return integer_kernel_rows(integer_matrix(perp, width))


def lattice_index(sub_rows, super_rows, width: int):
    """Index of the group generated by ``sub_rows`` inside the one generated
    by ``super_rows``.

    Returns a positive int, or :data:`INFINITE` when the ranks differ.
    Raises SPAN_VIOLATION if the sub generators leave the rational span of
    the super generators, and a plain ValueError if they are in the span but
    not in the group (the index is not a group order then).
    """
    sub = integer_matrix(sub_rows, width)
    sup = integer_matrix(super_rows, width)
    basis = hermite_rows(super_rows, width)
    bmat = integer_matrix(basis, width)
    coords = solve_matrix(
        bmat.T if basis else zeros_matrix(width, 0),
        sub.T,
    )
    if coords is None:
        raise SpanViolation("sub generators leave the span of the super lattice")
    rank_sub = matrix_rank(sub)
    rank_sup = len(basis)
    if rank_sub < rank_sup:
        return INFINITE
    try:
        cmat = integer_matrix(coords.T.tolist(), len(basis))
    except ValueError:
        raise ValueError("sub generators are not in the super lattice") from None
    _, d, _ = smith_normal_form(cmat)
    diag = [int(d[i, i]) for i in range(min(d.shape)) if d[i, i] != 0]
    assert len(diag) == rank_sup
    idx = 1
    for x in diag:
        idx *= abs(x)
    return idx


def primitive_vector(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    w = [_as_int(x) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("cannot primitivize the zero vector")
    return tuple(x // g for x in w)


def reduce_mod_rows(v, basis_rows) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo the lattice spanned by a
    Hermite basis: at each pivot column the entry lands in [0, pivot)."""
    w = [_as_int(x) for x in v]
    for row in basis_rows:
        pc = next(i for i, x in enumerate(row) if x != 0)
        q = w[pc] // row[pc]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return tuple(w)


def solve_unit_pairing(w) -> tuple[int, ...]:
    """Integer y with <w, y> = 1; requires gcd of w to be 1."""
    g = 0
    coeff: list[int] = [0] * len(w)
    for i, wi in enumerate(w):
        wi = _as_int(wi)
        if wi == 0:
            continue
        if g == 0:
            g = abs(wi)
            coeff = [0] * len(w)
            coeff[i] = 1 if wi > 0 else -1
            continue
        # extended euclid on (g, wi)
        old_r, r = g, wi
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeff = [old_s * c for c in coeff]
        coeff[i] += old_t
        g = old_r
        if g == 1:
            break
    if g != 1:
        raise ValueError(f"pairing vector is not primitive (gcd {g})")
    assert sum(a * _as_int(b) for a, b in zip(coeff, w)) == 1
    return tuple(coeff)


# ---------------------------------------------------------------------------
# strict rational feasibility (phase-I simplex)


def nonnegative_combination(columns, target) -> list[Fraction] | None:
    """Solve ``sum_j lam_j columns[j] = target`` with ``lam >= 0`` exactly.

    Phase-I simplex with Bland's rule over Fractions; returns one feasible
    coefficient vector or None.  Intended for the small systems that cone
    geometry produces (dozens of columns, single-digit rows).
    """
    cols = [list(map(Fraction, c)) for c in columns]
    b = [Fraction(x) for x in target]
    m = len(b)
    k = len(cols)
    if any(len(c) != m for c in cols):
        raise ValueError("column length mismatch")
    # rows with negative rhs get negated so artificial start is feasible
    tab = [[cols[j][i] for j in range(k)] for i in range(m)]
    for i in range(m):
        if b[i] < 0:
            tab[i] = [-x for x in tab[i]]
            b[i] = -b[i]
    # append artificial identity
    for i in range(m):
        tab[i] += [Fraction(1) if i == j else Fraction(0) for j in range(m)]
    basis = [k + i for i in range(m)]
    # phase-I objective row: minimize sum of artificials
    z = [Fraction(0)] * (k + m)
    zrhs = Fraction(0)
    for i in range(m):
        z = [a - c for a, c in zip(z, tab[i])]
        zrhs -= b[i]
    for j in range(k, k + m):
        z[j] += 1

    while True:
        enter = next((j for j in range(k + m) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = b[i] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # unbounded phase-I cannot happen (objective bounded below by 0)
            raise AssertionError("phase-I simplex unbounded")
        _, row = best
        piv = tab[row][enter]
        tab[row] = [x / piv for x in tab[row]]
        b[row] /= piv
        for i in range(m):
            if i != row and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[row])]
                b[i] -= f * b[row]
        if z[enter] != 0:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, tab[row])]
            zrhs -= f * b[row]
        basis[row] = enter

    if zrhs != 0:
        return None
    lam = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            lam[var] = b[i]
        elif b[i] != 0:
            return None
    return lam


# ---------------------------------------------------------------------------
# subspaces and exterior powers


@dataclass(frozen=True)
class SubspaceBasis:
    """An ordered, independent list of vectors in Q^ambient_dim."""

    ambient_dim: int
    vectors: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "vectors", tuple(tuple(v) for v in self.vectors))
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("vector length != ambient dimension")
        if self.vectors:
            if matrix_rank(object_matrix(self.vectors, self.ambient_dim)) != len(self.vectors):
                raise ValueError("vectors are dependent")

    @property
    def dim(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class ExteriorBasis:
    """The induced basis of an exterior power of a subspace.

    Elements are wedges of ``degree`` many basis vectors of ``base``, indexed
    by lexicographically ordered index subsets.
    """

    base: SubspaceBasis
    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative exterior degree")

    @property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.combinations(range(self.base.dim), self.degree))

    @property
    def size(self) -> int:
        return comb(self.base.dim, self.degree) if self.degree <= self.base.dim else 0


def _det(mat: list[list]) -> Fraction:
    n = len(mat)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


@lru_cache(maxsize=None)
def _wedge_coordinates(eb: ExteriorBasis) -> np.ndarray:
    """Coordinates of the wedge basis inside Wedge^k(Q^m), as columns."""
    m = eb.base.ambient_dim
    k = eb.degree
    amb = list(itertools.combinations(range(m), k))
    out = zeros_matrix(len(amb), eb.size)
    for col, js in enumerate(eb.subsets):
        vecs = [eb.base.vectors[j] for j in js]
        for rowi, s in enumerate(amb):
            out[rowi, col] = _norm_scalar(_det([[v[c] for c in s] for v in vecs]))
    return out


@lru_cache(maxsize=None)
def _ambient_contraction(n: tuple, m: int, k: int) -> np.ndarray:
    """Contraction by ``n`` on Wedge^k(Q^m) in coordinate bases."""
    src = list(itertools.combinations(range(m), k))
    dst = {s: i for i, s in enumerate(itertools.combinations(range(m), k - 1))}
    out = zeros_matrix(len(dst), len(src))
    for col, s in enumerate(src):
        for pos, idx in enumerate(s):
            row = dst[s[:pos] + s[pos + 1:]]
            val = out[row, col] + (n[idx] if pos % 2 == 0 else -n[idx])
            out[row, col] = _norm_scalar(val)
    return out


def contraction_matrix(n, source: ExteriorBasis, target: ExteriorBasis) -> np.ndarray:
    """Matrix of contraction by the vector ``n`` from ``source`` to ``target``.

    On a wedge of basis covectors a_1 ^ ... ^ a_k the contraction is
    ``sum_i (-1)^(i+1) <n, a_i> a_1 ^ ... ^ (omit a_i) ^ ... ^ a_k``.
    Raises NOT_CONTAINED when the image leaves the span of the target basis.
    """
    if source.base.ambient_dim != target.base.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if target.degree != source.degree - 1:
        raise ValueError("target degree must be source degree - 1")
    if len(n) != source.base.ambient_dim:
        raise ValueError("vector length mismatch")
    amb = _ambient_contraction(tuple(n), source.base.ambient_dim, source.degree)
    image = mat_mul(amb, _wedge_coordinates(source))
    x = solve_matrix(_wedge_coordinates(target), image)
    if x is None:
        raise NotContained("contracted forms leave the target exterior basis span")
    for idx, val in np.ndenumerate(x):
        x[idx] = _norm_scalar(val)
    return x


def expansion_matrix(source: ExteriorBasis, target: ExteriorBasis) -> np.ndarray:
    """Matrix of the identity inclusion of one exterior basis into another."""
    if source.base.ambient_dim != target.base.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if source.degree != target.degree:
        raise ValueError("degree mismatch")
    x = solve_matrix(_wedge_coordinates(target), _wedge_coordinates(source))
    if x is None:
        raise NotContained("source wedge space is not inside the target span")
    for idx, val in np.ndenumerate(x):
        x[idx] = _norm_scalar(val)
    return x
