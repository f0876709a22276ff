"""Dense linear algebra over prime fields, plus the distance functions used
throughout: rank distance, subspace distance, injection distance and their
multishot (per-shot summed) extensions.

Matrices over F_q are numpy int64 arrays with entries reduced mod q; the
JSON form records rows, cols, q and the row-major entry list.  A second,
tiny tool set does Gaussian elimination with elements of an arbitrary
field object and is used for systems over extension fields.
"""

from __future__ import annotations

import numpy as np


def as_matrix(m, q: int) -> np.ndarray:
    return np.mod(np.asarray(m, dtype=np.int64), q)


def rref(m, q: int):
    """Reduced row echelon form of a matrix mod prime q.

    Returns (R, pivots) where pivots is the ordered list of pivot column
    indices; row i of R carries the pivot at pivots[i].
    """
    R = as_matrix(m, q).copy()
    rows, cols = R.shape
    pivots = []
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        nz = np.nonzero(R[pr:, c])[0]
        if nz.size == 0:
            continue
        pv = pr + int(nz[0])
        if pv != pr:
            R[[pr, pv]] = R[[pv, pr]]
        inv = pow(int(R[pr, c]), q - 2, q)
        if inv != 1:
            R[pr] = (R[pr] * inv) % q
        col = R[:, c].copy()
        col[pr] = 0
        if np.any(col):
            R = (R - np.outer(col, R[pr])) % q
        pivots.append(c)
        pr += 1
    return R, pivots


def rank(m, q: int) -> int:
    return len(rref(m, q)[1])


def rankdef(m, q: int) -> int:
    """Row-rank deficiency: number of rows minus rank."""
    m = as_matrix(m, q)
    return m.shape[0] - rank(m, q)


_F2_RANK_TABLES: dict = {}


def _f2_rank_table(r: int, c: int) -> np.ndarray:
    key = (r, c)
    tab = _F2_RANK_TABLES.get(key)
    if tab is None:
        n = r * c
        tab = np.empty(1 << n, dtype=np.int64)
        shifts = np.arange(n)
        for idx in range(1 << n):
            bits = (idx >> shifts) & 1
            tab[idx] = rank(bits.reshape(r, c), 2)
        _F2_RANK_TABLES[key] = tab
    return tab


def rank_batch(mats, q: int) -> np.ndarray:
    """Ranks of a stack of matrices, shape (count, r, c) -> (count,).

    Small binary shapes go through a lookup table; everything else falls
    back to one elimination per matrix.
    """
    mats = as_matrix(mats, q)
    if mats.ndim != 3:
        raise ValueError("expected a 3-d stack of matrices")
    count, r, c = mats.shape
    if r == 0 or c == 0:
        return np.zeros(count, dtype=np.int64)
    if q == 2 and r * c <= 12:
        tab = _f2_rank_table(r, c)
        weights = (1 << np.arange(r * c, dtype=np.int64))
        idx = mats.reshape(count, r * c) @ weights
        return tab[idx]
    return np.array([rank(m, q) for m in mats], dtype=np.int64)


class Subspace:
    """Row space of a matrix over F_q, held in canonical (RREF) form.

    Two Subspace objects are equal iff they are literally the same
    subspace of the same ambient space.
    """

    __slots__ = ("q", "ambient", "basis", "_key")

    def __init__(self, matrix, q: int):
        m = as_matrix(matrix, q)
        R, piv = rref(m, q)
        self.q = q
        self.ambient = m.shape[1]
        self.basis = R[: len(piv)]
        self._key = (q, self.ambient, self.basis.shape, self.basis.tobytes())

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        return isinstance(other, Subspace) and other._key == self._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, q={self.q})"


def _check_pair(u: Subspace, v: Subspace):
    if u.q != v.q or u.ambient != v.ambient:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_distance(u: Subspace, v: Subspace) -> int:
    """2 dim(U+V) - dim U - dim V."""
    _check_pair(u, v)
    dim_sum = rank(np.vstack([u.basis, v.basis]), u.q)
    return 2 * dim_sum - u.dim - v.dim


def injection_distance(u: Subspace, v: Subspace) -> int:
    """max(dim U, dim V) - dim(U intersect V)."""
    _check_pair(u, v)
    dim_sum = rank(np.vstack([u.basis, v.basis]), u.q)
    return dim_sum - min(u.dim, v.dim)


def subspace_distance_to_lifted(u_mat: np.ndarray, Y, q: int, y_rank: int | None = None) -> int:
    """Subspace distance between the row space of [I | u_mat] and <Y>.

    Writing Y = [H | P], dim([I|U] + Y) = N + rank(P - H U) because the
    left block of the lifted matrix is a full identity; this avoids
    stacking.  Y may be any matrix with N + M columns.
    """
    n, m = u_mat.shape
    Y = as_matrix(Y, q)
    if Y.shape[1] != n + m:
        raise ValueError("column count mismatch between Y and lifted word")
    h, p = Y[:, :n], Y[:, n:]
    resid = (p - h @ u_mat) % q
    if y_rank is None:
        y_rank = rank(Y, q)
    return int(n + 2 * rank(resid, q) - y_rank)


def rank_distance(field, u, v) -> int:
    """Rank of the coordinate-matrix difference of two words over F_{q^M}."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    q = field.base.size
    diff = (field.underline(v) - field.underline(u)) % q
    return rank(diff, q)


def extended_rank_distance(field, us, vs) -> int:
    if len(us) != len(vs):
        raise ValueError("shot count mismatch")
    return sum(rank_distance(field, u, v) for u, v in zip(us, vs))


def extended_subspace_distance(us, vs) -> int:
    if len(us) != len(vs):
        raise ValueError("shot count mismatch")
    return sum(subspace_distance(u, v) for u, v in zip(us, vs))


def matrix_to_json(m, q: int) -> dict:
    m = as_matrix(m, q)
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "q": q,
        "data": [int(x) for x in m.reshape(-1)],
    }


def matrix_from_json(doc: dict) -> tuple[np.ndarray, int]:
    rows, cols, q = int(doc["rows"]), int(doc["cols"]), int(doc["q"])
    data = doc["data"]
    if len(data) != rows * cols:
        raise ValueError("matrix data length does not match rows*cols")
    m = np.array(data, dtype=np.int64).reshape(rows, cols) % q
    return m, q


# ---------------------------------------------------------------------------
# Gaussian elimination with elements of an arbitrary field object

def rref_field(field, rows):
    """RREF of a list-of-lists matrix over *field*; returns (rows, pivots)."""
    R = [list(r) for r in rows]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots = []
    pr = 0
    for c in range(ncols):
        if pr == nrows:
            break
        pv = next((i for i in range(pr, nrows) if R[i][c] != 0), None)
        if pv is None:
            continue
        R[pr], R[pv] = R[pv], R[pr]
        inv = field.inv(R[pr][c])
        if inv != 1:
            R[pr] = [field.mul(inv, x) for x in R[pr]]
        for i in range(nrows):
            if i != pr and R[i][c] != 0:
                f = R[i][c]
                R[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(R[i], R[pr])]
        pivots.append(c)
        pr += 1
    return R, pivots


def solve_field(field, rows, rhs):
    """Solve A x = b for a full-column-rank A over *field*.

    Returns the solution tuple, or None when the system is inconsistent.
    Raises ValueError if A does not have full column rank.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref_field(field, aug)
    sol = [0] * ncols
    for i, p in enumerate(piv):
        if p == ncols:  # pivot in the constant column: inconsistent
            return None
        sol[p] = R[i][ncols]
    if len([p for p in piv if p < ncols]) < ncols:
        raise ValueError("system is underdetermined")
    return tuple(sol)


def kernel_field(field, rows):
    """Basis of the right null space of a list-of-lists matrix over *field*."""
    ncols = len(rows[0]) if rows else 0
    R, piv = rref_field(field, rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, p in enumerate(piv):
            vec[p] = field.neg(R[i][fc])
        basis.append(tuple(vec))
    return basis
