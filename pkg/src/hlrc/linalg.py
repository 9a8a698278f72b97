"""Exact dense linear algebra over a finite field.

Matrices hold integer element reps in a numpy int64 array; every row
operation goes through the field's vectorized arithmetic, so results are
exact.  This is the engine behind encoding, erasure decoding and distance
verification; everything here is pure and the largest in-scope matrix
(144 x 1680) reduces in well under a second.
"""

from __future__ import annotations

import numpy as np

from .galois import Field


class Mat:
    """Dense matrix over a finite field (entries are integer reps)."""

    def __init__(self, field: Field, data):
        self.field = field
        a = np.asarray(data, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= field.q):
            raise ValueError("entry out of range for field")
        self.a = a

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zero(cls, field: Field, r: int, c: int) -> "Mat":
        return cls(field, np.zeros((r, c), dtype=np.int64))

    @classmethod
    def random(cls, field: Field, r: int, c: int, rng) -> "Mat":
        return cls(field, [[rng.randrange(field.q) for _ in range(c)] for _ in range(r)])

    def copy(self) -> "Mat":
        return Mat(self.field, self.a.copy())

    def take_cols(self, cols) -> "Mat":
        return Mat(self.field, self.a[:, list(cols)])

    def take_rows(self, rows) -> "Mat":
        return Mat(self.field, self.a[list(rows), :])

    def transpose(self) -> "Mat":
        return Mat(self.field, self.a.T.copy())

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.a.shape == other.a.shape
            and bool((self.a == other.a).all())
        )

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols} over {self.field!r})"

    def tolist(self):
        return self.a.tolist()


def _eliminate(field: Field, work: np.ndarray) -> list[int]:
    """In-place Gauss-Jordan reduction; returns pivot column list."""
    rows, cols = work.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(work[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            work[[r, pr]] = work[[pr, r]]
        inv = field.inv(int(work[r, c]))
        if inv != 1:
            work[r] = field.vmul(np.int64(inv), work[r])
        col = work[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            work[hit] = field.vsub(work[hit], field.vmul(col[hit, None], work[r][None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rref(mat: Mat, transform: bool = False):
    """Reduced row-echelon form.

    Returns (R, pivots) or, with transform=True, (R, pivots, T) where T is an
    invertible rows x rows matrix with T @ mat = R.
    """
    field = mat.field
    if transform:
        work = np.concatenate([mat.a.copy(), np.eye(mat.rows, dtype=np.int64)], axis=1)
        pivots = _eliminate_limited(field, work, mat.cols)
        return (
            Mat(field, work[:, : mat.cols]),
            pivots,
            Mat(field, work[:, mat.cols:]),
        )
    work = mat.a.copy()
    pivots = _eliminate(field, work)
    return Mat(field, work), pivots


def _eliminate_limited(field: Field, work: np.ndarray, ncols: int) -> list[int]:
    """Gauss-Jordan on an augmented matrix, choosing pivots only among the
    first ncols columns."""
    rows = work.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(work[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            work[[r, pr]] = work[[pr, r]]
        inv = field.inv(int(work[r, c]))
        if inv != 1:
            work[r] = field.vmul(np.int64(inv), work[r])
        col = work[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            work[hit] = field.vsub(work[hit], field.vmul(col[hit, None], work[r][None, :]))
        pivots.append(c)
        r += 1
    return pivots


def rank(mat: Mat) -> int:
    work = mat.a.copy()
    return len(_eliminate(mat.field, work))


def row_space_basis(mat: Mat) -> Mat:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    r, pivots = rref(mat)
    return Mat(mat.field, r.a[: len(pivots), :])


def solve(a: Mat, b) -> np.ndarray | None:
    """One exact solution x of a @ x = b, or None if inconsistent.

    Free variables are set to zero (first-pivot parameterization).
    """
    field = a.field
    bvec = np.asarray(b, dtype=np.int64).reshape(-1)
    if bvec.shape[0] != a.rows:
        raise ValueError("dimension mismatch in solve")
    work = np.concatenate([a.a.copy(), bvec[:, None]], axis=1)
    pivots = _eliminate_limited(field, work, a.cols)
    r = len(pivots)
    if np.any(work[r:, a.cols]):
        return None
    x = np.zeros(a.cols, dtype=np.int64)
    x[pivots] = work[:r, a.cols]
    return x


def solve_left(a: Mat, b) -> np.ndarray | None:
    """One exact solution y of y @ a = b (row-vector convention)."""
    return solve(a.transpose(), b)


def nullspace_basis(mat: Mat) -> list[np.ndarray]:
    """Basis vectors v with mat @ v = 0."""
    field = mat.field
    r, pivots = rref(mat)
    free = [c for c in range(mat.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = np.zeros(mat.cols, dtype=np.int64)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(int(r.a[i, fc]))
        basis.append(v)
    return basis


def submatrix_rank(mat: Mat, row_set, col_set) -> int:
    work = mat.a[np.ix_(list(row_set), list(col_set))].copy()
    return len(_eliminate(mat.field, work))


def det(mat: Mat) -> int:
    """Determinant via elimination (square matrices only)."""
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    field = mat.field
    work = mat.a.copy()
    n = mat.rows
    d = 1
    for c in range(n):
        nz = np.nonzero(work[c:, c])[0]
        if nz.size == 0:
            return 0
        pr = c + int(nz[0])
        if pr != c:
            work[[c, pr]] = work[[pr, c]]
            d = field.neg(d)
        pivot = int(work[c, c])
        d = field.mul(d, pivot)
        inv = field.inv(pivot)
        work[c] = field.vmul(np.int64(inv), work[c])
        col = work[:, c].copy()
        col[: c + 1] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            work[hit] = field.vsub(work[hit], field.vmul(col[hit, None], work[c][None, :]))
    return d


def matmul(a: Mat, b: Mat) -> Mat:
    """Exact product via base-p digit decomposition and integer matmul.

    Field multiplication is bilinear over GF(p), so A@B decomposes into m^2
    integer matrix products recombined through the reduction of x^(d+e) mod
    the field modulus.  Intermediate sums stay far below 2^63.
    """
    if a.field != b.field:
        raise ValueError("matrix product across different fields")
    if a.cols != b.rows:
        raise ValueError("dimension mismatch in matmul")
    field = a.field
    p, m = field.p, field.m
    if m == 1:
        return Mat(field, (a.a @ b.a) % p)
    powers = field._p_powers
    a_digs = [(a.a // pw) % p for pw in powers]
    b_digs = [(b.a // pw) % p for pw in powers]
    # x^s mod modulus as digit vectors, for s up to 2m-2
    red = []
    for s in range(2 * m - 1):
        rep = field.pow(field.p, s) if s > 0 else 1
        # rep of x^s: x has rep p
        red.append([(rep // pw) % p for pw in powers])
    out_digs = [np.zeros((a.rows, b.cols), dtype=np.int64) for _ in range(m)]
    for d in range(m):
        for e in range(m):
            prod = a_digs[d] @ b_digs[e]
            coeffs = red[d + e]
            for f_i in range(m):
                if coeffs[f_i]:
                    out_digs[f_i] += coeffs[f_i] * prod
    out = np.zeros((a.rows, b.cols), dtype=np.int64)
    for f_i, pw in enumerate(powers):
        out += (out_digs[f_i] % p) * pw
    return Mat(field, out)


def mat_vec(a: Mat, v) -> np.ndarray:
    """a @ v for a rep vector v."""
    col = Mat(a.field, np.asarray(v, dtype=np.int64).reshape(-1, 1))
    return matmul(a, col).a[:, 0]


def vec_mat(v, a: Mat) -> np.ndarray:
    """v @ a for a rep vector v (codeword encoding convention)."""
    row = Mat(a.field, np.asarray(v, dtype=np.int64).reshape(1, -1))
    return matmul(row, a).a[0, :]
