"""Exact dense linear algebra over Q and Z/p.

Matrices are :class:`Matrix` values holding rows of field elements.  Scalar
determinants use Bareiss elimination on integers over Q (after clearing
denominators) and plain Gaussian elimination over Z/p.  Large prime-field
eliminations go through a vectorised numpy path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .ring import QQ, MultiPoly, PrimeField

NUMPY_THRESHOLD = 40 * 40


class InconsistentSystemError(ValueError):
    """The linear system has no solution."""


class UnderdeterminedSystemError(ValueError):
    """The linear system has more than one solution."""


@dataclass(frozen=True)
class Matrix:
    field: object
    rows: tuple

    def __init__(self, field, rows: Sequence[Sequence]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", tuple(tuple(field(v) for v in r) for r in rows))
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, field, values) -> "Matrix":
        n = len(values)
        return cls(field, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        n = self.nrows
        return self.is_square() and all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.rows)))

    def __matmul__(self, other):
        F = self.field
        if isinstance(other, Matrix):
            cols = list(zip(*other.rows))
            return Matrix(F, [[F.normalize(sum(a * b for a, b in zip(r, c))) for c in cols] for r in self.rows])
        return [F.normalize(sum(a * F(b) for a, b in zip(r, other))) for r in self.rows]

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F(c)
        return Matrix(F, [[F.mul(v, c) for v in r] for r in self.rows])

    def __sub__(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __add__(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for j in cols] for i in rows])

    def minor(self, i: int, j: int) -> "Matrix":
        n, m = self.shape
        return self.submatrix([r for r in range(n) if r != i], [c for c in range(m) if c != j])

    def to_field(self, field) -> "Matrix":
        return Matrix(field, self.rows)


def _require_square(M: Matrix):
    if not M.is_square():
        raise ValueError(f"matrix is not square: {M.shape}")


# --------------------------------------------------------------------------
# determinants
# --------------------------------------------------------------------------


def det(M: Matrix):
    """Exact determinant."""
    _require_square(M)
    n = M.nrows
    if n == 0:
        return M.field.one
    if M.field == QQ:
        return _det_rational(M.rows)
    return _det_mod(M.rows, M.field.p)


def _det_rational(rows) -> Fraction:
    scale = Fraction(1)
    ints = []
    for r in rows:
        d = 1
        for v in r:
            d = lcm(d, v.denominator)
        scale /= d
        ints.append([int(v * d) for v in r])
    return scale * bareiss_det(ints)


def bareiss_det(a: list) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(r) for r in a]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi = a[i]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_mod(rows, p: int) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    d = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] % p), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        akk = a[k][k] % p
        d = d * akk % p
        inv = pow(akk, -1, p)
        rowk = a[k]
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                rowi = a[i]
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] - f * rowk[j]) % p
    return d % p


def cofactor_det(rows: Sequence[Sequence]):
    """Determinant by cofactor expansion; entries may be MultiPolys (n <= 6)."""
    n = len(rows)
    if n > 6:
        raise ValueError("cofactor expansion is limited to 6x6")
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if isinstance(a, MultiPoly) and a.is_zero():
            continue
        if not isinstance(a, MultiPoly) and a == 0:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * cofactor_det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


# --------------------------------------------------------------------------
# elimination
# --------------------------------------------------------------------------


def rref(M: Matrix):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    F = M.field
    if isinstance(F, PrimeField) and M.nrows * M.ncols >= NUMPY_THRESHOLD and F.p < (1 << 31):
        return _rref_numpy(M.rows, F.p)
    a = [list(r) for r in M.rows]
    nr, nc = M.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(v, inv) for v in a[r]]
        rowr = a[r]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], rowr)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_numpy(rows, p: int):
    a = np.array([[int(v) for v in r] for r in rows], dtype=np.int64) % p
    nr, nc = a.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        idx = np.nonzero(col)[0]
        if idx.size:
            a[idx] = (a[idx] - np.outer(col[idx], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return [[int(v) for v in row] for row in a[:r]], pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def kernel(M: Matrix) -> list:
    """Basis of the right kernel, itself in reduced row echelon form."""
    F = M.field
    nc = M.ncols
    rows, pivots = rref(M)
    free = [c for c in range(nc) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [F.zero] * nc
        v[fcol] = F.one
        for r, pc in zip(rows, pivots):
            v[pc] = F.neg(r[fcol])
        basis.append(v)
    if not basis:
        return basis
    return [list(r) for r in rref(Matrix(F, basis))[0]]


def left_kernel(M: Matrix) -> list:
    return kernel(M.transpose())


def solve(M: Matrix, b: Sequence):
    """Unique solution ``x`` of ``M x = b``.

    Raises :class:`InconsistentSystemError` when no solution exists and
    :class:`UnderdeterminedSystemError` when it is not unique.
    """
    F = M.field
    b = [F(v) for v in b]
    if len(b) != M.nrows:
        raise ValueError("shape mismatch")
    aug = Matrix(F, [list(r) + [v] for r, v in zip(M.rows, b)])
    rows, pivots = rref(aug)
    nc = M.ncols
    if nc in pivots:
        raise InconsistentSystemError("inconsistent linear system")
    if len(pivots) < nc:
        raise UnderdeterminedSystemError(f"solution space has dimension {nc - len(pivots)}")
    x = [F.zero] * nc
    for r, pc in zip(rows, pivots):
        x[pc] = r[nc]
    return x


def inverse(M: Matrix) -> Matrix:
    _require_square(M)
    F = M.field
    n = M.nrows
    aug = Matrix(F, [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(M.rows)])
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix(F, [r[n:] for r in rows])


def adjugate(M: Matrix) -> Matrix:
    """Classical adjoint: ``M @ adjugate(M) == det(M) * I``."""
    _require_square(M)
    F = M.field
    n = M.nrows
    if n == 1:
        return Matrix(F, [[1]])
    d = det(M)
    if d != 0:
        return inverse(M).scale(d)
    r = rank(M)
    if r < n - 1:
        return Matrix(F, [[0] * n for _ in range(n)])
    # rank n-1: adj = lam * u v^t with M u = 0 and v^t M = 0
    u = kernel(M)[0]
    v = left_kernel(M)[0]
    i = next(k for k in range(n) if u[k] != 0)
    j = next(k for k in range(n) if v[k] != 0)
    # adj[i][j] = (-1)^(i+j) det(M without row j and column i)
    cof = det(M.minor(j, i))
    if (i + j) % 2:
        cof = F.neg(cof)
    lam = F.div(cof, F.mul(u[i], v[j]))
    return Matrix(F, [[F.mul(lam, F.mul(u[a], v[b])) for b in range(n)] for a in range(n)])
