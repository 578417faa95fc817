import random
from fractions import Fraction

import pytest

from luroth import fixtures
from luroth.exactla import (
    InconsistentSystemError,
    Matrix,
    UnderdeterminedSystemError,
    adjugate,
    cofactor_det,
    det,
    inverse,
    kernel,
    left_kernel,
    rank,
    rref,
    solve,
)
from luroth.invariants import build_L, catalecticant
from luroth.ring import GF, QQ, PolyRing

LARGE = GF(2147483629)


def _random_matrix(F, rng, n, m=None, bound=9):
    m = m or n
    return Matrix(F, [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)])


def _singular_matrix(F, rng, n, r):
    A = _random_matrix(F, rng, n, r)
    B = _random_matrix(F, rng, r, n)
    return A @ B


def test_adjugate_of_diagonal():
    assert adjugate(Matrix.diag(QQ, [2, 3])) == Matrix.diag(QQ, [3, 2])


def test_non_square_rejected():
    M = Matrix(QQ, [[1, 2, 3], [4, 5, 6]])
    with pytest.raises(ValueError):
        det(M)
    with pytest.raises(ValueError):
        adjugate(M)


# n = 50 exceeds the threshold for the numpy elimination path over Z/p
@pytest.mark.parametrize(
    "F,n,count",
    [(QQ, 4, 100), (GF(65521), 4, 100), (LARGE, 5, 100), (GF(65521), 50, 3), (QQ, 15, 5)],
    ids=["QQ-4", "GF65521-4", "GF2^31-5", "GF65521-50-numpy", "QQ-15"],
)
def test_adjugate_identity(F, n, count):
    rng = random.Random(n * 7 + count)
    for _ in range(count):
        M = _random_matrix(F, rng, n)
        d = det(M)
        assert M @ adjugate(M) == Matrix.identity(F, n).scale(d)


def test_adjugate_is_det_times_inverse():
    rng = random.Random(3)
    M = _random_matrix(QQ, rng, 5)
    assert det(M) != 0
    assert adjugate(M) == inverse(M).scale(det(M))


def test_rank_plus_nullity(field):
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 7)
        r = rng.randint(1, n - 1)
        M = _singular_matrix(field, rng, n, r)
        K = kernel(M)
        assert rank(M) + len(K) == n
        for v in K:
            assert all(x == 0 for x in M @ v)


def test_equal_rows_give_zero_det(field):
    rng = random.Random(9)
    for n in range(2, 8):
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n - 1)]
        rows.append(list(rows[0]))
        assert det(Matrix(field, rows)) == 0


def test_det_backends_agree():
    rng = random.Random(17)
    for n in range(1, 7):
        M = _random_matrix(QQ, rng, n)
        assert cofactor_det(M.rows) == det(M)
    R = PolyRing(QQ, 2, ("s", "t"))
    s, t = R.gens()
    # det [[s, t], [t, s]]
    assert cofactor_det([[s, t], [t, s]]) == s * s - t * t


def test_rational_det_with_fractions():
    M = Matrix(QQ, [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]])
    assert det(M) == Fraction(1, 10) - Fraction(1, 12)


def test_kernel_is_reduced_echelon():
    M = Matrix(QQ, [[1, 2, 3, 4], [2, 4, 6, 8]])
    K = kernel(M)
    assert len(K) == 3
    R, pivots = rref(Matrix(QQ, K))
    assert Matrix(QQ, K) == Matrix(QQ, R)


def test_fermat_catalecticant_kernel():
    K = kernel(catalecticant(fixtures.fermat()))
    # conic basis x^2, xy, xz, y^2, yz, z^2
    assert [tuple(v) for v in K] == [(0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 1, 0)]


def test_desmic_and_caporali_rank_fourteen():
    for f in (fixtures.desmic(), fixtures.caporali()):
        L = build_L(f)
        assert rank(L) == 14
        assert rank(adjugate(L)) == 1


def test_solve_unique_inconsistent_underdetermined():
    M = Matrix(QQ, [[1, 1], [1, -1]])
    assert solve(M, [3, 1]) == [2, 1]
    with pytest.raises(InconsistentSystemError):
        solve(Matrix(QQ, [[1, 1], [2, 2]]), [1, 3])
    with pytest.raises(UnderdeterminedSystemError):
        solve(Matrix(QQ, [[1, 1], [2, 2]]), [1, 2])
    # overdetermined but consistent
    assert solve(Matrix(QQ, [[1, 0], [0, 1], [1, 1]]), [1, 2, 3]) == [1, 2]


def test_left_kernel():
    M = Matrix(GF(101), [[1, 2], [2, 4], [0, 1]])
    for v in left_kernel(M):
        assert all(x == 0 for x in M.transpose() @ v)
    assert len(left_kernel(M)) == 1
