"""Named quartics used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .exactla import Matrix, kernel
from .ring import QQ, TernaryForm, plain_basis


def coordinates(F=QQ):
    return (
        TernaryForm.linear(F, 1, 0, 0),
        TernaryForm.linear(F, 0, 1, 0),
        TernaryForm.linear(F, 0, 0, 1),
    )


PENTALATERAL_LINES = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3))
PENTALATERAL_CONIC = (0, 3, -4, 0, 1, 0)


def luroth_example(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    s = x + y + z
    return x * y * z * s + (x + y.scale(2) + z.scale(3)) * (x * y * z + (x * y + x * z + y * z) * s)


def pentalateral_sum(lines=PENTALATERAL_LINES, weights=None, F=QQ) -> TernaryForm:
    weights = weights or [1] * len(lines)
    out = TernaryForm.zero(F, 4)
    for l, w in zip(lines, weights):
        out = out + (TernaryForm.linear(F, *l) ** 4).scale(w)
    return out


def klein(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    return x**3 * y + y**3 * z + z**3 * x


def fermat(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    return x**4 + y**4 + z**4


def edge(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    return (x**4 + y**4 + z**4).scale(25) - (x**2 * y**2 + x**2 * z**2 + y**2 * z**2).scale(34)


def conic_component(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    return (
        z**2 * (x**2 + y**2)
        + z * (x**3 + y**3)
        - x**3 * y
        + (x**2 * y**2).scale(F(Fraction(1, 2)))
        - x * y**3
    )


def cuspidal(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    return (
        x**4
        + (y**4).scale(2)
        - (x**2 * y**2).scale(34)
        + (x**2 * z**2 + y**2 * z**2 + (x * y * z**2).scale(2))
        + (x**3 * y).scale(41)
        + (y**3 * z).scale(51)
        + (x * y**3).scale(21)
        - (y * z**3).scale(11)
    )


def double_conic(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    q = x**2 + y**2 + z**2
    return q * q


def desmic(a=1, b=1, c=1, m=2, F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    lin = x.scale(a * a - 2 * m * b * c) + y.scale(b * b - 2 * m * c * a) + z.scale(c * c - 2 * m * a * b)
    quart = (
        (x**4).scale(a * a)
        + (y**4).scale(b * b)
        + (z**4).scale(c * c)
        - (y**2 * z**2).scale(2 * b * c)
        - (x**2 * z**2).scale(2 * c * a)
        - (x**2 * y**2).scale(2 * a * b)
    )
    return lin * x * y * z - quart.scale(m * m)


def caporali(F=QQ) -> TernaryForm:
    x, y, z = coordinates(F)
    return x**4 + y**4 + z**4 + (x + y + z) ** 4


# pentalateral with three concurrent lines: x, y and x + y meet at (0:0:1)
L2_LINES = ((1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1), (1, 2, 3))
L2_SEED = 1


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _normalise_point(F, v):
    k = next(i for i in range(3) if v[i] != 0)
    inv = F.inv(F(v[k]))
    return tuple(F.mul(F(c), inv) for c in v)


def l2_singular(F=QQ, seed: int = L2_SEED) -> TernaryForm:
    """A quartic through the vertices of a pentalateral with a triple point.

    The lines x, y, x+y are concurrent, so the pentalateral has 8 distinct
    vertices, one of them triple.  The quartic passes through the 7 simple
    vertices and is singular at the triple one; the coefficients are a fixed
    random combination of the 5-dimensional solution space.
    """
    pts = set()
    for a, b in itertools.combinations(L2_LINES, 2):
        pts.add(_normalise_point(F, _cross(a, b)))
    B = plain_basis(4)
    rows = []
    for P in sorted(pts):
        if P == (0, 0, 1):
            # all three partial derivatives vanish at (0:0:1)
            for i in range(3):
                rows.append([e[i] if _is_partial_at_z(e, i) else 0 for e in B])
        else:
            rows.append([F(P[0]) ** e[0] * F(P[1]) ** e[1] * F(P[2]) ** e[2] for e in B])
    K = kernel(Matrix(F, rows))
    rng = random.Random(seed)
    v = [F.zero] * 15
    for k in K:
        c = F(rng.randint(1, 1000))
        v = [F.add(a, F.mul(c, b)) for a, b in zip(v, k)]
    return TernaryForm(F, 4, v)


def _is_partial_at_z(e, i) -> bool:
    # d/dx_i of x^e at (0,0,1) is nonzero only when e - unit_i = (0,0,3)
    ee = list(e)
    if ee[i] == 0:
        return False
    ee[i] -= 1
    return ee[0] == 0 and ee[1] == 0


def random_quartic(F, rng: random.Random, bound: int = 20) -> TernaryForm:
    return TernaryForm(F, 4, [rng.randint(-bound, bound) for _ in range(15)])


def random_line(F, rng: random.Random, bound: int = 9) -> TernaryForm:
    while True:
        c = [rng.randint(-bound, bound) for _ in range(3)]
        if any(c):
            return TernaryForm(F, 1, c)


def bitangent_quartic(F=QQ, rng: random.Random | None = None, bound: int = 9) -> TernaryForm:
    """Quartic for which z = 0 is a bitangent touching at (1:0:0) and (0:1:0).

    On z = 0 the quartic restricts to x^2 y^2, so the bitangent conic is the
    pair of pencils through the two contact points.
    """
    rng = rng or random.Random(0)
    x, y, z = coordinates(F)
    cubic = TernaryForm(F, 3, [rng.randint(-bound, bound) for _ in range(10)])
    return x**2 * y**2 + z * cubic


def conic_lines(rng: random.Random, n: int = 5, bound: int = 5, F=QQ):
    """n random lines whose dual points lie on one smooth rational conic.

    The points are images of (s^2, s t, t^2) under an integer matrix.
    """
    while True:
        M = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        from .exactla import det

        if det(Matrix(F, M)) != 0:
            break
    params = set()
    while len(params) < n:
        s, t = rng.randint(-6, 6), rng.randint(1, 6)
        if s == 0 and t == 0:
            continue
        params.add(Fraction(s, t))
    lines = []
    for r in sorted(params):
        v = (r * r, r, Fraction(1))
        lines.append(tuple(sum(M[i][j] * v[j] for j in range(3)) for i in range(3)))
    return lines


def clebsch_sample(rng: random.Random, F=QQ):
    """``(g, lines, weights)`` with g a sum of five 4th powers on a conic."""
    lines = conic_lines(rng, 5, F=F)
    weights = [rng.choice([1, 2, 3, -1, -2, 5]) for _ in lines]
    return pentalateral_sum(lines, weights, F), lines, weights


NAMED = {
    "luroth": luroth_example,
    "klein": klein,
    "fermat": fermat,
    "edge": edge,
    "conic-component": conic_component,
    "cuspidal": cuspidal,
    "double-conic": double_conic,
    "desmic": desmic,
    "caporali": caporali,
    "l2": l2_singular,
}
