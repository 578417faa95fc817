"""Points of zero-dimensional homogeneous ideals.

Everything works in a single graded piece: for a zero-dimensional
homogeneous ideal of degree n, pick a degree r with ``HF(r) = HF(r+1) = n``.
Multiplication by a linear form maps A_r to A_{r+1} (A = S/I), and on
evaluation functionals it acts by the value of the form at each point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from ..exactla import Matrix, det, left_kernel
from ..ring import QQ, PrimeField
from .ideal import GroebnerBasis


class PreconditionError(ValueError):
    """The ideal does not have the dimension/degree the operation needs."""


def _monomials(n: int, d: int):
    for c in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield tuple(e)


def standard_monomials(G: GroebnerBasis, d: int) -> list:
    """Degree-d monomials outside the leading-term ideal (descending order)."""
    lms = G.leading_monomials()
    out = [m for m in _monomials(G.ring.nvars, d) if not any(all(a <= b for a, b in zip(l, m)) for l in lms)]
    return sorted(out, key=G.order.key, reverse=True)


def _first_stable_degree(G: GroebnerBasis, n: int, start: int = 1) -> int:
    H = G.hilbert_data()
    top = max(p.total_degree() for p in G.polys) + 2
    for r in range(start, top + 50):
        if H.hilbert_function(r) == n and H.hilbert_function(r + 1) == n:
            return r
    raise PreconditionError("Hilbert function did not stabilise")


def extract_rational_point(G: GroebnerBasis):
    """The unique point of a degree-1 zero-dimensional homogeneous ideal.

    The ideal need not be saturated: in any degree D >= 1 with Hilbert
    function 1 there is a single standard monomial m0 and NF(m) = c_m m0, so
    ``P_j / P_i = c(x_i^(D-1) x_j) / c(x_i^D)`` for any i with c(x_i^D) != 0.
    Returns the point normalised so that its first nonzero coordinate is 1.
    """
    H = G.hilbert_data()
    if H.dimension != 0 or H.degree != 1:
        raise PreconditionError(f"expected a single point, got dimension {H.dimension} degree {H.degree}")
    F = G.ring.field
    n = G.ring.nvars
    linear = [p for p in G.polys if p.total_degree() == 1]
    if len(linear) == n - 1:
        M = Matrix(F, [[p.coeff(tuple(int(i == j) for i in range(n))) for j in range(n)] for p in linear])
        from ..exactla import kernel

        ker = kernel(M)
        return _normalise(F, ker[0])
    D = _first_stable_degree(G, 1)
    R = G.ring

    def c(e):
        nf = G.reduce(R.monomial(e))
        terms = nf.as_dict()
        if len(terms) > 1:
            raise PreconditionError("more than one standard monomial in stable degree")
        return next(iter(terms.values())) if terms else F.zero

    for i in range(n):
        e = tuple(D if k == i else 0 for k in range(n))
        ci = c(e)
        if ci != 0:
            pt = []
            for j in range(n):
                ej = list(e)
                ej[i] -= 1
                ej[j] += 1
                pt.append(F.div(c(tuple(ej)), ci))
            return _normalise(F, pt)
    raise PreconditionError("no coordinate of the point is nonzero")


def _normalise(F, v):
    v = [F(x) for x in v]
    k = next(i for i, x in enumerate(v) if x != 0)
    inv = F.inv(v[k])
    return tuple(F.mul(x, inv) for x in v)


@dataclass
class MultiplicationData:
    """Multiplication maps A_r -> A_{r+1} in standard-monomial bases."""

    degree: int
    r: int
    basis_r: list
    basis_r1: list
    maps: dict  # variable index or 'l0'/'l1' -> Matrix (rows: basis_r1, cols: basis_r)


def multiplication_maps(G: GroebnerBasis, forms=None) -> MultiplicationData:
    """Matrices of multiplication by each variable (and extra linear forms)."""
    H = G.hilbert_data()
    if H.dimension != 0:
        raise PreconditionError(f"ideal is not zero-dimensional (dimension {H.dimension})")
    n = H.degree
    r = _first_stable_degree(G, n)
    R = G.ring
    F = R.field
    B = standard_monomials(G, r)
    B1 = standard_monomials(G, r + 1)
    idx1 = {m: k for k, m in enumerate(B1)}
    # NF of every degree-(r+1) monomial x_j * b, shared by all linear forms
    nf = {}
    for b in B:
        for j in range(R.nvars):
            e = list(b)
            e[j] += 1
            e = tuple(e)
            if e not in nf:
                nf[e] = G.reduce(R.monomial(e)).as_dict()

    def mat(lin):
        cols = []
        for b in B:
            col = [F.zero] * len(B1)
            for j, a in enumerate(lin):
                if a == 0:
                    continue
                e = list(b)
                e[j] += 1
                for m, c in nf[tuple(e)].items():
                    col[idx1[m]] = F.add(col[idx1[m]], F.mul(a, c))
            cols.append(col)
        return Matrix(F, [list(r_) for r_ in zip(*cols)])

    maps = {}
    for j in range(R.nvars):
        maps[j] = mat([int(k == j) for k in range(R.nvars)])
    for name, lin in (forms or {}).items():
        maps[name] = mat(lin)
    return MultiplicationData(n, r, B, B1, maps)


def _interpolate(F, xs, ys) -> list:
    """Coefficients (low to high) of the polynomial through the points."""
    n = len(xs)
    coeffs = [F.zero] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        num = [F.one]
        den = F.one
        for j in range(n):
            if j == i:
                continue
            num = [F.sub(a, F.mul(xs[j], b)) for a, b in zip([F.zero] + num, num + [F.zero])]
            den = F.mul(den, F.sub(xs[i], xs[j]))
        s = F.div(ys[i], den)
        coeffs = [F.add(c, F.mul(s, v)) for c, v in zip(coeffs, num)]
    return coeffs


def eliminant(G: GroebnerBasis, l0, l1, data: MultiplicationData | None = None):
    """Binary form E(s, t) = det(t M_l0 - s M_l1) of degree ``deg I``.

    E vanishes at (l0(P) : l1(P)) for every point P, with multiplicity.
    Returned as coefficients ``e_0..e_n`` of ``sum e_i s^(n-i) t^i``.
    """
    data = data or multiplication_maps(G, {"l0": l0, "l1": l1})
    if "l0" not in data.maps:
        data = multiplication_maps(G, {"l0": l0, "l1": l1})
    F = G.ring.field
    n = data.degree
    M0, M1 = data.maps["l0"], data.maps["l1"]
    # E(1, t) = det(t M0 - M1) has degree <= n; E(0, 1) = det(M0) is its top coefficient
    xs = [F(k) for k in range(n + 1)]
    ys = [det(M0.scale(x) - M1) for x in xs]
    low_to_high = _interpolate(F, xs, ys)
    # coefficient of t^i in E(1, t) is e_i
    return tuple(low_to_high)


def binary_form_roots(F, e) -> list:
    """Projective roots (s : t) over the base field of ``sum e_i s^(n-i) t^i``.

    Over Z/p every t is tested (vectorised); over Q rational roots come from
    sympy's factorisation.
    """
    n = len(e) - 1
    roots = []
    # s = 0  <=>  top coefficient e_n vanishes
    if e[n] == 0:
        roots.append((F.zero, F.one))
    if isinstance(F, PrimeField):
        p = F.p
        ts = np.arange(p, dtype=np.int64)
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed(e):
            acc = (acc * ts + int(c)) % p
        for t in np.nonzero(acc == 0)[0]:
            roots.append((F.one, F(int(t))))
        return roots
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * t**i for i, c in enumerate(e)), t)
    if poly.is_zero:
        raise PreconditionError("eliminant vanishes identically")
    for fac, _ in sympy.factor_list(poly.as_expr(), t)[1]:
        fp = sympy.Poly(fac, t)
        if fp.degree() == 1:
            a, b = fp.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.append((F.one, QQ(r.p) / r.q))
    return roots


def is_squarefree_binary(F, e) -> bool:
    """Squarefreeness of the binary form (no repeated projective root)."""
    import sympy

    t = sympy.Symbol("t")
    if isinstance(F, PrimeField):
        poly = sympy.Poly([int(c) for c in reversed(e)], t, modulus=F.p)
    else:
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(e)], t, domain="QQ")
    n = len(e) - 1
    if poly.degree() < n - 1:
        return False  # root at s = 0 of multiplicity >= 2
    g = sympy.gcd(poly, poly.diff(t))
    return g.degree() == 0


def rational_points(G: GroebnerBasis, l0=None, l1=None, seed: int = 0) -> list:
    """Points of a zero-dimensional ideal defined over the base field.

    Only points whose projection (l0 : l1) is a simple root of the eliminant
    are returned, which for a generic projection is every rational point of
    a reduced ideal.
    """
    R = G.ring
    F = R.field
    rng = random.Random(seed)
    if l0 is None:
        l0 = [F(rng.randint(1, 97)) for _ in range(R.nvars)]
    if l1 is None:
        l1 = [F(rng.randint(1, 97)) for _ in range(R.nvars)]
    data = multiplication_maps(G, {"l0": l0, "l1": l1})
    e = eliminant(G, l0, l1, data)
    pts = []
    for s, t in binary_form_roots(F, e):
        # (l0(P) : l1(P)) = (s : t)  <=>  w (t M0 - s M1) = 0
        A = data.maps["l0"].scale(t) - data.maps["l1"].scale(s)
        ker = left_kernel(A)
        if len(ker) != 1:
            continue
        w = ker[0]
        vecs = []
        for j in range(R.nvars):
            Mj = data.maps[j]
            vecs.append([F.normalize(sum(w[a] * Mj.rows[a][b] for a in range(len(w)))) for b in range(Mj.ncols)])
        b = next((k for k in range(len(vecs[0])) if any(v[k] != 0 for v in vecs)), None)
        if b is None:
            continue
        pt = _normalise(F, [v[b] for v in vecs])
        # sanity: the point must satisfy every generator
        if all(g.evaluate(pt) == 0 for g in G.polys):
            pts.append(pt)
    return pts
