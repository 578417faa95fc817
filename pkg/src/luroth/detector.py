"""Singular-locus analysis of the White-Miller quartic and Lüroth detection.

The jacobian ideal J of WM_f is studied modulo a working prime (default
65521) with Hilbert-data agreement checked at further primes.  Points of J
are conics: the 28 bitangents give rank-2 conics and pentalateral thetas
give smooth ones, so the quotient by the conic discriminant C separates
them.  In the Lüroth branch the pentalateral conic is lifted to the field of
definition of f by rational reconstruction and every claim about it is then
re-verified exactly in that field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .exactla import (
    InconsistentSystemError,
    Matrix,
    UnderdeterminedSystemError,
    det,
    kernel,
    rank,
    solve,
)
from .groebner.engine import DEFAULT_BUDGET
from .groebner.hilbert import HilbertData
from .groebner.ideal import GroebnerBasis, Ideal, groebner, ideal_quotient, saturation
from .groebner.zerodim import (
    binary_form_roots,
    eliminant,
    extract_rational_point,
    is_squarefree_binary,
    multiplication_maps,
    rational_points,
)
from .invariants import (
    adual,
    apolar_conics,
    bordered_recover,
    build_L,
    catalecticant,
    conic_discriminant,
    conic_discriminant_poly,
    conic_rank,
    conic_ring,
    conic_sqrt,
    conic_square,
    poly_sqrt,
    power,
    singular_conic_point,
    trilinear_A,
    wm_quartic,
)
from .ring import (
    QQ,
    PolyRing,
    PrimeField,
    TernaryForm,
    forms_proportional,
    is_prime,
    order_from_name,
    rational_reconstruction,
    sqrt_rational,
    ternary_ring,
)

DEFAULT_PRIME = 65521
DEFAULT_VERIFY_PRIMES = 2
DEFAULT_HEIGHT_BOUND = 50
BITANGENT_COUNT = 28
LUROTH_DEGREE_IDENTITY = 54  # delta * L

NOT_LUROTH = "NotLuroth"
LUROTH = "Luroth"
INDETERMINATE = "Indeterminate"
INFINITE = "infinite/unknown"


class ConfigurationError(ValueError):
    """Unsupported working field or option."""


class PentalateralError(ValueError):
    """Pentalateral extraction stopped with a partial result.

    ``partial`` holds whatever was computed (l0, alpha0, the kernel conics,
    and the minimal polynomials of the intersection when it does not split).
    """

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial or {}


# --------------------------------------------------------------------------
# result types
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Pentalateral:
    lines: tuple  # five TernaryForm lines, first nonzero coefficient 1
    weights: tuple  # g = sum weights[i] * lines[i]^4
    l0: TernaryForm
    alpha0: object
    kernel_conics: tuple
    vertices_on_curve: bool | None = None

    def as_dict(self) -> dict:
        return {
            "lines": [list(l.coeffs) for l in self.lines],
            "weights": list(self.weights),
            "l0": list(self.l0.coeffs),
            "alpha0": self.alpha0,
            "vertices_on_curve": self.vertices_on_curve,
        }


@dataclass
class Classification:
    tag: str
    diagnostics: dict = field(default_factory=dict)
    conic: TernaryForm | None = None
    pentalateral: Pentalateral | None = None
    clebsch: TernaryForm | None = None
    notes: list = field(default_factory=list)

    @property
    def delta(self):
        return self.diagnostics.get("delta")


@dataclass
class SingularLocus:
    quartic: TernaryForm
    wm: object  # MultiPoly in q0..q5
    ideal: Ideal
    basis: GroebnerBasis
    hilbert: HilbertData


@dataclass
class BitangentIdeal:
    ideal: Ideal
    hilbert: HilbertData
    basis: GroebnerBasis
    eliminant: tuple | None = None
    eliminant_squarefree: bool | None = None
    projection: tuple | None = None
    points: list = field(default_factory=list)  # dicts with conic, line, checks


@dataclass
class ThetaCount:
    """Pentalateral-theta count with all the data it was read from.

    ``value`` is the degree of the single colon ``J : C`` when that ideal is
    zero-dimensional.  ``smooth_points`` is the degree of the full saturation
    by C, the number of singular points that are genuinely smooth conics.
    """

    value: object
    locus: HilbertData
    quotient: HilbertData
    saturation: HilbertData | None
    smooth_points: object

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "locus": self.locus.as_dict(),
            "quotient": self.quotient.as_dict(),
            "saturation": self.saturation.as_dict() if self.saturation else None,
            "smooth_points": self.smooth_points,
        }


# --------------------------------------------------------------------------
# fields and primes
# --------------------------------------------------------------------------


def check_field(F):
    if isinstance(F, PrimeField) and F.p <= 3:
        raise ConfigurationError(f"characteristic {F.p} is not supported (conic matrices need 1/2, WM needs 1/3)")
    return F


def verification_primes(n: int, exclude: int = DEFAULT_PRIME) -> list:
    """The n largest primes below 65521 other than ``exclude``."""
    out = []
    q = DEFAULT_PRIME - 1
    while len(out) < n:
        if is_prime(q) and q != exclude:
            out.append(q)
        q -= 1
    return out


def working_field(f: TernaryForm, field=None):
    if field is None:
        field = f.field if isinstance(f.field, PrimeField) else PrimeField(DEFAULT_PRIME)
    check_field(field)
    if isinstance(f.field, PrimeField) and field != f.field:
        raise ConfigurationError(f"quartic is defined over {f.field}; cannot work over {field}")
    return field


def _reduce_form(f: TernaryForm, F) -> TernaryForm:
    try:
        return f.to_field(F)
    except ZeroDivisionError as exc:
        raise ConfigurationError(f"coefficient denominators vanish modulo {F.p}") from exc


# --------------------------------------------------------------------------
# singular locus
# --------------------------------------------------------------------------


def singular_locus(f: TernaryForm, field=None, order="grevlex", budget=DEFAULT_BUDGET, trace=None) -> SingularLocus:
    """The ideal of the six partials of WM_f, its basis and Hilbert data."""
    F = working_field(f, field)
    fF = _reduce_form(f, F)
    R = conic_ring(F)
    if isinstance(order, str):
        R = R.with_order(order_from_name(order, 6))
    wm = wm_quartic(fF, R)
    if wm.is_zero():
        J = Ideal([R.zero()], R)
    else:
        J = Ideal(wm.gradient(), R)
    G = groebner(J, budget=budget, trace=trace)
    return SingularLocus(fF, wm, J, G, G.hilbert_data())


def _discriminant(R: PolyRing):
    return conic_discriminant_poly(R)


def _quotient_data(locus: SingularLocus, budget, trace, saturate: bool):
    R = locus.ideal.ring
    C = _discriminant(R)
    Q = ideal_quotient(locus.basis.ideal(), C, budget=budget, trace=trace)
    GQ = groebner(Q, budget=budget, trace=trace, known_basis=locus.basis.polys)
    GS = None
    if saturate:
        S = saturation(locus.basis.ideal(), C, budget=budget, trace=trace)
        GS = groebner(S, budget=budget, trace=trace, known_basis=GQ.polys)
    return GQ, GS


def _count_from(H: HilbertData):
    if H.dimension == -1:
        return 0
    if H.dimension == 0:
        return H.degree
    return INFINITE


def count_pentalateral_thetas(
    f: TernaryForm,
    field=None,
    budget=DEFAULT_BUDGET,
    trace=None,
    locus: SingularLocus | None = None,
    saturate: bool = True,
) -> ThetaCount:
    """Number of singular points of WM_f off the conic-discriminant cubic.

    Counted as the degree of ``J : C`` (one colon).  A positive-dimensional
    quotient gives ``"infinite/unknown"``.
    """
    locus = locus or singular_locus(f, field, budget=budget, trace=trace)
    GQ, GS = _quotient_data(locus, budget, trace, saturate)
    HQ = GQ.hilbert_data()
    HS = GS.hilbert_data() if GS is not None else None
    return ThetaCount(_count_from(HQ), locus.hilbert, HQ, HS, _count_from(HS) if HS else None)


# --------------------------------------------------------------------------
# bitangents
# --------------------------------------------------------------------------


def bitangent_conic(f: TernaryForm, l: TernaryForm):
    """Q_{l,f}: the conic whose square is ``A(f, l^4, *)``, or None."""
    return conic_sqrt(adual(f, power(l, 4)))


def is_bitangent(f: TernaryForm, l: TernaryForm) -> bool:
    return bitangent_conic(f, l) is not None


def bitangent_ideal(
    f: TernaryForm,
    field=None,
    order="grevlex",
    budget=DEFAULT_BUDGET,
    trace=None,
    want_eliminant: bool = False,
    want_points: bool = False,
    seed: int = 0,
) -> BitangentIdeal:
    """Jacobian ideal of WM_f with optional eliminant and rational bitangents.

    Each rational point q of a zero-dimensional locus with rank-2 conic has
    a vertex p (the two pencils' common point); its line ``p0 x + p1 y + p2 z``
    is checked to be a bitangent by ``conic_sqrt(adual(f, l^4)) ∝ q``.
    """
    locus = singular_locus(f, field, order=order, budget=budget, trace=trace)
    out = BitangentIdeal(locus.ideal, locus.hilbert, locus.basis)
    if locus.hilbert.dimension != 0 or not (want_eliminant or want_points):
        return out
    import random

    F = locus.ideal.ring.field
    rng = random.Random(seed)
    l0 = [F(rng.randint(1, 97)) for _ in range(6)]
    l1 = [F(rng.randint(1, 97)) for _ in range(6)]
    G = locus.basis
    if want_eliminant:
        data = multiplication_maps(G, {"l0": l0, "l1": l1})
        e = eliminant(G, l0, l1, data)
        out.eliminant = e
        out.eliminant_squarefree = is_squarefree_binary(F, e)
        out.projection = (tuple(l0), tuple(l1))
    if want_points:
        for pt in rational_points(G, l0, l1):
            q = TernaryForm(F, 2, pt)
            entry = {"conic": pt, "conic_rank": conic_rank(q), "line": None, "verified": False}
            v = singular_conic_point(q)
            if v is not None:
                l = TernaryForm(F, 1, v).normalized()
                entry["line"] = l.coeffs
                root = bitangent_conic(locus.quartic, l)
                entry["verified"] = root is not None and forms_proportional(root, q)
            out.points.append(entry)
    return out


# --------------------------------------------------------------------------
# rational points on conics
# --------------------------------------------------------------------------


def _field_sqrt(F, a):
    if F == QQ:
        return sqrt_rational(a)
    return F.sqrt(a)


def _solve_quadratic(F, a, b, c):
    """One root of ``a t^2 + b t + c`` in F, or None (a, b, c not all zero)."""
    if a == 0:
        if b == 0:
            return None
        return F.div(F.neg(c), b)
    disc = F.sub(F.mul(b, b), F.mul(F(4), F.mul(a, c)))
    r = _field_sqrt(F, disc)
    if r is None:
        return None
    return F.div(F.sub(r, b), F.mul(F(2), a))


def _height_pairs(H: int):
    yield (1, 0)
    yield (0, 1)
    for h in range(1, H + 1):
        for u in range(-h, h + 1):
            for v in (-h, h):
                if gcd(u, v) == 1:
                    yield (u, v)
                    yield (v, u)


def conic_rational_point(q: TernaryForm, height_bound: int = DEFAULT_HEIGHT_BOUND):
    """A point of the conic ``q = 0`` over its base field, or None.

    Unit vectors are tried first, then small-height pairs for two
    coordinates with the third solved from the resulting quadratic.
    """
    F = q.field
    for i in range(3):
        e = [F.zero] * 3
        e[i] = F.one
        if q.evaluate(e) == 0:
            return tuple(e)
    seen = set()
    for u, v in _height_pairs(height_bound):
        if (u, v) in seen:
            continue
        seen.add((u, v))
        for k in range(3):
            others = [i for i in range(3) if i != k]

            def at(t):
                pt = [F.zero] * 3
                pt[others[0]], pt[others[1]], pt[k] = F(u), F(v), F(t)
                return q.evaluate(pt)

            # q(t) = a t^2 + b t + c from three evaluations
            c = at(0)
            s1 = at(1)
            s2 = at(-1)
            a = F.div(F.sub(F.add(s1, s2), F.mul(F(2), c)), F(2))
            b = F.div(F.sub(s1, s2), F(2))
            if a == 0 and b == 0:
                if c == 0:
                    pt = [F.zero] * 3
                    pt[others[0]], pt[others[1]] = F(u), F(v)
                    return tuple(pt)
                continue
            t = _solve_quadratic(F, a, b, c)
            if t is not None:
                pt = [F.zero] * 3
                pt[others[0]], pt[others[1]], pt[k] = F(u), F(v), t
                return tuple(pt)
    return None


# --------------------------------------------------------------------------
# pentalateral extraction
# --------------------------------------------------------------------------

_COORD_CHANGES = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (0, 1, 0), (1, 2, 1)),
    ((1, 0, 3), (0, 1, 0), (2, -1, 1)),
    ((1, 2, 0), (0, 1, 5), (3, -1, 1)),
    ((2, 1, 1), (1, 3, 1), (1, 1, 4)),
    ((1, -3, 2), (4, 1, -1), (2, 5, 1)),
)


def _alpha0(Cg: Matrix, Cl: Matrix):
    """Scalars alpha with ``rank(Cg - alpha Cl) <= 4``, from affine 5x5 minors."""
    F = Cg.field
    rows6 = range(6)
    cands = []
    for I in itertools.combinations(rows6, 5):
        for Jc in itertools.combinations(rows6, 5):
            m0 = det(Cg.submatrix(I, Jc))
            m1 = det((Cg - Cl).submatrix(I, Jc))
            slope = F.sub(m0, m1)
            if slope == 0:
                continue
            a = F.div(m0, slope)
            if a not in cands:
                cands.append(a)
    return cands


def _upoly_gcd(F, a: list, b: list) -> list:
    """Monic gcd of univariate polynomials (coefficients low to high)."""

    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        inv = F.inv(b[-1])
        while len(a) >= len(b) and a:
            c = F.mul(a[-1], inv)
            shift = len(a) - len(b)
            for i, v in enumerate(b):
                a[shift + i] = F.sub(a[shift + i], F.mul(c, v))
            a = trim(a)
        a, b = b, a
    if not a:
        return []
    inv = F.inv(a[-1])
    return [F.mul(v, inv) for v in a]


def _transform_conic(K: TernaryForm, M) -> TernaryForm:
    """``K(M y)`` for an integer 3x3 matrix M."""
    F = K.field
    R = ternary_ring(F)
    y = R.gens()
    images = [sum((y[j].scale(M[i][j]) for j in range(3)), R.zero()) for i in range(3)]
    return TernaryForm.from_poly(K.to_poly(R).subs(images)) if not K.is_zero() else K


def _quadratic_coeffs_in_last(K: TernaryForm):
    """K = a y2^2 + b y2 + c with a, b, c binary forms in (y0, y1): plain coefficient lists."""
    F = K.field
    a = [F.zero] * 1
    b = [F.zero] * 2
    c = [F.zero] * 3
    from .ring import plain_basis

    for (i, j, k), v in zip(plain_basis(2), K.coeffs):
        if k == 2:
            a[0] = v
        elif k == 1:
            b[j] = v  # index = power of y1
        else:
            c[j] = v
    return a, b, c


def _bmul(F, p, q):
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _bsub(F, p, q):
    n = max(len(p), len(q))
    p = list(p) + [F.zero] * (n - len(p))
    q = list(q) + [F.zero] * (n - len(q))
    return [F.sub(x, y) for x, y in zip(p, q)]


def _resultant_last(F, K1: TernaryForm, K2: TernaryForm):
    """Res_{y2}(K1, K2) as coefficients e_i of ``y0^(4-i) y1^i``."""
    a1, b1, c1 = _quadratic_coeffs_in_last(K1)
    a2, b2, c2 = _quadratic_coeffs_in_last(K2)
    ac = _bsub(F, _bmul(F, a1, c2), _bmul(F, a2, c1))
    ab = _bsub(F, _bmul(F, a1, b2), _bmul(F, a2, b1))
    bc = _bsub(F, _bmul(F, b1, c2), _bmul(F, b2, c1))
    r = _bsub(F, _bmul(F, ac, ac), _bmul(F, ab, bc))
    return tuple(r + [F.zero] * (5 - len(r)))


def _minimal_polynomials(F, e) -> list:
    """Irreducible factors (as coefficient lists, low to high in t = y1/y0)."""
    import sympy

    t = sympy.Symbol("t")
    if isinstance(F, PrimeField):
        poly = sympy.Poly([int(c) for c in reversed(e)], t, modulus=F.p)
        facs = poly.factor_list()[1]
    else:
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(e)], t, domain="QQ")
        facs = poly.factor_list()[1]
    return [[str(c) for c in reversed(fp.all_coeffs())] for fp, _ in facs]


def _intersect_conics(K1: TernaryForm, K2: TernaryForm) -> list:
    """The four common points of two conics over the base field.

    Raises PentalateralError (with minimal polynomials) when they are not
    four distinct rational points.
    """
    F = K1.field
    last = None
    for M in _COORD_CHANGES:
        T1, T2 = _transform_conic(K1, M), _transform_conic(K2, M)
        a1 = _quadratic_coeffs_in_last(T1)[0][0]
        a2 = _quadratic_coeffs_in_last(T2)[0][0]
        if a1 == 0 and a2 == 0:
            continue
        e = _resultant_last(F, T1, T2)
        if all(c == 0 for c in e):
            raise PentalateralError("kernel conics share a component")
        if not is_squarefree_binary(F, e):
            last = e
            continue
        roots = binary_form_roots(F, e)
        if len(roots) < 4:
            raise PentalateralError(
                "intersection of the kernel conics does not split over the base field",
                {"minimal_polynomials": _minimal_polynomials(F, e)},
            )
        pts = []
        for s, t in roots:
            q1 = [T1.evaluate((s, t, z)) for z in (0, 1, 2)]
            q2 = [T2.evaluate((s, t, z)) for z in (0, 1, 2)]
            g = _upoly_gcd(F, _from_values(F, q1), _from_values(F, q2))
            if len(g) != 2:
                break
            z = F.neg(g[0])
            y = (s, t, z)
            # back to the original coordinates: points map by M
            pts.append(tuple(F.normalize(sum(F(M[i][j]) * y[j] for j in range(3))) for i in range(3)))
        else:
            return pts
    raise PentalateralError(
        "could not separate the intersection points of the kernel conics",
        {"resultant": list(last) if last else None},
    )


def _from_values(F, vals):
    """Quadratic through (0, v0), (1, v1), (2, v2): coefficients low to high."""
    v0, v1, v2 = vals
    a = F.div(F.add(F.sub(v2, F.mul(F(2), v1)), v0), F(2))
    b = F.sub(F.sub(v1, v0), a)
    return [v0, b, a]


def extract_pentalateral(
    g: TernaryForm,
    Q: TernaryForm,
    f: TernaryForm | None = None,
    height_bound: int = DEFAULT_HEIGHT_BOUND,
    l0: TernaryForm | None = None,
) -> Pentalateral:
    """Five lines l_i and weights with ``g = sum alpha_i l_i^4``, l_0 on Q.

    ``Q`` is a conic in the dual plane.  When f is given, the ten vertex
    conditions ``A(l_i^4, l_j^4, f) = 0`` are checked.
    """
    F = g.field
    Cg = catalecticant(g)
    if rank(Cg) != 5:
        raise PentalateralError(f"catalecticant has rank {rank(Cg)}, not 5")
    if l0 is None:
        pt = conic_rational_point(Q, height_bound)
        if pt is None:
            raise PentalateralError(
                f"no rational point of height <= {height_bound} on the conic", {"conic": list(Q.coeffs)}
            )
        l0 = TernaryForm(F, 1, pt)
    l0 = l0.normalized()
    Cl = catalecticant(power(l0, 4))
    alpha0 = None
    for a in _alpha0(Cg, Cl):
        if rank(Cg - Cl.scale(a)) == 4:
            alpha0 = a
            break
    if alpha0 is None:
        raise PentalateralError("no alpha0 drops the catalecticant rank to 4", {"l0": list(l0.coeffs)})
    gp = g - power(l0, 4).scale(alpha0)
    ker = apolar_conics(gp)
    if len(ker) != 2:
        raise PentalateralError(f"kernel of C_g' has dimension {len(ker)}", {"l0": list(l0.coeffs)})
    K1, K2 = ker
    try:
        pts = _intersect_conics(K1, K2)
    except PentalateralError as exc:
        exc.partial.update({"l0": list(l0.coeffs), "alpha0": alpha0, "kernel_conics": [list(K1.coeffs), list(K2.coeffs)]})
        raise
    lines = [l0] + [TernaryForm(F, 1, p).normalized() for p in pts]
    M = Matrix(F, [list(r) for r in zip(*(power(l, 4).coeffs for l in lines))])
    try:
        weights = solve(M, g.coeffs)
    except (InconsistentSystemError, UnderdeterminedSystemError) as exc:
        raise PentalateralError(f"weights not determined: {exc}", {"lines": [list(l.coeffs) for l in lines]}) from exc
    ok = None
    if f is not None:
        fF = f if f.field == F else _reduce_form(f, F)
        P4 = [power(l, 4) for l in lines]
        ok = all(trilinear_A(P4[i], P4[j], fF) == 0 for i, j in itertools.combinations(range(5), 2))
    return Pentalateral(tuple(lines), tuple(weights), l0, alpha0, (K1, K2), ok)


# --------------------------------------------------------------------------
# exact lifting of the pentalateral conic
# --------------------------------------------------------------------------


def _crt(residues: list, moduli: list):
    x, m = 0, 1
    for r, p in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, p)) % p
        x += m * t
        m *= p
    return x % m, m


def _reconstruct_point(points: list, primes: list):
    coords = []
    for k in range(6):
        r, m = _crt([int(pt[k]) for pt in points], primes)
        c = rational_reconstruction(r, m)
        if c is None:
            return None
        coords.append(c)
    return coords


def verify_pentalateral_conic(f: TernaryForm, Q: TernaryForm, wm=None) -> dict:
    """Exact checks of a candidate pentalateral conic in the field of f."""
    wm = wm if wm is not None else wm_quartic(f)
    grad_zero = all(d.evaluate(Q.coeffs) == 0 for d in wm.gradient())
    return {"gradient_vanishes": grad_zero, "smooth": conic_discriminant(Q) != 0}


def recover_clebsch(f: TernaryForm, Q: TernaryForm) -> tuple:
    """``g = bordered_recover(f, Q^2)`` and the coherence checks on it."""
    Q2 = conic_square(Q)
    g = bordered_recover(f, Q2).normalized()
    checks = {}
    Lg = build_L(g)
    checks["det_L_g_nonzero"] = det(Lg) != 0
    back = bordered_recover(g, Q2) if checks["det_L_g_nonzero"] else None
    checks["round_trip"] = back is not None and forms_proportional(back, f)
    Cg = catalecticant(g)
    checks["rank_C_g"] = rank(Cg)
    ker = kernel(Cg)
    checks["conic_in_kernel"] = len(ker) == 1 and forms_proportional(TernaryForm(g.field, 2, ker[0]), Q)
    return g, checks


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------


def _hilbert(H: HilbertData) -> dict:
    return {"dimension": H.dimension, "degree": H.degree}


def _det_status(f: TernaryForm):
    L = build_L(f)
    r = rank(L)
    return L, r


def classify(
    f: TernaryForm,
    field=None,
    verify_primes: int = DEFAULT_VERIFY_PRIMES,
    order="grevlex",
    budget=DEFAULT_BUDGET,
    height_bound: int = DEFAULT_HEIGHT_BOUND,
    saturate: bool = True,
    trace=None,
) -> Classification:
    """Decide whether f is Lüroth from the singular locus of WM_f.

    ``field`` is the working field of the Groebner computations (default
    Z/65521 for rational input).  ``verify_primes`` further primes must
    reproduce the dimension and degree of the locus.
    """
    F = working_field(f, field)
    exact = f.field
    diag: dict = {"field": F.spec(), "exact_field": exact.spec()}
    notes: list = []

    # guard: the construction needs L_f invertible
    L, rL = _det_status(f)
    diag["rank_L_f"] = rL
    diag["det_L_f_nonzero"] = rL == 15
    if rL < 15:
        wm = wm_quartic(f)
        diag["rank_adj_L_f"] = 1 if rL == 14 else 0
        sq = poly_sqrt(wm) if not wm.is_zero() else None
        diag["wm_double_quadric"] = sq is not None
        if sq is not None:
            diag["wm_quadric"] = [str(c) for c in _quadric_coeffs(sq[0])]
        notes.append("det L_f = 0: the bordered-determinant recovery does not apply")
        return Classification(INDETERMINATE, diag, notes=notes)
    fF = _reduce_form(f, F)
    if isinstance(F, PrimeField) and F != exact and det(build_L(fF)) == 0:
        notes.append(f"det L_f vanishes modulo {F.p} only; choose another prime")
        diag["unlucky_prime"] = True
        return Classification(INDETERMINATE, diag, notes=notes)

    locus = singular_locus(f, F, order=order, budget=budget, trace=trace)
    H = locus.hilbert
    diag["singular_locus"] = _hilbert(H)

    # agreement across primes (only meaningful for rational input)
    checks = []
    if exact == QQ and isinstance(F, PrimeField):
        for p in verification_primes(verify_primes, exclude=F.p):
            try:
                Hp = singular_locus(f, PrimeField(p), order=order, budget=budget, trace=trace).hilbert
            except ConfigurationError:
                continue
            checks.append({"prime": p, **_hilbert(Hp)})
    diag["verification"] = checks
    agree = all(c["dimension"] == H.dimension and c["degree"] == H.degree for c in checks)
    diag["primes_agree"] = agree
    if not agree:
        notes.append("singular-locus Hilbert data differ between primes")
        return Classification(INDETERMINATE, diag, notes=notes)

    if H.dimension == 0 and H.degree == BITANGENT_COUNT:
        diag["branch"] = "i"
        diag["delta"] = 0
        return Classification(NOT_LUROTH, diag, notes=notes)

    GQ, GS = _quotient_data(locus, budget, trace, saturate and not (H.dimension == 0 and H.degree == BITANGENT_COUNT + 1))
    HQ = GQ.hilbert_data()
    diag["quotient"] = _hilbert(HQ)
    if GS is not None:
        HS = GS.hilbert_data()
        diag["saturation"] = _hilbert(HS)
        diag["smooth_conic_points"] = _count_from(HS)

    if H.dimension == 0 and H.degree == BITANGENT_COUNT + 1:
        diag["branch"] = "ii"
        out = _luroth_branch(f, F, locus, GQ, HQ, diag, notes, verify_primes, order, budget, height_bound, trace)
        if out is not None:
            return out
        return Classification(INDETERMINATE, diag, notes=notes)

    diag["branch"] = "iii"
    diag["delta"] = _count_from(HQ)
    return Classification(INDETERMINATE, diag, notes=notes)


def _quadric_coeffs(p) -> list:
    R = p.ring
    out = []
    for i in range(R.nvars):
        for j in range(i, R.nvars):
            e = tuple(int(k == i) + int(k == j) for k in range(R.nvars))
            out.append(p.coeff(e))
    return out


def _luroth_branch(f, F, locus, GQ, HQ, diag, notes, verify_primes, order, budget, height_bound, trace):
    if HQ.dimension != 0 or HQ.degree != 1:
        notes.append("quotient J : C is not a single point")
        return None
    exact = f.field
    pt = extract_rational_point(GQ)
    if exact == F:
        Q = TernaryForm(F, 2, pt)
    else:
        Q = _lift_conic(f, pt, F, verify_primes, order, budget, trace)
        if Q is None:
            notes.append("irrational pentalateral conic: reconstruction did not verify over Q")
            return None
    Q = Q.normalized()
    diag["delta"] = 1
    v = verify_pentalateral_conic(f, Q)
    diag["conic_checks"] = v
    if not (v["gradient_vanishes"] and v["smooth"]):
        notes.append("recovered conic is not a smooth singular point of WM_f")
        return None
    try:
        g, checks = recover_clebsch(f, Q)
    except Exception as exc:  # singular recovery
        notes.append(f"Clebsch recovery failed: {exc}")
        return None
    diag["clebsch_checks"] = checks
    diag["rank_C_g"] = checks["rank_C_g"]
    if not (checks["det_L_g_nonzero"] and checks["round_trip"] and checks["rank_C_g"] == 5 and checks["conic_in_kernel"]):
        notes.append("Clebsch preimage fails the open conditions")
        return None
    delta = diag["delta"]
    diag["luroth_degree"] = {"delta": delta, "L": LUROTH_DEGREE_IDENTITY // delta, "identity": f"54 = delta * L = {delta} * {LUROTH_DEGREE_IDENTITY // delta}"}
    pent = None
    try:
        pent = extract_pentalateral(g, Q, f, height_bound)
        if not pent.vertices_on_curve:
            notes.append("pentalateral vertices do not all lie on the curve")
            pent = None
    except PentalateralError as exc:
        notes.append(f"pentalateral: {exc}")
        diag["pentalateral_partial"] = _jsonable(exc.partial)
    return Classification(LUROTH, diag, conic=Q, pentalateral=pent, clebsch=g, notes=notes)


def _lift_conic(f, pt, F, verify_primes, order, budget, trace):
    """Exact conic from its image modulo p, adding primes until it verifies."""
    wm = wm_quartic(f)
    points, primes = [pt], [F.p]
    extra = verification_primes(max(verify_primes, 4), exclude=F.p)
    while True:
        cand = _reconstruct_point(points, primes)
        if cand is not None:
            Q = TernaryForm(f.field, 2, cand)
            v = verify_pentalateral_conic(f, Q, wm)
            if v["gradient_vanishes"] and v["smooth"]:
                return Q
        if not extra:
            return None
        p = extra.pop(0)
        Fp = PrimeField(p)
        loc = singular_locus(f, Fp, order=order, budget=budget, trace=trace)
        GQ, _ = _quotient_data(loc, budget, trace, False)
        if GQ.hilbert_data().dimension != 0 or GQ.hilbert_data().degree != 1:
            continue
        points.append(extract_rational_point(GQ))
        primes.append(p)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    return str(obj)
