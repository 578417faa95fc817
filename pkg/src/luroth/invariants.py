"""Classical constructions on plane quartics.

Conventions
-----------
Quartics are :class:`TernaryForm` values in the plain basis ``g0..g14``
(x^4, x^3y, ..., z^4).  The trilinear form is ``A(f, g, h) = f^t L_g h`` with
all three vectors plain.  With this normalisation

* ``A(a^4, b^4, c^4) = DET4_SCALE * det(a, b, c)^4``, and
* ``A(f, f, f) = CUBIC_INVARIANT_SCALE * cubic_invariant(f)``.

Dual forms (elements of S^4 V^dual, e.g. ``adual(f, g)``) are also stored in
the plain basis of the dual variables, so ``H.evaluate(l)`` is ``H(l)``.
Conics are degree-2 forms with coefficients (q0, ..., q5) on
x^2, xy, xz, y^2, yz, z^2.
"""

from __future__ import annotations

import itertools
import random
import re
from functools import lru_cache
from importlib import resources
from math import comb, gcd

from .exactla import Matrix, adjugate, det, kernel, rank
from .ring import (
    QQ,
    MultiPoly,
    PolyRing,
    PrimeField,
    TernaryForm,
    basis_index,
    grevlex,
    multinomials,
    plain_basis,
    rational_reconstruction,
    ternary_ring,
)

DET4_SCALE = 144
CUBIC_INVARIANT_SCALE = 864

# L_g, row by row; entry "c g<k>" means c times the plain coefficient g_k.
_L_TABLE = """
          0       0       0       0       0       0       0       0       0       0  144g14  -36g13   24g12  -36g11  144g10
          0       0       0       0       0       0  -36g14    9g13   -6g12    9g11       0     9g9    -6g8     9g7   -36g6
          0       0       0       0       0       0    9g13   -6g12    9g11  -36g10   -36g9     9g8    -6g7     9g6       0
          0       0       0   24g14   -6g13    4g12       0    -6g9     4g8    -6g7       0       0     4g5    -6g4    24g3
          0       0       0   -6g13    4g12   -6g11     9g9     -g8     -g7     9g6       0    -6g5     4g4    -6g3       0
          0       0       0    4g12   -6g11   24g10    -6g8     4g7    -6g6       0    24g5    -6g4     4g3       0       0
          0  -36g14    9g13       0     9g9    -6g8       0       0    -6g5     9g4       0       0       0     9g2   -36g1
          0    9g13   -6g12    -6g9     -g8     4g7       0     4g5     -g4    -6g3       0       0    -6g2     9g1       0
          0   -6g12    9g11     4g8     -g7    -6g6    -6g5     -g4     4g3       0       0     9g2    -6g1       0       0
          0    9g11  -36g10    -6g7     9g6       0     9g4    -6g3       0       0   -36g2     9g1       0       0       0
     144g14       0   -36g9       0       0    24g5       0       0       0   -36g2       0       0       0       0   144g0
     -36g13     9g9     9g8       0    -6g5    -6g4       0       0     9g2     9g1       0       0       0   -36g0       0
      24g12    -6g8    -6g7     4g5     4g4     4g3       0    -6g2    -6g1       0       0       0    24g0       0       0
     -36g11     9g7     9g6    -6g4    -6g3       0     9g2     9g1       0       0       0   -36g0       0       0       0
     144g10   -36g6       0    24g3       0       0   -36g1       0       0       0   144g0       0       0       0       0
"""


class SingularRecoveryError(ValueError):
    """``det L_g = 0``: the bordered determinant does not determine f."""


class AronholdSamplingError(RuntimeError):
    """The interpolation system did not have a one-dimensional solution space."""


def _check_quartic(f: TernaryForm):
    if f.degree != 4:
        raise ValueError(f"expected a quartic, got degree {f.degree}")


@lru_cache(maxsize=None)
def _l_pattern() -> tuple:
    rows = []
    for line in _L_TABLE.strip().splitlines():
        row = []
        for tok in line.split():
            if tok == "0":
                row.append(None)
                continue
            m = re.fullmatch(r"(-?)(\d*)g(\d+)", tok)
            c = int(m.group(2) or 1)
            row.append((-c if m.group(1) else c, int(m.group(3))))
        rows.append(tuple(row))
    assert len(rows) == 15 and all(len(r) == 15 for r in rows)
    return tuple(rows)


def build_L(g: TernaryForm) -> Matrix:
    """The 15x15 symmetric matrix ``L_g``, linear in the coefficients of g."""
    _check_quartic(g)
    F = g.field
    return Matrix(F, [[0 if e is None else F.mul(e[0], g.coeffs[e[1]]) for e in r] for r in _l_pattern()])


def trilinear_A(f: TernaryForm, g: TernaryForm, h: TernaryForm):
    """``f^t L_g h`` (fully symmetric in its three arguments)."""
    for q in (f, g, h):
        _check_quartic(q)
    F = f.field
    Lg = build_L(g)
    v = Lg @ h.coeffs
    return F.normalize(sum(a * b for a, b in zip(f.coeffs, v)))


def cubic_invariant(f: TernaryForm):
    """The classical 23-term cubic invariant, in multinomial coefficients."""
    _check_quartic(f)
    F = f.field
    idx = basis_index(4)
    m = f.multinomial()

    def c(s):
        return m[idx[(int(s[0]), int(s[1]), int(s[2]))]]

    expr = (
        c("400") * c("040") * c("004")
        + 3 * (c("220") ** 2 * c("004") + c("202") ** 2 * c("040") + c("400") * c("022") ** 2)
        + 12 * (c("202") * c("121") ** 2 + c("220") * c("112") ** 2 + c("022") * c("211") ** 2)
        + 6 * c("220") * c("202") * c("022")
        - 4 * (c("301") * c("103") * c("040") + c("400") * c("031") * c("013") + c("310") * c("130") * c("004"))
        + 4 * (c("310") * c("103") * c("031") + c("301") * c("130") * c("013"))
        - 12
        * (
            c("202") * c("130") * c("112")
            + c("220") * c("121") * c("103")
            + c("211") * c("202") * c("031")
            + c("301") * c("121") * c("022")
            + c("310") * c("112") * c("022")
            + c("220") * c("211") * c("013")
            + c("211") * c("121") * c("112")
        )
        + 12 * (c("310") * c("121") * c("013") + c("211") * c("130") * c("103") + c("301") * c("112") * c("031"))
    )
    return F.normalize(expr)


def adual(f: TernaryForm, g: TernaryForm) -> TernaryForm:
    """The dual quartic ``H = A(f, g, *)``, with ``H(l) = A(f, g, l^4)``."""
    _check_quartic(f)
    _check_quartic(g)
    F = f.field
    v = build_L(g) @ f.coeffs
    # l^4 has plain coefficient mult_m * l^m, so H_m = (L_g f)_m * mult_m
    return TernaryForm(F, 4, [F.mul(a, m) for a, m in zip(v, multinomials(4))])


def power(l: TernaryForm, n: int = 4) -> TernaryForm:
    return l**n


# --------------------------------------------------------------------------
# conics
# --------------------------------------------------------------------------


def conic_matrix(q: TernaryForm) -> Matrix:
    """Symmetric 3x3 matrix of a conic (halves on the off-diagonal)."""
    if q.degree != 2:
        raise ValueError("expected a conic")
    F = q.field
    q0, q1, q2, q3, q4, q5 = q.coeffs
    h = F.inv(F(2))
    return Matrix(
        F,
        [
            [q0, F.mul(q1, h), F.mul(q2, h)],
            [F.mul(q1, h), q3, F.mul(q4, h)],
            [F.mul(q2, h), F.mul(q4, h), q5],
        ],
    )


def conic_discriminant(q: TernaryForm):
    """``4 det`` of the conic matrix; zero exactly on singular conics."""
    F = q.field
    q0, q1, q2, q3, q4, q5 = q.coeffs
    return F.normalize(4 * q0 * q3 * q5 + q1 * q2 * q4 - q0 * q4 * q4 - q3 * q2 * q2 - q5 * q1 * q1)


def conic_discriminant_poly(ring: PolyRing) -> MultiPoly:
    """The cubic ``4 det`` of the generic conic matrix in the six conic variables."""
    q0, q1, q2, q3, q4, q5 = ring.gens()
    return q0 * q3 * q5 * 4 + q1 * q2 * q4 - q0 * q4 * q4 - q3 * q2 * q2 - q5 * q1 * q1


def is_smooth_conic(q: TernaryForm) -> bool:
    return conic_discriminant(q) != 0


def conic_ring(field, names=("q0", "q1", "q2", "q3", "q4", "q5")) -> PolyRing:
    return PolyRing(field, 6, names, grevlex(6))


def catalecticant(f: TernaryForm) -> Matrix:
    """6x6 catalecticant ``C[a][b] = f_{a+b}`` (multinomial coefficients).

    A vector q lies in the kernel iff the dual conic ``sum q_a d^a`` (plain
    coefficients) annihilates f.
    """
    _check_quartic(f)
    F = f.field
    m = f.multinomial()
    idx = basis_index(4)
    B = plain_basis(2)
    return Matrix(F, [[m[idx[tuple(x + y for x, y in zip(a, b))]] for b in B] for a in B])


def clebsch_invariant(f: TernaryForm):
    return det(catalecticant(f))


def apolar_conics(f: TernaryForm) -> list:
    """Kernel of the catalecticant, as dual conics."""
    return [TernaryForm(f.field, 2, v) for v in kernel(catalecticant(f))]


# --------------------------------------------------------------------------
# Aronhold invariant and Scorza map
# --------------------------------------------------------------------------

ARONHOLD_SAMPLES = 800
ARONHOLD_PRIME = 2147483629
ARONHOLD_SEED = 20161

_ARONHOLD_FILE = "aronhold.txt"


def _quartic_monomials_10() -> list:
    """Exponent vectors of the 715 degree-4 monomials in 10 variables, sorted."""
    out = []
    for combo in itertools.combinations_with_replacement(range(10), 4):
        e = [0] * 10
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def fermat_cubic_sample(rng: random.Random, bound: int = 6) -> tuple:
    """Plain coefficients of ``l1^3 + l2^3 + l3^3`` for random integer lines."""
    total = TernaryForm.zero(QQ, 3)
    for _ in range(3):
        l = TernaryForm.linear(QQ, *(rng.randint(-bound, bound) for _ in range(3)))
        total = total + l**3
    return tuple(int(c) for c in total.coeffs)


def generate_aronhold_table(samples: int = ARONHOLD_SAMPLES, seed: int = ARONHOLD_SEED) -> dict:
    """Interpolate the degree-4 invariant vanishing on sums of three cubes.

    The kernel of the evaluation matrix is computed modulo a large prime,
    reconstructed over Q and then certified exactly: the modular kernel has
    dimension one and the reconstructed vector vanishes on every sample over
    Q, so the rational solution space is exactly one-dimensional.
    """
    rng = random.Random(seed)
    mons = _quartic_monomials_10()
    data = [fermat_cubic_sample(rng) for _ in range(samples)]
    p = ARONHOLD_PRIME
    Fp = PrimeField(p)
    rows = []
    for c in data:
        cp = [v % p for v in c]
        row = []
        for e in mons:
            v = 1
            for i, k in enumerate(e):
                if k:
                    v = v * pow(cp[i], k, p) % p
            row.append(v)
        rows.append(row)
    ker = kernel(Matrix(Fp, rows))
    if len(ker) != 1:
        raise AronholdSamplingError(f"interpolation kernel has dimension {len(ker)}; resample")
    vec = ker[0]
    lead = next(i for i, v in enumerate(vec) if v)
    inv = pow(vec[lead], -1, p)
    rat = []
    for v in vec:
        r = rational_reconstruction(v * inv % p, p)
        if r is None:
            raise AronholdSamplingError("rational reconstruction failed")
        rat.append(r)
    den = 1
    for r in rat:
        den = den * r.denominator // gcd(den, r.denominator)
    ints = [int(r * den) for r in rat]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if ints[lead] < 0:
        ints = [-v for v in ints]
    table = {e: v for e, v in zip(mons, ints) if v}
    for c in data:
        if _eval_table(table, c) != 0:
            raise AronholdSamplingError("reconstructed invariant does not vanish on a sample")
    return table


def format_aronhold_table(table: dict) -> str:
    lines = [" ".join(str(k) for k in e) + " " + str(v) for e, v in sorted(table.items(), reverse=True)]
    return "\n".join(lines) + "\n"


def parse_aronhold_table(text: str) -> dict:
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [int(t) for t in line.split()]
        table[tuple(parts[:10])] = parts[10]
    return table


@lru_cache(maxsize=1)
def aronhold_table() -> dict:
    text = resources.files("luroth.data").joinpath(_ARONHOLD_FILE).read_text()
    return parse_aronhold_table(text)


def _eval_table(table: dict, c):
    total = 0
    for e, v in table.items():
        t = v
        for x, k in zip(c, e):
            if k:
                t = t * x**k
        total = total + t
    return total


def aronhold(c, field=None):
    """Aronhold invariant of a ternary cubic.

    ``c`` is either a cubic :class:`TernaryForm` or its 10 plain
    coefficients.  Entries may also be :class:`MultiPoly` values.
    """
    if isinstance(c, TernaryForm):
        if c.degree != 3:
            raise ValueError("the Aronhold invariant is defined for cubics")
        field = c.field
        c = c.coeffs
    if len(c) != 10:
        raise ValueError("a ternary cubic has 10 coefficients")
    val = _eval_table(aronhold_table(), c)
    if field is not None and not isinstance(val, MultiPoly):
        return field.normalize(val)
    return val


def polar_cubic(f: TernaryForm, point) -> TernaryForm:
    """First polar ``(1/4) sum x_i d_i f`` at a point."""
    _check_quartic(f)
    F = f.field
    out = TernaryForm.zero(F, 3)
    for i in range(3):
        out = out + f.diff(i).scale(point[i])
    return out.scale(F.inv(F(4)))


def scorza(f: TernaryForm) -> TernaryForm:
    """The quartic ``x -> Ar(P_x f)``.

    The zero form is returned when f lies in the indeterminacy locus.
    """
    _check_quartic(f)
    F = f.field
    R = ternary_ring(F)
    xs = R.gens()
    quarter = F.inv(F(4))
    derivs = [f.diff(i) for i in range(3)]
    coeffs = []
    for k in range(10):
        p = R.zero()
        for i in range(3):
            a = derivs[i].coeffs[k]
            if a:
                p = p + xs[i].scale(F.mul(a, quarter))
        coeffs.append(p)
    val = aronhold(coeffs)
    if isinstance(val, MultiPoly) and not val.is_zero():
        return TernaryForm.from_poly(val)
    return TernaryForm.zero(F, 4)


# --------------------------------------------------------------------------
# White-Miller quartic and bordered recovery
# --------------------------------------------------------------------------


def conic_square_weights(ring: PolyRing) -> list:
    """The 15 quadratic forms ``(q^2)_m * 24 / mult_m`` in the conic variables.

    These are the coordinates of a double conic in the same (row) basis as
    ``L_g f``, scaled by 24 to stay integral.
    """
    qs = ring.gens()
    B2 = plain_basis(2)
    idx = basis_index(4)
    sq = [ring.zero() for _ in range(15)]
    for a in range(6):
        for b in range(6):
            m = idx[tuple(x + y for x, y in zip(B2[a], B2[b]))]
            sq[m] = sq[m] + qs[a] * qs[b]
    return [s.scale(24 // mult) for s, mult in zip(sq, multinomials(4))]


def wm_quartic(f: TernaryForm, ring: PolyRing | None = None, L_adj: Matrix | None = None) -> MultiPoly:
    """``WM_f = w^t adj(L_f) w`` with w the double-conic coordinates of q^2."""
    _check_quartic(f)
    F = f.field
    ring = ring or conic_ring(F)
    adj = L_adj if L_adj is not None else adjugate(build_L(f))
    w = conic_square_weights(ring)
    total = ring.zero()
    for i in range(15):
        row = ring.zero()
        for j in range(15):
            a = adj.rows[i][j]
            if a:
                row = row + w[j].scale(a)
        if not row.is_zero():
            total = total + w[i] * row
    return total


def dual_coordinates(H: TernaryForm) -> list:
    """Coordinates of a dual quartic in the row basis of ``L_g`` (times 24)."""
    F = H.field
    return [F.mul(c, 24 // m) for c, m in zip(H.coeffs, multinomials(4))]


def bordered_recover(g: TernaryForm, H: TernaryForm) -> TernaryForm:
    """The quartic f with ``adual(f, g) ∝ H``: ``adj(L_g)`` applied to H."""
    _check_quartic(g)
    if H.degree != 4:
        raise ValueError("H must be a dual quartic")
    Lg = build_L(g)
    if det(Lg) == 0:
        raise SingularRecoveryError("det L_g = 0")
    return TernaryForm(g.field, 4, adjugate(Lg) @ dual_coordinates(H))


def conic_square(q: TernaryForm) -> TernaryForm:
    return q * q


# --------------------------------------------------------------------------
# square roots
# --------------------------------------------------------------------------


def poly_sqrt(p: MultiPoly):
    """Projective square root: ``(r, c)`` with ``c * r^2 == p``, or None.

    The leading coefficient is divided out first, so the root exists over the
    base field whenever p is a scalar multiple of a square.
    """
    if p.is_zero():
        return None
    R = p.ring
    F = R.field
    order = R.order
    lead_e, lead_c = p.leading_term(order)
    if any(k % 2 for k in lead_e):
        return None
    mon = p.scale(F.inv(lead_c))
    half = tuple(k // 2 for k in lead_e)
    root = R.monomial(half, 1)
    two_inv = F.inv(F(2))
    limit = comb(R.nvars + sum(half), R.nvars) + 1
    for _ in range(limit):
        rem = mon - root * root
        if rem.is_zero():
            return root, lead_c
        e, c = rem.leading_term(order)
        t = tuple(a - b for a, b in zip(e, half))
        if any(k < 0 for k in t):
            return None
        if order.key(t) >= order.key(half):
            return None
        root = root + R.monomial(t, F.mul(c, two_inv))
    return None


def conic_sqrt(H: TernaryForm):
    """A conic q with ``q^2 ∝ H``, or None if H is not a double conic."""
    if H.degree != 4:
        raise ValueError("expected a quartic")
    res = poly_sqrt(H.to_poly())
    if res is None:
        return None
    return TernaryForm.from_poly(res[0])


def singular_conic_point(q: TernaryForm):
    """Vertex of a singular conic (kernel of its matrix), or None if smooth or rank < 2."""
    M = conic_matrix(q)
    ker = kernel(M)
    if len(ker) != 1:
        return None
    return tuple(ker[0])


def conic_rank(q: TernaryForm) -> int:
    return rank(conic_matrix(q))
