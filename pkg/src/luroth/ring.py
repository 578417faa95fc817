"""Exact coefficient fields, sparse multivariate polynomials and ternary forms.

Two coefficient fields are supported: the rationals (elements are
:class:`fractions.Fraction`) and prime fields ``Z/p`` (elements are Python
ints in ``[0, p)``).  Field objects are cheap immutable values; two prime
fields compare equal iff their characteristic agrees.

Ternary forms use the *plain* monomial basis, ordered for degree ``d`` as
``x^d, x^(d-1) y, x^(d-1) z, ..., z^d`` (exponent of ``x`` descending, then
exponent of ``y`` descending).  Binary forms use the *normalized* basis
``f = sum binomial(d, i) f_i x^(d-i) y^i``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence


class RingMismatchError(ValueError):
    """Operands live in different rings or fields."""


# --------------------------------------------------------------------------
# Fields
# --------------------------------------------------------------------------


class RationalField:
    """The field Q; elements are normalized :class:`Fraction` values."""

    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def normalize(self, a):
        # results of + - * on Fractions are already canonical
        return a

    def is_square(self, a) -> bool:
        return sqrt_rational(a) is not None

    def sqrt(self, a):
        return sqrt_rational(a)

    def spec(self) -> str:
        return "q"


class PrimeField:
    """The field Z/p for an odd prime ``p``; elements are ints in [0, p)."""

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or not is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x.strip()))
        return int(x) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def normalize(self, a):
        return a % self.p

    def is_square(self, a) -> bool:
        a %= self.p
        return a == 0 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """Square root by Tonelli-Shanks, or None for non-residues."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return min(r, p - r)

    def spec(self) -> str:
        return f"p:{self.p}"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str):
    """Parse ``q`` or ``p:<prime>`` into a field."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rational"):
        return QQ
    if spec.startswith("p:"):
        return PrimeField(int(spec[2:]))
    raise ValueError(f"unknown field spec {spec!r}; expected 'q' or 'p:<prime>'")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_rational(a):
    """Exact square root of a non-negative rational, or None."""
    from math import isqrt

    a = Fraction(a)
    if a < 0:
        return None
    n, d = a.numerator, a.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_reconstruction(a: int, m: int):
    """Recover ``n/d`` with ``|n|, d <= sqrt(m/2)`` from ``a mod m``, or None."""
    from math import isqrt

    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


# --------------------------------------------------------------------------
# Monomial orders
# --------------------------------------------------------------------------


class MonomialOrder:
    """A monomial order given by an integer weight matrix.

    Monomials are compared by the lexicographic order on ``M @ e``.  The
    matrix is square and nonsingular and the first nonzero entry of every
    column is positive, which makes the comparison a monomial well-order.
    """

    def __init__(self, name: str, matrix: Sequence[Sequence[int]]):
        self.name = name
        self.matrix = tuple(tuple(int(v) for v in row) for row in matrix)
        self.nvars = len(self.matrix[0])

    def key(self, exps: Sequence[int]) -> tuple:
        return tuple(sum(w * e for w, e in zip(row, exps)) for row in self.matrix)

    def weights(self) -> tuple:
        """Grading weights (the first row)."""
        return self.matrix[0]

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.matrix == self.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"MonomialOrder({self.name!r}, nvars={self.nvars})"


def _revlex_rows(n: int, start: int, stop: int) -> list:
    rows = []
    for i in range(stop - 1, start, -1):
        row = [0] * n
        row[i] = -1
        rows.append(row)
    return rows


def grevlex(n: int, weights: Sequence[int] | None = None) -> MonomialOrder:
    """(Weighted) degree reverse lexicographic order, x_0 > ... > x_{n-1}."""
    w = list(weights) if weights is not None else [1] * n
    name = "grevlex" if weights is None else f"wgrevlex{tuple(w)}"
    return MonomialOrder(name, [w] + _revlex_rows(n, 0, n))


def lex(n: int) -> MonomialOrder:
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        rows.append(row)
    return MonomialOrder("lex", rows)


def elimination_order(n: int, k: int) -> MonomialOrder:
    """Block order eliminating the first ``k`` variables (grevlex on each block)."""
    if not 0 < k < n:
        raise ValueError("elimination block must be a proper nonempty prefix")
    rows = [[1] * k + [0] * (n - k)] + _revlex_rows(n, 0, k)
    rows += [[0] * k + [1] * (n - k)] + _revlex_rows(n, k, n)
    return MonomialOrder(f"elim{k}", rows)


def order_from_name(name: str, n: int) -> MonomialOrder:
    if name == "grevlex":
        return grevlex(n)
    if name == "lex":
        return lex(n)
    raise ValueError(f"unknown monomial order {name!r}")


# --------------------------------------------------------------------------
# Sparse multivariate polynomials
# --------------------------------------------------------------------------


class PolyRing:
    """Polynomial ring over ``field`` in ``nvars`` variables."""

    def __init__(self, field, nvars: int, names: Sequence[str] | None = None, order=None):
        self.field = field
        self.nvars = nvars
        self.names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("wrong number of variable names")
        self.order = order if order is not None else grevlex(nvars)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.nvars == self.nvars
            and other.names == self.names
        )

    def __hash__(self):
        return hash((self.field, self.nvars, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {self.names})"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.field, self.nvars, self.names, order)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(field, self.nvars, self.names, self.order)

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i: int) -> "MultiPoly":
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.field.one})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = self.field(c)
        return MultiPoly(self, {(0,) * self.nvars: c} if c != 0 else {})

    def monomial(self, exps, c=1) -> "MultiPoly":
        c = self.field(c)
        return MultiPoly(self, {tuple(exps): c} if c != 0 else {})

    def from_dict(self, terms: dict) -> "MultiPoly":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c != 0:
                out[tuple(e)] = c
        return MultiPoly(self, out)


class MultiPoly:
    """Sparse polynomial: a dict from exponent tuples to nonzero coefficients.

    Values are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("ring", "_t")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._t = terms

    # -- structure
    @property
    def field(self):
        return self.ring.field

    def as_dict(self) -> dict:
        return dict(self._t)

    def terms(self, order=None) -> list:
        """Terms ``(exps, coeff)`` sorted descending in ``order`` (default: ring order)."""
        order = order or self.ring.order
        return sorted(self._t.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order=None):
        order = order or self.ring.order
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._t, key=order.key)
        return e, self._t[e]

    def coeff(self, exps) -> object:
        return self._t.get(tuple(exps), self.field.zero)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._t), default=-1)

    def weighted_degree(self, weights) -> int:
        return max((sum(w * x for w, x in zip(weights, e)) for e in self._t), default=-1)

    def is_homogeneous(self, weights=None) -> bool:
        if weights is None:
            degs = {sum(e) for e in self._t}
        else:
            degs = {sum(w * x for w, x in zip(weights, e)) for e in self._t}
        return len(degs) <= 1

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._t == other._t
        if other == 0:
            return not self._t
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    # -- arithmetic
    def _check(self, other: "MultiPoly"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        out = dict(self._t)
        for e, c in other._t.items():
            v = F.normalize(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly(self.ring, {e: F.neg(c) for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            if c == 0:
                return self.ring.zero()
            F = self.field
            return MultiPoly(self.ring, {e: F.normalize(v * c) for e, v in self._t.items()})
        self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.ring, {e: v for e, v in ((e, F.normalize(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "MultiPoly":
        return self * c

    def monic(self, order=None) -> "MultiPoly":
        if not self._t:
            return self
        _, lc = self.leading_term(order)
        return self * self.field.inv(lc)

    # -- calculus / evaluation
    def diff(self, i: int) -> "MultiPoly":
        F = self.field
        out = {}
        for e, c in self._t.items():
            if e[i]:
                v = F.normalize(c * e[i])
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return MultiPoly(self.ring, out)

    def gradient(self) -> list:
        return [self.diff(i) for i in range(self.ring.nvars)]

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        F = self.field
        total = F.zero
        for e, c in self._t.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = total + term
        return F.normalize(total)

    def subs(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials (in any one common ring) for the variables."""
        target = images[0].ring
        result = target.zero()
        cache: dict = {}
        for e, c in self._t.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    term = term * cache[(i, k)]
            result = result + term
        return result

    def change_ring(self, ring: PolyRing) -> "MultiPoly":
        """Map coefficients into ``ring`` (same variable count)."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable count mismatch")
        return ring.from_dict(self._t)

    def content_free(self) -> "MultiPoly":
        """Over Q: primitive integer multiple with positive leading coefficient."""
        if self.field != QQ or not self._t:
            return self.monic()
        from math import gcd, lcm

        den = 1
        for c in self._t.values():
            den = lcm(den, c.denominator)
        ints = {e: int(c * den) for e, c in self._t.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        _, lc = self.leading_term()
        if lc < 0:
            g = -g
        return MultiPoly(self.ring, {e: Fraction(v // g) for e, v in ints.items()})

    # -- printing
    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


def format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c)) if isinstance(c, Fraction) else str(c)


def format_poly(p: MultiPoly, names: Sequence[str] | None = None) -> str:
    """Human/parseable rendering: ``3*x0^2*x1 - 1/2*x2^3 + 7``."""
    names = names or p.ring.names
    if not p._t:
        return "0"
    parts = []
    prime = isinstance(p.field, PrimeField)
    for e, c in p.terms():
        if prime and c > p.field.p // 2:
            c = c - p.field.p
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
        )
        if mono:
            s = mono if a == 1 else f"{format_coeff(a)}*{mono}"
        else:
            s = format_coeff(a)
        parts.append(("-" if neg else "+", s))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, s in parts[1:]:
        out += f" {sign} {s}"
    return out


# --------------------------------------------------------------------------
# Ternary and binary forms
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def plain_basis(d: int) -> tuple:
    """Exponent triples of degree-``d`` ternary monomials in plain order."""
    return tuple((i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1))


@lru_cache(maxsize=None)
def basis_index(d: int) -> dict:
    return {e: k for k, e in enumerate(plain_basis(d))}


@lru_cache(maxsize=None)
def multinomials(d: int) -> tuple:
    """``d!/(i! j! k!)`` for each plain basis monomial."""
    return tuple(factorial(d) // (factorial(i) * factorial(j) * factorial(k)) for i, j, k in plain_basis(d))


def ternary_ring(field, names=("x", "y", "z")) -> PolyRing:
    return PolyRing(field, 3, names)


class TernaryForm:
    """Homogeneous form in three variables, dense in the plain basis."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree: int, coeffs: Iterable):
        coeffs = tuple(field(c) for c in coeffs)
        if len(coeffs) != comb(degree + 2, 2):
            raise ValueError(f"degree {degree} form needs {comb(degree + 2, 2)} coefficients")
        self.field = field
        self.degree = degree
        self.coeffs = coeffs

    # -- constructors
    @classmethod
    def zero(cls, field, degree: int) -> "TernaryForm":
        return cls(field, degree, [0] * comb(degree + 2, 2))

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "TernaryForm":
        if p.ring.nvars != 3:
            raise ValueError("ternary form needs three variables")
        if p.is_zero():
            raise ValueError("degree of zero polynomial undefined; use TernaryForm.zero")
        if not p.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        d = p.total_degree()
        idx = basis_index(d)
        c = [0] * len(idx)
        for e, v in p.as_dict().items():
            c[idx[e]] = v
        return cls(p.field, d, c)

    @classmethod
    def from_multinomial(cls, field, degree: int, values: Sequence) -> "TernaryForm":
        """Build from multinomial-basis coefficients ``f_ijk``."""
        return cls(field, degree, [field.mul(field(v), m) for v, m in zip(values, multinomials(degree))])

    @classmethod
    def linear(cls, field, a, b, c) -> "TernaryForm":
        return cls(field, 1, [a, b, c])

    # -- conversions
    def multinomial(self) -> tuple:
        """Coefficients ``f_ijk`` = plain coefficient / multinomial(i, j, k)."""
        F = self.field
        return tuple(F.div(c, m) for c, m in zip(self.coeffs, multinomials(self.degree)))

    def to_poly(self, ring: PolyRing | None = None) -> MultiPoly:
        ring = ring or ternary_ring(self.field)
        return ring.from_dict({e: c for e, c in zip(plain_basis(self.degree), self.coeffs) if c != 0})

    def to_field(self, field) -> "TernaryForm":
        return TernaryForm(field, self.degree, self.coeffs)

    # -- algebra
    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        self._check(other)
        F = self.field
        return TernaryForm(F, self.degree, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        self._check(other)
        F = self.field
        return TernaryForm(F, self.degree, [F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "TernaryForm":
        F = self.field
        c = F(c)
        return TernaryForm(F, self.degree, [F.mul(a, c) for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TernaryForm):
            return self.scale(other)
        if other.field != self.field:
            raise RingMismatchError("field mismatch")
        F = self.field
        d = self.degree + other.degree
        idx = basis_index(d)
        out = [0] * len(idx)
        for e1, a in zip(plain_basis(self.degree), self.coeffs):
            if a == 0:
                continue
            for e2, b in zip(plain_basis(other.degree), other.coeffs):
                if b != 0:
                    k = idx[(e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])]
                    out[k] = out[k] + a * b
        return TernaryForm(F, d, [F.normalize(v) for v in out])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TernaryForm":
        result = TernaryForm(self.field, 0, [1])
        for _ in range(n):
            result = result * self
        return result

    def _check(self, other):
        if other.field != self.field or other.degree != self.degree:
            raise RingMismatchError("forms differ in field or degree")

    def __eq__(self, other):
        return (
            isinstance(other, TernaryForm)
            and other.field == self.field
            and other.degree == self.degree
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, point: Sequence):
        F = self.field
        x, y, z = (F(v) for v in point)
        total = 0
        for (i, j, k), c in zip(plain_basis(self.degree), self.coeffs):
            if c:
                total += c * x**i * y**j * z**k
        return F.normalize(total)

    def diff(self, i: int) -> "TernaryForm":
        if self.degree == 0:
            raise ValueError("cannot differentiate a constant form")
        F = self.field
        idx = basis_index(self.degree - 1)
        out = [0] * len(idx)
        for e, c in zip(plain_basis(self.degree), self.coeffs):
            if c and e[i]:
                ne = list(e)
                ne[i] -= 1
                out[idx[tuple(ne)]] = F.normalize(c * e[i])
        return TernaryForm(F, self.degree - 1, out)

    def normalized(self) -> "TernaryForm":
        """Projective representative: first nonzero coefficient equal to 1."""
        for c in self.coeffs:
            if c != 0:
                return self.scale(self.field.inv(c))
        return self

    def __repr__(self):
        return f"TernaryForm({format_poly(self.to_poly())})"


def proportional(u: Sequence, v: Sequence, field=QQ) -> bool:
    """Projective equality of two nonzero coefficient vectors."""
    if all(a == 0 for a in u) or all(b == 0 for b in v) or len(u) != len(v):
        return False
    i = next(k for k, a in enumerate(u) if a != 0)
    if v[i] == 0:
        return False
    # u ~ v  iff  v[i] * u - u[i] * v == 0
    return all(field.normalize(v[i] * a - u[i] * b) == 0 for a, b in zip(u, v))


def forms_proportional(f: TernaryForm, g: TernaryForm) -> bool:
    """``f`` and ``g`` agree up to a nonzero scalar."""
    if f.degree != g.degree or f.field != g.field:
        return False
    return f.normalized().coeffs == g.normalized().coeffs and not f.is_zero()


class BinaryForm:
    """Binary form in the normalized basis ``sum C(d,i) f_i x^(d-i) y^i``."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree: int, coeffs: Iterable):
        coeffs = tuple(field(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("binary form of degree d needs d+1 coefficients")
        self.field = field
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def from_plain(cls, field, plain: Sequence) -> "BinaryForm":
        d = len(plain) - 1
        return cls(field, d, [field.div(field(c), comb(d, i)) for i, c in enumerate(plain)])

    def plain(self) -> tuple:
        F = self.field
        return tuple(F.mul(c, comb(self.degree, i)) for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and other.coeffs == self.coeffs and other.field == self.field

    def __repr__(self):
        return f"BinaryForm{self.coeffs}"


def restrict_to_line(f: TernaryForm, l: TernaryForm) -> BinaryForm:
    """Restriction of ``f`` to the line ``l = 0`` as a binary form.

    The pivot is the first variable with a nonzero coefficient in ``l``; it is
    eliminated via ``x_k = -(sum_{i != k} l_i x_i) / l_k`` and the two other
    variables, in their natural order, become the binary variables.
    """
    if l.degree != 1:
        raise ValueError("l must be a linear form")
    if l.is_zero():
        raise ValueError("the zero linear form does not define a line")
    F = f.field
    a = l.coeffs
    k = next(i for i in range(3) if a[i] != 0)
    others = [i for i in range(3) if i != k]
    # images of x0, x1, x2 as binary linear forms (coefficients of s, t)
    images = [None, None, None]
    inv = F.inv(a[k])
    images[k] = (F.neg(F.mul(a[others[0]], inv)), F.neg(F.mul(a[others[1]], inv)))
    images[others[0]] = (F.one, F.zero)
    images[others[1]] = (F.zero, F.one)
    d = f.degree
    out = [F.zero] * (d + 1)
    powers = [_binary_linear_powers(F, images[i], d) for i in range(3)]
    for (i, j, kk), c in zip(plain_basis(d), f.coeffs):
        if c == 0:
            continue
        prod = _binary_mul(F, _binary_mul(F, powers[0][i], powers[1][j]), powers[2][kk])
        for s, v in enumerate(prod):
            out[s] = F.add(out[s], F.mul(c, v))
    # out[s] = plain coefficient of s^(d-s) t^s
    return BinaryForm.from_plain(F, out)


def _binary_mul(F, a: list, b: list) -> list:
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _binary_linear_powers(F, lin: tuple, d: int) -> list:
    pw = [[F.one]]
    for _ in range(d):
        pw.append(_binary_mul(F, pw[-1], [lin[0], lin[1]]))
    return pw


def binary_apolarity(f: BinaryForm, g: BinaryForm):
    """Apolarity pairing ``sum (-1)^i C(d,i) f_i g_{d-i}``."""
    if f.degree != g.degree:
        raise ValueError("apolarity needs forms of equal degree")
    if f.field != g.field:
        raise RingMismatchError("field mismatch")
    F = f.field
    d = f.degree
    total = F.zero
    for i in range(d + 1):
        term = F.mul(F.mul(f.coeffs[i], g.coeffs[d - i]), comb(d, i))
        total = F.sub(total, term) if i % 2 else F.add(total, term)
    return total


def equianharmonic_invariant(f: BinaryForm):
    """The invariant ``I = f0 f4 - 4 f1 f3 + 3 f2^2`` of a binary quartic.

    ``binary_apolarity(f, f) == 2 * equianharmonic_invariant(f)``.
    """
    if f.degree != 4:
        raise ValueError("equianharmonic invariant is defined for binary quartics")
    F = f.field
    f0, f1, f2, f3, f4 = f.coeffs
    return F.normalize(f0 * f4 - 4 * f1 * f3 + 3 * f2 * f2)
