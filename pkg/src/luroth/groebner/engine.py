"""Buchberger's algorithm on packed monomials.

Inside the engine a monomial is a single Python int: the order key
``sum_r (M_r . e) * B**(R-1-r)`` built from the order matrix ``M`` with signed
digits.  Integer comparison of keys is the monomial order and multiplying
monomials is adding keys.  Divisibility tests use a second packing of the raw
exponents with a guard bit per slot.

Coefficients are ints mod p, or over Q integers kept primitive (fraction-free
reduction with content removal).  The public wrapper converts back to
:class:`~luroth.ring.MultiPoly` with monic leading coefficients.

Trace format (one line per processed S-pair, written when ``trace`` is given)::

    pair <i> <j> sugar=<s> deg=<d> -> zero
    pair <i> <j> sugar=<s> deg=<d> -> new <k> terms=<n>
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

from ..ring import MultiPoly, PolyRing, PrimeField

DEFAULT_BUDGET = 10**7


class GroebnerBudgetExceeded(RuntimeError):
    """The configured number of monomial reduction steps was used up."""


class _Packer:
    DIGIT_BITS = 12
    EXP_BITS = 12

    def __init__(self, order, nvars: int):
        self.n = nvars
        self.matrix = order.matrix
        R = len(self.matrix)
        self.R = R
        B = 1 << self.DIGIT_BITS
        self.B = B
        self.half = B >> 1
        self.W = [sum(self.matrix[r][i] * B ** (R - 1 - r) for r in range(R)) for i in range(nvars)]
        self.inv = _rational_inverse(self.matrix)
        E = self.EXP_BITS
        self.guard = sum(1 << (E * (i + 1) - 1) for i in range(nvars))
        self.E = E
        self.maxexp = (1 << (E - 1)) - 1
        self._decode: dict = {}

    def key(self, e) -> int:
        return sum(a * w for a, w in zip(e, self.W))

    def pexp(self, e) -> int:
        E = self.E
        return sum(a << (E * i) for i, a in enumerate(e))

    def exps(self, key: int) -> tuple:
        hit = self._decode.get(key)
        if hit is not None:
            return hit
        B, half = self.B, self.half
        digits = []
        k = key
        for _ in range(self.R):
            d = ((k + half) % B) - half
            digits.append(d)
            k = (k - d) // B
        digits.reverse()
        e = tuple(int(sum(c * d for c, d in zip(row, digits))) for row in self.inv)
        self._decode[key] = e
        return e


def _rational_inverse(M):
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [v / pv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    inv = [row[n:] for row in A]
    for row in inv:
        for v in row:
            if v.denominator != 1:
                raise ValueError("order matrix must be unimodular for packed keys")
    return [[int(v) for v in row] for row in inv]


class _Poly:
    """Engine polynomial: parallel lists of keys (descending) and coefficients."""

    __slots__ = ("keys", "coeffs", "lt", "pe", "exps", "sugar", "deg")

    def __init__(self, keys, coeffs, packer, sugar, weights):
        self.keys = keys
        self.coeffs = coeffs
        self.lt = keys[0]
        self.exps = packer.exps(keys[0])
        self.pe = packer.pexp(self.exps)
        self.deg = sum(w * a for w, a in zip(weights, self.exps))
        self.sugar = max(sugar, self.deg)


class Engine:
    def __init__(self, ring: PolyRing, order, weights=None, budget=DEFAULT_BUDGET, trace=None):
        self.ring = ring
        self.field = ring.field
        self.n = ring.nvars
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * self.n
        self.packer = _Packer(order, self.n)
        self.budget = budget
        self.steps = 0
        self.trace = trace
        self.modular = isinstance(self.field, PrimeField)
        self.p = self.field.p if self.modular else None
        self.polys: list[_Poly] = []
        self._red_cache: dict = {}

    # -- conversion
    def to_dict(self, f: MultiPoly) -> dict:
        pk = self.packer
        if self.modular:
            return {pk.key(e): c for e, c in f.as_dict().items()}
        den = 1
        for c in f.as_dict().values():
            den = den * c.denominator // gcd(den, c.denominator)
        return {pk.key(e): int(c * den) for e, c in f.as_dict().items()}

    def make(self, d: dict, sugar: int = 0) -> _Poly:
        keys = sorted(d, reverse=True)
        coeffs = [d[k] for k in keys]
        if self.modular:
            inv = pow(coeffs[0], -1, self.p)
            p = self.p
            coeffs = [c * inv % p for c in coeffs]
        else:
            g = 0
            for c in coeffs:
                g = gcd(g, c)
            if coeffs[0] < 0:
                g = -g
            coeffs = [c // g for c in coeffs]
        for k in keys[:1]:
            e = self.packer.exps(k)
            if max(e) > self.packer.maxexp or any(v < 0 for v in e):
                raise OverflowError("exponent out of packing range")
        return _Poly(keys, coeffs, self.packer, sugar, self.weights)

    def to_multipoly(self, g: _Poly) -> MultiPoly:
        pk = self.packer
        if self.modular:
            return MultiPoly(self.ring, {pk.exps(k): c for k, c in zip(g.keys, g.coeffs)})
        lc = g.coeffs[0]
        return MultiPoly(self.ring, {pk.exps(k): Fraction(c, lc) for k, c in zip(g.keys, g.coeffs)})

    # -- reduction
    def _reducer(self, m: int):
        cache = self._red_cache
        hit = cache.get(m)
        npolys = len(self.polys)
        if hit is not None:
            idx, checked = hit
            if idx >= 0 or checked == npolys:
                return idx
            start = checked
        else:
            start = 0
        pe = self.packer.pexp(self.packer.exps(m))
        guard = self.packer.guard
        pegard = pe + guard
        polys = self.polys
        for i in range(start, npolys):
            if (pegard - polys[i].pe) & guard == guard:
                cache[m] = (i, npolys)
                return i
        cache[m] = (-1, npolys)
        return -1

    def reduce(self, p: dict, full: bool = True) -> dict:
        """Normal form of ``p`` (a key->coeff dict, consumed) w.r.t. all stored polys."""
        if self.modular:
            return self._reduce_mod(p, full)
        return self._reduce_int(p, full)

    def _reduce_mod(self, p: dict, full: bool) -> dict:
        P = self.p
        polys = self.polys
        out = {}
        steps = 0
        while p:
            m = max(p)
            c = p.pop(m)
            i = self._reducer(m)
            if i < 0:
                out[m] = c
                if not full:
                    out.update(p)
                    break
                continue
            g = polys[i]
            shift = m - g.lt
            keys, coeffs = g.keys, g.coeffs
            get = p.get
            for j in range(1, len(keys)):
                k = keys[j] + shift
                v = (get(k, 0) - c * coeffs[j]) % P
                if v:
                    p[k] = v
                elif k in p:
                    del p[k]
            steps += 1
        self._spend(steps)
        return out

    def _reduce_int(self, p: dict, full: bool) -> dict:
        # stored polys have positive leading coefficient a; for a term c*m
        # replace p by (a/d) p - (c/d) m/LT(g) g with d = gcd(a, c)
        polys = self.polys
        out = {}
        steps = 0
        while p:
            m = max(p)
            c = p.pop(m)
            i = self._reducer(m)
            if i < 0:
                out[m] = c
                if not full:
                    out.update(p)
                    break
                continue
            g = polys[i]
            a = g.coeffs[0]
            d = gcd(a, c)
            sa, sc = a // d, c // d
            if sa != 1:
                for k in p:
                    p[k] *= sa
                for k in out:
                    out[k] *= sa
            shift = m - g.lt
            keys, coeffs = g.keys, g.coeffs
            get = p.get
            for j in range(1, len(keys)):
                k = keys[j] + shift
                v = get(k, 0) - sc * coeffs[j]
                if v:
                    p[k] = v
                elif k in p:
                    del p[k]
            steps += 1
            if steps % 16 == 0:
                _remove_content(p, out)
        self._spend(steps)
        _remove_content(p, out)
        return out

    def _spend(self, steps: int):
        self.steps += steps
        if self.budget is not None and self.steps > self.budget:
            raise GroebnerBudgetExceeded(
                f"Groebner computation exceeded budget of {self.budget} reduction steps"
            )

    # -- S-polynomials
    def spoly(self, a: _Poly, b: _Poly) -> dict:
        lcm = self._lcm_key(a, b)
        sa, sb = lcm - a.lt, lcm - b.lt
        out: dict = {}
        if self.modular:
            P = self.p
            for k, c in zip(a.keys[1:], a.coeffs[1:]):
                out[k + sa] = c
            get = out.get
            for k, c in zip(b.keys[1:], b.coeffs[1:]):
                kk = k + sb
                v = (get(kk, 0) - c) % P
                if v:
                    out[kk] = v
                elif kk in out:
                    del out[kk]
            return out
        ca, cb = a.coeffs[0], b.coeffs[0]
        g = gcd(ca, cb)
        fa, fb = cb // g, ca // g
        for k, c in zip(a.keys[1:], a.coeffs[1:]):
            out[k + sa] = c * fa
        get = out.get
        for k, c in zip(b.keys[1:], b.coeffs[1:]):
            kk = k + sb
            v = get(kk, 0) - c * fb
            if v:
                out[kk] = v
            elif kk in out:
                del out[kk]
        return out

    def _lcm_exps(self, a: _Poly, b: _Poly) -> tuple:
        return tuple(max(x, y) for x, y in zip(a.exps, b.exps))

    def _lcm_key(self, a: _Poly, b: _Poly) -> int:
        return self.packer.key(self._lcm_exps(a, b))


def _remove_content(p: dict, out: dict):
    g = 0
    for v in p.values():
        g = gcd(g, v)
        if g == 1:
            return
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in p:
            p[k] //= g
        for k in out:
            out[k] //= g


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def buchberger(
    polys,
    ring: PolyRing,
    order,
    weights=None,
    budget=DEFAULT_BUDGET,
    trace=None,
    known_basis=None,
):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    ``known_basis`` may hold polynomials already forming a Groebner basis
    w.r.t. ``order``; pairs among them are never formed.  Returns
    ``(basis, steps)`` with ``basis`` a sorted list of monic MultiPolys.
    """
    eng = Engine(ring, order, weights, budget, trace)
    active: list[int] = []
    pairs: dict = {}
    heap: list = []

    def add(h: _Poly):
        idx = len(eng.polys)
        eng.polys.append(h)
        _gm_update(eng, active, pairs, heap, idx)

    prefix = []
    if known_basis:
        for f in known_basis:
            d = eng.to_dict(f)
            if d:
                prefix.append(eng.make(d, sugar=f.weighted_degree(eng.weights)))
        # a known GB: register without pairs among its members
        for h in sorted(prefix, key=lambda q: q.lt):
            if any(_divides(eng.polys[j].exps, h.exps) for j in active):
                eng.polys.append(h)
                continue
            eng.polys.append(h)
            active.append(len(eng.polys) - 1)

    inputs = []
    for f in polys:
        d = eng.to_dict(f)
        if d:
            inputs.append((f.weighted_degree(eng.weights), d))
    inputs.sort(key=lambda t: (t[0], max(t[1])))
    for s, d in inputs:
        r = eng.reduce(d)
        if r:
            add(eng.make(r, sugar=s))

    while heap:
        sugar, lcmkey, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        del pairs[(i, j)]
        a, b = eng.polys[i], eng.polys[j]
        s = eng.spoly(a, b)
        r = eng.reduce(s) if s else {}
        if r:
            h = eng.make(r, sugar=sugar)
            if trace is not None:
                trace.write(f"pair {i} {j} sugar={sugar} deg={h.deg} -> new {len(eng.polys)} terms={len(h.keys)}\n")
            add(h)
        elif trace is not None:
            trace.write(f"pair {i} {j} sugar={sugar} deg=- -> zero\n")

    basis = _interreduce(eng, active)
    return basis, eng.steps


def _gm_update(eng: Engine, active: list, pairs: dict, heap: list, hidx: int):
    """Gebauer-Moeller installation of a new basis element."""
    polys = eng.polys
    h = polys[hidx]
    he = h.exps
    weights = eng.weights

    def lcm_e(x):
        return tuple(max(a, b) for a, b in zip(he, x))

    cand = []
    for g in active:
        ge = polys[g].exps
        le = lcm_e(ge)
        coprime = all(a == 0 or b == 0 for a, b in zip(he, ge))
        cand.append((g, le, coprime))
    # chain criterion among new pairs
    kept = []
    for idx, (g, le, coprime) in enumerate(cand):
        if coprime:
            kept.append((g, le, coprime))
            continue
        dominated = False
        for jdx, (g2, le2, _) in enumerate(cand):
            if jdx > idx and _divides(le2, le):
                dominated = True
                break
        if not dominated:
            for g2, le2, _ in kept:
                if _divides(le2, le):
                    dominated = True
                    break
        if not dominated:
            kept.append((g, le, coprime))
    # old pairs killed by h
    dead = []
    for (i, j), le in pairs.items():
        if _divides(he, le):
            lih = lcm_e(polys[i].exps)
            ljh = lcm_e(polys[j].exps)
            if lih != le and ljh != le:
                dead.append((i, j))
    for key in dead:
        del pairs[key]
    for g, le, coprime in kept:
        if coprime:
            continue
        a, b = polys[g], h
        lk = eng.packer.key(le)
        sug = max(
            a.sugar + sum(w * (x - y) for w, x, y in zip(weights, le, a.exps)),
            b.sugar + sum(w * (x - y) for w, x, y in zip(weights, le, b.exps)),
        )
        pairs[(g, hidx)] = le
        heapq.heappush(heap, (sug, lk, g, hidx))
    active[:] = [g for g in active if not _divides(he, polys[g].exps)]
    active.append(hidx)


def _interreduce(eng: Engine, active: list) -> list:
    polys = sorted((eng.polys[i] for i in active), key=lambda q: q.lt)
    minimal = []
    for q in polys:
        if not any(_divides(m.exps, q.exps) for m in minimal):
            minimal.append(q)
    # leading terms of a minimal basis are mutually irreducible, so full
    # reduction against the others only rewrites tails
    out = []
    for i, q in enumerate(minimal):
        eng.polys = minimal[:i] + minimal[i + 1:]
        eng._red_cache = {}
        r = eng.reduce(dict(zip(q.keys, q.coeffs)))
        out.append(eng.to_multipoly(eng.make(r)))
    eng.polys = minimal
    eng._red_cache = {}
    return sorted(out, key=lambda f: eng.order.key(f.leading_term(eng.order)[0]), reverse=True)


class Reducer:
    """Exact normal forms modulo a fixed Groebner basis.

    Unlike the fraction-free reduction used inside Buchberger, the result is
    the true normal form (no rescaling), so it is linear in the input.
    """

    def __init__(self, basis, ring: PolyRing, order, weights=None):
        self.ring = ring
        self.order = order
        self.eng = Engine(ring, order, weights, budget=None)
        eng = self.eng
        self.field = ring.field
        for b in basis:
            d = eng.to_dict(b)
            if not d:
                continue
            g = eng.make(d)
            if not eng.modular:
                # exact monic coefficients
                lc = g.coeffs[0]
                g.coeffs = [Fraction(c, lc) for c in g.coeffs]
            eng.polys.append(g)

    def _to_dict(self, f: MultiPoly) -> dict:
        pk = self.eng.packer
        return {pk.key(e): c for e, c in f.as_dict().items()}

    def reduce_dict(self, p: dict) -> dict:
        eng = self.eng
        if eng.modular:
            return eng._reduce_mod(p, True)
        polys = eng.polys
        out = {}
        while p:
            m = max(p)
            c = p.pop(m)
            i = eng._reducer(m)
            if i < 0:
                out[m] = c
                continue
            g = polys[i]
            shift = m - g.lt
            get = p.get
            for k0, gc in zip(g.keys[1:], g.coeffs[1:]):
                k = k0 + shift
                v = get(k, 0) - c * gc
                if v:
                    p[k] = v
                elif k in p:
                    del p[k]
        return out

    def reduce(self, f: MultiPoly) -> MultiPoly:
        out = self.reduce_dict(self._to_dict(f))
        pk = self.eng.packer
        return MultiPoly(self.ring, {pk.exps(k): c for k, c in out.items()})

    def is_zero(self, f: MultiPoly) -> bool:
        return not self.reduce_dict(self._to_dict(f))


def certify(basis, ring: PolyRing, order, weights=None) -> bool:
    """Buchberger certificate for ``basis``.

    The basis is fed through the Gebauer-Moeller pair selection exactly as
    Buchberger's algorithm would; the basis is Groebner iff every surviving
    S-polynomial reduces to zero modulo it.
    """
    eng = Engine(ring, order, weights, budget=None)
    active: list[int] = []
    pairs: dict = {}
    heap: list = []
    polys = []
    for f in basis:
        d = eng.to_dict(f)
        if d:
            polys.append(eng.make(d, sugar=f.weighted_degree(eng.weights)))
    polys.sort(key=lambda q: q.lt)
    for h in polys:
        eng.polys.append(h)
        _gm_update(eng, active, pairs, heap, len(eng.polys) - 1)
    for (i, j) in sorted(pairs):
        s = eng.spoly(eng.polys[i], eng.polys[j])
        if s and eng.reduce(s, full=False):
            return False
    return True
