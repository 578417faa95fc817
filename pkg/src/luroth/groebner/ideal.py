"""Ideals, reduced Groebner bases and the usual ideal operations."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ring import MultiPoly, PolyRing, elimination_order, grevlex
from .engine import DEFAULT_BUDGET, Reducer, buchberger, certify
from .hilbert import HilbertData, hilbert_data_from_leading


class NonHomogeneousError(ValueError):
    """Hilbert data was requested for a non-homogeneous ideal."""


class Ideal:
    """Ideal of ``ring`` given by a list of generators."""

    def __init__(self, gens, ring: PolyRing | None = None):
        gens = [g for g in gens if not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("ring must be given for the zero ideal")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generators live in different rings")
        self.ring = ring
        self.gens = tuple(g.change_ring(ring) if g.ring is not ring else g for g in gens)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def is_homogeneous(self, weights=None) -> bool:
        return all(g.is_homogeneous(weights) for g in self.gens)

    def groebner(self, order=None, **kw) -> "GroebnerBasis":
        return groebner(self, order, **kw)

    def __repr__(self):
        return f"Ideal({len(self.gens)} generators in {self.ring.nvars} variables)"


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis (monic, sorted by decreasing leading term)."""

    ring: PolyRing
    order: object
    polys: list
    steps: int = 0
    weights: tuple | None = None
    _reducer: Reducer | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def ideal(self) -> Ideal:
        return Ideal(self.polys, self.ring)

    def leading_monomials(self) -> list:
        return [p.leading_term(self.order)[0] for p in self.polys]

    @property
    def reducer(self) -> Reducer:
        if self._reducer is None:
            self._reducer = Reducer(self.polys, self.ring, self.order, self.weights)
        return self._reducer

    def reduce(self, f: MultiPoly) -> MultiPoly:
        """Normal form of f."""
        return self.reducer.reduce(f.change_ring(self.ring) if f.ring != self.ring else f)

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()

    def contains_ideal(self, other) -> bool:
        gens = other.gens if isinstance(other, Ideal) else list(other)
        return all(self.contains(g) for g in gens)

    def is_unit(self) -> bool:
        return any(all(k == 0 for k in m) for m in self.leading_monomials())

    def is_groebner(self, full: bool = False) -> bool:
        """Buchberger certificate: S-polynomials reduce to zero.

        By default only the pairs kept by the Gebauer-Moeller criteria are
        reduced, which is sufficient.  ``full=True`` checks every pair whose
        leading monomials are not coprime.
        """
        if not full:
            return certify(self.polys, self.ring, self.order, self.weights)
        order = self.order
        lts = [p.leading_term(order) for p in self.polys]
        R = self.reducer
        for i in range(len(self.polys)):
            ei, ci = lts[i]
            for j in range(i):
                ej, cj = lts[j]
                if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
                    continue
                lcm = tuple(max(a, b) for a, b in zip(ei, ej))
                s = _mono_mul(self.polys[i], tuple(a - b for a, b in zip(lcm, ei)), ci) - _mono_mul(
                    self.polys[j], tuple(a - b for a, b in zip(lcm, ej)), cj
                )
                if not R.is_zero(s):
                    return False
        return True

    def is_reduced(self) -> bool:
        order = self.order
        lms = self.leading_monomials()
        for p, m in zip(self.polys, lms):
            if p.leading_term(order)[1] != self.ring.field.one:
                return False
            for e in p.as_dict():
                for m2 in lms:
                    if m2 is not m and all(a <= b for a, b in zip(m2, e)):
                        return False
        return True

    def hilbert_data(self) -> HilbertData:
        if not all(p.is_homogeneous() for p in self.polys):
            raise NonHomogeneousError("Hilbert data needs a homogeneous ideal")
        return hilbert_data_from_leading(self.leading_monomials(), self.ring.nvars)


def _mono_mul(p: MultiPoly, e: tuple, scale_inv) -> MultiPoly:
    F = p.ring.field
    inv = F.inv(scale_inv)
    return MultiPoly(p.ring, {tuple(a + b for a, b in zip(k, e)): F.mul(c, inv) for k, c in p.as_dict().items()})


def groebner(
    I: Ideal,
    order=None,
    budget: int | None = DEFAULT_BUDGET,
    trace=None,
    weights=None,
    known_basis=None,
) -> GroebnerBasis:
    """Reduced Groebner basis of I (default order: the ring's order)."""
    order = order or I.ring.order
    ring = I.ring.with_order(order)
    gens = [g.change_ring(ring) for g in I.gens]
    if weights is None:
        weights = order.weights() if all(w > 0 for w in order.weights()) else None
    kb = [g.change_ring(ring) for g in known_basis] if known_basis else None
    basis, steps = buchberger(gens, ring, order, weights=weights, budget=budget, trace=trace, known_basis=kb)
    return GroebnerBasis(ring, order, basis, steps, tuple(weights) if weights else None)


def hilbert_data(G: GroebnerBasis) -> HilbertData:
    return G.hilbert_data()


# --------------------------------------------------------------------------
# quotient, saturation, intersection, elimination
# --------------------------------------------------------------------------


def _extend_ring(ring: PolyRing, names, order) -> PolyRing:
    return PolyRing(ring.field, ring.nvars + len(names), tuple(ring.names) + tuple(names), order)


def _embed(p: MultiPoly, ring: PolyRing, at: int = 0, extra: int = 1) -> MultiPoly:
    """Embed p into a ring with ``extra`` new variables inserted at position ``at``."""
    z = (0,) * extra
    return MultiPoly(ring, {e[:at] + z + e[at:]: c for e, c in p.as_dict().items()})


def _restrict(p: MultiPoly, ring: PolyRing, drop: tuple) -> MultiPoly:
    """Drop variable positions ``drop`` (which must not occur in p)."""
    out = {}
    for e, c in p.as_dict().items():
        out[tuple(a for i, a in enumerate(e) if i not in drop)] = c
    return MultiPoly(ring, out)


def _u_colon(I: Ideal, h: MultiPoly, infinite: bool, budget, trace) -> list:
    """Generators of ``I : h`` (or ``I : h^inf``) via an auxiliary variable u = h.

    For weighted-homogeneous J = I + (u - h) and the weighted revlex order with
    u smallest, dividing the Groebner basis of J by u (once, or by the largest
    power) gives a basis of ``J : u`` (resp. ``J : u^inf``); substituting u = h
    maps it onto generators of the quotient (resp. saturation) in the
    original ring.
    """
    R = I.ring
    n = R.nvars
    dh = h.total_degree()
    weights = (1,) * n + (dh,)
    order = grevlex(n + 1, weights)
    S = _extend_ring(R, ("_u",), order)
    u = S.var(n)
    gens = [_embed(g, S, n) for g in I.gens] + [u - _embed(h, S, n)]
    basis, _ = buchberger(gens, S, order, weights=weights, budget=budget, trace=trace)
    out = []
    for g in basis:
        d = g.as_dict()
        a = min(e[n] for e in d)
        k = (a if infinite else min(a, 1))
        shifted = {e[:n] + (e[n] - k,): c for e, c in d.items()}
        out.append(MultiPoly(S, shifted))
    images = R.gens() + [h]
    return [g.subs(images) for g in out]


def _elim_quotient(I: Ideal, h: MultiPoly, budget, trace) -> list:
    """Generators of ``I : h`` as ``(I ∩ (h)) / h``."""
    J = intersect(I, Ideal([h], I.ring), budget=budget, trace=trace)
    return [divide_exact(g, h) for g in J.gens]


def ideal_quotient(I: Ideal, h: MultiPoly, method: str = "auto", budget=DEFAULT_BUDGET, trace=None) -> Ideal:
    """The colon ideal ``(I : h)``.

    ``method`` is "aux" (auxiliary variable, homogeneous input only),
    "elim" (intersection and elimination) or "auto".
    """
    h = h.change_ring(I.ring) if h.ring != I.ring else h
    if h.is_zero():
        return Ideal([I.ring.one()], I.ring)
    if method == "auto":
        method = "aux" if I.is_homogeneous() and h.is_homogeneous() else "elim"
    if method == "aux":
        if not (I.is_homogeneous() and h.is_homogeneous()):
            raise NonHomogeneousError("the auxiliary-variable quotient needs homogeneous input")
        gens = _u_colon(I, h, False, budget, trace)
    elif method == "elim":
        gens = _elim_quotient(I, h, budget, trace)
    else:
        raise ValueError(f"unknown quotient method {method!r}")
    return Ideal(gens, I.ring)


def saturation(I: Ideal, h: MultiPoly, method: str = "auto", budget=DEFAULT_BUDGET, trace=None) -> Ideal:
    """The saturation ``(I : h^inf)``."""
    h = h.change_ring(I.ring) if h.ring != I.ring else h
    if h.is_zero():
        return Ideal([I.ring.one()], I.ring)
    if method == "auto":
        method = "aux" if I.is_homogeneous() and h.is_homogeneous() else "elim"
    if method == "aux":
        if not (I.is_homogeneous() and h.is_homogeneous()):
            raise NonHomogeneousError("the auxiliary-variable saturation needs homogeneous input")
        return Ideal(_u_colon(I, h, True, budget, trace), I.ring)
    # iterate quotients until the ideal stabilises
    cur = groebner(I, budget=budget, trace=trace)
    while True:
        nxt = ideal_quotient(cur.ideal(), h, method="elim", budget=budget, trace=trace)
        G = groebner(nxt, budget=budget, trace=trace)
        if cur.contains_ideal(G.polys):
            return cur.ideal()
        cur = G


def intersect(I: Ideal, J: Ideal, budget=DEFAULT_BUDGET, trace=None) -> Ideal:
    """``I ∩ J`` via ``t I + (1 - t) J`` and elimination of t."""
    R = I.ring
    n = R.nvars
    order = elimination_order(n + 1, 1)
    S = PolyRing(R.field, n + 1, ("_t",) + tuple(R.names), order)
    t = S.var(0)
    gens = [t * _embed(g, S, 0) for g in I.gens] + [(S.one() - t) * _embed(g, S, 0) for g in J.gens]
    basis, _ = buchberger(gens, S, order, budget=budget, trace=trace)
    keep = [g for g in basis if all(e[0] == 0 for e in g.as_dict())]
    return Ideal([_restrict(g, R, (0,)) for g in keep], R)


def eliminate(I: Ideal, eliminate_vars, budget=DEFAULT_BUDGET, trace=None) -> Ideal:
    """Elimination ideal ``I ∩ k[remaining variables]`` (block order).

    ``eliminate_vars`` lists the variable indices to remove; the result lives
    in the same ring and only involves the remaining variables.
    """
    R = I.ring
    n = R.nvars
    elim = sorted(set(eliminate_vars))
    if not elim:
        return I
    if len(elim) == n:
        G = groebner(I, budget=budget, trace=trace)
        return Ideal([R.one()] if G.is_unit() else [], R)
    rest = [i for i in range(n) if i not in elim]
    perm = elim + rest
    order = elimination_order(n, len(elim))
    S = PolyRing(R.field, n, tuple(R.names[i] for i in perm), order)

    def to_s(p):
        return MultiPoly(S, {tuple(e[i] for i in perm): c for e, c in p.as_dict().items()})

    inv = [perm.index(i) for i in range(n)]

    def from_s(p):
        return MultiPoly(R, {tuple(e[inv[i]] for i in range(n)): c for e, c in p.as_dict().items()})

    basis, _ = buchberger([to_s(g) for g in I.gens], S, order, budget=budget, trace=trace)
    k = len(elim)
    keep = [g for g in basis if all(all(a == 0 for a in e[:k]) for e in g.as_dict())]
    return Ideal([from_s(g) for g in keep], R)


def divide_exact(p: MultiPoly, h: MultiPoly) -> MultiPoly:
    """``p / h``; raises ValueError when h does not divide p."""
    R = p.ring
    F = R.field
    order = R.order
    he, hc = h.leading_term(order)
    hinv = F.inv(hc)
    q = {}
    rem = p
    while not rem.is_zero():
        e, c = rem.leading_term(order)
        d = tuple(a - b for a, b in zip(e, he))
        if any(v < 0 for v in d):
            raise ValueError("polynomial is not divisible")
        coef = F.mul(c, hinv)
        q[d] = coef
        rem = rem - h * R.monomial(d, coef)
    return R.from_dict(q)
