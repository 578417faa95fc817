"""Hilbert series of monomial ideals.

The numerator N(t) of ``HS(S/I) = N(t) / prod(1 - t^w_i)`` is computed by the
pivot recursion ``N(I) = N(I + (p)) + t^deg(p) N(I : p)`` with a pure-power
pivot ``p = x_i^e``.  Pairwise coprime generators are the base case.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Poly = list  # integer coefficients, index = power of t


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a: Poly, k: int) -> Poly:
    return [0] * k + list(a) if a else []


def _trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _one_minus(k: int) -> Poly:
    if k == 0:
        return []
    out = [0] * (k + 1)
    out[0] = 1
    out[k] = -1
    return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens) -> list:
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(_divides(m, g) for m in out):
            out.append(g)
    return out


def _deg(e, w) -> int:
    return sum(a * b for a, b in zip(e, w))


def hilbert_numerator(gens, nvars: int, weights=None) -> Poly:
    """Numerator of the Hilbert series of ``k[x]/(gens)`` for monomial gens."""
    w = tuple(weights) if weights is not None else (1,) * nvars
    return _numer(minimalize(gens), w)


def _numer(gens: list, w) -> Poly:
    if not gens:
        return [1]
    n = len(w)
    # base case: pairwise coprime generators
    used = [0] * n
    coprime = True
    for g in gens:
        for i, a in enumerate(g):
            if a:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            out = _pmul(out, _one_minus(_deg(g, w)))
        return out
    # pivot on the variable shared by most generators
    counts = [0] * n
    for g in gens:
        for i, a in enumerate(g):
            if a:
                counts[i] += 1
    i = max(range(n), key=lambda k: counts[k])
    exps = sorted(g[i] for g in gens if g[i])
    e = exps[len(exps) // 2]
    p = tuple(e if k == i else 0 for k in range(n))
    if any(_divides(g, p) for g in gens):
        e = exps[0]
        p = tuple(e if k == i else 0 for k in range(n))
    plus = minimalize(gens + [p])
    colon = minimalize(tuple(max(a - b, 0) for a, b in zip(g, p)) for g in gens)
    return _padd(_numer(plus, w), _shift(_numer(colon, w), _deg(p, w)))


@dataclass(frozen=True)
class HilbertData:
    """Projective dimension, degree and Hilbert series numerator.

    ``numerator`` is N(t) over ``(1-t)^nvars``; ``reduced`` is N(t) divided by
    the maximal power of (1-t).  ``dimension`` is -1 for the empty scheme.
    """

    nvars: int
    dimension: int
    degree: int
    numerator: tuple
    reduced: tuple = field(default=())

    def hilbert_function(self, d: int) -> int:
        """Value of the Hilbert function in degree d (standard grading)."""
        from math import comb

        n = self.nvars
        return sum(c * comb(d - k + n - 1, n - 1) for k, c in enumerate(self.numerator) if d - k >= 0)

    def as_dict(self) -> dict:
        return {"dimension": self.dimension, "degree": self.degree, "numerator": list(self.numerator)}


def _divide_one_minus_t(a: Poly):
    """Return a / (1 - t) if exact, else None."""
    if not a:
        return None
    if sum(a) != 0:
        return None
    # a = (1 - t) b  =>  b_k = sum_{j<=k} a_j
    out = []
    acc = 0
    for v in a[:-1]:
        acc += v
        out.append(acc)
    return _trim(out)


def hilbert_data_from_leading(leading, nvars: int) -> HilbertData:
    """HilbertData of a homogeneous ideal from its leading monomials."""
    num = hilbert_numerator(leading, nvars)
    if not num:
        return HilbertData(nvars, -1, 0, (), ())
    red = list(num)
    m = 0
    while True:
        q = _divide_one_minus_t(red)
        if q is None:
            break
        red = q
        m += 1
    krull = nvars - m
    if krull <= 0:
        return HilbertData(nvars, -1, 0, tuple(num), tuple(red))
    return HilbertData(nvars, krull - 1, sum(red), tuple(num), tuple(red))
