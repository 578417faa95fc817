"""End-to-end acceptance checks, one recorded line per criterion.

Expensive loci and quotients are cached at module level so the companion
tests and the certificate sweep reuse them.
"""

import itertools
import json
import random
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import pytest
from helpers import form_proportional, proportional

from luroth import detector, fixtures
from luroth.cli import main
from luroth.detector import INDETERMINATE, LUROTH, bitangent_conic, bitangent_ideal, singular_locus
from luroth.exactla import Matrix, det, kernel
from luroth.groebner.ideal import Ideal, groebner
from luroth.invariants import (
    CUBIC_INVARIANT_SCALE,
    adual,
    apolar_conics,
    aronhold,
    aronhold_table,
    bordered_recover,
    build_L,
    cubic_invariant,
    fermat_cubic_sample,
    format_aronhold_table,
    generate_aronhold_table,
    poly_sqrt,
    scorza,
    trilinear_A,
    wm_quartic,
)
from luroth.ring import GF, QQ, PolyRing, TernaryForm, binary_apolarity, grevlex, restrict_to_line

pytestmark = pytest.mark.slow

P = 65521
FP = GF(P)
FIELDS = ((FP, 100), (QQ, 20))  # property-suite sample counts per field


@lru_cache(maxsize=None)
def _locus(name, p=P):
    return singular_locus(fixtures.NAMED[name](), GF(p) if p else QQ)


@lru_cache(maxsize=None)
def _quotients(name, p=P):
    return detector._quotient_data(_locus(name, p), detector.DEFAULT_BUDGET, None, True)


def _hd(H):
    return (H.dimension, H.degree)


def _cli_json(capsys, *argv):
    code = main([*argv, "--json"])
    out, _ = capsys.readouterr()
    return code, json.loads(out)


def _report(record, number, failures, detail):
    passed = not failures
    record(number, passed, detail if passed else "; ".join(failures))
    assert passed, failures


# --------------------------------------------------------------------------
# 1. pentalateral curve with delta = 1
# --------------------------------------------------------------------------


def test_criterion_1_luroth_curve(capsys, record_criterion):
    code, rep = _cli_json(capsys, "detect", "@luroth")
    r = rep["result"]
    d = r["diagnostics"]
    failures = []
    if code != 0:
        failures.append(f"exit code {code}")
    if d.get("singular_locus") != {"dimension": 0, "degree": 29}:
        failures.append(f"singular locus {d.get('singular_locus')}")
    if d.get("quotient") != {"dimension": 0, "degree": 1}:
        failures.append(f"quotient {d.get('quotient')}")
    if d.get("conic_checks") != {"gradient_vanishes": True, "smooth": True}:
        failures.append(f"conic checks {d.get('conic_checks')}")
    if r["tag"] != LUROTH or d.get("delta") != 1:
        failures.append(f"tag {r['tag']} delta {d.get('delta')}")
    ld = d.get("luroth_degree", {})
    if ld.get("L") != 54 or ld.get("identity") != "54 = delta * L = 1 * 54":
        failures.append(f"degree identity {ld}")
    Q = TernaryForm(QQ, 2, fixtures.PENTALATERAL_CONIC)
    if not proportional([Fraction(c) for c in r["conic"] or ()], Q.coeffs):
        failures.append(f"conic {r['conic']}")
    if not r.get("pentalateral") or len(r["pentalateral"]["lines"]) != 5:
        failures.append("pentalateral missing")

    main(["detect", "@luroth"])
    text = capsys.readouterr()[0]
    if "54 = delta * L = 1 * 54  =>  L = 54" not in text:
        failures.append("text report lacks the degree identity")
    _report(record_criterion, 1, failures, "Sing(WM_f) 0-dim deg 29; J:C one smooth conic; Luroth; delta 1; L = 54")


# --------------------------------------------------------------------------
# 2. 28 bitangents
# --------------------------------------------------------------------------


def test_criterion_2_bitangents(capsys, record_criterion):
    failures = []
    code, rep = _cli_json(capsys, "bitangents", "@klein")
    h = rep["result"]["hilbert"]
    if code != 0 or (h["dimension"], h["degree"]) != (0, 28):
        failures.append(f"Klein: {h}")
    rng = random.Random(31337)
    done = 0
    while done < 10:
        f = fixtures.random_quartic(FP, rng)
        if det(build_L(f)) == 0:
            continue
        H = bitangent_ideal(f).hilbert
        if _hd(H) != (0, 28):
            failures.append(f"random quartic {done}: {_hd(H)}")
        done += 1
    _report(record_criterion, 2, failures, "Klein and 10 random quartics mod p: dim 0, degree 28")


# --------------------------------------------------------------------------
# 3. Edge quartic
# --------------------------------------------------------------------------


@pytest.mark.xfail(strict=True, raises=AssertionError, reason="40 and 12 only appear in characteristic 101; see README")
def test_criterion_3_edge(record_criterion):
    H = _locus("edge").hilbert
    GQ, _ = _quotients("edge")
    got = (H.degree, detector._count_from(GQ.hilbert_data()))
    passed = got == (40, 12)
    record_criterion(3, passed, f"Z/{P}: locus degree {got[0]}, theta count {got[1]} (expected 40 and 12)")
    assert passed


def test_edge_numbers_in_characteristic_101():
    t = detector.count_pentalateral_thetas(fixtures.edge(), GF(101))
    assert _hd(t.locus) == (0, 40)
    assert _hd(t.quotient) == (0, 12) and t.value == 12


def test_edge_locus_over_q_and_other_prime():
    assert _hd(_locus("edge", 0).hilbert) == (0, 28)
    assert _hd(_locus("edge", 65519).hilbert) == (0, 28)


# --------------------------------------------------------------------------
# 4. quartic with a conic of singular conics
# --------------------------------------------------------------------------


@pytest.mark.xfail(strict=True, raises=AssertionError, reason="the full saturation keeps one point, not 8; see README")
def test_criterion_4_conic_component(record_criterion):
    H = _locus("conic-component").hilbert
    _, GS = _quotients("conic-component")
    HS = GS.hilbert_data()
    passed = H.dimension == 1 and HS.dimension == 0 and HS.degree == 8
    record_criterion(
        4, passed, f"locus dim {H.dimension}; saturation dim {HS.dimension} degree {HS.degree} (expected dim 0, 8 smooth conics)"
    )
    assert passed


def test_conic_component_single_colon_gives_eight():
    H = _locus("conic-component").hilbert
    GQ, GS = _quotients("conic-component")
    assert _hd(H) == (1, 2)
    assert _hd(GQ.hilbert_data()) == (0, 8)
    assert _hd(GS.hilbert_data()) == (0, 1)


def test_l2_single_colon_gives_seven():
    GQ, GS = _quotients("l2")
    assert _hd(GQ.hilbert_data()) == (0, 7)
    assert GS.hilbert_data().dimension == -1


# --------------------------------------------------------------------------
# 5. desmic and Caporali
# --------------------------------------------------------------------------


def test_criterion_5_degenerate_L(capsys, record_criterion):
    failures = []
    for name in ("desmic", "caporali"):
        code, rep = _cli_json(capsys, "detect", f"@{name}")
        r = rep["result"]
        d = r["diagnostics"]
        if code != 0 or r["tag"] != INDETERMINATE:
            failures.append(f"{name}: tag {r['tag']}")
        if d.get("rank_L_f") != 14 or not d.get("wm_double_quadric"):
            failures.append(f"{name}: rank {d.get('rank_L_f')} double quadric {d.get('wm_double_quadric')}")
        W = wm_quartic(fixtures.NAMED[name]())
        root = poly_sqrt(W)
        if root is None or root[0].scale(root[1]) * root[0] != W:
            failures.append(f"{name}: square root of WM_f")
    _report(record_criterion, 5, failures, "rank L_f 14, WM_f a double quadric, Indeterminate (desmic, Caporali)")


# --------------------------------------------------------------------------
# 6. double conic
# --------------------------------------------------------------------------


@pytest.mark.xfail(strict=True, raises=AssertionError, reason="the full saturation is empty; the degree-4 curve is J : C; see README")
def test_criterion_6_double_conic(record_criterion):
    H = _locus("double-conic").hilbert
    _, GS = _quotients("double-conic")
    HS = GS.hilbert_data()
    passed = _hd(H) == (2, 10) and _hd(HS) == (1, 4)
    record_criterion(
        6, passed, f"locus dim {H.dimension} degree {H.degree}; saturation dim {HS.dimension} (expected a degree-4 curve)"
    )
    assert passed


def test_double_conic_single_colon_curve():
    GQ, _ = _quotients("double-conic")
    assert _hd(_locus("double-conic").hilbert) == (2, 10)
    assert _hd(GQ.hilbert_data()) == (1, 4)


# --------------------------------------------------------------------------
# 7. identity suites
# --------------------------------------------------------------------------


def _det4(F, ls):
    d = det(Matrix(F, [l.coeffs for l in ls]))
    return F.mul(144, F.mul(F.mul(d, d), F.mul(d, d)))


def _check_trilinear(F, n, rng):
    bad = 0
    for _ in range(n):
        f, g, h = (fixtures.random_quartic(F, rng) for _ in range(3))
        vals = {trilinear_A(*p) for p in itertools.permutations((f, g, h))}
        bad += len(vals) != 1
        bad += trilinear_A(f, f, f) != F.mul(CUBIC_INVARIANT_SCALE, cubic_invariant(f))
        ls = [fixtures.random_line(F, rng) for _ in range(3)]
        bad += trilinear_A(*(l**4 for l in ls)) != _det4(F, ls)
    return bad


def _check_bordered(F, n, rng):
    bad = 0
    for _ in range(n):
        f, g = fixtures.random_quartic(F, rng), fixtures.random_quartic(F, rng)
        if det(build_L(g)) == 0:
            continue
        bad += not form_proportional(bordered_recover(g, adual(f, g)), f)
    return bad


def _check_scorza_pairing(F, n, rng):
    bad = 0
    for _ in range(n):
        g, _, _ = fixtures.clebsch_sample(rng, F)
        (Q,) = apolar_conics(g)
        bad += not form_proportional(adual(g, scorza(g)), Q * Q)
    return bad


def _check_wm_gradient(F, n, rng):
    bad = 0
    z = TernaryForm.linear(F, 0, 0, 1)
    for _ in range(n):
        f = fixtures.bitangent_quartic(F, rng)
        q = bitangent_conic(f, z)
        bad += q is None or any(d.evaluate(q.coeffs) != 0 for d in wm_quartic(f).gradient())
    return bad


def _pentalateral_D(F, lines):
    rows = [[1, 0, 0, 0, 0, 0]]
    for a0, a1, a2 in lines:
        rows.append([x % P for x in (a0 * a0, a0 * a1, a0 * a2, a1 * a1, a1 * a2, a2 * a2)])
    return det(Matrix(F, rows))


def _pentalateral_P(F, lines):
    f = fixtures.pentalateral_sum(lines, None, F)
    x0 = TernaryForm.linear(F, 1, 0, 0)
    return binary_apolarity(restrict_to_line(f, x0), restrict_to_line(scorza(f), x0))


def _check_D2_P(rng):
    scale, bad = None, 0
    for _ in range(30):
        lines = [tuple(rng.randrange(P) for _ in range(3)) for _ in range(5)]
        D, Pv = _pentalateral_D(FP, lines), _pentalateral_P(FP, lines)
        D2 = FP.mul(D, D)
        if scale is None and D2:
            scale = FP.div(Pv, D2)
        bad += scale is None or Pv != FP.mul(scale, D2)
    return bad + (scale in (None, 0))


def _conic_point(Q, base, v):
    # second intersection of the conic with the line through base and v
    B = _polar(Q, base, v)
    return [Q.evaluate(v) * b - 2 * B * c for b, c in zip(base, v)]


def _polar(Q, a, b):
    # symmetric bilinear form with B(a, a) = Q(a)
    s = [x + y for x, y in zip(a, b)]
    return (Q.evaluate(s) - Q.evaluate(a) - Q.evaluate(b)) / 2


def _check_apolarity_on_lines(rng):
    bad = 0
    for _ in range(5):
        g, lines, _ = fixtures.clebsch_sample(rng)
        (Q,) = apolar_conics(g)
        S = scorza(g)
        on = []
        while len(on) < 5:
            v = [rng.randint(-9, 9) for _ in range(3)]
            pt = _conic_point(Q, lines[0], v)
            if any(pt) and not proportional(pt, lines[0]):
                on.append(pt)
        off = [fixtures.random_line(QQ, rng).coeffs for _ in range(5)]
        for l in on + off:
            L = TernaryForm(QQ, 1, l)
            ap = binary_apolarity(restrict_to_line(g, L), restrict_to_line(S, L)) == 0
            bad += ap != (Q.evaluate(l) == 0)
        bad += any(Q.evaluate(l) != 0 for l in on)
    return bad


def _scorza_closed_form(lines):
    out = TernaryForm.zero(QQ, 4)
    for i in range(5):
        k = 1
        for tri in itertools.combinations([j for j in range(5) if j != i], 3):
            k *= det(Matrix(QQ, [lines[j] for j in tri]))
        prod = TernaryForm(QQ, 0, [1])
        for j in range(5):
            if j != i:
                prod = prod * TernaryForm(QQ, 1, lines[j])
        out = out + prod.scale(k)
    return out


def _check_scorza_formula(rng):
    bad = 0
    for _ in range(5):
        lines = [fixtures.random_line(QQ, rng).coeffs for _ in range(5)]
        bad += not form_proportional(scorza(fixtures.pentalateral_sum(lines)), _scorza_closed_form(lines))
    return bad


def test_criterion_7_identities(record_criterion):
    rng = random.Random(777)
    failures = []
    for F, n in FIELDS:
        for name, check in (
            ("trilinear", _check_trilinear),
            ("bordered", _check_bordered),
            ("A(f,S(f),*) = Q^2", _check_scorza_pairing),
            ("WM gradient", _check_wm_gradient),
        ):
            bad = check(F, n, rng)
            if bad:
                failures.append(f"{name} over {F.spec()}: {bad} failures")
    for name, check in (("D^2 = P", _check_D2_P), ("apolarity on lines", _check_apolarity_on_lines), ("Scorza formula", _check_scorza_formula)):
        bad = check(rng)
        if bad:
            failures.append(f"{name}: {bad} failures")
    W = wm_quartic(fixtures.luroth_example())
    if any(d.evaluate(fixtures.PENTALATERAL_CONIC) != 0 for d in W.gradient()):
        failures.append("WM gradient at the pentalateral conic")
    _report(record_criterion, 7, failures, "all identity suites exact (100 mod p, 20 over Q)")


# --------------------------------------------------------------------------
# 8. Aronhold table
# --------------------------------------------------------------------------


def test_criterion_8_aronhold(record_criterion):
    failures = []
    # generation raises unless the modular kernel is one-dimensional
    table = generate_aronhold_table()
    shipped = resources.files("luroth.data").joinpath("aronhold.txt").read_text()
    body = "".join(l + "\n" for l in shipped.splitlines() if l.strip() and not l.startswith("#"))
    if table != aronhold_table() or format_aronhold_table(table) != body:
        failures.append("regenerated table differs from the shipped file")
    rng = random.Random(2718281)
    zero = sum(aronhold(fermat_cubic_sample(rng, bound=9)) == 0 for _ in range(200))
    if zero != 200:
        failures.append(f"vanishes on {zero}/200 held-out cubics")
    X, Y, Z = fixtures.coordinates()
    if aronhold(X * Y * Z) == 0:
        failures.append("vanishes on xyz")
    _report(record_criterion, 8, failures, f"1-dim solution space; {len(table)} terms; 200/200 held-out zeros; Ar(xyz) != 0")


# --------------------------------------------------------------------------
# 9. Groebner certificates and Hilbert data
# --------------------------------------------------------------------------


def _mono_eval(F, e, p):
    v = F.one
    for a, k in zip(p, e):
        v = F.mul(v, pow(a, k, F.p))
    return v


def _vanishing_ideal(F, R, pts, d):
    mons = [e for e in itertools.product(range(d + 1), repeat=R.nvars) if sum(e) == d]
    rows = [[_mono_eval(F, e, p) for e in mons] for p in pts]
    return Ideal([R.from_dict(dict(zip(mons, v))) for v in kernel(Matrix(F, rows))], R)


def _projective_count(F, gens, n):
    count = 0
    for c in itertools.product(range(F.p), repeat=n):
        if any(c) and c[next(i for i in range(n) if c[i])] == 1 and all(g.evaluate(c) == 0 for g in gens):
            count += 1
    return count


def _random_zero_dim_ideal(F, rng):
    n = rng.choice((3, 4))
    R = PolyRing(F, n, ("a", "b", "c", "d")[:n], grevlex(n))
    k = rng.randint(1, 5)
    pts = set()
    while len(pts) < k:
        c = [rng.randrange(F.p) for _ in range(n)]
        if not any(c):
            continue
        lead = next(i for i in range(n) if c[i])
        inv = F.inv(c[lead])
        pts.add(tuple(F.mul(x, inv) for x in c))
    return R, _vanishing_ideal(F, R, sorted(pts), k), len(pts), n


SHIPPED = ("klein", "cuspidal", "luroth", "edge", "conic-component", "l2", "double-conic")


def test_criterion_9_groebner(record_criterion):
    failures = []
    certified = 0
    for name in SHIPPED:
        bases = [_locus(name).basis]
        if name not in ("klein", "cuspidal"):
            bases.extend(b for b in _quotients(name) if b is not None)
        for G in bases:
            certified += 1
            if not (G.is_groebner() and G.is_reduced()):
                failures.append(f"{name}: basis fails its certificate")
    rng = random.Random(99)
    counted = 0
    for i in range(50):
        F = GF((5, 7, 11)[i % 3])
        R, I, k, n = _random_zero_dim_ideal(F, rng)
        G = groebner(I)
        H = G.hilbert_data()
        brute = _projective_count(F, G.polys, n)
        counted += 1
        if H.dimension != 0 or H.degree != brute or brute != k:
            failures.append(f"ideal {i} over Z/{F.p}: hilbert {_hd(H)}, brute force {brute}, points {k}")
    _report(
        record_criterion, 9, failures, f"{certified} shipped bases certified; {counted} ideals match brute-force counts"
    )
