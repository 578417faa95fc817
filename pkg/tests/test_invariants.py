import itertools
import random

import pytest
from helpers import form_proportional, proportional

from luroth import fixtures
from luroth.exactla import Matrix, det, rank
from luroth.invariants import (
    CUBIC_INVARIANT_SCALE,
    SingularRecoveryError,
    adual,
    apolar_conics,
    aronhold,
    bordered_recover,
    build_L,
    catalecticant,
    clebsch_invariant,
    conic_discriminant,
    conic_matrix,
    conic_sqrt,
    cubic_invariant,
    is_smooth_conic,
    poly_sqrt,
    scorza,
    trilinear_A,
    wm_quartic,
)
from luroth.ring import GF, QQ, TernaryForm, binary_apolarity, equianharmonic_invariant, restrict_to_line

X, Y, Z = fixtures.coordinates()


def _lin(F, c):
    return TernaryForm.linear(F, *c)


def test_L_first_row_entry():
    g = TernaryForm(QQ, 4, range(1, 16))
    assert build_L(g)[0, 10] == 144 * 15


def test_L_zero_and_symmetric(field):
    assert all(v == 0 for r in build_L(TernaryForm.zero(field, 4)).rows for v in r)
    rng = random.Random(1)
    for _ in range(50):
        assert build_L(fixtures.random_quartic(field, rng)).is_symmetric()


def test_L_is_linear():
    rng = random.Random(2)
    f, g = fixtures.random_quartic(QQ, rng), fixtures.random_quartic(QQ, rng)
    assert build_L(f.scale(3) + g) == build_L(f).scale(3) + build_L(g)


def test_cubic_invariant_examples():
    assert cubic_invariant(fixtures.fermat()) == 1
    assert cubic_invariant(X**4) == 0


def test_trilinear_normalisation_on_powers():
    assert trilinear_A(X**4, Y**4, Z**4) == 144
    assert trilinear_A(X**4, X**4, Z**4) == 0
    assert trilinear_A(Y**4, Z**4, X * Y * Z * (X + Y + Z)) == 0


def test_trilinear_on_fourth_powers_is_det4(field):
    rng = random.Random(3)
    for _ in range(20):
        ls = [fixtures.random_line(field, rng) for _ in range(3)]
        d = det(Matrix(field, [l.coeffs for l in ls]))
        assert trilinear_A(*(l**4 for l in ls)) == field.mul(144, d**4 if field == QQ else pow(d, 4, field.p))


def test_trilinear_symmetry_and_cubic_constant(field):
    rng = random.Random(4)
    for _ in range(10):
        f, g, h = (fixtures.random_quartic(field, rng) for _ in range(3))
        vals = {trilinear_A(*p) for p in itertools.permutations((f, g, h))}
        assert len(vals) == 1
        assert trilinear_A(f, f, f) == field.mul(CUBIC_INVARIANT_SCALE, cubic_invariant(f))


def test_adual_contract_on_lines(field):
    rng = random.Random(5)
    f, g = fixtures.random_quartic(field, rng), fixtures.random_quartic(field, rng)
    H = adual(f, g)
    for _ in range(12):
        l = fixtures.random_line(field, rng)
        assert H.evaluate(l.coeffs) == trilinear_A(f, g, l**4)


def test_adual_bilinear():
    rng = random.Random(6)
    f1, f2, g1, g2 = (fixtures.random_quartic(QQ, rng) for _ in range(4))
    assert adual(f1.scale(2) + f2, g1) == adual(f1, g1).scale(2) + adual(f2, g1)
    assert adual(f1, g1 + g2.scale(-5)) == adual(f1, g1) - adual(f1, g2).scale(5)


def test_equianharmonic_envelope_on_all_lines():
    # every line of P^2 over Z/31
    F = GF(31)
    f = fixtures.random_quartic(F, random.Random(7))
    H = adual(f, f)
    zeros = 0
    for c in itertools.product(range(31), repeat=3):
        if not any(c) or c[next(i for i in range(3) if c[i])] != 1:
            continue
        l = TernaryForm(F, 1, c)
        envelope = H.evaluate(c) == 0
        zeros += envelope
        assert envelope == (equianharmonic_invariant(restrict_to_line(f, l)) == 0)
    assert zeros > 0


def test_adual_bitangent_gives_pair_of_pencils():
    f = fixtures.bitangent_quartic(QQ, random.Random(3))
    q = conic_sqrt(adual(f, Z**4))
    # lines through (1:0:0) or (0:1:0): y0 * y1
    assert q is not None and proportional(q.coeffs, (0, 1, 0, 0, 0, 0))


def test_adual_generic_line_is_four_concurrent_pencils():
    # f meets z = 0 at (a:1:0) for a in roots; lines through (a:1:0) satisfy a*y0 + y1 = 0
    roots = (1, -2, 3, 5)
    rng = random.Random(8)
    cubic = TernaryForm(QQ, 3, [rng.randint(-5, 5) for _ in range(10)])
    f = Z * cubic
    H = TernaryForm(QQ, 0, [1])
    on_line = TernaryForm(QQ, 0, [1])
    for a in roots:
        on_line = on_line * (X - Y.scale(a))
        H = H * _lin(QQ, (a, 1, 0))
    A = adual(f + on_line, Z**4)
    assert form_proportional(A, H)
    assert conic_sqrt(A) is None


def test_catalecticant_ranks():
    assert rank(catalecticant(fixtures.fermat())) == 3
    assert rank(catalecticant(X**4)) == 1
    g = fixtures.pentalateral_sum()
    assert rank(catalecticant(g)) == 5
    (q,) = apolar_conics(g)
    assert is_smooth_conic(q)
    for l in fixtures.PENTALATERAL_LINES:
        assert q.evaluate(l) == 0


def test_clebsch_detects_five_power_sums(field):
    rng = random.Random(9)
    for _ in range(50):
        lines = [fixtures.random_line(field, rng).coeffs for _ in range(5)]
        weights = [rng.randint(1, 9) for _ in range(5)]
        assert clebsch_invariant(fixtures.pentalateral_sum(lines, weights, field)) == 0
    assert clebsch_invariant(fixtures.random_quartic(field, rng)) != 0


def test_aronhold_examples():
    assert aronhold(X**3 + Y**3 + Z**3) == 0
    assert aronhold((X + Y) ** 3 + Y**3 + Z**3) == 0
    assert aronhold(X * Y * Z) != 0
    with pytest.raises(ValueError):
        aronhold(X**4)


def test_aronhold_vanishes_on_sums_of_three_cubes():
    rng = random.Random(10)
    for _ in range(20):
        c = TernaryForm.zero(QQ, 3)
        for _ in range(3):
            c = c + fixtures.random_line(QQ, rng) ** 3
        assert aronhold(c) == 0


def _scorza_closed_form(lines, F=QQ):
    L = [_lin(F, l) for l in lines]
    out = TernaryForm.zero(F, 4)
    for i in range(5):
        k = 1
        for tri in itertools.combinations([j for j in range(5) if j != i], 3):
            k *= det(Matrix(F, [lines[j] for j in tri]))
        prod = TernaryForm(F, 0, [1])
        for j in range(5):
            if j != i:
                prod = prod * L[j]
        out = out + prod.scale(k)
    return out


def test_scorza_on_pentalateral():
    S = scorza(fixtures.pentalateral_sum())
    assert form_proportional(S, _scorza_closed_form(fixtures.PENTALATERAL_LINES))


def test_scorza_apolarity_on_conic_lines():
    rng = random.Random(11)
    g, lines, _ = fixtures.clebsch_sample(rng)
    (Q,) = apolar_conics(g)
    S = scorza(g)
    on = [TernaryForm(QQ, 1, l) for l in lines]
    off = [fixtures.random_line(QQ, rng) for _ in range(10)]
    for l in on + off:
        ap = binary_apolarity(restrict_to_line(g, l), restrict_to_line(S, l)) == 0
        assert ap == (Q.evaluate(l.coeffs) == 0)


def test_wm_double_quadric_for_degenerate_L():
    for f in (fixtures.desmic(), fixtures.caporali()):
        W = wm_quartic(f)
        assert not W.is_zero()
        res = poly_sqrt(W)
        assert res is not None
        root, c = res
        assert root.scale(c) * root == W


def test_wm_projective_covariance():
    f = fixtures.klein()
    assert det(build_L(f)) != 0
    assert form_proportional(wm_quartic(f.scale(3)), wm_quartic(f))


def test_bordered_round_trip(field):
    rng = random.Random(12)
    for _ in range(3):
        f, g = fixtures.random_quartic(field, rng), fixtures.random_quartic(field, rng)
        assert det(build_L(g)) != 0
        assert form_proportional(bordered_recover(g, adual(f, g)), f)


def test_bordered_singular_raises():
    with pytest.raises(SingularRecoveryError):
        bordered_recover(fixtures.caporali(), fixtures.fermat())


def test_scorza_pairing_is_conic_square():
    g = fixtures.pentalateral_sum()
    (Q,) = apolar_conics(g)
    assert form_proportional(adual(g, scorza(g)), Q * Q)


def test_recovered_clebsch_is_apolar_to_conic():
    f = fixtures.luroth_example()
    Q = TernaryForm(QQ, 2, fixtures.PENTALATERAL_CONIC)
    g = bordered_recover(f, Q * Q)
    assert rank(catalecticant(g)) == 5
    assert proportional(apolar_conics(g)[0].coeffs, Q.coeffs)
    assert form_proportional(bordered_recover(g, Q * Q), f)


def test_wm_singular_at_pentalateral_conic():
    W = wm_quartic(fixtures.luroth_example())
    for d in W.gradient():
        assert d.evaluate(fixtures.PENTALATERAL_CONIC) == 0
    assert W.total_degree() == 4 and W.is_homogeneous()


def test_wm_singular_at_bitangent_conics(field):
    rng = random.Random(13)
    for _ in range(3):
        f = fixtures.bitangent_quartic(field, rng)
        q = conic_sqrt(adual(f, TernaryForm.linear(field, 0, 0, 1) ** 4))
        W = wm_quartic(f)
        assert all(d.evaluate(q.coeffs) == 0 for d in W.gradient())


def test_conic_sqrt():
    q = TernaryForm(QQ, 2, (0, 1, 0, 0, 0, -1))
    r = conic_sqrt(q * q)
    assert proportional(r.coeffs, q.coeffs)
    assert conic_sqrt(fixtures.klein()) is None
    with pytest.raises(ValueError):
        conic_sqrt(q)


def test_conic_matrix_and_discriminant():
    q = TernaryForm(QQ, 2, (1, 2, 0, 3, 4, 5))
    M = conic_matrix(q)
    assert M.is_symmetric()
    assert conic_discriminant(q) == 4 * det(M)
    assert not is_smooth_conic(X * Y)
