"""Tests for the exact polynomial algebra layer."""

import random
from fractions import Fraction as F

import pytest

from quintic.errors import (
    DegreeZero,
    EndpointRoot,
    SignAmbiguous,
    ZeroPolynomial,
)
from quintic.polys import (
    Certificate,
    Enclosure,
    UniPoly,
    count_roots,
    discriminant,
    enclose,
    eval_parampoly,
    family_root_count,
    format_parampoly,
    format_upoly,
    majorize,
    nudge_endpoint,
    parse_parampoly,
    parse_upoly,
    poly_gcd,
    resultant,
    sturm_chain,
    sturm_count,
)

X = UniPoly.x()
ONE = UniPoly.const(F(1))


def rand_poly(rng, max_deg=12, lo=-100, hi=100):
    deg = rng.randint(1, max_deg)
    cs = [F(rng.randint(lo, hi)) for _ in range(deg)]
    lead = 0
    while lead == 0:
        lead = rng.randint(lo, hi)
    return UniPoly(cs + [F(lead)])


def oracle_count(p, a, b, pieces=4096):
    """Sign-change count on a fine uniform grid (exact rational samples).

    Returns None if any grid point happens to be a root (caller re-rolls).
    """
    vals = []
    for i in range(pieces + 1):
        x = a + (b - a) * F(i, pieces)
        v = p(x)
        if v == 0:
            return None
        vals.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(vals, vals[1:]) if s != t)


# ---------------------------------------------------------------------------
# arithmetic basics
# ---------------------------------------------------------------------------

def test_arithmetic_identities():
    p = parse_upoly("3*x^4 - 1/2*x + 7")
    q = parse_upoly("x^2 + 5")
    assert (p + q) - q == p
    assert p * q == q * p
    assert (p * q).degree() == 6
    assert p.deriv() == parse_upoly("12*x^3 - 1/2")
    assert p(F(2)) == 3 * 16 - 1 + 7


def test_divmod_and_divexact():
    p = (X ** 3 - 2 * X + 5) * (X ** 2 + 7)
    q, r = p.divmod(X ** 2 + 7)
    assert not r and q == X ** 3 - 2 * X + 5
    assert p.divexact(X ** 2 + 7) == q


def test_compose():
    p = X ** 2 + 1
    assert p.compose(X + 1) == X ** 2 + 2 * X + 2


# ---------------------------------------------------------------------------
# Sturm counting
# ---------------------------------------------------------------------------

def test_sturm_examples():
    assert sturm_count(X ** 2 - 2, 0, 2) == 1
    assert sturm_count(UniPoly.const(F(7)), -1, 1) == 0
    with pytest.raises(ZeroPolynomial):
        sturm_count(UniPoly(()), 0, 1)
    with pytest.raises(EndpointRoot):
        sturm_count(X ** 2 - 1, 1, 2)


def test_sturm_multiple_roots_counted_once():
    p = (X - 1) ** 3 * (X + 2) ** 2 * (X - 5)
    assert sturm_count(p, -10, 10) == 3


def test_sturm_chain_structure():
    p = (X ** 2 - 2) * (X + 3)
    chain = sturm_chain(p)
    assert chain[0].int_primitive() == p.int_primitive()
    assert chain[1] == p.deriv().int_primitive()


def test_sturm_vs_bisection_oracle():
    rng = random.Random(20240817)
    checked = 0
    while checked < 120:
        p = rand_poly(rng)
        got = oracle_count(p, F(-10), F(10))
        if got is None:
            continue
        assert sturm_count(p, -10, 10) == got
        checked += 1


def test_count_roots_high_degree_matches_sturm():
    rng = random.Random(5)
    for _ in range(10):
        roots = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(4)]
        p = ONE
        for r in roots:
            p = p * (X - r)
        p = p * (X ** 2 + 1) ** 3
        a, b = F(-10, 1), F(21, 2)
        if p(a) == 0 or p(b) == 0:
            continue
        assert count_roots(p, a, b, method="auto") == sturm_count(p, a, b)
        assert count_roots(p, a, b, method="descartes" if False else "auto") \
            == len(set(r for r in roots if a < r < b))


def test_nudge_endpoint():
    p = X ** 2 - 1
    assert nudge_endpoint(p, 1, F(1, 100), +1) == F(101, 100)
    assert nudge_endpoint(p, 2, F(1, 100), +1) == 2


# ---------------------------------------------------------------------------
# resultants, discriminants
# ---------------------------------------------------------------------------

def test_resultant_trivial_shared_root():
    assert resultant(X ** 2 - 1, X - 1) == 0


def test_resultant_2x2_sylvester():
    # Res_x(x^2 + y, x + 1) = 1 + y
    y_inner = UniPoly.x()
    f = UniPoly([y_inner, UniPoly(()), ONE])
    g = UniPoly([ONE, ONE])
    assert resultant(f, g) == UniPoly([F(1), F(1)])


def sylvester_resultant(f, g):
    """Fraction Sylvester determinant by expansion (small degrees only)."""
    m, n = f.degree(), g.degree()
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([F(0)] * i + fc + [F(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([F(0)] * i + gc + [F(0)] * (size - n - 1 - i))

    def det(mat):
        k = len(mat)
        if k == 1:
            return mat[0][0]
        total = F(0)
        for j in range(k):
            if mat[0][j] == 0:
                continue
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * det(minor)
        return total

    return det(rows)


def test_resultant_vs_sylvester_random():
    rng = random.Random(99)
    for _ in range(60):
        f = rand_poly(rng, max_deg=4, lo=-9, hi=9)
        g = rand_poly(rng, max_deg=4, lo=-9, hi=9)
        assert resultant(f, g) == sylvester_resultant(f, g)


def test_resultant_zero_iff_common_factor():
    rng = random.Random(17)
    for _ in range(60):
        f = rand_poly(rng, max_deg=8, lo=-20, hi=20)
        g = rand_poly(rng, max_deg=8, lo=-20, hi=20)
        r = resultant(f, g)
        has_common = poly_gcd(f, g).degree() > 0
        assert (r == 0) == has_common


def test_discriminant_examples():
    b, c = F(3), F(-5)
    assert discriminant(UniPoly([c, b, F(1)])) == b * b - 4 * c
    assert discriminant((X - 1) ** 2) == 0
    assert discriminant(X ** 3 - X) == 4
    with pytest.raises(DegreeZero):
        discriminant(UniPoly.const(F(2)))


def test_discriminant_of_square_vanishes():
    rng = random.Random(4)
    for _ in range(20):
        p = rand_poly(rng, max_deg=4, lo=-9, hi=9)
        assert discriminant(p * p) == 0


# ---------------------------------------------------------------------------
# family root-count continuation
# ---------------------------------------------------------------------------

def _parampoly_x2_minus_m():
    # G_m(x) = x^2 - m as an element of Q[m][x]
    m = UniPoly.x()
    return UniPoly([-m, UniPoly(()), ONE])


def test_family_root_count_certified():
    G = _parampoly_x2_minus_m()
    cert = family_root_count(G, F(0), F(3), (F(1), F(2)), F(1), 1)
    assert cert.verdict
    assert "certified" in cert.to_text()


def test_family_root_count_disc_failure():
    G = _parampoly_x2_minus_m()
    cert = family_root_count(G, F(-3), F(3), (F(-1), F(1)), F(1), 2)
    assert not cert.verdict
    assert cert.failing == "iii"


def test_family_root_count_moving_bounds():
    # roots +-sqrt(m); moving lower bound c(m) = m/3 keeps only the
    # positive root inside for m in [1/2, 2]
    G = _parampoly_x2_minus_m()
    c = (UniPoly([F(0), F(1)]), UniPoly.const(F(3)))  # m/3
    cert = family_root_count(G, c, F(5), (F(1, 2), F(2)), F(1), 1)
    assert cert.verdict


def test_eval_parampoly():
    G = _parampoly_x2_minus_m()
    assert eval_parampoly(G, F(4)) == X ** 2 - 4


# ---------------------------------------------------------------------------
# enclosures
# ---------------------------------------------------------------------------

def test_enclose_paper_values():
    e = enclose(F(8), 4, depth=5)
    assert (e.lower, e.upper) == (F(3002, 1785), F(37, 22))
    e = enclose(F(10), 3, depth=4)
    assert (e.lower, e.upper) == (F(28, 13), F(265, 123))


def test_enclose_perfect_power():
    e = enclose(F(4), 2, depth=6)
    assert e.lower == 2 and e.upper > 2


def test_enclose_powering_invariant():
    for rad, d in [(F(8), 4), (F(10), 3), (F(1, 2), 4), (F(3, 5), 4)]:
        for depth in (4, 8, 12):
            e = enclose(rad, d, depth)
            assert e.lower ** d <= rad < e.upper ** d
    assert enclose(F(8), 4, 12).width() < enclose(F(8), 4, 5).width()


def test_enclosure_rejects_bad_bounds():
    with pytest.raises(ValueError):
        Enclosure(F(2), F(2), "x", 2, F(4))
    with pytest.raises(ValueError):
        Enclosure(F(3), F(4), "8^(1/4)", 4, F(8))


# ---------------------------------------------------------------------------
# majorants
# ---------------------------------------------------------------------------

def _encls():
    return {"r2": enclose(F(2), 2, 10), "r3": enclose(F(3), 2, 10)}


def test_majorize_single_monomial():
    e = _encls()
    lo, hi = majorize({1: [(F(1), ("r2",))]}, e, "nonneg")
    assert lo == UniPoly([F(0), e["r2"].lower])
    assert hi == UniPoly([F(0), e["r2"].upper])


def test_majorize_even_powers_on_real_line():
    e = _encls()
    terms = {2: [(F(1), ("r2",))], 4: [(F(-1), ("r3",))]}
    lo, hi = majorize(terms, e, "real")
    assert hi.coeff(2) == e["r2"].upper
    assert hi.coeff(4) == -e["r3"].lower


def test_majorize_rejects_ambiguous_sign():
    e = _encls()
    with pytest.raises(SignAmbiguous):
        majorize({3: [(F(1), ("r2",))]}, e, "real")


def test_majorize_bounds_hold_numerically():
    import mpmath
    rng = random.Random(2)
    e = _encls()
    with mpmath.workdps(100):
        s2, s3 = mpmath.sqrt(2), mpmath.sqrt(3)
        terms = {
            0: [(F(3), ())],
            2: [(F(-2), ("r2",)), (F(1), ("r3",))],
            5: [(F(7, 3), ("r2", "r3"))],
        }
        lo, hi = majorize(terms, e, "nonneg")
        for _ in range(200):
            y = mpmath.mpf(rng.random() * 3)
            exact = 3 + (-2 * s2 + s3) * y ** 2 + F(7, 3) * s2 * s3 * y ** 5
            lov = sum(mpmath.mpf(c.numerator) / c.denominator * y ** k
                      for k, c in enumerate(lo.coeffs))
            hiv = sum(mpmath.mpf(c.numerator) / c.denominator * y ** k
                      for k, c in enumerate(hi.coeffs))
            assert lov <= exact <= hiv


# ---------------------------------------------------------------------------
# literals and certificates
# ---------------------------------------------------------------------------

def test_literal_roundtrip_univariate():
    p = parse_upoly("3/5*x^4 - x + 7")
    assert p == UniPoly([F(7), F(-1), F(0), F(0), F(3, 5)])
    assert parse_upoly(format_upoly(p)) == p


def test_literal_roundtrip_parampoly():
    text = "2*n^3*y^16 - 1/2*n*y + 9"
    P = parse_parampoly(text)
    assert format_parampoly(parse_parampoly(format_parampoly(P))) \
        == format_parampoly(P)
    assert P.degree() == 16


def test_certificate_text_is_deterministic():
    def build():
        c = Certificate(proposition="demo")
        c.add("interval", "[0, 1]")
        c.add("roots", 0, indent=1)
        return c.to_text()
    assert build() == build()
    assert "proposition: demo" in build()
