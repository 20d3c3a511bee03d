"""Exact rational polynomial algebra.

Univariate polynomials over an exactly computable coefficient ring
(``fractions.Fraction``, or nested ``UniPoly`` for polynomials in a
parameter), with

* Sturm-chain root counting on rational intervals,
* a Descartes / interval-bisection counter for the very high degree
  polynomials that show up in the boundary certifications,
* resultants and discriminants by the subresultant PRS (never the
  Sylvester determinant above toy degrees),
* the three-hypothesis root-count continuation for one-parameter
  families (fixed count of simple roots between moving rational
  boundaries, as long as neither the boundary values nor the
  discriminant vanish on the parameter interval),
* rational enclosures of d-th roots via continued fractions, verified
  by exact powering,
* rational majorant/minorant extraction for polynomials whose
  coefficients are rational combinations of enclosed irrationals.

Everything here is exact; floats never enter a verdict.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, comb

import mpmath

from .errors import (
    DegreeZero,
    EndpointRoot,
    InexactDivision,
    SignAmbiguous,
    ZeroPolynomial,
)

Rational = Fraction  # the spec's Rational type is exactly this


# ---------------------------------------------------------------------------
# coefficient-ring helpers (Fraction | int | nested UniPoly all supported)
# ---------------------------------------------------------------------------

def coef_divexact(a, b):
    """Exact division in the coefficient ring; raises InexactDivision."""
    if isinstance(b, UniPoly):
        if isinstance(a, UniPoly):
            return a.divexact(b)
        if not a:
            return a
        raise InexactDivision(f"scalar {a!r} by polynomial")
    # b is a scalar
    if isinstance(a, UniPoly):
        return a.map_coeffs(lambda c: coef_divexact(c, b))
    if not isinstance(a, Fraction) and not isinstance(b, Fraction):
        # integer-like ring elements (int, gmpy2.mpz): stay integral
        q, r = divmod(a, b)
        if r:
            raise InexactDivision("nonzero remainder in integer division")
        return q
    return Fraction(a) / Fraction(b)


def _cpow(c, e):
    if e == 0:
        return 1
    return c ** e


class UniPoly:
    """Dense univariate polynomial; coefficients indexed by degree.

    The coefficient ring is duck-typed: anything supporting +, -, *,
    ** and truth-testing (zero is falsy) works, so ``UniPoly`` nests to
    give elements of Q[n][y] and deeper.  Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def monomial(cls, c, k):
        return cls((0,) * k + (c,)) if c else cls(())

    @classmethod
    def from_dict(cls, d):
        if not d:
            return cls(())
        n = max(d)
        cs = [Fraction(0)] * (n + 1)
        for k, v in d.items():
            cs[k] = v
        return cls(cs)

    # -- basic structure ----------------------------------------------------

    def degree(self):
        return len(self.coeffs) - 1

    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("leading coefficient of 0")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        # scalar comparison
        if not self.coeffs:
            return not other
        if len(self.coeffs) == 1:
            return self.coeffs[0] == other
        return False

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def coeff0(self, k):
        """coeff() with a ring-neutral integer zero (for non-Fraction rings)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = cs[i] + c
        return UniPoly(cs)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(())
        out = [None] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if not cb:
                    continue
                p = ca * cb
                out[i + j] = p if out[i + j] is None else out[i + j] + p
        return UniPoly(tuple(0 if c is None else c for c in out))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        """Multiply by a coefficient-ring element."""
        if not c:
            return UniPoly(())
        return UniPoly(tuple(a * c for a in self.coeffs))

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        r = UniPoly.const(Fraction(1))
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def deriv(self):
        return UniPoly(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def __call__(self, x):
        """Horner evaluation; x may be rational, float, mpf, or poly-like."""
        if not self.coeffs:
            return Fraction(0) if not isinstance(x, float) else 0.0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """self(other) with other a UniPoly over the same ring."""
        acc = UniPoly(())
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly.const(c)
        return acc

    def map_coeffs(self, fn):
        return UniPoly(tuple(fn(c) for c in self.coeffs))

    def shift(self, k):
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return UniPoly((0,) * k + self.coeffs)

    # -- division ------------------------------------------------------------

    def divmod(self, other):
        """Division when the divisor's leading coefficient is invertible
        (Fraction coefficients)."""
        if not other:
            raise ZeroPolynomial("division by zero polynomial")
        r = list(self.coeffs)
        d = other.degree()
        lg = other.lc()
        q = [Fraction(0)] * max(len(r) - d, 0)
        for i in range(len(r) - 1, d - 1, -1):
            if not r[i]:
                continue
            f = r[i] / lg
            q[i - d] = f
            for j, c in enumerate(other.coeffs):
                r[i - d + j] = r[i - d + j] - f * c
        return UniPoly(q), UniPoly(r[:d])

    def divexact(self, other):
        """Exact division in the polynomial ring; raises InexactDivision.

        Works over any coefficient ring whose own coef_divexact is exact
        (the quotient's coefficients are obtained by back-substitution).
        """
        if not isinstance(other, UniPoly):
            return self.map_coeffs(lambda c: coef_divexact(c, other))
        if not other:
            raise ZeroPolynomial("division by zero polynomial")
        if not self:
            return self
        if self.degree() < other.degree():
            raise InexactDivision("degree of dividend below divisor")
        r = list(self.coeffs)
        d = other.degree()
        lg = other.lc()
        q = [0] * (len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            if not r[i]:
                continue
            f = coef_divexact(r[i], lg)
            q[i - d] = f
            for j, c in enumerate(other.coeffs):
                r[i - d + j] = r[i - d + j] - f * c
        if any(r[:d]):
            raise InexactDivision("nonzero remainder in exact division")
        return UniPoly(q)

    def prem(self, other):
        """Pseudo-remainder: lc(other)^(deg self - deg other + 1) * self mod other."""
        if not other:
            raise ZeroPolynomial("pseudo-division by zero polynomial")
        dg = other.degree()
        if self.degree() < dg:
            return self
        r = self
        lg = other.lc()
        e = self.degree() - dg + 1
        while r and r.degree() >= dg:
            t = UniPoly.monomial(r.lc(), r.degree() - dg)
            r = r.scale(lg) - t * other
            e -= 1
        if e > 0:
            r = r.scale(_cpow(lg, e))
        return r

    # -- Fraction-coefficient utilities ---------------------------------------

    def int_primitive(self):
        """For Fraction coefficients: the positive-content-free integer
        version (same roots, same signs everywhere)."""
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs)) if len(self.coeffs) > 1 \
            else self.coeffs[0].denominator
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        if g > 1:
            ints = [c // g for c in ints]
        return UniPoly(tuple(Fraction(c) for c in ints))

    def to_floats(self):
        return [float(c) for c in self.coeffs]


def poly_gcd(p, q):
    """Monic gcd over Fraction coefficients (Euclid on primitive parts)."""
    a, b = p.int_primitive(), q.int_primitive()
    while b:
        a, b = b, a.prem(b).int_primitive()
    if not a:
        return a
    return a.scale(Fraction(1) / a.lc())


def squarefree_part(p):
    g = poly_gcd(p, p.deriv())
    if g.degree() <= 0:
        return p.int_primitive()
    q, r = p.divmod(g)
    if r:
        raise InexactDivision("gcd does not divide")
    return q.int_primitive()


# ---------------------------------------------------------------------------
# Sturm chains and root counting
# ---------------------------------------------------------------------------

def sturm_chain(p):
    """Sturm remainder sequence of p (Fraction coefficients).

    Remainders are kept integer-primitive; each rescaling factor is
    positive, so the sign pattern at any point is that of the classical
    sequence.  Works for non-squarefree p too (generalized Sturm: the
    count is of distinct roots).
    """
    if not p:
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    p0 = p.int_primitive()
    chain = [p0]
    d = p0.deriv()
    if d:
        chain.append(d.int_primitive())
    while chain[-1].degree() > 0:
        a, b = chain[-2], chain[-1]
        r = a.prem(b)
        if not r:
            break
        # prem scaled by lc(b)^e; undo a sign flip when that factor < 0
        e = a.degree() - b.degree() + 1
        if b.lc() < 0 and e % 2 == 1:
            r = -r
        chain.append((-r).int_primitive())
    return chain


def sign_variations(values):
    """Sign changes in a sequence, zeros discarded."""
    signs = [1 if v > 0 else -1 for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p, a, b, chain=None):
    """Number of distinct real roots of p in the open interval (a, b).

    Endpoint roots are refused (nudge them first); p must be nonzero.
    """
    if not p:
        raise ZeroPolynomial("root count of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if p.degree() == 0:
        return 0
    if p(a) == 0 or p(b) == 0:
        raise EndpointRoot(f"p vanishes at an endpoint of ({a}, {b})")
    if chain is None:
        chain = sturm_chain(p)
    va = sign_variations([q(a) for q in chain])
    vb = sign_variations([q(b) for q in chain])
    return va - vb


def nudge_endpoint(p, x, eps, direction):
    """Move a rational endpoint outward in steps of eps until p no
    longer vanishes there.  direction is +1 or -1."""
    x, eps = Fraction(x), Fraction(eps)
    while p(x) == 0:
        x += direction * eps
    return x


# -- Descartes / interval-bisection counter for very high degrees ----------

def _taylor_shift_1(coeffs):
    """Integer coefficient list of p(x+1) from that of p(x)."""
    cs = list(coeffs)
    n = len(cs)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            cs[j] += cs[j + 1]
    return cs


def _variations_int(coeffs):
    signs = [1 if c > 0 else -1 for c in coeffs if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count01(coeffs, depth, cap):
    """Distinct roots of the integer polynomial in the open (0,1),
    assuming no endpoint roots; Descartes bound via the Moebius map
    x -> 1/(1+x).  Returns None when the depth cap is hit (caller falls
    back to a Sturm chain)."""
    # variations of (1+x)^d * p(1/(1+x)) = Taylor shift of reversed p
    v = _variations_int(_taylor_shift_1(list(reversed(coeffs))))
    if v == 0:
        return 0
    if v == 1:
        return 1
    if depth >= cap:
        return None
    n = len(coeffs) - 1
    # p(x/2) * 2^n and p((x+1)/2) * 2^n
    left = [c << (n - k) for k, c in enumerate(coeffs)]
    right = _taylor_shift_1(left)
    mid_root = 1 if right[0] == 0 else 0
    # strip any root at 0 of the right half (i.e. at x = 1/2 of p)
    rcs = list(right)
    while rcs and rcs[0] == 0:
        rcs.pop(0)
    lcount = _count01(left, depth + 1, cap)
    if lcount is None:
        return None
    rcount = _count01(rcs, depth + 1, cap) if rcs else 0
    if rcount is None:
        return None
    return lcount + mid_root + rcount


def count_roots(p, a, b, method="auto", depth_cap=128):
    """Distinct real roots of p in (a, b); same contract as sturm_count.

    For high degrees the Descartes bisection counter is much faster than
    a Sturm chain; it falls back to Sturm if the (rare) depth cap hits.
    """
    if not p:
        raise ZeroPolynomial("root count of the zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if p.degree() <= 0:
        return 0
    if p(a) == 0 or p(b) == 0:
        raise EndpointRoot(f"p vanishes at an endpoint of ({a}, {b})")
    if method == "sturm" or (method == "auto" and p.degree() <= 50):
        return sturm_count(p, a, b)
    # map (a,b) -> (0,1) in pure integer arithmetic: with a = a1/D,
    # b = b1/D on a common denominator D, evaluate the integer form of
    # D^deg * p(x/D) at x = a1 + (b1-a1) t by Horner over Z[t].
    pi = p.int_primitive()
    D = lcm(a.denominator, b.denominator)
    a1, b1 = int(a * D), int(b * D)
    d = pi.degree()
    scaled = [int(c) * D ** (d - k) for k, c in enumerate(pi.coeffs)]
    w = b1 - a1
    lin = (a1, w)  # the linear substitution t -> a1 + w*t
    acc = [scaled[-1]]
    for c in reversed(scaled[:-1]):
        nxt = [0] * (len(acc) + 1)
        for k, v in enumerate(acc):
            nxt[k] += v * lin[0]
            nxt[k + 1] += v * lin[1]
        nxt[0] += c
        acc = nxt
    coeffs = acc
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    if g > 1:
        coeffs = [c // g for c in coeffs]
    n = _count01(coeffs, 0, depth_cap)
    if n is None:
        return sturm_count(p, a, b)
    return n


def bisect_root(p, a, b, width):
    """Shrink a bracket known (via sturm_count == 1) to contain exactly
    one root of p down to the requested rational width."""
    a, b = Fraction(a), Fraction(b)
    chain = sturm_chain(p)
    assert sturm_count(p, a, b, chain=chain) == 1
    while b - a > width:
        mid = (a + b) / 2
        if p(mid) == 0:
            # land exactly on the root: return a degenerate bracket
            return mid, mid
        if sturm_count(p, a, mid, chain=chain) == 1:
            b = mid
        else:
            a = mid
    return a, b


# ---------------------------------------------------------------------------
# resultants and discriminants (subresultant PRS)
# ---------------------------------------------------------------------------

def resultant(f, g):
    """Res(f, g) in the coefficient ring, by the subresultant PRS.

    Valid over Fraction coefficients and over nested UniPoly
    coefficients (polynomials in parameters).
    """
    if not f or not g:
        raise ZeroPolynomial("resultant with a zero polynomial")
    m, n = f.degree(), g.degree()
    if m == 0:
        return _cpow(f.lc(), n)
    if n == 0:
        return _cpow(g.lc(), m)
    sign = 1
    A, B = f, g
    if m < n:
        # Sylvester-determinant convention: Res(f,g) = (-1)^(mn) Res(g,f).
        # The first loop pass already toggles once for the swapped odd
        # degrees, so flip here as well to keep the determinant's sign.
        # (sympy's resultant omits this factor; tests account for that.)
        A, B = B, A
        if (m * n) % 2 == 1:
            sign = -sign
    gg, hh = 1, 1
    while B.degree() > 0:
        d = A.degree() - B.degree()
        if (A.degree() % 2 == 1) and (B.degree() % 2 == 1):
            sign = -sign
        R = A.prem(B)
        if not R:
            return _zero_like(f.lc())
        A = B
        B = _divexact_scalar(R, gg * _cpow(hh, d))
        gg = A.lc()
        if d > 0:
            hh = coef_divexact(_cpow(gg, d), _cpow(hh, d - 1))
    # B is a nonzero constant now
    dA = A.degree()
    res = coef_divexact(_cpow(B.lc(), dA), _cpow(hh, dA - 1))
    return -res if sign < 0 else res


def _divexact_scalar(p, c):
    """Divide every coefficient of p by the ring element c (exactly).

    Needed because a nested UniPoly coefficient is type-indistinguishable
    from a same-level polynomial, so p.divexact(c) would misparse levels.
    """
    if isinstance(c, int) and c == 1:
        return p
    return p.map_coeffs(lambda a: coef_divexact(a, c))


def _zero_like(c):
    if isinstance(c, UniPoly):
        return UniPoly(())
    return Fraction(0)


def discriminant(p):
    """(-1)^(n(n-1)/2) * Res(p, p') / lc(p); zero iff p has a multiple root."""
    if not p or p.degree() == 0:
        raise DegreeZero("discriminant needs degree >= 1")
    n = p.degree()
    d = p.deriv()
    if not d:
        raise DegreeZero("derivative vanished (characteristic quirk?)")
    res = resultant(p, d)
    disc = coef_divexact(res, p.lc())
    if (n * (n - 1) // 2) % 2 == 1:
        disc = -disc
    return disc


def sylvester_degree_bound(f, g, deg_of):
    """Rigorous upper bound for the parameter degree of Res(f, g).

    The resultant is the determinant of the Sylvester matrix; any
    monomial of the determinant picks one entry per row, so the optimal
    row/column assignment of entry degrees bounds the degree.  deg_of
    maps a coefficient to its parameter degree (-inf for zero entries).
    """
    from scipy.optimize import linear_sum_assignment
    import numpy as np

    m, n = f.degree(), g.degree()
    size = m + n
    NEG = -10 ** 9
    mat = np.full((size, size), NEG, dtype=float)
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        for j, c in enumerate(fc):
            if c:
                mat[i, i + j] = deg_of(c)
    for i in range(m):
        for j, c in enumerate(gc):
            if c:
                mat[n + i, i + j] = deg_of(c)
    rows, cols = linear_sum_assignment(mat, maximize=True)
    total = mat[rows, cols].sum()
    if total <= NEG / 2:
        return 0
    return int(total)


def newton_interp_integer_nodes(values, clear_den=1):
    """Exact polynomial through (t, values[t-1]) for t = 1..len(values).

    values are integer-like ring scalars (or UniPoly with such
    coefficients).  Uses forward differences, which stay integral on
    unit-spaced nodes, then converts the binomial basis to monomials.
    The result is divided by clear_den (Fraction) at the end.
    """
    diffs = list(values)
    n = len(values)
    table = [diffs[0]]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            diffs[i] = diffs[i] - diffs[i - 1]
        table.append(diffs[j])
    # drop trailing zero differences (true degree < n-1)
    while len(table) > 1 and not table[-1]:
        table.pop()
    # P(t) = sum_j table[j] * C(t-1, j); build C(t-1, j) iteratively
    binom = UniPoly.const(Fraction(1))
    tpoly = UniPoly((Fraction(-1), Fraction(1)))  # t - 1
    acc = None
    inv = Fraction(1, clear_den) if clear_den != 1 else None
    for j, a in enumerate(table):
        if j > 0:
            binom = binom * UniPoly((Fraction(-(j - 1) - 1), Fraction(1)))
            binom = binom.scale(Fraction(1, j))
            # binom is now C(t-1, j) = prod_{l=0}^{j-1}(t-1-l)/j!
        if not a:
            continue
        term = binom.scale(Fraction(a)) if not isinstance(a, UniPoly) \
            else _scale_outer(a, binom)
        acc = term if acc is None else acc + term
    if acc is None:
        return UniPoly(())
    if inv is not None:
        acc = acc.map_coeffs(lambda c: c * inv if not isinstance(c, UniPoly)
                             else c.scale(inv))
    return acc


def _scale_outer(vec, poly):
    """vec: UniPoly over scalars (an interpolation value in a secondary
    variable); poly: UniPoly over Fraction in the parameter.  Returns a
    UniPoly in the parameter whose coefficients are UniPoly in the
    secondary variable."""
    return UniPoly(tuple(vec.map_coeffs(lambda a, _c=c: Fraction(a) * _c)
                         for c in poly.coeffs))


def interp_resultant(f, g, *, verify_extra=2):
    """Res in the main variable of two polynomials whose coefficients
    live in Q[s][n] (UniPoly in s with UniPoly-in-n entries; s may be
    absent, meaning plain Q[n] coefficients wrapped as s-degree 0).

    Computed by evaluation at integer parameter nodes n = 1, 2, ... and
    exact interpolation: per node the pseudo-remainder chain runs over
    the fast univariate ring Z[s].  The node count is the rigorous
    Sylvester assignment bound plus one, so the interpolation is exact,
    and a few extra nodes are cross-checked against direct evaluation.

    Returns a UniPoly in s with UniPoly-in-n coefficients (s-degree 0
    collapses to the inner polynomial).
    """
    import gmpy2

    def n_deg(c):
        # c: UniPoly in s over UniPoly in n (or plain UniPoly in n)
        if not isinstance(c, UniPoly):
            return 0
        degs = []
        for inner in c.coeffs:
            if isinstance(inner, UniPoly):
                if inner:
                    degs.append(inner.degree())
            elif inner:
                degs.append(0)
        return max(degs) if degs else 0

    bound = sylvester_degree_bound(f, g, n_deg)
    nodes = bound + 1

    # clear all denominators once; Res scales by den_f^deg(g) * den_g^deg(f)
    def den_lcm(p):
        d = 1
        for c in p.coeffs:
            if not isinstance(c, UniPoly):
                d = lcm(d, Fraction(c).denominator)
                continue
            for inner in c.coeffs:
                if isinstance(inner, UniPoly):
                    for a in inner.coeffs:
                        d = lcm(d, Fraction(a).denominator)
                else:
                    d = lcm(d, Fraction(inner).denominator)
        return d

    df, dg = den_lcm(f), den_lcm(g)
    scale = Fraction(df) ** g.degree() * Fraction(dg) ** f.degree()

    def at_node(p, den, t):
        # coefficient ring collapses to Z[s] with gmpy2 integers
        out = []
        for c in p.coeffs:
            if not isinstance(c, UniPoly):
                out.append(UniPoly((gmpy2.mpz(Fraction(c) * den),)))
                continue
            svals = []
            for inner in c.coeffs:
                if isinstance(inner, UniPoly):
                    v = inner(Fraction(t))
                else:
                    v = Fraction(inner)
                svals.append(gmpy2.mpz(v * den))
            out.append(UniPoly(svals))
        return UniPoly(out)

    smax = 0
    values = []
    for t in range(1, nodes + 1):
        r = resultant(at_node(f, df, t), at_node(g, dg, t))
        if not isinstance(r, UniPoly):
            r = UniPoly((r,))
        smax = max(smax, r.degree())
        values.append(r)
    # pad s-length so vector differences line up
    values = [UniPoly(tuple(v.coeff0(k) for k in range(smax + 1)))
              for v in values]
    interp = newton_interp_integer_nodes(values)  # UniPoly in n, coeffs UniPoly in s
    # transpose to UniPoly in s with UniPoly-in-n coefficients and rescale
    inv = 1 / scale
    out_s = []
    for k in range(smax + 1):
        coefs_n = []
        for c in interp.coeffs:
            v = c.coeff0(k) if isinstance(c, UniPoly) else (c if k == 0 else 0)
            coefs_n.append(Fraction(v) * inv)
        out_s.append(UniPoly(coefs_n))
    res = UniPoly(out_s)

    # spot-check at fresh nodes
    for t in range(nodes + 1, nodes + 1 + verify_extra):
        direct = resultant(at_node(f, df, t), at_node(g, dg, t))
        if not isinstance(direct, UniPoly):
            direct = UniPoly((direct,))
        for k in range(smax + 1):
            want = Fraction(direct.coeff0(k)) * inv
            gotc = res.coeff0(k)
            got = gotc(Fraction(t)) if isinstance(gotc, UniPoly) else Fraction(gotc)
            if got != want:
                raise InexactDivision("interpolated resultant failed cross-check")
    if res.degree() == 0:
        return res.coeffs[0]
    return res


def resultant_sympy(f, g, gens):
    """Cross-check backend: convert nested UniPoly data to sympy and use
    its resultant.  gens: variable names, outermost first."""
    import sympy

    syms = sympy.symbols(gens)
    def to_expr(p, level):
        if not isinstance(p, UniPoly):
            return sympy.Rational(p.numerator, p.denominator) \
                if isinstance(p, Fraction) else sympy.Integer(p)
        x = syms[level]
        return sympy.Add(*[to_expr(c, level + 1) * x ** k
                           for k, c in enumerate(p.coeffs)])
    r = sympy.resultant(to_expr(f, 0), to_expr(g, 0), syms[0])
    return r


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    """Machine-checked verdict with an ordered audit trail.

    Serializes to `key: value` lines; nested entries are indented under
    their hypothesis/piece heading.
    """

    proposition: str
    verdict: bool = True
    failing: str | None = None
    witness: object = None
    lines: list = field(default_factory=list)

    def add(self, key, value, indent=0):
        self.lines.append((indent, str(key), str(value)))

    def fail(self, which, witness=None):
        self.verdict = False
        if self.failing is None:
            self.failing = which
            self.witness = witness
        self.add(f"FAILED {which}", witness, indent=1)

    def merge(self, other, heading):
        self.add(heading, "certificate", indent=0)
        for ind, k, v in other.lines:
            self.lines.append((ind + 1, k, v))
        if not other.verdict:
            self.verdict = False
            if self.failing is None:
                self.failing = f"{heading}:{other.failing}"
                self.witness = other.witness

    def to_text(self):
        out = [f"proposition: {self.proposition}",
               f"verdict: {'certified' if self.verdict else 'FAILED'}"]
        if self.failing is not None:
            out.append(f"failing: {self.failing}")
        for ind, k, v in self.lines:
            out.append("  " * (ind + 1) + f"{k}: {v}")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# one-parameter family root-count continuation
# ---------------------------------------------------------------------------

def eval_parampoly(G, m):
    """ParamPoly (UniPoly over UniPoly-in-parameter) evaluated at a
    rational parameter value: a plain UniPoly over Fraction."""
    m = Fraction(m)
    return UniPoly(tuple(c(m) if isinstance(c, UniPoly) else Fraction(c)
                         for c in G.coeffs))


def _as_ratfunc(bound):
    """Normalize a moving boundary: Fraction constant, or a pair
    (numerator UniPoly in the parameter, denominator UniPoly)."""
    if isinstance(bound, tuple):
        return bound
    c = Fraction(bound)
    return (UniPoly.const(c), UniPoly.const(Fraction(1)))


def compose_at_bound(G, bound):
    """G(x = num/den) cleared of denominators: sum_k g_k num^k den^(N-k),
    a polynomial in the parameter.  The clearing factor den^N is a
    square times possibly den, so the sign is that of G at the bound
    whenever den > 0."""
    num, den = _as_ratfunc(bound)
    N = G.degree()
    out = UniPoly(())
    for k, c in enumerate(G.coeffs):
        if not c:
            continue
        ck = c if isinstance(c, UniPoly) else UniPoly.const(Fraction(c))
        out = out + ck * num ** k * den ** (N - k)
    return out


def strip_factors(P, factors):
    """Divide out each given factor as many times as it exactly divides;
    returns (reduced polynomial, list of (factor, multiplicity))."""
    report = []
    for f in factors:
        mult = 0
        while P.degree() >= f.degree():
            try:
                P = P.divexact(f)
                mult += 1
            except InexactDivision:
                break
        report.append((f, mult))
    return P, report


def family_root_count(G, c, d, I, m0, r, *, known_factors=(),
                      excluded_factors=(), disc_override=None,
                      sample_counter=None, count_method="auto"):
    """Certify that for every parameter value in I = [lo, hi] the
    polynomial G has exactly r simple roots between the moving rational
    boundaries c and d.

    Three hypotheses, mirroring the continuation argument:
      (i)   at the sample m0, exactly r simple roots in (c(m0), d(m0));
      (ii)  G never vanishes at either boundary for parameters in I;
      (iii) the discriminant of G never vanishes for parameters in I.

    known_factors: parameter polynomials allowed to divide the boundary
    or discriminant polynomials; each stripped factor is re-certified to
    be nonvanishing on I and recorded in the audit trail.

    excluded_factors: pairs (polynomial, justification) whose roots the
    caller asserts lie outside the true parameter set (typically at an
    excluded endpoint of a half-open interval when [lo, hi] is a
    rational superset).  They are stripped and the justification is
    recorded; no root count is attempted on them.

    disc_override: a parameter polynomial supplied by the caller whose
    nonvanishing on I implies the discriminant's (used when computing
    the discriminant directly is infeasible or when the coefficients
    live in an extension ring); certified in place of hypothesis (iii).

    sample_counter: optional override for hypothesis (i) when m0 cannot
    be taken rational (returns (count, note)); the default evaluates G
    at rational m0 exactly.
    """
    lo, hi = Fraction(I[0]), Fraction(I[1])
    cert = Certificate(proposition="family-root-count")
    cert.add("interval", f"[{lo}, {hi}]")
    cert.add("expected-count", r)

    # hypothesis (i)
    cert.add("hypothesis (i)", f"count at sample {m0}")
    if sample_counter is not None:
        got, note = sample_counter()
        cert.add("sample-count", f"{got} ({note})", indent=1)
        if got != r:
            cert.fail("i", f"count {got} != {r}")
    else:
        m0 = Fraction(m0)
        G0 = eval_parampoly(G, m0)
        cnum, cden = _as_ratfunc(c)
        dnum, dden = _as_ratfunc(d)
        a0 = cnum(m0) / cden(m0)
        b0 = dnum(m0) / dden(m0)
        if not G0:
            cert.fail("i", f"G identically zero at {m0}")
        else:
            got = sturm_count(G0, a0, b0)
            cert.add("sample-count", got, indent=1)
            if got != r:
                cert.fail("i", f"count {got} != {r}")
            elif r > 0:
                g = poly_gcd(G0, G0.deriv())
                if g.degree() > 0 and sturm_count(g, a0, b0) > 0:
                    cert.fail("i", "multiple root inside the interval")
                else:
                    cert.add("simple", "yes (gcd with derivative rootless there)",
                             indent=1)

    # hypothesis (ii): boundary values never vanish on I
    cert.add("hypothesis (ii)", "boundary nonvanishing")
    E = compose_at_bound(G, c) * compose_at_bound(G, d)
    ok = _certify_param_nonvanishing(E, lo, hi, known_factors, cert,
                                     excluded=excluded_factors,
                                     count_method=count_method)
    if not ok:
        cert.fail("ii", "boundary polynomial vanishes in I")

    # hypothesis (iii): discriminant never vanishes on I
    cert.add("hypothesis (iii)", "discriminant nonvanishing")
    if disc_override is not None:
        cert.add("discriminant", "caller-supplied nonvanishing witness",
                 indent=1)
        D = disc_override
    else:
        Gp = UniPoly(tuple(
            (c_ if isinstance(c_, UniPoly) else UniPoly.const(Fraction(c_)))
            for c_ in G.coeffs))
        D = discriminant(Gp)
    if not isinstance(D, UniPoly):
        D = UniPoly.const(Fraction(D))
    ok = _certify_param_nonvanishing(D, lo, hi, known_factors, cert,
                                     excluded=excluded_factors,
                                     count_method=count_method)
    if not ok:
        cert.fail("iii", "discriminant vanishes in I")
    return cert


def _certify_param_nonvanishing(P, lo, hi, known_factors, cert,
                                excluded=(), count_method="auto"):
    """P in Q[param] nonzero throughout [lo, hi]: strip declared factors
    (each itself certified rootless on [lo, hi]), then count roots.

    excluded: (factor, justification) pairs stripped without a root
    count; the justification (why their roots are outside the true
    parameter set) goes into the audit trail.
    """
    if not P:
        cert.add("polynomial", "identically zero", indent=1)
        return False
    P = P.int_primitive()
    for f, why in excluded:
        P, rep = strip_factors(P, [f.int_primitive()])
        (_, mult), = rep
        if mult:
            cert.add("excluded-factor",
                     f"{format_upoly(f, 'n')} ^ {mult} ({why})", indent=1)
    P, report = strip_factors(P, [f.int_primitive() for f in known_factors])
    for f, mult in report:
        if mult == 0:
            continue
        cert.add("stripped-factor", f"{format_upoly(f, 'n')} ^ {mult}", indent=1)
        try:
            k = count_roots(f, lo, hi, method=count_method)
        except EndpointRoot:
            cert.add("stripped-factor-root", "at an interval endpoint", indent=1)
            return False
        if k:
            cert.add("stripped-factor-root", "inside the interval", indent=1)
            return False
    if P.degree() <= 0:
        cert.add("reduced", "nonzero constant", indent=1)
        return True
    try:
        k = count_roots(P, lo, hi, method=count_method)
    except EndpointRoot:
        cert.add("roots", "endpoint root", indent=1)
        return False
    cert.add("degree", P.degree(), indent=1)
    cert.add("roots-in-interval", k, indent=1)
    return k == 0


# ---------------------------------------------------------------------------
# enclosures of d-th roots via continued fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Enclosure:
    lower: Fraction
    upper: Fraction
    description: str
    power: int = 1           # defining power d
    target: Fraction = Fraction(1)  # the enclosed real is target^(1/power)

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("enclosure needs lower < upper")
        if self.lower ** self.power > self.target:
            raise ValueError("lower bound fails exact powering check")
        if self.upper ** self.power <= self.target:
            raise ValueError("upper bound fails exact powering check")

    def width(self):
        return self.upper - self.lower

    def __float__(self):
        return float(mpmath.mpf(self.target.numerator)
                     / self.target.denominator) ** (1.0 / self.power)


def _nth_root_floor(x: Fraction, d: int) -> int:
    """floor(x^(1/d)) for positive rational x by integer bisection."""
    if x < 1:
        return 0
    hi = 1
    while Fraction(hi ** d) <= x:
        hi <<= 1
    lo = hi >> 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if Fraction(mid ** d) <= x:
            lo = mid
        else:
            hi = mid
    return lo


def enclose(radicand, d, depth=20):
    """Rational enclosure of radicand^(1/d) from its continued fraction.

    The expansion terms are read off a high-precision float, but the
    returned bounds are verified by exact powering, so precision issues
    can only raise, never mislead.  depth = number of expansion terms;
    the bounds are the last convergents on each side within that depth.
    """
    t = Fraction(radicand)
    if t <= 0 or d < 2:
        raise ValueError("need a positive radicand and d >= 2")
    r0 = _nth_root_floor(t, d)
    if Fraction(r0) ** d == t:
        lo = Fraction(r0)
        return Enclosure(lo, lo + Fraction(1, 10 ** depth),
                         f"{radicand}^(1/{d})", d, t)
    with mpmath.workdps(40 + 12 * depth):
        x = mpmath.root(mpmath.mpf(t.numerator) / t.denominator, d)
        terms = []
        y = x
        for _ in range(depth):
            a = int(mpmath.floor(y))
            terms.append(a)
            fr = y - a
            if fr == 0:
                break
            y = 1 / fr
    # convergents
    h0, h1 = 1, terms[0]
    k0, k1 = 0, 1
    best_lo = best_hi = None
    for i, a in enumerate(terms):
        if i == 0:
            conv = Fraction(terms[0])
        else:
            h0, h1 = h1, a * h1 + h0
            k0, k1 = k1, a * k1 + k0
            conv = Fraction(h1, k1)
        if conv ** d < t:
            best_lo = conv
        elif conv ** d > t:
            best_hi = conv
    if best_lo is None or best_hi is None:
        raise ValueError("depth too small to bracket the root")
    return Enclosure(best_lo, best_hi, f"{radicand}^(1/{d})", d, t)


# ---------------------------------------------------------------------------
# rational majorants for polynomials with enclosed-irrational coefficients
# ---------------------------------------------------------------------------

def _interval_mul(lo1, hi1, lo2, hi2):
    prods = (lo1 * lo2, lo1 * hi2, hi1 * lo2, hi1 * hi2)
    return min(prods), max(prods)


def majorize(terms, enclosures, orthant):
    """Rational lower/upper bounding polynomials on the orthant.

    terms: dict degree -> list of (Fraction coefficient, key tuple),
    where each key names an enclosure and the monomial's coefficient is
    the sum of coefficient * product(enclosed irrationals).  orthant is
    'nonneg', 'nonpos' or 'real' for the sign of the variable.

    Returns (P_minus, P_plus) with P_minus <= P <= P_plus pointwise on
    the orthant.
    """
    lo_coeffs, hi_coeffs = {}, {}
    for k, parts in terms.items():
        lo_k, hi_k = Fraction(0), Fraction(0)
        for coef, key in parts:
            coef = Fraction(coef)
            lo, hi = coef, coef
            for name in key:
                e = enclosures[name]
                lo, hi = _interval_mul(lo, hi, e.lower, e.upper)
            lo_k += lo
            hi_k += hi
        if lo_k == hi_k:
            lo_coeffs[k] = hi_coeffs[k] = lo_k
            continue
        if k % 2 == 0 or orthant == "nonneg":
            mono_sign = 1
        elif orthant == "nonpos":
            mono_sign = -1
        else:
            raise SignAmbiguous(
                f"odd power y^{k} has no fixed sign on the whole line")
        if mono_sign > 0:
            lo_coeffs[k], hi_coeffs[k] = lo_k, hi_k
        else:
            lo_coeffs[k], hi_coeffs[k] = hi_k, lo_k
    return UniPoly.from_dict(lo_coeffs), UniPoly.from_dict(hi_coeffs)


# ---------------------------------------------------------------------------
# sparse text literals:  c*n^a*y^b  joined by + / -
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"^\s*(?P<coef>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?P<rest>(?:\*?\s*[a-zA-Z]\w*(?:\^\d+)?\s*)*)$")


def parse_terms(text, variables):
    """Parse a sparse polynomial literal into {exponent tuple: Fraction}.

    variables: ordered variable names; exponent tuple follows that order.
    """
    text = text.replace("-", "+-").replace("e+-", "e-")
    chunks = [c.strip() for c in text.split("+") if c.strip()]
    out = {}
    for chunk in chunks:
        neg = False
        body = chunk
        if body.startswith("-"):
            neg, body = True, body[1:].strip()
        coef = Fraction(1)
        expo = [0] * len(variables)
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor[0].isdigit():
                coef *= Fraction(factor)
                continue
            if "^" in factor:
                name, p = factor.split("^")
                p = int(p)
            else:
                name, p = factor, 1
            try:
                expo[variables.index(name)] += p
            except ValueError:
                raise ValueError(f"unknown variable {name!r} in literal")
        key = tuple(expo)
        val = -coef if neg else coef
        out[key] = out.get(key, Fraction(0)) + val
    return {k: v for k, v in out.items() if v}


def format_terms(d, variables):
    """Inverse of parse_terms; deterministic ordering (graded lexicographic,
    highest first)."""
    if not d:
        return "0"
    keys = sorted(d, key=lambda k: (sum(k),) + k, reverse=True)
    parts = []
    for k in keys:
        c = d[k]
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}")
            for v, e in zip(variables, k) if e)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append(("-" if c < 0 else "+", body))
    s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sgn, body in parts[1:]:
        s += f" {sgn} {body}"
    return s


def parse_upoly(text, var="x"):
    d = parse_terms(text, [var])
    return UniPoly.from_dict({k[0]: v for k, v in d.items()})


def format_upoly(p, var="x"):
    return format_terms({(k,): c for k, c in enumerate(p.coeffs) if c}, [var])


def parse_parampoly(text, main="y", param="n"):
    """Literal in two variables -> UniPoly in `main` with UniPoly-in-
    `param` coefficients."""
    d = parse_terms(text, [param, main])
    by_main = {}
    for (a, b), c in d.items():
        by_main.setdefault(b, {})[a] = c
    return UniPoly.from_dict(
        {b: UniPoly.from_dict(inner) for b, inner in by_main.items()})


def format_parampoly(P, main="y", param="n"):
    d = {}
    for b, c in enumerate(P.coeffs):
        if not c:
            continue
        if isinstance(c, UniPoly):
            for a, v in enumerate(c.coeffs):
                if v:
                    d[(a, b)] = v
        else:
            d[(0, b)] = Fraction(c)
    return format_terms(d, [param, main])
