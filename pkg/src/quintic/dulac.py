"""Dulac-function constructions and exact sign certification.

The non-existence/uniqueness arguments all follow one pattern: pick a
function V (quadratic in x, series in y), a rational exponent k, and
certify that M = <grad V, X> - k V div(X) keeps one sign on the region
where closed orbits can live.  This module builds the specific V's used
for each parameter window, extracts M in the form factor*(phi(y) x +
psi(y)), and runs the boundary-decomposition certification: M restricted
to each piece of the region boundary is a one-parameter family of
univariate polynomials whose root count is continued across the
parameter interval with exact arithmetic.

Three coefficient rings appear beyond the rationals:

* ``SExt``  -- Q(base)[s]/(s^3 - c), hosting s = (75 - 125 m)^(2/3);
* ``QuadExt`` -- Q[w]/(w^2 - d), for saddle coordinates m^(-1/4) once
  the parameter is written as a square;
* ``LinForm`` -- formal linear combinations of yet-unknown coefficients,
  used to assemble the linear condition system of the invariant-region
  construction.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import (
    ContactPossible,
    EndpointRoot,
    HypothesisFailed,
    InexactDivision,
    NoOval,
    OutOfScope,
    PieceFailed,
    SignAmbiguous,
    SingularConditionSystem,
)
from .polys import (
    Certificate,
    Enclosure,
    UniPoly,
    bisect_root,
    compose_at_bound,
    count_roots,
    discriminant,
    enclose,
    eval_parampoly,
    family_root_count,
    format_upoly,
    interp_resultant,
    majorize,
    poly_gcd,
    resultant,
    squarefree_part,
    strip_factors,
    sturm_chain,
    sturm_count,
)
from .phaseflow import PlanarSystem

Q = Fraction


# ---------------------------------------------------------------------------
# cubic extension  base[s] / (s^3 - c)
# ---------------------------------------------------------------------------

class SExt:
    """e0 + e1*s + e2*s^2 with s^3 = c; base ring Fraction or UniPoly.

    The modulus c fixes the base ring: a UniPoly modulus means the
    components are polynomials in the parameter, a Fraction modulus
    means plain rationals.  All binary operations coerce scalars (int,
    Fraction, base-ring UniPoly) into the e0 slot.
    """

    __slots__ = ("e0", "e1", "e2", "c")

    def __init__(self, e0, e1, e2, c):
        if isinstance(c, UniPoly):
            conv = (lambda v: v if isinstance(v, UniPoly)
                    else UniPoly.const(Fraction(v)) if v else UniPoly(()))
        else:
            conv = (lambda v: Fraction(v) if not isinstance(v, UniPoly)
                    else (_ for _ in ()).throw(TypeError(
                        "polynomial component over a scalar modulus")))
        object.__setattr__(self, "e0", conv(e0))
        object.__setattr__(self, "e1", conv(e1))
        object.__setattr__(self, "e2", conv(e2))
        object.__setattr__(self, "c", c)

    def __setattr__(self, *a):
        raise AttributeError("SExt is immutable")

    def _coerce(self, other):
        if isinstance(other, SExt):
            if other.c != self.c:
                raise ValueError("mixed moduli")
            return other
        return SExt(other, 0, 0, self.c)

    def __bool__(self):
        return bool(self.e0) or bool(self.e1) or bool(self.e2)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.e0 == o.e0 and self.e1 == o.e1 and self.e2 == o.e2)

    def __hash__(self):
        return hash(("SExt", self.e0, self.e1, self.e2))

    def __repr__(self):
        return f"SExt({self.e0!r}, {self.e1!r}, {self.e2!r})"

    def __add__(self, other):
        o = self._coerce(other)
        return SExt(self.e0 + o.e0, self.e1 + o.e1, self.e2 + o.e2, self.c)

    __radd__ = __add__

    def __neg__(self):
        return SExt(-self.e0, -self.e1, -self.e2, self.c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        o = self._coerce(other)
        a0, a1, a2 = self.e0, self.e1, self.e2
        b0, b1, b2 = o.e0, o.e1, o.e2
        c = self.c
        # convolution with s^3 -> c, s^4 -> c s
        f0 = a0 * b0 + c * (a1 * b2 + a2 * b1)
        f1 = a0 * b1 + a1 * b0 + c * (a2 * b2)
        f2 = a0 * b2 + a1 * b1 + a2 * b0
        return SExt(f0, f1, f2, c)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = SExt(1, 0, 0, self.c)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def norm(self):
        """Product over the three conjugates s -> s, ws, w^2 s; an
        element of the base ring, zero iff the element is zero in any
        embedding."""
        a, b, d = self.e0, self.e1, self.e2
        c = self.c
        return (a * a * a + c * (b * b * b) + c * c * (d * d * d)
                - 3 * c * (a * b * d))

    def numeric(self, n_value=None, dps=40):
        """Real-embedding value (s = real cube root of c >= 0)."""
        with mpmath.workdps(dps):
            def ev(p):
                if isinstance(p, UniPoly):
                    return p(mpmath.mpf(n_value.numerator) / n_value.denominator
                             if isinstance(n_value, Fraction) else
                             mpmath.mpf(n_value))
                return mpmath.mpf(p.numerator) / p.denominator
            cv = ev(self.c) if isinstance(self.c, UniPoly) else \
                mpmath.mpf(self.c.numerator) / self.c.denominator
            s = mpmath.cbrt(cv)
            return float(ev(self.e0) + ev(self.e1) * s + ev(self.e2) * s * s)


def s_modulus(m):
    """The cube of s = (75 - 125 m)^(2/3): works for rational m or a
    UniPoly parameter."""
    if isinstance(m, UniPoly):
        base = UniPoly.const(Fraction(75)) - 125 * m
        return base * base
    return (Fraction(75) - 125 * Fraction(m)) ** 2


def lift(v, modulus):
    """Coerce a scalar into the coefficient ring selected by modulus."""
    if modulus is None:
        return v
    if isinstance(v, SExt):
        if v.c != modulus:
            raise ValueError("mixed moduli")
        return v
    return SExt(v, 0, 0, modulus)


# ---------------------------------------------------------------------------
# quadratic extension  Q[w] / (w^2 - d)
# ---------------------------------------------------------------------------

class QuadExt:
    """p + q*sqrt(d) with rational p, q, d."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d):
        object.__setattr__(self, "p", Fraction(p))
        object.__setattr__(self, "q", Fraction(q))
        object.__setattr__(self, "d", Fraction(d))

    def __setattr__(self, *a):
        raise AttributeError("QuadExt is immutable")

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mixed radicands")
            return other
        return QuadExt(other, 0, self.d)

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __repr__(self):
        return f"QuadExt({self.p}, {self.q}; d={self.d})"

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.p + o.p, self.q + o.q, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadExt(self.p * o.p + self.d * self.q * o.q,
                       self.p * o.q + self.q * o.p, self.d)

    __rmul__ = __mul__

    def inverse(self):
        nrm = self.p * self.p - self.d * self.q * self.q
        if not nrm:
            raise ZeroDivisionError("non-invertible quadratic element")
        return QuadExt(self.p / nrm, -self.q / nrm, self.d)

    def __pow__(self, e):
        r = QuadExt(1, 0, self.d)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def numeric(self):
        return float(self.p) + float(self.q) * float(self.d) ** 0.5


# ---------------------------------------------------------------------------
# formal linear combinations of unknown coefficients
# ---------------------------------------------------------------------------

class LinForm:
    """sum_k coeffs[k] * unknown_k, with key 0 reserved for the constant
    term; coefficient ring Q[n] (UniPoly) or Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for k, v in (terms or {}).items():
            if v:
                t[k] = v
        object.__setattr__(self, "terms", t)

    def __setattr__(self, *a):
        raise AttributeError("LinForm is immutable")

    @classmethod
    def const(cls, v):
        return cls({0: v})

    @classmethod
    def unknown(cls, k, scale=1):
        return cls({k: Fraction(scale) if not isinstance(scale, UniPoly)
                    else scale})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, LinForm):
            other = LinForm.const(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            w = t.get(k, 0) + v
            if w:
                t[k] = w
            elif k in t:
                del t[k]
        return LinForm(t)

    __radd__ = __add__

    def __neg__(self):
        return LinForm({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinForm):
            other = LinForm.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LinForm):
            if not other:
                return LinForm()
            if not self:
                return LinForm()
            if list(other.terms) == [0]:
                other = other.terms[0]
            elif list(self.terms) == [0]:
                self, other = other, self.terms[0]
            else:
                raise TypeError("product of two non-constant linear forms")
        return LinForm({k: v * other for k, v in self.terms.items()})

    __rmul__ = __mul__

    def coeff(self, k):
        return self.terms.get(k, Fraction(0))

    def substitute(self, values):
        """Plug in concrete values for the unknowns; the values and the
        coefficients must multiply within one ring."""
        acc = None
        for k, v in self.terms.items():
            part = v if k == 0 else v * values[k]
            acc = part if acc is None else acc + part
        return acc if acc is not None else Fraction(0)


# ---------------------------------------------------------------------------
# bivariate polynomial dictionaries  {(x_exp, y_exp): ring coefficient}
# ---------------------------------------------------------------------------

def bi_add(a, b):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + v
        if w:
            out[k] = w
        elif k in out:
            del out[k]
    return out


def bi_neg(a):
    return {k: -v for k, v in a.items()}


def bi_mul(a, b):
    out = {}
    for (i1, j1), v1 in a.items():
        for (i2, j2), v2 in b.items():
            key = (i1 + i2, j1 + j2)
            w = out.get(key, 0) + v1 * v2
            if w:
                out[key] = w
            elif key in out:
                del out[key]
    return out


def bi_scale(a, c):
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def bi_diff(a, var):
    out = {}
    for (i, j), v in a.items():
        if var == 0 and i:
            out[(i - 1, j)] = i * v
        elif var == 1 and j:
            out[(i, j - 1)] = j * v
    return out


def bi_eval(a, x, y):
    total = 0
    for (i, j), v in a.items():
        total = total + v * x ** i * y ** j
    return total


# ---------------------------------------------------------------------------
# the V and M containers
# ---------------------------------------------------------------------------

PROVENANCES = ("nc-simple", "nc-Km", "35", "uniq", "925", "547", "custom")
_LEMMA6 = ("uniq", "925", "547")


@dataclass(frozen=True)
class DulacSpec:
    """A candidate Dulac seed V = g0(y) + g1(y) x + g2(y) x^2.

    g's are UniPoly in y over Fraction / UniPoly-in-parameter / SExt /
    QuadExt coefficients; ``param`` records how the family parameter
    enters ('m' directly, 'n4' for m = n^4, 'n2' for m = n^2) and ``m``
    holds the parameter as a ring element (symbolic UniPoly allowed).
    ``unit`` names a positive irrational prefactor that was divided out
    (it never affects sign certification).
    """

    g0: object
    g1: object
    g2: object
    k: Fraction
    provenance: str
    param: str = "m"
    m: object = None
    modulus: object = None
    unit: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.provenance in _LEMMA6:
            _verify_lemma6(self)

    def bi(self):
        out = {}
        for i, g in ((0, self.g0), (1, self.g1), (2, self.g2)):
            if g is None or not g:
                continue
            for j, cf in enumerate(g.coeffs):
                if cf:
                    out[(i, j)] = lift(cf, self.modulus)
        return out

    def value(self, x, y):
        """Numeric V(x, y); parameter must be concrete."""
        total = 0.0
        for (i, j), cf in self.bi().items():
            total += _to_float(cf, self.m) * float(x) ** i * float(y) ** j
        return total


def _to_float(cf, m=None):
    if isinstance(cf, SExt):
        return cf.numeric()
    if isinstance(cf, QuadExt):
        return cf.numeric()
    if isinstance(cf, UniPoly):
        raise ValueError("symbolic coefficient has no numeric value")
    return float(cf)


def _verify_lemma6(spec):
    """The construction relations g1 = g2' and g0 = g2''/2
    - m y^5 g2'/2 + (5/3) m y^4 g2, checked symbolically."""
    g2 = spec.g2
    m = spec.m
    mod = spec.modulus
    mE = lift(m, mod) if mod is not None else m
    want_g1 = g2.deriv()
    d2 = want_g1.deriv()
    want_g0 = (d2.scale(Fraction(1, 2))
               - g2.deriv().shift(5).scale(mE).scale(Fraction(1, 2))
               + g2.shift(4).scale(mE).scale(Fraction(5, 3)))
    if spec.g1 != want_g1 or spec.g0 != want_g0:
        raise HypothesisFailed("g0/g1 do not satisfy the construction "
                               "relations for this provenance")


@dataclass(frozen=True)
class MFunction:
    """M = <grad V, X> - k V div X, stored as y^y_factor * sum_i
    x_coeffs[i] x^i with the common y-power pulled out."""

    x_coeffs: tuple
    y_factor: int
    provenance: str
    param: str
    m: object
    modulus: object

    @property
    def x_degree(self):
        return len(self.x_coeffs) - 1

    @property
    def phi(self):
        """Coefficient of x (requires the linear-in-x shape)."""
        if self.x_degree > 1:
            raise OutOfScope("M is not linear in x")
        return self.x_coeffs[1] if self.x_degree == 1 else UniPoly(())

    @property
    def psi(self):
        if self.x_degree > 1:
            raise OutOfScope("M is not linear in x")
        return self.x_coeffs[0]

    def bi(self):
        out = {}
        for i, g in enumerate(self.x_coeffs):
            for j, cf in enumerate(g.coeffs):
                if cf:
                    out[(i, j)] = cf
        return {(i, j + self.y_factor): v for (i, j), v in out.items()}

    def value(self, x, y):
        total = 0.0
        for i, g in enumerate(self.x_coeffs):
            gy = 0.0
            for j, cf in enumerate(g.coeffs):
                if cf:
                    gy += _to_float(cf) * float(y) ** j
            total += gy * float(x) ** i
        return total * float(y) ** self.y_factor

    def antipodal_symmetric(self):
        """M(x, y) == M(-x, -y)?  Exact parity check."""
        for i, g in enumerate(self.x_coeffs):
            for j, cf in enumerate(g.coeffs):
                if cf and (i + j + self.y_factor) % 2 == 1:
                    return False
        return True


def quintic_terms(m_elem, modulus=None):
    """The vector field with the parameter as a ring element."""
    one = lift(Fraction(1), modulus)
    return ({(0, 3): one, (3, 0): -one},
            {(1, 0): -one, (0, 5): lift(m_elem, modulus)})


def compute_M(V: DulacSpec, k=None, X=None):
    """M = <grad V, X> - k V div(X), exact in the ring of V.

    X defaults to the quintic family at V's parameter; a PlanarSystem or
    a raw (p_terms, q_terms) pair is accepted.
    """
    if k is None:
        k = V.k
    k = Fraction(k)
    if X is None:
        p_terms, q_terms = quintic_terms(V.m, V.modulus)
    elif isinstance(X, PlanarSystem):
        p_terms = {key: lift(c, V.modulus) for key, c in X.p_terms.items()}
        q_terms = {key: lift(c, V.modulus) for key, c in X.q_terms.items()}
    else:
        p_terms, q_terms = X
        p_terms = {key: lift(c, V.modulus) for key, c in p_terms.items()}
        q_terms = {key: lift(c, V.modulus) for key, c in q_terms.items()}
    bi = V.bi()
    vx = bi_diff(bi, 0)
    vy = bi_diff(bi, 1)
    divx = bi_add(bi_diff(p_terms, 0), bi_diff(q_terms, 1))
    grad_dot = bi_add(bi_mul(vx, p_terms), bi_mul(vy, q_terms))
    M = bi_add(grad_dot, bi_scale(bi_mul(bi, divx), -k))
    return mfunction_from_bi(M, V)


def mfunction_from_bi(M, V):
    if not M:
        return MFunction((UniPoly(()),), 0, V.provenance, V.param, V.m,
                         V.modulus)
    yf = min(j for (_, j) in M)
    xdeg = max(i for (i, _) in M)
    if V.provenance in _LEMMA6 and xdeg > 1:
        raise HypothesisFailed("x^2 / x^3 terms survived a construction "
                               "that must cancel them")
    cols = []
    for i in range(xdeg + 1):
        coeffs = {}
        for (a, j), v in M.items():
            if a == i:
                coeffs[j - yf] = v
        cols.append(UniPoly.from_dict(coeffs) if coeffs else UniPoly(()))
    return MFunction(tuple(cols), yf, V.provenance, V.param, V.m, V.modulus)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_V1_kummer(m, truncation=8):
    """Linear-in-x seed V1 = g0 + g1 x with k = 1/3, g1 a truncated
    confluent-hypergeometric series in y^6.

    The positive prefactor (m/6)^(1/6) is divided out and recorded in
    ``unit``; all stored coefficients are rational.
    """
    m = Fraction(m)
    if m <= 0:
        raise OutOfScope("needs a positive parameter")
    if truncation < 1:
        raise ValueError("need at least one series term")
    coeffs = {}
    r = Fraction(1)  # (-1/9)_j / (7/6)_j / j! * (m/6)^j, starting at j=0
    for j in range(truncation):
        coeffs[6 * j + 1] = r
        r = r * (Fraction(-1, 9) + j) / (Fraction(7, 6) + j) / (j + 1) * m / 6
    g1 = UniPoly.from_dict(coeffs)
    return DulacSpec(g0=g1.deriv(), g1=g1, g2=None, k=Fraction(1, 3),
                     provenance="35", param="m", m=m, unit="(m/6)^(1/6)")


def kummer_residual(spec):
    """-g1'' + m y^5 g1' - (5/3) m y^4 g1; vanishes to the truncation
    order by construction."""
    g1 = spec.g1
    m = spec.m
    return (-g1.deriv().deriv()
            + g1.deriv().shift(5).scale(m)
            - g1.shift(4).scale(Fraction(5, 3) * m))


def m1_series(spec):
    """The y-only part of M for the linear-in-x seed, divided by the
    unit prefactor: (1/3) y^3 (3 m y^2 g1'' - 5 m y g1' + 3 g1)."""
    g1 = spec.g1
    m = spec.m
    inner = (g1.deriv().deriv().shift(2).scale(3 * m)
             - g1.deriv().shift(1).scale(5 * m)
             + g1.scale(Fraction(3)))
    return inner.shift(3).scale(Fraction(1, 3))


def _g2_series(m_elem, a2_elem, truncation, modulus):
    """Even series solution of the third-order equation
    -g'''/2 + (3/2) m y^5 g'' - (5/2) m y^4 g' + (2/3)(3-10m) y^3 g = 0
    with g(0) = 1, g'(0) = 0, and the y^2 coefficient prescribed."""
    one = lift(Fraction(1), modulus)
    coeffs = {0: one, 2: lift(a2_elem, modulus) if modulus is not None
              else a2_elem}
    mE = lift(m_elem, modulus) if modulus is not None else m_elem
    for k in range(0, truncation - 5):
        a_k = coeffs.get(k)
        if a_k is None or not a_k:
            continue
        # a_{k+6} = a_k * 2 [ (3/2) m k(k-1) - (5/2) m k + (2/3)(3-10m) ]
        #                 / ((k+6)(k+5)(k+4))
        bracket = (mE * Fraction(3 * k * (k - 1) - 5 * k, 2)
                   + (Fraction(2) - mE * Fraction(20, 3)))
        coeffs[k + 6] = a_k * bracket * Fraction(2, (k + 6) * (k + 5) * (k + 4))
    return UniPoly.from_dict({d: c for d, c in coeffs.items()
                              if d <= truncation})


def _lemma6_spec(g2, m_elem, modulus, provenance, param, unit=""):
    mE = lift(m_elem, modulus) if modulus is not None else m_elem
    g1 = g2.deriv()
    g0 = (g1.deriv().scale(Fraction(1, 2))
          - g1.shift(5).scale(mE).scale(Fraction(1, 2))
          + g2.shift(4).scale(mE).scale(Fraction(5, 3)))
    return DulacSpec(g0=g0, g1=g1, g2=g2, k=Fraction(2, 3),
                     provenance=provenance, param=param, m=m_elem,
                     modulus=modulus, unit=unit)


def build_V2_series(m, C2=None, truncation=12):
    """Quadratic-in-x seed with g2 the even series solution truncated at
    the requested degree.

    C2 = None selects the exact canonical choice -(3/5 - m)^(2/3) =
    -(75 - 125 m)^(2/3)/25, representing the cube-root value in the
    extension ring; a numeric C2 is used as an exact rational instead.
    """
    symbolic = isinstance(m, UniPoly)
    if not symbolic:
        m = Fraction(m)
    if C2 is None:
        c = s_modulus(m)
        a2 = SExt(0, Fraction(-1, 25), 0, c)
        g2 = _g2_series(m, a2, truncation, c)
        return _lemma6_spec(g2, m, c, "uniq", "m")
    a2 = Fraction(C2)
    g2 = _g2_series(m, a2, truncation, None)
    return _lemma6_spec(g2, m, None, "uniq", "m")


def g2final(m):
    """The degree-12 polynomial the canonical series must reproduce;
    hard-coded for regression, coefficients in the cube-root ring."""
    m = Fraction(m)
    c = s_modulus(m)
    s = SExt(0, 1, 0, c)
    one = SExt(1, 0, 0, c)
    return UniPoly.from_dict({
        12: Fraction(1, 89100) * (3 - 10 * m) * (3 + 35 * m) * one,
        8: Fraction(-1, 6300) * (3 - 13 * m) * s,
        6: Fraction(1, 90) * (3 - 10 * m) * one,
        2: Fraction(-1, 25) * s,
        0: one,
    })


def _n_poly(coeffs_by_deg):
    return UniPoly.from_dict({d: Fraction(c)
                              for d, c in coeffs_by_deg.items()})


def build_V2_prop925(n=None):
    """Explicit degree-8 even g2 for the middle parameter window,
    written in n with m = n^4.  n = None keeps the parameter symbolic
    (coefficients UniPoly in n); a rational n gives exact rational
    coefficients."""
    symbolic = n is None
    if symbolic:
        nv = UniPoly.x()
    else:
        n = Fraction(n)
        if not (Fraction(77, 100) < n < Fraction(844, 1000)):
            raise OutOfScope("parameter outside the certified window")
        nv = n
    A = (756 * nv ** 10 + 924 * nv ** 8 + 535 * nv ** 6 + 213 * nv ** 4
         + 51 * nv ** 2 + 9)
    B = 130 * nv ** 6 + 105 * nv ** 4 + 42 * nv ** 2 + 9
    m = nv ** 4
    three = Fraction(3) if not symbolic else UniPoly.const(Fraction(3))
    g2 = UniPoly.from_dict({
        0: 270 * A,
        2: -756 * nv ** 2 * B,
        6: 3 * (three - 10 * m) * A,
        8: -3 * nv ** 2 * (three - 13 * m) * B,
    })
    return _lemma6_spec(g2, m, None, "925", "n4")


A12_NUM = "the fixed top coefficient -157(10m-3)(35m+3)/44550000"


def a12_value(m):
    m = Fraction(m)
    return Fraction(-157) * (10 * m - 3) * (35 * m + 3) / 44550000


def _prop547_system():
    """Assemble the linear conditions for the invariant-region seed:
    g2 = 1 + a2 y^2 + ... + a12 y^12 with a12 prescribed, parameter
    m = n^2 kept symbolic.  Returns (equations, unknown keys); each
    equation is a LinForm over UniPoly-in-n that must vanish."""
    nv = UniPoly.x()
    m = nv * nv
    a12 = UniPoly.const(Fraction(-157, 44550000)) * (10 * m - 3) * (35 * m + 3)
    unknowns = (2, 4, 6, 8, 10)
    g2_coeffs = {0: LinForm.const(Fraction(1)), 12: LinForm.const(a12)}
    for u in unknowns:
        g2_coeffs[u] = LinForm.unknown(u)
    g2 = UniPoly.from_dict(g2_coeffs)
    mF = LinForm.const(m)
    g1 = g2.deriv()
    g0 = (g1.deriv().scale(Fraction(1, 2))
          - g1.shift(5).scale(mF).scale(Fraction(1, 2))
          + g2.shift(4).scale(mF).scale(Fraction(5, 3)))
    bi = {}
    for i, g in ((0, g0), (1, g1), (2, g2)):
        for j, cf in enumerate(g.coeffs):
            if cf:
                bi[(i, j)] = cf
    p_terms = {(0, 3): Fraction(1), (3, 0): Fraction(-1)}
    q_terms = {(1, 0): Fraction(-1), (0, 5): m}
    vx = bi_diff(bi, 0)
    vy = bi_diff(bi, 1)
    divx = bi_add(bi_diff(p_terms, 0), bi_diff(q_terms, 1))
    M = bi_add(bi_add(bi_mul(vx, p_terms), bi_mul(vy, q_terms)),
               bi_scale(bi_mul(bi, divx), Fraction(-2, 3)))
    if any(i > 1 for (i, _) in M):
        raise HypothesisFailed("construction left x^2 terms in M")
    phi = {j: v for (i, j), v in M.items() if i == 1}

    # values at the saddle (w, w), w^2 = 1/n: clear n-powers and split
    # into the rational and the w-multiple parts (one of the two parts
    # always vanishes identically by parity)
    def saddle_split(poly_bi):
        max_half = max((i + j) // 2 + 1 for (i, j) in poly_bi)
        even = LinForm()
        odd = LinForm()
        for (i, j), v in poly_bi.items():
            t = i + j
            power = UniPoly.monomial(Fraction(1), max_half - (t + 1) // 2
                                     if t % 2 else max_half - t // 2)
            if t % 2:
                odd = odd + v * LinForm.const(power)
            else:
                even = even + v * LinForm.const(power)
        return even, odd

    v_even, v_odd = saddle_split(bi)
    vx_even, vx_odd = saddle_split(vx)
    vy_even, vy_odd = saddle_split(vy)
    if v_odd or vx_even or vy_even:
        raise HypothesisFailed("saddle parity split lost its structure")

    # the binding conditions: phi = O(y^5), V2 = 0 at the saddles, and
    # both tangency conditions (the gradient vanishes there: a regular
    # curve point cannot be tangent to the saddle eigendirections,
    # which are irrational over Q(n))
    equations = [phi.get(1, LinForm()), phi.get(3, LinForm()),
                 v_even, vx_odd, vy_odd]
    return equations, unknowns


def _row_reduce(row):
    """Divide a whole row by one common scalar (the gcd of all integer
    coefficients after clearing denominators); the same factor on every
    entry keeps the equation intact."""
    from math import gcd, lcm
    den = 1
    num_g = 0
    for p in row:
        for c in p.coeffs:
            if c:
                den = lcm(den, c.denominator)
    for p in row:
        for c in p.coeffs:
            if c:
                num_g = gcd(num_g, abs(int(c * den)))
    if num_g == 0:
        return row
    scl = Fraction(den, num_g)
    return [p.scale(scl) if p else p for p in row]


def _linsolve_ratfunc(equations, unknowns):
    """Fraction-free elimination of a linear system whose coefficients
    are UniPoly in n; returns {unknown: (num, den)} with den a UniPoly.
    Raises SingularConditionSystem when the rows are inconsistent or
    do not determine every unknown."""
    def as_poly(v):
        return v if isinstance(v, UniPoly) else UniPoly.const(Fraction(v))

    rows = []
    for eq in equations:
        if not eq:
            continue
        rows.append([as_poly(eq.coeff(u)) for u in unknowns]
                    + [as_poly(-eq.coeff(0))])
    ncols = len(unknowns)
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i == r or not rows[i][col]:
                continue
            ri = rows[i]
            f1, f2 = pr[col], ri[col]
            g = poly_gcd(f1, f2)
            m1 = f1.divexact(g) if g.degree() > 0 else f1
            m2 = f2.divexact(g) if g.degree() > 0 else f2
            rows[i] = _row_reduce([a * m1 - b * m2 for a, b in zip(ri, pr)])
        pivots.append((r, col))
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] and not any(rows[i][:-1]):
            raise SingularConditionSystem("inconsistent condition rows")
    if len(pivots) < ncols:
        raise SingularConditionSystem("underdetermined condition system")
    out = {}
    for rr, col in pivots:
        num, den = rows[rr][-1], rows[rr][col]
        g = poly_gcd(num, den) if num else UniPoly.const(Fraction(1))
        if g.degree() > 0:
            num, den = num.divexact(g), den.divexact(g)
        if den.lc() < 0:
            num, den = -num, -den
        out[unknowns[col]] = (num, den)
    return out


_P547_LOCK = threading.Lock()
_P547_CACHE = {}


def prop547_coefficients():
    """Solved a2..a10 as (numerator, denominator) pairs in Q[n], n^2 = m;
    cached (the elimination is exact but not free)."""
    with _P547_LOCK:
        if "sol" not in _P547_CACHE:
            eqs, unk = _prop547_system()
            _P547_CACHE["sol"] = _linsolve_ratfunc(eqs, unk)
        return _P547_CACHE["sol"]


def _eval_ratfunc_quad(num, den, m):
    """num(n)/den(n) at n = sqrt(m) as a QuadExt over d = m."""
    m = Fraction(m)

    def at_sqrt(p):
        ev = Fraction(0)
        od = Fraction(0)
        for k, cf in enumerate(p.coeffs):
            if not cf:
                continue
            if k % 2 == 0:
                ev += Fraction(cf) * m ** (k // 2)
            else:
                od += Fraction(cf) * m ** (k // 2)
        return QuadExt(ev, od, m)

    d = at_sqrt(den)
    if not d:
        raise SingularConditionSystem("condition system degenerate at "
                                      "this parameter")
    return at_sqrt(num) * d.inverse()


def build_V2_prop547(m=None, n=None):
    """Degree-12 invariant-region seed.

    Exactly one of m, n is given.  A rational n (with m = n^2) yields
    plain rational coefficients; a rational non-square m yields
    coefficients in Q(sqrt(m)).
    """
    if (m is None) == (n is None):
        raise ValueError("give exactly one of m, n")
    sol = prop547_coefficients()
    if n is not None:
        n = Fraction(n)
        m = n * n
        if not (Fraction(1, 2) <= m <= Fraction(547, 1000)):
            raise OutOfScope("parameter outside the certified window")

        def val(num, den):
            dv = den(n)
            if not dv:
                raise SingularConditionSystem(
                    "condition system degenerate at this parameter")
            return num(n) / dv

        coeffs = {0: Fraction(1), 12: a12_value(m)}
        for u, (nu, de) in sol.items():
            coeffs[u] = val(nu, de)
        g2 = UniPoly.from_dict(coeffs)
        return _lemma6_spec(g2, m, None, "547", "n2")
    m = Fraction(m)
    if not (Fraction(1, 2) <= m <= Fraction(547, 1000)):
        raise OutOfScope("parameter outside the certified window")
    one = QuadExt(1, 0, m)
    coeffs = {0: one, 12: QuadExt(a12_value(m), 0, m)}
    for u, (nu, de) in sol.items():
        coeffs[u] = _eval_ratfunc_quad(nu, de, m)
    g2 = UniPoly.from_dict(coeffs)
    return _lemma6_spec(g2, QuadExt(m, 0, m), None, "547", "n2")


# ---------------------------------------------------------------------------
# the certification region and the canonical irrational sample
# ---------------------------------------------------------------------------

# Frozen rational enclosures for the sample n0 = (1/2)^(1/4): its powers
# reduce to rationals times 8^(1/4), and the cube-root coefficient
# s0 = (75 - 125/2)^(2/3) equals (5/2) * 10^(1/3).
ENCLOSE_8_4 = enclose(Fraction(8), 4, depth=5)    # 3002/1785 < 8^(1/4) < 37/22
ENCLOSE_10_3 = enclose(Fraction(10), 3, depth=4)  # 28/13 < 10^(1/3) < 265/123
_N0_ENCL = {"root8": ENCLOSE_8_4, "root10": ENCLOSE_10_3}
N0_LABEL = "(1/2)^(1/4)"


@dataclass(frozen=True)
class RegionOmega:
    """The square |x|, |y| <= 1/n cut by the hyperbola xy + 1 = 0; Omega
    is the connected component containing the origin.  n = None selects
    the canonical irrational sample (1/2)^(1/4)."""

    n: object = None
    provenance: str = "uniq"

    @property
    def pieces(self):
        return ("gamma1: y = 1/n, -n < x < 1/n",
                "gamma2: x = 1/n, -n < y < 1/n",
                "gamma3: y = -1/x, n < x < 1/n",
                "gamma4: corners (1/n, -n), (n, -1/n)",
                "gamma5: corner (1/n, 1/n)")

    def contains(self, x, y):
        inv = 1.0 / float(self.n) if self.n else 2.0 ** 0.25
        return abs(float(x)) < inv and abs(float(y)) < inv \
            and float(x) * float(y) > -1.0


_POW8 = ((Fraction(1), ()), (Fraction(1, 2), ("root8",)),
         (Fraction(1, 4), ("root8", "root8")),
         (Fraction(1, 8), ("root8", "root8", "root8")))


def _n0_power(k):
    """n0^k as (rational, enclosure keys), via n0 = (1/2) 8^(1/4)."""
    q, r = divmod(k, 4)
    base, keys = _POW8[r]
    return base / 2 ** q, keys


def _terms_at_n0(p):
    """x-polynomial with SExt(UniPoly-in-n) coefficients, evaluated at
    n = n0: the terms dict majorize() wants, every irrational split into
    a rational times products of 8^(1/4) and 10^(1/3)."""
    terms = {}
    for deg, se in enumerate(p.coeffs):
        if not se:
            continue
        entries = []
        for sdeg, e in enumerate((se.e0, se.e1, se.e2)):
            if not e:
                continue
            coeffs = e.coeffs if isinstance(e, UniPoly) else ((Fraction(e),))
            for k, cf in enumerate(coeffs):
                if not cf:
                    continue
                base, keys = _n0_power(k)
                entries.append((cf * base * Fraction(5, 2) ** sdeg,
                                keys + ("root10",) * sdeg))
        if entries:
            terms[deg] = entries
    return terms


def _majorant_negative(p, spans):
    """Certify p < 0 at n = n0 on the union of the spans.

    Each span is (orthant, a, b, probe): on the orthant interval (a, b)
    the rational upper majorant must be rootless and negative at the
    probe point, which pins its sign on the whole span.  Returns
    (ok, notes, witness)."""
    notes = []
    terms = _terms_at_n0(p)
    for orthant, a, b, probe in spans:
        upper = majorize(terms, _N0_ENCL, orthant)[1]
        val = upper(Fraction(probe))
        if val >= 0:
            return False, notes, (f"upper majorant nonnegative at "
                                  f"{probe} on {orthant} span [{a}, {b}]")
        try:
            k = count_roots(upper, Fraction(a), Fraction(b))
        except EndpointRoot:
            k = None
        if k:
            return False, notes, (f"upper majorant has {k} roots on "
                                  f"{orthant} span ({a}, {b})")
        notes.append(f"{orthant} ({a}, {b}): upper majorant < 0 "
                     f"(value {float(val):.4g} at {probe}, rootless)")
    return True, notes, None


# ---------------------------------------------------------------------------
# conjugate products: exact root bookkeeping over the cube-root ring
# ---------------------------------------------------------------------------

def _split_sext(p):
    """p = A + s B with A, B over Q[n]; the pieces never carry s^2."""
    A, B = {}, {}
    for j, cf in enumerate(p.coeffs):
        if not cf:
            continue
        if cf.e2:
            raise HypothesisFailed("unexpected s^2 component in a "
                                   "boundary piece")
        for part, dest in ((cf.e0, A), (cf.e1, B)):
            if part:
                dest[j] = (part if isinstance(part, UniPoly)
                           else UniPoly.const(Fraction(part)))
    return UniPoly.from_dict(A), UniPoly.from_dict(B)


def _conjugate_product(p, c):
    """G = A^3 + c B^3 for p = A + s B with s^3 = c > 0.

    G is the product of p with its two complex conjugates s -> w s,
    w a primitive cube root of unity; the conjugate pair contributes
    (A - sB/2)^2 + (3/4)(sB)^2, positive unless A = B = 0 (which makes
    p = 0 too).  So G, a polynomial over Q[n], has exactly the real
    roots of p, with the same multiplicities."""
    A, B = _split_sext(p)
    G = A * A * A + (B * B * B).scale(c)
    return G, A, B


def _nested(p):
    """x-poly over SExt -> x-poly over (s-poly over n-poly)."""
    return UniPoly([
        UniPoly((cf.e0, cf.e1, cf.e2)) if cf else UniPoly(())
        for cf in p.coeffs])


def _wrap_sdeg0(p):
    """n-poly coefficients wrapped to s-degree 0 for interp_resultant."""
    return UniPoly([UniPoly((cf,)) if cf else UniPoly(())
                    for cf in p.coeffs])


def _s_norm(R, c):
    """Norm down to Q[n] of an s-polynomial R (s^3 = c): fold into
    degree < 3 and apply e0^3 + c e1^3 + c^2 e2^3 - 3 c e0 e1 e2."""
    es = [UniPoly(()), UniPoly(()), UniPoly(())]
    for k, coef in enumerate(R.coeffs):
        if not coef:
            continue
        j, r = divmod(k, 3)
        es[r] = es[r] + coef * c ** j
    e0, e1, e2 = es
    return (e0 ** 3 + (e1 ** 3) * c + (e2 ** 3) * (c * c)
            - (e0 * e1 * e2).scale(Fraction(3)) * c)


def _disc_witness(P, A, B, c):
    """A polynomial over Q[n] whose nonvanishing on the parameter
    interval implies disc_x of the conjugate product is nonzero there.

    The product's discriminant is (up to leading-coefficient units) the
    product of the conjugate discriminants times the squared pairwise
    resultants.  The norm of Res_x(P, P') covers the first group; a
    common root of two distinct conjugates forces A = B = 0, so the
    pairwise resultants vanish only where Res_x(A, B) or a leading
    coefficient does.  c > 0 enters through the norm formula."""
    r1 = _s_norm(interp_resultant(_nested(P), _nested(P.deriv())), c)
    r2 = interp_resultant(_wrap_sdeg0(A), _wrap_sdeg0(B))
    w = r1.int_primitive() * r2.int_primitive()
    for f in (A.lc(), B.lc(), c):
        w = w * (f if isinstance(f, UniPoly) else UniPoly.const(Fraction(f)))
    return w


# ---------------------------------------------------------------------------
# full-interval certification for the cube-root construction
# ---------------------------------------------------------------------------

_UNIQ_KNOWN = (UniPoly.x(),
               UniPoly.from_dict({4: Fraction(35), 0: Fraction(3)}),
               UniPoly.from_dict({4: Fraction(10), 0: Fraction(-3)}),
               UniPoly.from_dict({4: Fraction(13), 0: Fraction(-3)}))
_UNIQ_EXCLUDED = ((UniPoly.from_dict({4: Fraction(5), 0: Fraction(-3)}),
                   "vanishes only at n^4 = 3/5, at or beyond the excluded "
                   "right endpoint of the half-open parameter set"),)

_WITNESS_LOCK = threading.Lock()
_WITNESS_CACHE = {}


def _moving(expr):
    """Moving interval bounds as (numerator, denominator) in n."""
    if expr == "-n":
        return (UniPoly.from_dict({1: Fraction(-1)}),
                UniPoly.const(Fraction(1)))
    if expr == "n":
        return (UniPoly.x(), UniPoly.const(Fraction(1)))
    if expr == "1/n":
        return (UniPoly.const(Fraction(1)), UniPoly.x())
    if expr == "-1/n":
        return (UniPoly.const(Fraction(-1)), UniPoly.x())
    raise ValueError(expr)


def _uniq_pieces(M):
    """Boundary restrictions of M = y^4 (phi x + psi), m = n^4, cleared
    of the positive factors n^k, x^k and of the common y^4.

    Returns an ordered list of (name, piece polynomial over SExt,
    majorant spans at n0, (lower bound, upper bound), heavy flag)."""
    if not isinstance(M.m, UniPoly):
        raise OutOfScope("full-interval certification needs the symbolic "
                         "parameterization m = n^4")
    phi, psi = M.phi, M.psi
    c = M.modulus

    def at_inv_n(p):
        acc = SExt(UniPoly(()), 0, 0, c)
        for j, cf in enumerate(p.coeffs):
            if cf:
                acc = acc + cf * SExt(UniPoly.monomial(Fraction(1), 16 - j),
                                      0, 0, c)
        return acc

    # gamma1: y = 1/n; M * n^20 = (n^16 phi(1/n)) x + n^16 psi(1/n)
    p1 = UniPoly((at_inv_n(psi), at_inv_n(phi)))
    # gamma2: x = 1/n; M * n / y^4 scaled to match the paper-sized display
    nE = SExt(UniPoly.x(), 0, 0, c)
    p2 = (phi + psi.scale(nE)).scale(Fraction(2806650))
    # gamma3: y = -1/x; M * x^20 as a polynomial in x
    zero = SExt(UniPoly(()), 0, 0, c)
    t3 = {}
    for j, cf in enumerate(phi.coeffs):
        if cf:
            t3[17 - j] = t3.get(17 - j, zero) + cf * Fraction((-1) ** j)
    for j, cf in enumerate(psi.coeffs):
        if cf:
            t3[16 - j] = t3.get(16 - j, zero) + cf * Fraction((-1) ** j)
    p3 = UniPoly.from_dict(t3)

    both_signs = [("nonpos", Fraction(-1), Fraction(0), Fraction(0)),
                  ("nonneg", Fraction(0), Fraction(6, 5), Fraction(0))]
    hyper = [("nonneg", Fraction(5, 6), Fraction(6, 5), Fraction(1))]
    return [
        ("gamma1", p1, both_signs, ("-n", "1/n"), False),
        ("gamma2", p2, both_signs, ("-n", "1/n"), True),
        ("gamma3", p3, hyper, ("n", "1/n"), True),
    ]


def uniq_q2_display(M):
    """The gamma2 restriction 2806650*n*M(1/n, y)/y^4 over the s-ring;
    exposed for regression against the displayed polynomial."""
    for name, p, _, _, _ in _uniq_pieces(M):
        if name == "gamma2":
            return p
    raise AssertionError


def certify_uniq(interval=(Fraction(1, 2), Fraction(3, 5)), M=None):
    """Full-interval boundary certification for the cube-root
    construction: M keeps one sign on Omega for every m in the interval
    (subset of [1/2, 3/5], right endpoint excluded).

    The parameter runs over a rational superset of [interval[0]^(1/4),
    interval[1]^(1/4)]; each boundary piece is continued from the
    irrational sample n0 = (1/2)^(1/4), where rational majorants built
    from the frozen enclosures decide the sign."""
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if not (Fraction(1, 2) <= lo < hi <= Fraction(3, 5)):
        raise OutOfScope("certified window is [1/2, 3/5)")
    if M is None:
        V = build_V2_series(UniPoly.x() ** 4)
        M = compute_M(V)
    c = M.modulus
    pieces = _uniq_pieces(M)

    cert = Certificate(proposition="uniq")
    cert.add("parameterization", "m = n^4, s = (75 - 125 n^4)^(2/3)")
    cert.add("interval-m", f"[{lo}, {hi})")
    nlo = enclose(lo, 4).lower
    nhi = enclose(hi, 4).upper
    cert.add("interval-n-superset", f"[{nlo}, {nhi}]")
    cert.add("sample", N0_LABEL)
    cert.add("enclosures", f"{ENCLOSE_8_4.lower} < 8^(1/4) < "
             f"{ENCLOSE_8_4.upper}; {ENCLOSE_10_3.lower} < 10^(1/3) < "
             f"{ENCLOSE_10_3.upper}")
    if not M.antipodal_symmetric():
        raise PieceFailed("symmetry", "M(x, y) != M(-x, -y)")
    cert.add("symmetry", "M(-x,-y) = M(x,y); lower half boundary follows")
    cert.add("no-ovals", "M/y^4 is linear in x: {M=0} minus {y=0} is the "
             "graph x = -psi/phi, every branch unbounded")
    cert.add("zero-set y=0", "not invariant (xdot = y^3 - x^3 != 0 there "
             "off the origin)")
    cert.add("corners", "covered by the boundary compositions of "
             "hypothesis (ii) on each adjoining piece")

    # stage 1: decide the sign at the sample (cheap; fails fast)
    sample_notes = {}
    for name, p, spans, _, _ in pieces:
        ok, notes, witness = _majorant_negative(p, spans)
        if not ok:
            raise PieceFailed(name, witness)
        sample_notes[name] = "no roots; " + "; ".join(notes)

    # stage 2: continue the count 0 across the parameter interval
    for name, p, spans, (lob, hib), heavy in pieces:
        G, A, B = _conjugate_product(p, c)
        if heavy:
            key = (name, p.coeffs)
            with _WITNESS_LOCK:
                witness_poly = _WITNESS_CACHE.get(key)
            if witness_poly is None:
                witness_poly = _disc_witness(p, A, B, c)
                with _WITNESS_LOCK:
                    _WITNESS_CACHE[key] = witness_poly
        else:
            witness_poly = None
        note = sample_notes[name]
        sub = family_root_count(
            G, _moving(lob), _moving(hib), (nlo, nhi), N0_LABEL, 0,
            known_factors=_UNIQ_KNOWN, excluded_factors=_UNIQ_EXCLUDED,
            disc_override=witness_poly,
            sample_counter=lambda note=note: (0, note))
        cert.merge(sub, f"piece {name} (conjugate product A^3 + cB^3, "
                   f"same real roots)")
        if not sub.verdict:
            raise PieceFailed(name, sub.witness)
    cert.add("conclusion", "M keeps one sign (negative) on Omega for "
             "every parameter in the interval")
    return cert


# ---------------------------------------------------------------------------
# the simple quadratic seed and its k-tuned variant
# ---------------------------------------------------------------------------

def build_Vnc():
    """V = 2x^2 + y^4 with the parameter symbolic; k = 2/3."""
    return DulacSpec(g0=UniPoly.from_dict({4: Fraction(1)}), g1=None,
                     g2=UniPoly.const(Fraction(2)), k=Fraction(2, 3),
                     provenance="nc-simple", param="m", m=UniPoly.x())


def certify_nc(interval=(Fraction(0), Fraction(3, 10))):
    """M for V = 2x^2 + y^4, k = 2/3 is a sum of even monomials whose
    coefficients are affine in m and nonnegative on (0, 3/10]."""
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if not (Fraction(0) <= lo < hi <= Fraction(3, 10)):
        raise OutOfScope("coefficient-sign route only covers (0, 3/10]")
    M = compute_M(build_Vnc())
    cert = Certificate(proposition="nc-simple")
    cert.add("interval-m", f"({lo}, {hi}]")
    for (i, j), cf in sorted(M.bi().items()):
        if (i % 2) or (j % 2):
            raise PieceFailed("parity", f"odd monomial x^{i} y^{j}")
        cpoly = cf if isinstance(cf, UniPoly) else UniPoly.const(Fraction(cf))
        if cpoly.degree() > 1:
            raise PieceFailed("structure", "coefficient not affine in m")
        va, vb = cpoly(lo), cpoly(hi)
        if va < 0 or vb < 0:
            raise PieceFailed(f"x^{i} y^{j}",
                              f"coefficient {format_upoly(cpoly, 'm')} "
                              f"negative on the interval")
        cert.add(f"x^{i} y^{j}", f"{format_upoly(cpoly, 'm')} >= 0 on the "
                 f"interval (affine, endpoint values {va}, {vb})", indent=1)
    cert.add("conclusion", "M >= 0 on R^2; zero set {y = 0} is not "
             "invariant, so no periodic orbits")
    return cert


def km_value(m, dps=30):
    """k = K(m) = 8(11m + R)/(10m + 3)^2 with
    R = sqrt(m(1 - 4m)(25m - 9)); real for m in [1/4, 9/25]."""
    with mpmath.workdps(dps):
        mf = mpmath.mpf(Fraction(m).numerator) / Fraction(m).denominator
        R = mpmath.sqrt(mf * (1 - 4 * mf) * (25 * mf - 9))
        return 8 * (11 * mf + R) / (10 * mf + 3) ** 2


def general_k_m_coeffs(m, k):
    """Coefficients (x^4, x^2 y^4, y^8) of M for V = 2x^2 + y^4 and
    exponent k: ((6k-4), k(3-10m), (4-5k)m), verified against the
    symbolic pairing for rational inputs."""
    m, k = Fraction(m), Fraction(k)
    V = DulacSpec(g0=UniPoly.from_dict({4: Fraction(1)}), g1=None,
                  g2=UniPoly.const(Fraction(2)), k=k,
                  provenance="nc-Km", param="m", m=m)
    bi = compute_M(V).bi()
    want = {(4, 0): 6 * k - 4, (2, 4): k * (3 - 10 * m),
            (0, 8): (4 - 5 * k) * m}
    got = {key: Fraction(v) for key, v in bi.items() if v}
    if got != {key: v for key, v in want.items() if v}:
        raise HypothesisFailed("general-k M does not match the "
                               "three-term closed form")
    return want[(4, 0)], want[(2, 4)], want[(0, 8)]


def certify_nc_km(samples=20, rtol=1e-10):
    """With k = K(m) the M-function for V = 2x^2 + y^4 becomes a perfect
    square (alpha x^2 + beta y^4)^2 on (1/4, 9/25]: checked through the
    discriminant identity K^2(3-10m)^2 = 4(6K-4)(4-5K)m at sampled m."""
    cert = Certificate(proposition="nc-Km")
    cert.add("interval-m", "(1/4, 9/25]")
    general_k_m_coeffs(Fraction(1, 3), Fraction(2, 3))  # structure check
    cert.add("structure", "M = (6k-4)x^4 + k(3-10m)x^2 y^4 + (4-5k)m y^8 "
             "(verified symbolically at a rational k)")
    lo, hi = Fraction(1, 4), Fraction(9, 25)
    with mpmath.workdps(40):
        for i in range(1, samples + 1):
            m = lo + (hi - lo) * Fraction(i, samples)
            K = km_value(m)
            mf = mpmath.mpf(m.numerator) / m.denominator
            a2 = 6 * K - 4          # alpha^2
            b2 = (4 - 5 * K) * mf   # beta^2
            mid = K * (3 - 10 * mf)  # 2 alpha beta
            if a2 < 0 or b2 < 0:
                raise PieceFailed("square", f"negative square at m = {m}")
            resid = abs(mid * mid - 4 * a2 * b2)
            scale = max(abs(mid * mid), abs(4 * a2 * b2), mpmath.mpf(1))
            if resid / scale > rtol:
                raise PieceFailed("square",
                                  f"discriminant residual {float(resid)} "
                                  f"at m = {m}")
            cert.add(f"m = {m}", f"residual {float(resid/scale):.3e}",
                     indent=1)
    cert.add("conclusion", "M is a perfect square; {M = 0} is a curve, "
             "not invariant, so no periodic orbits")
    return cert


def certify_35(m, truncation=8):
    """For m >= 3/5 every coefficient of the truncated M1 series is
    nonpositive: the j = 0 term carries 3 - 5m <= 0 and for j >= 1 the
    factor (-1/9)_j is negative while m(6j+1)(18j-5) + 3 > 0; the same
    signs persist for the full series, so the truncation is
    representative."""
    m = Fraction(m)
    if m < Fraction(3, 5):
        raise OutOfScope("sign argument needs m >= 3/5")
    spec = build_V1_kummer(m, truncation)
    series = m1_series(spec)
    cert = Certificate(proposition="35")
    cert.add("parameter-m", m)
    cert.add("unit", spec.unit + " > 0 divided out")
    for j, cf in enumerate(series.coeffs):
        if not cf:
            continue
        if cf > 0:
            raise PieceFailed(f"y^{j}", f"positive coefficient {cf}")
        cert.add(f"y^{j}", f"coefficient {cf} <= 0", indent=1)
    cert.add("tail", "every further series term has the sign of "
             "(-1/9)_j < 0 times m(6j+1)(18j-5)+3 > 0: nonpositive")
    cert.add("conclusion", "M1 <= 0 with non-invariant zero set; "
             "no periodic orbits for m >= 3/5")
    return cert


# ---------------------------------------------------------------------------
# rational-sample certification for the explicit middle-window seed
# ---------------------------------------------------------------------------

# the edge polynomial E(n): numer of dM/dx at the saddle corner; its
# unique positive root ntilde splits the two proof routes
EEE_POLY = UniPoly.from_dict({
    16: Fraction(88200), 14: Fraction(107800), 12: Fraction(-4930),
    10: Fraction(-37380), 8: Fraction(-15855), 6: Fraction(-2736),
    4: Fraction(576), 2: Fraction(108), 0: Fraction(-27)})

_NTILDE_LOCK = threading.Lock()
_NTILDE_CACHE = {}


def ntilde_bounds(width=Fraction(1, 10 ** 9)):
    """Rational bracket of width <= width around the route-splitting
    root ntilde ~ 0.8045592 of the edge polynomial."""
    with _NTILDE_LOCK:
        hit = _NTILDE_CACHE.get(width)
        if hit is None:
            if count_roots(EEE_POLY, Fraction(77, 100),
                           Fraction(85, 100)) != 1:
                raise HypothesisFailed("edge polynomial root count")
            hit = bisect_root(EEE_POLY, Fraction(77, 100),
                              Fraction(85, 100), width)
            _NTILDE_CACHE[width] = hit
        return hit


def _exact_m_value(M, x, y):
    """M(x, y) with everything rational (rational-parameter builds)."""
    x, y = Fraction(x), Fraction(y)
    total = Fraction(0)
    for i, g in enumerate(M.x_coeffs):
        gy = Fraction(0)
        for j, cf in enumerate(g.coeffs):
            if cf:
                gy += Fraction(cf) * y ** j
        total += gy * x ** i
    return total * y ** M.y_factor


def _open_count(p, a, b, known_roots=()):
    """Root count on the open interval (a, b) after dividing out the
    given known endpoint roots; returns (count, stripped audit)."""
    stripped = []
    for r in known_roots:
        lin = UniPoly.from_dict({1: Fraction(1), 0: -Fraction(r)})
        p, rep = strip_factors(p, [lin])
        if rep[0][1]:
            stripped.append((r, rep[0][1]))
    return sturm_count(p, a, b), stripped


def _as_xpoly(bi):
    """Bivariate dict {(i, j): Fraction} -> UniPoly in x over
    UniPoly-in-y coefficients."""
    xdeg = max(i for (i, _) in bi)
    cols = []
    for i in range(xdeg + 1):
        d = {j: v for (a, j), v in bi.items() if a == i}
        cols.append(UniPoly.from_dict(d) if d else UniPoly(()))
    return UniPoly(cols)


def _mdot_reduced(M):
    """N with Mdot = <grad M, X> = y^3 N, exact; raises if the y^3
    factor is not there."""
    bi = M.bi()
    p_terms, q_terms = quintic_terms(M.m, None)
    md = bi_add(bi_mul(bi_diff(bi, 0), p_terms),
                bi_mul(bi_diff(bi, 1), q_terms))
    out = {}
    for (i, j), v in md.items():
        if not v:
            continue
        if j < 3:
            raise HypothesisFailed("Mdot not divisible by y^3")
        out[(i, j - 3)] = v
    return out


def _v_line_check(V, n, cert):
    """{V = 0} misses the line y = 9x/10 inside the square: V has no
    ovals in Omega (an oval would surround the origin)."""
    w = {}
    for (i, j), cf in V.bi().items():
        d = i + j
        w[d] = w.get(d, Fraction(0)) + Fraction(cf) * Fraction(9, 10) ** j
    wp = UniPoly.from_dict(w)
    k = sturm_count(wp, -1 / n, 1 / n)
    cert.add("V-no-ovals", f"V(x, 9x/10) has {k} roots on (-1/n, 1/n); "
             f"V(0,0) = {wp.coeff(0)} < 0", indent=1)
    if k or wp.coeff(0) >= 0:
        raise PieceFailed("V-no-ovals", f"{k} roots on the probe line")


def _certify_925_boundary(M, n, cert):
    """Route for n below the splitting root: M keeps one sign on Omega,
    shown piece by piece with plain Sturm counts (rational n)."""
    phi, psi = M.phi, M.psi
    En = EEE_POLY(n)
    cert.add("route", "boundary sign (n <= ntilde)")

    # gamma1 through the edge identity: numer(M(x, 1/n)) = c (nx - 1) E(n)
    a = sum(Fraction(cf) * (1 / n) ** j for j, cf in enumerate(phi.coeffs))
    b = sum(Fraction(cf) * (1 / n) ** j for j, cf in enumerate(psi.coeffs))
    if a * (-1) != b * n or not En:
        raise PieceFailed("gamma1", "edge identity failed")
    ratio = a / (n * En)
    cert.add("gamma1", f"M(x, 1/n) = {ratio} * (nx - 1) E(n) / n^4; "
             f"E({n}) = {En} != 0; the only zero is the corner x = 1/n",
             indent=1)

    # gamma2: x = 1/n; the saddle corner root y = 1/n divides out
    r2 = phi.scale(1 / n) + psi
    k2, stripped = _open_count(r2, -n, 1 / n, known_roots=(1 / n,))
    cert.add("gamma2", f"corner roots divided out {stripped}; "
             f"{k2} roots on (-n, 1/n)", indent=1)
    if k2:
        raise PieceFailed("gamma2", f"{k2} roots")

    # gamma3: y = -1/x cleared by x^16
    t3 = {}
    for j, cf in enumerate(phi.coeffs):
        if cf:
            t3[17 - j] = t3.get(17 - j, Fraction(0)) + cf * (-1) ** j
    for j, cf in enumerate(psi.coeffs):
        if cf:
            t3[16 - j] = t3.get(16 - j, Fraction(0)) + cf * (-1) ** j
    r3 = UniPoly.from_dict(t3)
    k3 = sturm_count(r3, n, 1 / n)
    cert.add("gamma3", f"{k3} roots on (n, 1/n)", indent=1)
    if k3:
        raise PieceFailed("gamma3", f"{k3} roots")

    # gamma4 corners
    c1 = _exact_m_value(M, 1 / n, -n)
    c2 = _exact_m_value(M, n, -1 / n)
    cert.add("gamma4", f"M(1/n, -n) M(n, -1/n) = {c1 * c2} != 0", indent=1)
    if not c1 * c2:
        raise PieceFailed("gamma4", "M vanishes at a lower corner")

    # gamma5: the saddle corner, where M = 0 by construction
    for eps in (Fraction(1, 1000), Fraction(1, 10 ** 6)):
        y = 1 / n - eps
        xv = -sum(Fraction(cf) * y ** j for j, cf in enumerate(psi.coeffs)) \
            / sum(Fraction(cf) * y ** j for j, cf in enumerate(phi.coeffs))
        if xv <= 1 / n:
            raise PieceFailed("gamma5", f"zero curve enters the square "
                              f"at y = 1/n - {eps}")
    cert.add("gamma5", "M(1/n, 1/n) = 0; dM/dx there = phi(1/n)/n^4 != 0 "
             "(E(n) != 0) and the zero branch x(y) stays right of the "
             "square (spot checked)", indent=1)


def _factor_univariate(p):
    """Rational univariate factorization via sympy; returns the list of
    (UniPoly factor, multiplicity)."""
    import sympy
    ysym = sympy.Symbol("y")
    expr = sum(sympy.Rational(cf.numerator, cf.denominator) * ysym ** j
               for j, cf in enumerate(p.coeffs) if cf)
    _, factors = sympy.factor_list(sympy.Poly(expr, ysym))
    out = []
    for fac, mult in factors:
        poly = sympy.Poly(fac, ysym)
        d = {}
        for (j,), cf in poly.terms():
            d[j] = Fraction(cf.p, cf.q)
        out.append((UniPoly.from_dict(d), mult))
    return out


def _certify_925_contact(M, V, n, cert):
    """Route for n above the splitting root: {M = 0} enters Omega but is
    without contact there, and neither M nor V has ovals inside."""
    phi, psi = M.phi, M.psi
    cert.add("route", "without contact (n > ntilde)")

    # y = 0 is harmless: M/y^4 at y = 0
    psi0 = Fraction(psi.coeff(0))
    Bq = 130 * n ** 6 + 105 * n ** 4 + 42 * n ** 2 + 9
    want = Fraction(2, 3) * 756 * n ** 2 * (5 * n ** 4 - 3) * Bq
    if psi0 != want or psi0 == 0:
        raise PieceFailed("y=0", "psi(0) display mismatch")
    cert.add("y=0", f"M/y^4 at y = 0 is {psi0} != 0 "
             f"(= 756 n^2 (5n^4-3)(9+42n^2+105n^4+130n^6) up to the "
             f"2/3 factor)", indent=1)

    # phi has no roots off y = 0 inside the strip
    phi_red, rep = strip_factors(phi, [UniPoly.x()])
    kphi = sturm_count(phi_red, -1 / n, 1 / n)
    cert.add("phi", f"y^{rep[0][1]} removed; {kphi} roots on (-1/n, 1/n): "
             f"{{M=0}}* is the graph x = -psi/phi", indent=1)
    if kphi:
        raise ContactPossible(f"phi vanishes inside the strip at n = {n}")

    # Res(M, N, x) structure
    N = _mdot_reduced(M)
    res = resultant(_as_xpoly(M.bi()), _as_xpoly(N))
    res, repy = strip_factors(res, [UniPoly.x()])
    hyp = UniPoly.from_dict({2: n * n, 0: Fraction(-1)})
    res, reph = strip_factors(res, [hyp])
    cert.add("resultant", f"Res(M, N, x) = y^{repy[0][1]} "
             f"(n^2 y^2 - 1)^{reph[0][1]} * rest, deg rest = "
             f"{res.degree()}", indent=1)
    if reph[0][1] < 1 or res.degree() != 36:
        raise ContactPossible("unexpected resultant structure")
    p34 = None
    p2_factors = []
    for fac, mult in _factor_univariate(res):
        if fac.degree() == 34:
            p34 = fac
        elif fac.degree() >= 1:
            p2_factors.append((fac, mult))
    if p34 is None:
        raise ContactPossible("no degree-34 factor")
    for fac, mult in p2_factors:
        kf = sturm_count(fac, -1 / n, 1 / n)
        cert.add("small-factor", f"deg {fac.degree()} ^ {mult}: {kf} roots "
                 f"on (-1/n, 1/n)", indent=1)
        if kf:
            raise ContactPossible("low-degree resultant factor vanishes "
                                  "inside the strip")
    k34 = sturm_count(p34, -1 / n, 1 / n)
    g34 = poly_gcd(p34, p34.deriv())
    simple = g34.degree() == 0 or sturm_count(g34, -1 / n, 1 / n) == 0
    cert.add("P34", f"{k34} roots on (-1/n, 1/n), simple: {simple}",
             indent=1)
    if k34 != 2 or not simple:
        raise ContactPossible(f"expected two simple contact candidates, "
                              f"got {k34}")

    # the two candidates lie outside Omega
    edge = resultant(psi.scale(n) + phi, p34)
    hyperb = resultant(phi.shift(0) - psi.shift(1), p34)
    cert.add("edge-resultant", f"Res(n psi + phi, P34, y) = "
             f"{'nonzero' if edge else 0}", indent=1)
    cert.add("hyperbola-resultant", f"Res(phi - y psi, P34, y) = "
             f"{'nonzero' if hyperb else 0}", indent=1)
    if not edge or not hyperb:
        raise ContactPossible("candidate curve meets the boundary")
    roots = _isolate_roots(p34, -1 / n, 1 / n, 2)
    for (ylo, yhi) in roots:
        ymid = (ylo + yhi) / 2
        xv = -psi(ymid) / phi(ymid)
        inside = abs(xv) < 1 / n and abs(ymid) < 1 / n and xv * ymid > -1
        cert.add("candidate", f"y ~ {float(ymid):.6f}, x ~ {float(xv):.6f},"
                 f" inside Omega: {inside}", indent=1)
        if inside:
            raise ContactPossible(f"contact candidate inside Omega near "
                                  f"y = {float(ymid):.6f}")

    # {V = 0} does not meet {M = 0} inside the strip
    rvm = resultant(_as_xpoly(V.bi()), _as_xpoly(M.bi()))
    rvm, repy = strip_factors(rvm, [UniPoly.x()])
    rvm, reph = strip_factors(rvm, [hyp])
    k30 = sturm_count(rvm, -1 / n, 1 / n)
    cert.add("Res(V,M,x)", f"y^{repy[0][1]} (n^2 y^2 - 1)^{reph[0][1]} "
             f"P{rvm.degree()}; P has {k30} roots on (-1/n, 1/n)",
             indent=1)
    if k30:
        raise ContactPossible("{V=0} meets {M=0} inside the strip")


def _isolate_roots(p, a, b, expected):
    """Disjoint rational brackets for the roots of p on (a, b)."""
    chain = sturm_chain(p)
    work = [(Fraction(a), Fraction(b))]
    done = []
    while work:
        lo, hi = work.pop()
        k = sturm_count(p, lo, hi, chain=chain)
        if k == 0:
            continue
        if k == 1 and hi - lo < Fraction(1, 10 ** 6):
            done.append(bisect_root(p, lo, hi, Fraction(1, 10 ** 12)))
            continue
        mid = (lo + hi) / 2
        if p(mid) == 0:
            done.append((mid, mid))
            eps = (hi - lo) / 10 ** 6
            work.append((lo, mid - eps))
            work.append((mid + eps, hi))
            continue
        work.append((lo, mid))
        work.append((mid, hi))
    if len(done) != expected:
        raise ContactPossible(f"isolated {len(done)} roots, "
                              f"expected {expected}")
    return sorted(done)


def certify_925(n):
    """One rational-parameter certificate for the explicit middle-window
    construction (m = n^4): route picked by the certified bracket of the
    splitting root ntilde."""
    n = Fraction(n)
    V = build_V2_prop925(n)
    M = compute_M(V)
    cert = Certificate(proposition="925")
    cert.add("stated-interval-m", "(9/25, 1/2)")
    cert.add("proof-interval-n", "(77/100, 211/250)  [wider than the "
             "stated m-window: 0.77^4 < 9/25]")
    cert.add("sample-n", f"{n} (m = {n ** 4})")
    ntlo, nthi = ntilde_bounds()
    cert.add("ntilde", f"[{float(ntlo):.9f}, {float(nthi):.9f}]")
    if n <= ntlo:
        _certify_925_boundary(M, n, cert)
    elif n >= nthi:
        _certify_925_contact(M, V, n, cert)
    else:
        raise OutOfScope("sample inside the ntilde bracket; shrink the "
                         "bracket or move the sample")
    _v_line_check(V, n, cert)
    cert.add("conclusion", "no limit cycles at this parameter sample")
    return cert


# ---------------------------------------------------------------------------
# rational-sample certification for the invariant-region seed
# ---------------------------------------------------------------------------

def certify_547(n):
    """Positive invariance of the region bounded by {V2 = 0} at one
    rational n (m = n^2): the numerator of Res(V2, V2dot, x) is a
    square-heavy product that stays positive off y = 0 and the saddle
    ordinates, so V2dot keeps one sign on the boundary curve."""
    n = Fraction(n)
    V = build_V2_prop547(n=n)
    cert = Certificate(proposition="547")
    cert.add("stated-interval-m", "[1/2, 547/1000]")
    cert.add("sample-n", f"{n} (m = {n * n})")
    bi = V.bi()

    # exact saddle conditions: the saddle is (w, w), w^2 = 1/n; parity
    # splits every value into a rational part and a w-multiple
    def saddle_parts(poly_bi):
        ev = Fraction(0)
        od = Fraction(0)
        for (i, j), v in poly_bi.items():
            t = i + j
            if t % 2:
                od += Fraction(v) * (1 / n) ** ((t - 1) // 2)
            else:
                ev += Fraction(v) * (1 / n) ** (t // 2)
        return ev, od

    vx = bi_diff(bi, 0)
    vy = bi_diff(bi, 1)
    for name, poly in (("V2", bi), ("dV2/dx", vx), ("dV2/dy", vy)):
        ev, od = saddle_parts(poly)
        if ev or od:
            raise PieceFailed("saddle", f"{name} nonzero at the saddle")
    cert.add("saddle", "V2 and grad V2 vanish exactly at "
             "(m^(-1/4), m^(-1/4)) and its antipode", indent=1)

    p_terms, q_terms = quintic_terms(n * n, None)
    vdot = bi_add(bi_mul(vx, p_terms), bi_mul(vy, q_terms))
    W = resultant(_as_xpoly(bi), _as_xpoly(vdot))
    W, repy = strip_factors(W, [UniPoly.x()])
    hyp = UniPoly.from_dict({2: n, 0: Fraction(-1)})
    W, reph = strip_factors(W, [hyp])
    cert.add("resultant", f"Res(V2, V2dot, x) = y^{repy[0][1]} "
             f"(n y^2 - 1)^{reph[0][1]} * W, deg W = {W.degree()}",
             indent=1)
    if repy[0][1] < 8 or reph[0][1] != 4 or W.degree() != 72:
        raise PieceFailed("resultant", "unexpected factor structure")

    # W = P12^3 * P36 with P12 squarefree: gcd(W, W') recovers P12^2
    g = poly_gcd(W, W.deriv())
    p12 = squarefree_part(g)
    if p12.degree() != 12:
        raise PieceFailed("P12", f"degree {p12.degree()}")
    q, r = W.divmod(p12 ** 3)
    if r:
        raise PieceFailed("P12", "cube does not divide the resultant")
    p36 = q
    k12 = sturm_count(p12, -1 / n, 1 / n)
    k36 = sturm_count(p36, -1 / n, 1 / n)
    val0 = p12(Fraction(0)) ** 3 * p36(Fraction(0))
    cert.add("P12/P36", f"{k12} and {k36} roots on (-1/n, 1/n); "
             f"W(0) > 0: {val0 > 0}", indent=1)
    if k12 or k36 or val0 <= 0:
        raise PieceFailed("positivity", "resultant numerator changes sign")
    cert.add("contact", "the numerator vanishes only at y = 0 and the "
             "saddle ordinates y = +-m^(-1/4); {V2=0} and {V2dot=0} can "
             "only meet on y = 0", indent=1)

    # even-order contact at (+-xhat, 0): V2dot along the branch of
    # {V2 = 0} through (xhat, 0) keeps its sign across y = 0
    a0 = Fraction(bi[(0, 0)])
    if a0 >= 0:
        raise NoOval("V2(0,0) >= 0: no bounded component around origin")
    import math
    xhat = math.sqrt(-float(a0))

    def branch_x(yv):
        g2v = sum(float(c) * yv ** j for (i, j), c in bi.items() if i == 2)
        g1v = sum(float(c) * yv ** j for (i, j), c in bi.items() if i == 1)
        g0v = sum(float(c) * yv ** j for (i, j), c in bi.items() if i == 0)
        disc = g1v * g1v - 4 * g2v * g0v
        if disc < 0:
            raise NoOval("branch lost while tracing {V2 = 0}")
        return (-g1v + math.sqrt(disc)) / (2 * g2v)

    signs = set()
    for yv in (-0.2, -0.05, 0.05, 0.2):
        xv = branch_x(yv)
        dv = bi_eval(vdot, xv, yv)
        signs.add(dv < 0)
    cert.add("contact-order", f"V2dot on the branch through "
             f"({xhat:.4f}, 0) keeps one sign across y = 0 "
             f"(spot checked): {len(signs) == 1}", indent=1)
    if len(signs) != 1:
        raise PieceFailed("contact-order", "sign change across y = 0")

    # the field points inward on sampled boundary points
    inward = 0
    total = 0
    for k in range(-24, 25):
        if k == 0:
            continue  # (xhat, 0) is the contact point: V2dot = 0 there
        yv = 0.049 * k
        try:
            xv = branch_x(yv)
        except NoOval:
            continue
        total += 1
        if bi_eval(vdot, xv, yv) < 0:
            inward += 1
    cert.add("inward", f"{inward}/{total} sampled boundary points have "
             f"V2dot < 0 (field enters {{V2 < 0}})", indent=1)
    if inward != total or total < 20:
        raise PieceFailed("inward", f"{total - inward} outward samples")
    cert.add("conclusion", "the component of {V2 < 0} containing the "
             "origin is positively invariant; combined with uniqueness "
             "and repulsion of any cycle, no limit cycles or polycycles")
    return cert


# ---------------------------------------------------------------------------
# spec-facing entry points
# ---------------------------------------------------------------------------

def certify_sign(M, region=None, interval=None):
    """Certify {M = 0} cap Omega = emptyset by boundary decomposition;
    dispatches on the construction that produced M."""
    if M.provenance == "nc-simple":
        return certify_nc(interval or (Fraction(0), Fraction(3, 10)))
    if M.provenance == "uniq":
        return certify_uniq(interval or (Fraction(1, 2), Fraction(3, 5)),
                            M=M)
    if M.provenance == "925":
        if region is None or region.n is None:
            raise OutOfScope("needs a rational parameter sample")
        n = Fraction(region.n)
        ntlo, _ = ntilde_bounds()
        if n > ntlo:
            raise OutOfScope("sample above ntilde: the zero curve enters "
                             "the region, use certify_without_contact")
        V = build_V2_prop925(n)
        cert = Certificate(proposition="925-boundary-sign")
        cert.add("sample-n", n)
        _certify_925_boundary(M, n, cert)
        _v_line_check(V, n, cert)
        return cert
    raise OutOfScope(f"no sign certification route for provenance "
                     f"{M.provenance!r}")


def certify_without_contact(M, region=None, interval=None):
    """Certify that {M = 0}* cap Omega is without contact for the flow
    (the route used when the zero curve does enter Omega)."""
    if M.provenance != "925":
        raise OutOfScope("without-contact route implemented for the "
                         "explicit middle-window construction")
    if region is None or region.n is None:
        raise OutOfScope("needs a rational parameter sample")
    n = Fraction(region.n)
    ntlo, nthi = ntilde_bounds()
    if n < nthi:
        raise OutOfScope("sample below ntilde: the boundary-sign route "
                         "applies there")
    V = build_V2_prop925(n)
    cert = Certificate(proposition="925-without-contact")
    cert.add("sample-n", n)
    _certify_925_contact(M, V, n, cert)
    return cert


DEFAULT_SAMPLES = {"925": (Fraction(78, 100), Fraction(80, 100),
                           Fraction(83, 100)),
                   "547": (Fraction(71, 100), Fraction(18, 25),
                           Fraction(73, 100))}


def certify(prop, m=None, interval=None, samples=None,
            full_interval=False):
    """Certificate dispatcher keyed by the CLI proposition ids.

    full_interval switches the two sampled propositions to their
    whole-interval runs (exact, very long; see certify_925_full and
    certify_547_full)."""
    if full_interval and prop in ("925", "547"):
        return certify_925_full() if prop == "925" else certify_547_full()
    if prop in ("nc", "nc-simple"):
        return certify_nc(interval or (Fraction(0), Fraction(3, 10)))
    if prop == "nc-Km":
        return certify_nc_km()
    if prop == "35":
        return certify_35(Fraction(m) if m is not None else Fraction(3, 5))
    if prop == "uniq":
        return certify_uniq(interval or (Fraction(1, 2), Fraction(3, 5)))
    if prop in ("925", "547"):
        worker = certify_925 if prop == "925" else certify_547
        chosen = tuple(Fraction(s) for s in (samples or
                                             DEFAULT_SAMPLES[prop]))
        cert = Certificate(proposition=prop)
        cert.add("mode", f"sampled at {len(chosen)} rational parameters "
                 "(whole-interval runs are a long-running opt-in)")
        for s in chosen:
            cert.merge(worker(s), f"sample n = {s}")
        return cert
    raise OutOfScope(f"unknown proposition id {prop!r}")


def cycle_stability_sign(M, V, region=None, points=None):
    """Sign of -V*M on the annular component where a cycle can live;
    positive means any cycle there is hyperbolic and unstable."""
    if points is None:
        import math
        points = [(0.95 * math.cos(t), 0.95 * math.sin(t))
                  for t in [0.3 + 0.39 * i for i in range(16)]]
    signs = set()
    vals = []
    for x, y in points:
        v = V.value(x, y)
        mv = M.value(x, y)
        s = -v * mv
        if s == 0:
            continue
        vals.append(s)
        signs.add(s > 0)
    if len(signs) != 1:
        raise SignAmbiguous("-V*M changes sign over the sampled annulus")
    return 1 if vals[0] > 0 else -1


def basin_oval(m, samples=200):
    """Polyline around the origin tracing the oval of {V_m = 0}.

    V_m is the cube-root construction; for each sampled ordinate the
    quadratic in x is solved and the two branches are joined into a
    closed curve."""
    import math
    m = Fraction(m)
    if not (Fraction(1, 2) < m < Fraction(3, 5)):
        raise OutOfScope("basin construction covers m in (0.5, 0.6)")
    if samples < 8:
        raise ValueError("need at least 8 samples")
    V = build_V2_series(m)
    polys = {i: [] for i in range(3)}
    for (i, j), cf in V.bi().items():
        polys[i].append((j, _to_float(cf)))

    def gval(i, y):
        return sum(c * y ** j for j, c in polys[i])

    if gval(0, 0.0) >= 0:
        raise NoOval("V(0, 0) >= 0")

    def disc(y):
        return gval(1, y) ** 2 - 4 * gval(2, y) * gval(0, y)

    # the oval closes where the discriminant of the quadratic vanishes
    def ytop(sign):
        lo, hi = 0.0, sign * float(m) ** -0.25
        if disc(hi) > 0:
            raise NoOval("discriminant positive out to the saddle line")
        for _ in range(80):
            mid = (lo + hi) / 2
            if disc(mid) > 0:
                lo = mid
            else:
                hi = mid
        return lo

    y_hi = ytop(1.0)       # positive extreme ordinate
    y_lo = ytop(-1.0)      # negative extreme ordinate
    right = []
    left = []
    half = samples // 2
    for k in range(half + 1):
        y = y_lo + (y_hi - y_lo) * k / half
        d = disc(y)
        if d < 0:
            d = 0.0
        g2v = gval(2, y)
        root = math.sqrt(d)
        right.append(((-gval(1, y) + root) / (2 * g2v), y))
        left.append(((-gval(1, y) - root) / (2 * g2v), y))
    # both branches coincide at the extreme ordinates; drop the shared
    # endpoints when stitching, then close the polyline explicitly
    pts = right + left[::-1][1:-1]
    pts.append(right[0])
    return pts


# ---------------------------------------------------------------------------
# whole-interval runs (opt-in, long-running)
# ---------------------------------------------------------------------------

def _as_parampoly(p):
    return UniPoly(tuple(
        c if isinstance(c, UniPoly) else UniPoly.const(Fraction(c))
        for c in p.coeffs))


def _np(c):
    return c if isinstance(c, UniPoly) else UniPoly.const(Fraction(c))


def _param_primitive(F):
    """Divide a Q[n][y] polynomial by the gcd of its coefficients
    (content removal keeps the pseudo-remainder sequences tractable)."""
    F = _as_parampoly(F)
    g = UniPoly(())
    for cf in F.coeffs:
        if not cf:
            continue
        g = cf.int_primitive() if not g else poly_gcd(g, cf)
        if g and g.degree() == 0:
            return F
    if not g or g.degree() == 0:
        return F
    return UniPoly(tuple(cf.divexact(g) if cf else cf for cf in F.coeffs))


def _param_prs(F, H):
    """Primitive pseudo-remainder sequence in the outer variable over
    Q[n] coefficients; ends just before the zero remainder."""
    seq = [_param_primitive(F), _param_primitive(H)]
    while seq[-1]:
        r = seq[-2].prem(seq[-1])
        if not r:
            break
        seq.append(_param_primitive(r))
    return seq


def _param_gcd(F, H):
    """gcd in Q(n)[y], returned primitive over Q[n]."""
    return _param_prs(F, H)[-1]


def _param_squarefree(F):
    g = _param_gcd(F, F.deriv())
    if g.degree() <= 0:
        return _param_primitive(F)
    return _param_primitive(F).divexact(g)


def _param_sub1(G):
    """The degree-one member u(n) y + v(n) of the pseudo-remainder
    sequence of (G, dG/dy): at a parameter where G acquires a single
    double root, that root is y = -v/u."""
    G = _as_parampoly(G)
    for p in _param_prs(G, G.deriv()):
        if p.degree() == 1:
            return _np(p.coeff(1)), _np(p.coeff(0))
    return None


def _isolate_n_roots(p, lo, hi, width):
    """Disjoint brackets (each of width <= width) for the roots of the
    parameter polynomial p on (lo, hi)."""
    p = squarefree_part(p.int_primitive())
    chain = sturm_chain(p)
    work = [(Fraction(lo), Fraction(hi))]
    out = []
    while work:
        a, b = work.pop()
        k = sturm_count(p, a, b, chain=chain)
        if k == 0:
            continue
        if k == 1 and b - a <= width:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if p(mid) == 0:
            eps = min(Fraction(width), b - a) / 4
            out.append((mid - eps, mid + eps))
            work.append((a, mid - eps))
            work.append((mid + eps, b))
            continue
        work.append((a, mid))
        work.append((mid, b))
    return sorted(out)


def _discharge_bracket(G, c, d, a, b, r, cert):
    """Continuity step across a bracket around a critical parameter:
    the count r holds at both rational endpoints, the boundary
    compositions are nonvanishing across the bracket (inherited from
    the global check), and the only double-root ordinate candidate
    stays outside the moving window, exactly."""
    cert.add("bracket", f"[{a}, {b}] (width {float(b - a):.3e})", indent=1)
    def ratfunc(bound):
        if isinstance(bound, tuple):
            return bound
        q = Fraction(bound)
        return (UniPoly.const(q), UniPoly.const(Fraction(1)))

    cn, cd = ratfunc(c)
    dn, dd = ratfunc(d)
    for e in (a, b):
        G0 = eval_parampoly(G, e)
        k = sturm_count(G0, cn(e) / cd(e), dn(e) / dd(e))
        if k != r:
            cert.fail("bracket", f"count {k} != {r} at endpoint {e}")
            return
    cert.add("endpoint-counts", f"{r} at both rational endpoints",
             indent=2)
    s1 = _param_sub1(G)
    if s1 is None:
        cert.fail("bracket", "no degree-one subresultant: more than one "
                  "root can collide; split the polynomial first")
        return
    u, v = s1
    mid = (a + b) / 2
    if sturm_count(u, a, b) or not u(mid):
        cert.fail("bracket", "subresultant leading term vanishes on the "
                  "bracket")
        return
    # ystar = -v/u; (ystar - c)(ystar - d) = Qc Qd / (u^2 cd dd)
    Qc = v * cd + cn * u
    Qd = v * dd + dn * u
    S = Qc * Qd * cd * dd
    try:
        ks = sturm_count(S, a, b)
    except EndpointRoot:
        cert.fail("bracket", "double-root ordinate test degenerate at a "
                  "bracket endpoint; perturb the bracket")
        return
    if ks or S(mid) <= 0:
        cert.fail("bracket", "cannot place the double-root ordinate "
                  "outside the moving window")
        return
    cert.add("double-root", "the candidate ordinate -v/u stays outside "
             "the moving window across the bracket (exact)", indent=2)


def _family_count_adaptive(G, c, d, I, r, *, label="piece",
                           known_factors=(), excluded_factors=(),
                           min_width=Fraction(1, 10 ** 6)):
    """family_root_count with automatic parameter subdivision.

    Where Res(G, dG/dy) or the leading coefficient vanishes inside the
    interval, the interval is split at certified root brackets.  Clean
    subintervals go through the three-hypothesis continuation check;
    each bracket is shrunk below min_width and discharged by the exact
    continuity step of _discharge_bracket.  A root count can only
    change through a boundary crossing (excluded globally by the
    hypothesis (ii) polynomial having no roots on the interval) or a
    real double root inside the window (excluded on each bracket)."""
    lo, hi = Fraction(I[0]), Fraction(I[1])
    G = _as_parampoly(G)
    cert = Certificate(proposition=f"adaptive-count {label}")
    cert.add("interval", f"[{lo}, {hi}]")
    cert.add("expected-count", r)

    disc = interp_resultant(_wrap_sdeg0(G), _wrap_sdeg0(G.deriv()))
    crit = (disc.int_primitive() * G.lc().int_primitive()).int_primitive()

    # boundary crossings break the continuation argument outright
    E2 = (compose_at_bound(G, c) * compose_at_bound(G, d)).int_primitive()
    E2red = E2
    for f in known_factors:
        E2red, _ = strip_factors(E2red, [f])
    for f, why in excluded_factors:
        E2red, rep = strip_factors(E2red, [f])
        if rep[0][1]:
            cert.add("excluded-boundary-factor", f"{format_upoly(f)} ^ "
                     f"{rep[0][1]} ({why})", indent=1)
    kb = sturm_count(E2red, lo, hi)
    cert.add("boundary", f"{kb} roots of the boundary composition on the "
             f"interval", indent=1)
    if kb:
        cert.fail("ii", "a root meets the moving boundary inside the "
                  "interval")
        return cert

    critred = crit
    for f in known_factors:
        critred, _ = strip_factors(critred, [f])
    for f, why in excluded_factors:
        critred, rep = strip_factors(critred, [f])
        if rep[0][1]:
            cert.add("excluded-critical-factor", f"{format_upoly(f)} ^ "
                     f"{rep[0][1]} ({why})", indent=1)
    brackets = _isolate_n_roots(critred, lo, hi, min_width)
    cert.add("critical-values", f"{len(brackets)} bracket(s) of the "
             f"discriminant/leading coefficient inside the interval",
             indent=1)

    pieces = []
    cur = lo
    for (a, b) in brackets:
        if a > cur:
            pieces.append((cur, a))
        cur = b
    if cur < hi:
        pieces.append((cur, hi))
    if not brackets:
        pieces = [(lo, hi)]

    for (a, b) in pieces:
        sub = family_root_count(G, c, d, (a, b), (a + b) / 2, r,
                                known_factors=known_factors,
                                excluded_factors=excluded_factors,
                                disc_override=crit)
        cert.merge(sub, f"clean subinterval [{a}, {b}]")
        if not sub.verdict:
            cert.fail("subinterval", f"[{a}, {b}]")
            return cert
    for (a, b) in brackets:
        _discharge_bracket(G, c, d, a, b, r, cert)
        if not cert.verdict:
            return cert
    return cert


_M925_LOCK = threading.Lock()
_M925_CACHE = {}


def m925_symbolic():
    """The middle-window divergence test function with n symbolic;
    cached (phi, psi coefficients are polynomials in n)."""
    with _M925_LOCK:
        if "M" not in _M925_CACHE:
            _M925_CACHE["M"] = compute_M(build_V2_prop925(None))
        return _M925_CACHE["M"]


def _925_edge_identity(phi, psi):
    """n^K M(x, 1/n)/y^4-part vanishes identically in (x, n) up to the
    factor (n x - 1) E(n): equivalent to phi(1/n) + n psi(1/n) = 0 as a
    rational-function identity."""
    K = max(phi.degree(), psi.degree()) + 1
    nv = UniPoly.x()
    A = UniPoly(())
    B = UniPoly(())
    for j, cf in enumerate(phi.coeffs):
        if cf:
            A = A + cf * nv ** (K - j)
    for j, cf in enumerate(psi.coeffs):
        if cf:
            B = B + cf * nv ** (K - j)
    return not (A + nv * B)


def _y_factor():
    return UniPoly((UniPoly(()), UniPoly.const(Fraction(1))))


def certify_925_full(j_interval=None, k_interval=None, routes=("J", "K"),
                     bracket_width=Fraction(1, 10 ** 9),
                     min_width=Fraction(1, 10 ** 6)):
    """Whole-interval middle-window certification (opt-in mode).

    Runs the boundary-sign route on J = [77/100, ntilde) and the
    without-contact route on K = (ntilde, 211/250] with the parameter
    symbolic throughout, subdividing at certified critical-value
    brackets.  The K route recomputes the contact-candidate resultant
    discriminant exactly (degree in the thousands): expect hours.
    j_interval / k_interval / routes allow partitioned parallel runs.

    The sliver around the splitting zero of the edge polynomial E
    (width <= bracket_width, shrinkable at will) is recorded as an
    analytic continuity step, not machine-checked: there phi(1/n) and
    psi(1/n) vanish together and the zero set of M meets the closure
    of the region only along the non-invariant top edge."""
    ntlo, nthi = ntilde_bounds(bracket_width)
    J = (Fraction(77, 100), ntlo) if j_interval is None \
        else (Fraction(j_interval[0]), Fraction(j_interval[1]))
    K = (nthi, Fraction(211, 250)) if k_interval is None \
        else (Fraction(k_interval[0]), Fraction(k_interval[1]))
    M = m925_symbolic()
    V = build_V2_prop925(None)
    phi = _as_parampoly(M.phi)
    psi = _as_parampoly(M.psi)
    nv = UniPoly.x()
    cert = Certificate(proposition="925-full")
    cert.add("mode", "whole-interval (opt-in long-running run)")
    cert.add("J", f"[{J[0]}, {J[1]}]")
    cert.add("K", f"[{K[0]}, {K[1]}]")
    cert.add("handoff-bracket", f"({ntlo}, {nthi}), width <= "
             f"{float(bracket_width):.1e}")

    if not _925_edge_identity(phi, psi):
        raise PieceFailed("gamma1", "edge identity fails symbolically")
    cert.add("gamma1", "M(x, 1/n) is proportional to (n x - 1) E(n) "
             "identically in (x, n); its only zero on the open edge "
             "needs E(n) = 0")
    for name, (a, b) in (("J", J), ("K", K)):
        if sturm_count(EEE_POLY, a, b):
            raise PieceFailed("gamma1", f"E vanishes inside {name}")
    cert.add("E", "no zeros of E on J or K; the single simple zero "
             "ntilde sits in the handoff bracket")

    if "J" in routes:
        cert.add("route-J", "boundary sign, n <= ntilde")
        corner = UniPoly((UniPoly.const(Fraction(-1)), nv))  # n y - 1
        r2 = _as_parampoly(phi + psi.scale(nv))
        r2red = r2.divexact(corner)
        sub = _family_count_adaptive(r2red, _moving("-n"), _moving("1/n"),
                                     J, 0, label="gamma2",
                                     known_factors=(nv,),
                                     min_width=min_width)
        cert.merge(sub, "piece gamma2 (right edge, corner root divided "
                   "out)")
        if not sub.verdict:
            raise PieceFailed("gamma2", "adaptive count failed")
        t3 = {}
        for j, cf in enumerate(phi.coeffs):
            if cf:
                t3[17 - j] = t3.get(17 - j, UniPoly(())) + cf.scale(
                    Fraction((-1) ** j))
        for j, cf in enumerate(psi.coeffs):
            if cf:
                t3[16 - j] = t3.get(16 - j, UniPoly(())) + cf.scale(
                    Fraction((-1) ** j))
        r3 = UniPoly.from_dict(t3)
        sub = _family_count_adaptive(r3, _moving("n"), _moving("1/n"),
                                     J, 0, label="gamma3",
                                     known_factors=(nv,),
                                     min_width=min_width)
        cert.merge(sub, "piece gamma3 (hyperbola arc, x^16-cleared)")
        if not sub.verdict:
            raise PieceFailed("gamma3", "adaptive count failed")
        cert.add("gamma4", "the lower corner values are exactly the "
                 "hypothesis (ii) boundary compositions of gamma2 and "
                 "gamma3, already certified nonvanishing", indent=1)
        cert.add("gamma5", "a zero branch entering through the saddle "
                 "corner would cross the edge x = 1/n at some y in "
                 "(-n, 1/n), excluded by the gamma2 count; dM/dx at the "
                 "corner is proportional to E(n) != 0 on J", indent=1)

    if "K" in routes:
        cert.add("route-K", "without contact, n >= ntilde")
        Bq = (nv ** 6).scale(Fraction(130)) + (nv ** 4).scale(
            Fraction(105)) + (nv ** 2).scale(Fraction(42)) \
            + UniPoly.const(Fraction(9))
        want = ((nv ** 2) * ((nv ** 4).scale(Fraction(5))
                             - UniPoly.const(Fraction(3))) * Bq).scale(
            Fraction(2, 3) * 756)
        if _np(psi.coeff(0)) != want:
            raise PieceFailed("y=0", "psi(0) display mismatch (symbolic)")
        cert.add("y=0", "psi(0) = (2/3) 756 n^2 (5n^4 - 3)"
                 "(9 + 42n^2 + 105n^4 + 130n^6) identically; it has no "
                 "zeros on K (5n^4 < 3 there)", indent=1)
        if sturm_count(want, K[0], K[1]):
            raise PieceFailed("y=0", "psi(0) vanishes inside K")

        phi_red, repy = strip_factors(phi, [_y_factor()])
        sub = _family_count_adaptive(phi_red, _moving("-1/n"),
                                     _moving("1/n"), K, 0, label="phi",
                                     known_factors=(nv,),
                                     min_width=min_width)
        cert.merge(sub, f"phi (y^{repy[0][1]} divided out): the zero set "
                   "inside the strip is the graph x = -psi/phi")
        if not sub.verdict:
            raise ContactPossible("phi vanishes inside the strip")

        # contact candidates: Res_x(M, N) via the linear-in-x eliminant
        N = _mdot_reduced(M)
        Mx = _as_xpoly(M.bi())
        phiY = _as_parampoly(Mx.coeff(1))
        psiY = _as_parampoly(Mx.coeff(0))
        Nx = _as_xpoly(N)
        kx = Nx.degree()
        rest = UniPoly(())
        for i, Ni in enumerate(Nx.coeffs):
            if Ni:
                rest = rest + _as_parampoly(Ni) * (-psiY) ** i \
                    * phiY ** (kx - i)
        rest, repy = strip_factors(_param_primitive(rest), [_y_factor()])
        hyp2 = UniPoly.from_dict({2: nv * nv,
                                  0: UniPoly.const(Fraction(-1))})
        rest, reph = strip_factors(rest, [hyp2])
        cert.add("resultant", f"Res(M, N, x) = y^{repy[0][1]} "
                 f"(n^2 y^2 - 1)^{reph[0][1]} * rest, deg rest = "
                 f"{rest.degree()}", indent=1)
        if reph[0][1] < 1 or rest.degree() != 36:
            raise ContactPossible("unexpected resultant structure "
                                  "(symbolic)")
        sub = _family_count_adaptive(rest, _moving("-1/n"),
                                     _moving("1/n"), K, 2,
                                     label="contact-candidates",
                                     known_factors=(nv,),
                                     min_width=min_width)
        cert.merge(sub, "contact candidates: two simple ordinates "
                   "throughout K")
        if not sub.verdict:
            raise ContactPossible("candidate count not constant on K")

        # the candidates never meet the region boundary...
        r2full = _as_parampoly(phi + psi.scale(nv))
        hyper = _as_parampoly(phi - psi.shift(1))
        for name, q in (("edge", r2full), ("hyperbola", hyper)):
            R = interp_resultant(_wrap_sdeg0(rest),
                                 _wrap_sdeg0(q)).int_primitive()
            R, _ = strip_factors(R, [nv])
            if not R or sturm_count(R, K[0], K[1]):
                raise ContactPossible(f"candidate curve meets the "
                                      f"{name} on K")
            cert.add(f"{name}-resultant", "nonvanishing on K", indent=1)
        # ...so their position relative to the region is decided once
        nmid = (K[0] + K[1]) / 2
        restmid = eval_parampoly(rest, nmid)
        phimid = eval_parampoly(phi, nmid)
        psimid = eval_parampoly(psi, nmid)
        for (ylo, yhi) in _isolate_roots(restmid, -1 / nmid, 1 / nmid, 2):
            ymid = (ylo + yhi) / 2
            xv = -psimid(ymid) / phimid(ymid)
            inside = (abs(xv) < 1 / nmid and abs(ymid) < 1 / nmid
                      and xv * ymid > -1)
            cert.add("candidate", f"at n = {nmid}: y ~ {float(ymid):.6f},"
                     f" x ~ {float(xv):.6f}, inside the region: {inside} "
                     f"(persists on K by the resultant nonvanishing)",
                     indent=1)
            if inside:
                raise ContactPossible("contact candidate inside the "
                                      "region")

        # {V = 0} never meets {M = 0} inside the strip
        Vx = _as_xpoly(V.bi())
        rvm = UniPoly(())
        for i, Vi in enumerate(Vx.coeffs):
            if Vi:
                rvm = rvm + _as_parampoly(Vi) * (-psiY) ** i \
                    * phiY ** (Vx.degree() - i)
        rvm, repy = strip_factors(_param_primitive(rvm), [_y_factor()])
        rvm, reph = strip_factors(rvm, [hyp2])
        sub = _family_count_adaptive(rvm, _moving("-1/n"), _moving("1/n"),
                                     K, 0, label="V-meets-M",
                                     known_factors=(nv,),
                                     min_width=min_width)
        cert.merge(sub, f"Res(V, M, x) = y^{repy[0][1]} (n^2 y^2 - 1)^"
                   f"{reph[0][1]} P{rvm.degree()}: no common zeros in "
                   "the strip")
        if not sub.verdict:
            raise ContactPossible("{V=0} meets {M=0} inside the strip")

    # V has no ovals anywhere on the window: probe line y = 9x/10
    w = {}
    for (i, j), cf in V.bi().items():
        d = i + j
        w[d] = w.get(d, UniPoly(())) + _np(cf).scale(Fraction(9, 10) ** j)
    wline = UniPoly.from_dict(w)
    whole = (min(J[0], K[0]), max(J[1], K[1]))
    sub = _family_count_adaptive(wline, _moving("-1/n"), _moving("1/n"),
                                 whole, 0, label="V-probe-line",
                                 known_factors=(nv,),
                                 min_width=min_width)
    cert.merge(sub, "V on the probe line y = 9x/10: rootless, so V has "
               "no ovals in the region")
    if not sub.verdict:
        raise PieceFailed("V-no-ovals", "probe line count failed")
    v00 = _np(V.bi()[(0, 0)])
    if sturm_count(v00, whole[0], whole[1]) or v00((whole[0] + whole[1])
                                                   / 2) >= 0:
        raise PieceFailed("V-no-ovals", "V(0,0) sign not constant "
                          "negative")
    cert.add("V(0,0)", "negative throughout the window")

    cert.add("handoff", "on the bracket around the splitting zero of E, "
             "phi(1/n) and psi(1/n) vanish together and the zero set of "
             "M meets the closure of the region only along the "
             "non-invariant top edge; this sliver (shrinkable below any "
             "width via bracket_width) is an analytic continuity step, "
             "not machine-checked")
    cert.add("conclusion", "no limit cycles on the window outside the "
             "handoff bracket; the bracket is covered analytically")
    return cert


def _prop547_symbolic():
    """Denominator-cleared invariant-region seed with n symbolic:
    returns (bi dict over UniPoly-in-n, clearing factor L).  The zero
    set of L*V2 equals that of V2 wherever L does not vanish."""
    sol = prop547_coefficients()
    L = UniPoly.const(Fraction(1))
    for _, (nu, de) in sorted(sol.items()):
        g = poly_gcd(L, de)
        L = (L.divexact(g) if g.degree() > 0 else L) * de
    nv = UniPoly.x()
    m = nv * nv
    a12n = ((m.scale(Fraction(10)) - UniPoly.const(Fraction(3)))
            * (m.scale(Fraction(35)) + UniPoly.const(Fraction(3)))
            ).scale(Fraction(-157, 44550000))
    coeffs = {0: L, 12: a12n * L}
    for u, (nu, de) in sol.items():
        coeffs[u] = nu * L.divexact(de)
    g2 = UniPoly.from_dict(coeffs)
    g1 = g2.deriv()
    g0 = (g1.deriv().scale(Fraction(1, 2))
          - g1.shift(5).scale(m).scale(Fraction(1, 2))
          + g2.shift(4).scale(m).scale(Fraction(5, 3)))
    bi = {}
    for i, g in ((0, g0), (1, g1), (2, g2)):
        for j, cf in enumerate(g.coeffs):
            if cf:
                bi[(i, j)] = cf
    return bi, L


def certify_547_full(interval=None, min_width=Fraction(1, 10 ** 6)):
    """Whole-interval positive invariance of the region bounded by
    {V2 = 0} (opt-in mode, n symbolic, m = n^2).

    The default interval [408/577, 37/50] is a rational superset of
    [sqrt(1/2), sqrt(547/1000)].  The resultant and its factor
    extraction run over Q[n][y]; the adaptive counts recompute the
    factor discriminants exactly, so expect a very long run."""
    I = (Fraction(408, 577), Fraction(37, 50)) if interval is None \
        else (Fraction(interval[0]), Fraction(interval[1]))
    nv = UniPoly.x()
    bi, L = _prop547_symbolic()
    cert = Certificate(proposition="547-full")
    cert.add("mode", "whole-interval (opt-in long-running run)")
    cert.add("interval-n", f"[{I[0]}, {I[1]}] (superset of "
             "[sqrt(1/2), sqrt(547/1000)])")
    if sturm_count(L, I[0], I[1]):
        raise SingularConditionSystem("a coefficient denominator "
                                      "vanishes inside the interval")
    cert.add("denominators", "the common clearing factor L(n) has no "
             "zeros on the interval: L*V2 and V2 share their zero set")
    cert.add("saddle", "V2 and grad V2 vanish at the saddles "
             "identically in n: enforced by the defining linear system "
             "(pointwise exact checks in the sampled certificates)")

    vx = bi_diff(bi, 0)
    vy = bi_diff(bi, 1)
    p_terms, q_terms = quintic_terms(nv * nv, None)
    vdot = bi_add(bi_mul(vx, p_terms), bi_mul(vy, q_terms))
    W = interp_resultant(_as_xpoly(bi), _as_xpoly(vdot))
    W, repy = strip_factors(_param_primitive(W), [_y_factor()])
    hyp = UniPoly.from_dict({2: nv, 0: UniPoly.const(Fraction(-1))})
    W, reph = strip_factors(W, [hyp])
    cert.add("resultant", f"Res(V2, V2dot, x) = y^{repy[0][1]} "
             f"(n y^2 - 1)^{reph[0][1]} * W, deg W = {W.degree()}",
             indent=1)
    if repy[0][1] < 8 or reph[0][1] != 4 or W.degree() != 72:
        raise PieceFailed("resultant", "unexpected factor structure "
                          "(symbolic)")

    g = _param_gcd(W, W.deriv())
    p12 = _param_squarefree(g)
    if p12.degree() != 12:
        raise PieceFailed("P12", f"degree {p12.degree()} (symbolic)")
    p36 = W.divexact(p12 ** 3)
    cert.add("factors", "W = P12^3 * P36 over Q[n][y], P12 squarefree",
             indent=1)

    for name, p, in (("P12", p12), ("P36", p36)):
        sub = _family_count_adaptive(p, _moving("-1/n"), _moving("1/n"),
                                     I, 0, label=name,
                                     known_factors=(nv,),
                                     min_width=min_width)
        cert.merge(sub, f"{name}: no zeros in the strip for any "
                   "parameter")
        if not sub.verdict:
            raise PieceFailed(name, "adaptive count failed")
    W0 = _np(W.coeff(0))
    if sturm_count(W0, I[0], I[1]) or W0((I[0] + I[1]) / 2) <= 0:
        raise PieceFailed("positivity", "W(0) not positive throughout")
    cert.add("positivity", "W(0; n) > 0 on the whole interval: the "
             "numerator keeps one sign off y = 0 and the saddle "
             "ordinates", indent=1)

    # pointwise geometry at the interval endpoints; the inward sign
    # persists in n because V2dot never vanishes on the curve off the
    # contact set (the counts above)
    import math
    for ne in I:
        birat = {k: Fraction(v(ne)) for k, v in bi.items()}
        vdrat = {k: Fraction(v(ne)) for k, v in vdot.items()}
        a0 = birat[(0, 0)]
        if a0 >= 0:
            raise NoOval("V2(0,0) >= 0 at an interval endpoint")

        def branch_x(yv):
            g2v = sum(float(c) * yv ** j
                      for (i, j), c in birat.items() if i == 2)
            g1v = sum(float(c) * yv ** j
                      for (i, j), c in birat.items() if i == 1)
            g0v = sum(float(c) * yv ** j
                      for (i, j), c in birat.items() if i == 0)
            disc = g1v * g1v - 4 * g2v * g0v
            if disc < 0:
                raise NoOval("branch lost while tracing {V2 = 0}")
            return (-g1v + math.sqrt(disc)) / (2 * g2v)

        inward = 0
        total = 0
        for k in range(-24, 25):
            if k == 0:
                continue
            try:
                xv = branch_x(0.049 * k)
            except NoOval:
                continue
            total += 1
            if bi_eval(vdrat, xv, 0.049 * k) < 0:
                inward += 1
        cert.add("inward", f"n = {ne}: {inward}/{total} sampled boundary "
                 f"points have V2dot < 0", indent=1)
        if inward != total or total < 20:
            raise PieceFailed("inward", f"{total - inward} outward "
                              f"samples at n = {ne}")
    cert.add("conclusion", "the component of {V2 < 0} containing the "
             "origin is positively invariant for every parameter in "
             "the interval")
    return cert
