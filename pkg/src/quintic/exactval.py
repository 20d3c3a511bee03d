"""Exact value algebra for the (1,2)-trigonometric moment integrals.

Every definite integral of a Cs/Sn monomial over one period is a
rational multiple of a monomial in

    T  = period of the (1,2)-trigonometric functions
       = 2 pi^(3/2) / Gamma(3/4)^2,
    W  = Gamma(3/4)^2 / sqrt(pi),

and pi itself, subject to the single relation T*W = 2*pi.  ExactVal
keeps Q-linear combinations of monomials T^a W^b pi^c in the reduced
form min(a, b) = 0, so equality with zero is structural: no floating
tolerance ever decides a Lyapunov constant.

The closed form implemented in moment_exact is the even-even case of
the moment lemma for p = 1, q = 2:

    I(i, j) = 2 Gamma((i+1)/2) Gamma((j+1)/4)
              / (2^((i+1)/2) Gamma((i+1)/2 + (j+1)/4)),

with the half-integer and quarter-integer Gamma values reduced to
Gamma(1/4), Gamma(3/4) and sqrt(pi) by the recurrence, and
Gamma(1/4)Gamma(3/4) = pi*sqrt(2) tying everything back to T and W.
The result is rational * T when j = 0 mod 4 and rational * W when
j = 2 mod 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

_DPS = 50


class ExactVal:
    """Q-linear combination of monomials T^a W^b pi^c (reduced)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        red = {}
        for key, coef in (terms or {}).items():
            a, b, c = key
            k = min(a, b)
            if k:
                # T^k W^k = (2 pi)^k
                a, b, c = a - k, b - k, c + k
                coef = coef * (Fraction(2) ** k)
            if coef:
                nk = (a, b, c)
                red[nk] = red.get(nk, Fraction(0)) + coef
        self.terms = {k: v for k, v in red.items() if v}

    # constructors
    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def rational(cls, r):
        return cls({(0, 0, 0): Fraction(r)})

    @classmethod
    def T(cls, coef=1):
        return cls({(1, 0, 0): Fraction(coef)})

    @classmethod
    def W(cls, coef=1):
        return cls({(0, 1, 0): Fraction(coef)})

    # structure
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ExactVal):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {(0, 0, 0): Fraction(other)}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, ExactVal):
            other = ExactVal.rational(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return ExactVal(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactVal({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, ExactVal)
                       else ExactVal.rational(-Fraction(other)))

    def __mul__(self, other):
        if not isinstance(other, ExactVal):
            q = Fraction(other)
            return ExactVal({k: v * q for k, v in self.terms.items()})
        out = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in other.terms.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return ExactVal(out)

    __rmul__ = __mul__

    # evaluation
    def numeric(self, dps=_DPS):
        with mpmath.workdps(dps):
            g34 = mpmath.gamma(mpmath.mpf(3) / 4)
            T = 2 * mpmath.pi ** mpmath.mpf(1.5) / g34 ** 2
            W = g34 ** 2 / mpmath.sqrt(mpmath.pi)
            total = mpmath.mpf(0)
            for (a, b, c), v in self.terms.items():
                total += (mpmath.mpf(v.numerator) / v.denominator
                          * T ** a * W ** b * mpmath.pi ** c)
            return total

    def sign(self):
        """Exact sign. Structural zero -> 0; a single monomial is signed
        by its rational coefficient (T, W, pi > 0); otherwise a 50-digit
        evaluation decides, with a generous guard band."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            v = next(iter(self.terms.values()))
            return 1 if v > 0 else -1
        val = self.numeric()
        scale = max(abs(Fraction(v)) for v in self.terms.values())
        if abs(val) < mpmath.mpf(10) ** (-_DPS + 10) * float(scale):
            from .errors import PrecisionLoss
            raise PrecisionLoss(f"sign of {self.describe()} too close to 0")
        return 1 if val > 0 else -1

    def describe(self):
        """Human-readable exact form, e.g. '128/1625 * W'."""
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c) in sorted(self.terms):
            v = self.terms[(a, b, c)]
            factors = []
            if a:
                factors.append("T" if a == 1 else f"T^{a}")
            if b:
                factors.append("W" if b == 1 else f"W^{b}")
            if c:
                factors.append("pi" if c == 1 else f"pi^{c}")
            if factors:
                parts.append(f"{v} * " + "*".join(factors))
            else:
                parts.append(str(v))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ExactVal({self.describe()})"


def _rat_half(a):
    """Gamma(a + 1/2) = rat * sqrt(pi): the rational part (2a-1)!!/2^a."""
    r = Fraction(1)
    for k in range(1, a + 1):
        r *= Fraction(2 * k - 1, 2)
    return r


def _rat_quarter(a, base):
    """Gamma(a + base/4) = rat * Gamma(base/4): rat = prod (base/4 + l)."""
    r = Fraction(1)
    for l in range(a):
        r *= Fraction(base, 4) + l
    return r


_MOMENT_CACHE: dict[tuple[int, int], ExactVal] = {}


def moment_exact(i, j):
    """Exact value of the full-period integral of Sn^i Cs^j for the
    (1,2)-trigonometric functions."""
    key = (i, j)
    if key in _MOMENT_CACHE:
        return _MOMENT_CACHE[key]
    if i % 2 == 1 or j % 2 == 1:
        val = ExactVal.zero()
    else:
        a = i // 2
        if j % 4 == 0:
            b = j // 4
            # rational * T
            r = _rat_half(a) * _rat_quarter(b, 1) \
                / (Fraction(2) ** a * _rat_quarter(a + b, 3))
            val = ExactVal.T(r)
        else:
            b = (j - 2) // 4
            # rational * W
            r = _rat_half(a) * _rat_quarter(b, 3) \
                / (Fraction(2) ** a * _rat_quarter(a + b + 1, 1))
            val = ExactVal.W(r)
    _MOMENT_CACHE[key] = val
    return val


def period_power_times(val: ExactVal, k: int) -> ExactVal:
    """val * T^k (used by the theta-polynomial boundary terms)."""
    return val * ExactVal({(k, 0, 0): Fraction(1)})
