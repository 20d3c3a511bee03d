"""Generalized Lyapunov constants for the family

    x' = y^3 - x^(2k+1),   y' = -x + m y^(2s+1),

via the polar expansion of the equivalent swapped system in
(1,2)-trigonometric coordinates.  Writing x = r Cs(theta),
y = r^2 Sn(theta) for the swapped vector field

    x' = -y + m x^(2s+1),   y' = x^3 - y^(2k+1)

gives

    dr/dtheta = (m Cs^(2s+4) r^(2s) - Sn^(2k+2) r^(4k))
                / (1 - Cs Sn^(2k+1) r^(4k-1) - 2m Cs^(2s+1) Sn r^(2s-1))
              = sum_i R_i(theta) r^i,

and the return map r(T, rho) = rho + sum u_i(T) rho^i.  The stability
of the origin is decided by the sign of the first nonvanishing
V_i = u_i(T).

All coefficient arithmetic is exact: TrigPoly keeps rational
coefficients on monomials Cs^i Sn^j theta^k (with Sn^2 reduced through
the energy relation Sn^2 = (1 - Cs^4)/2, so j is 0 or 1), and the
full-period values land in the T/W Gamma-value algebra of exactval.
Zero constants are therefore recognized structurally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NoReturn, OrderTooSmall, PrecisionLoss
from .exactval import ExactVal, moment_exact, period_power_times
from . import gentrig

__all__ = [
    "TrigPoly", "FamilyParams", "LyapunovConstant", "LyapunovReport",
    "polar_rhs", "lyapunov_constants", "v10_shortcut", "classify_origin",
    "threshold_m", "return_map_displacement",
]


def _binom(n, k):
    return math.comb(n, k)


class TrigPoly:
    """Exact polynomial in Cs, Sn and theta with Sn-degree reduced to
    0 or 1 via Sn^2 = (1 - Cs^4)/2.

    terms maps (cs_exp, sn_exp, theta_exp) -> Fraction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_monomials(cls, mono):
        """mono: iterable of (coef, cs_exp, sn_exp, theta_exp); sn_exp
        arbitrary, reduced here."""
        acc = {}
        for c, i, j, k in mono:
            c = Fraction(c)
            if not c:
                continue
            t, rem = divmod(j, 2)
            if t == 0:
                key = (i, rem, k)
                acc[key] = acc.get(key, Fraction(0)) + c
            else:
                # Sn^(2t) = ((1 - Cs^4)/2)^t
                base = c / Fraction(2) ** t
                for l in range(t + 1):
                    key = (i + 4 * l, rem, k)
                    cc = base * _binom(t, l) * (-1) ** l
                    acc[key] = acc.get(key, Fraction(0)) + cc
        return cls(acc)

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0): Fraction(c)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, TrigPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return TrigPoly(acc)

    def __neg__(self):
        return TrigPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return TrigPoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TrigPoly):
            return self.scale(other)
        mono = []
        for (i1, j1, k1), v1 in self.terms.items():
            for (i2, j2, k2), v2 in other.terms.items():
                mono.append((v1 * v2, i1 + i2, j1 + j2, k1 + k2))
        return TrigPoly.from_monomials(mono)

    __rmul__ = __mul__

    def derivative(self):
        """d/dtheta using Cs' = -Sn, Sn' = Cs^3."""
        mono = []
        for (i, j, k), c in self.terms.items():
            if i:
                mono.append((-c * i, i - 1, j + 1, k))
            if j:
                mono.append((c * j, i + 3, j - 1, k))
            if k:
                mono.append((c * k, i, j, k - 1))
        return TrigPoly.from_monomials(mono)

    # ---- antiderivatives -------------------------------------------------

    @staticmethod
    def _anti_mono(i, j, k):
        """An antiderivative (constant not normalized) of
        Cs^i Sn^j theta^k with j in {0, 1}."""
        if j == 0 and i == 0:
            return TrigPoly({(0, 0, k + 1): Fraction(1, k + 1)})
        if k > 0:
            # parts: int theta^k G = theta^k F - k int theta^(k-1) F
            F = TrigPoly._anti_mono(i, j, 0)
            theta_k = TrigPoly({(0, 0, k): Fraction(1)})
            theta_k1 = TrigPoly({(0, 0, k - 1): Fraction(1)})
            return (theta_k * F) - (theta_k1 * F).antiderivative_raw().scale(k)
        if j == 1:
            return TrigPoly({(i + 1, 0, 0): Fraction(-1, i + 1)})
        # j == 0, k == 0, i >= 1
        if i == 3:
            return TrigPoly({(0, 1, 0): Fraction(1)})
        if i % 4 in (1, 2):
            raise PrecisionLoss(
                f"Cs^{i} has no antiderivative in the Cs/Sn/theta ring")
        # reduction: int Cs^i = (2/(i-1)) (Sn Cs^(i-3) + ((i-3)/2) int Cs^(i-4))
        head = TrigPoly({(i - 3, 1, 0): Fraction(2, i - 1)})
        tail = TrigPoly._anti_mono(i - 4, 0, 0).scale(Fraction(i - 3, i - 1))
        return head + tail

    def antiderivative_raw(self):
        acc = TrigPoly.zero()
        for (i, j, k), c in self.terms.items():
            acc = acc + TrigPoly._anti_mono(i, j, k).scale(c)
        return acc

    def antiderivative(self):
        """The antiderivative vanishing at theta = 0 (Cs=1, Sn=0)."""
        F = self.antiderivative_raw()
        c0 = Fraction(0)
        for (i, j, k), c in F.terms.items():
            if j == 0 and k == 0:
                c0 += c  # Cs(0)^i = 1
        return F - TrigPoly.const(c0)

    # ---- evaluation ------------------------------------------------------

    def eval_period(self) -> ExactVal:
        """Exact value at theta = T (Cs = 1, Sn = 0, theta = T)."""
        acc = ExactVal.zero()
        for (i, j, k), c in self.terms.items():
            if j:
                continue
            acc = acc + ExactVal({(k, 0, 0): c})
        return acc

    def definite_integral(self) -> ExactVal:
        """Exact integral over one full period [0, T]."""
        acc = ExactVal.zero()
        for (i, j, k), c in self.terms.items():
            if k == 0:
                acc = acc + c * moment_exact(j, i)
            elif i == 0 and j == 0:
                acc = acc + ExactVal({(k + 1, 0, 0): c * Fraction(1, k + 1)})
            else:
                # int_0^T theta^k G = T^k F(T) - k int_0^T theta^(k-1) F
                F = TrigPoly._anti_mono(i, j, 0)
                boundary = period_power_times(F.eval_period(), k)
                theta_k1 = TrigPoly({(0, 0, k - 1): Fraction(1)})
                acc = acc + c * (boundary
                                 - k * (theta_k1 * F).definite_integral())
        return acc

    def eval_numeric(self, theta: float) -> float:
        tv = gentrig.eval(gentrig.TrigParams(1, 2), theta)
        total = 0.0
        for (i, j, k), c in self.terms.items():
            total += float(c) * tv.cs ** i * tv.sn ** j * float(theta) ** k
        return total

    def __repr__(self):
        if not self.terms:
            return "TrigPoly(0)"
        bits = []
        for (i, j, k) in sorted(self.terms):
            c = self.terms[(i, j, k)]
            s = str(c)
            if i:
                s += f"*Cs^{i}"
            if j:
                s += "*Sn" if j == 1 else f"*Sn^{j}"
            if k:
                s += "*th" if k == 1 else f"*th^{k}"
            bits.append(s)
        return "TrigPoly(" + " + ".join(bits).replace("+ -", "- ") + ")"


@dataclass(frozen=True)
class FamilyParams:
    m: Fraction
    k: int = 1
    s: int = 2

    def __post_init__(self):
        if self.k < 1 or self.s < 1:
            raise ValueError("k and s must be positive integers")
        object.__setattr__(self, "m", Fraction(self.m))


@dataclass(frozen=True)
class LyapunovConstant:
    index: int
    exact: ExactVal
    descriptor: str
    value: float


@dataclass(frozen=True)
class LyapunovReport:
    constants: tuple
    first_nonzero: int | None
    verdict: str  # Attractor | Repeller | Undetermined

    def __post_init__(self):
        idx = self.first_nonzero
        if idx is not None:
            assert all(c.exact.is_zero() for c in self.constants
                       if c.index < idx)


def polar_rhs(params: FamilyParams, order: int) -> dict[int, TrigPoly]:
    """Taylor coefficients R_i(theta), i = 2..order, of dr/dtheta."""
    k, s = params.k, params.s
    m = Fraction(params.m)
    if order < min(2 * s, 4 * k):
        raise OrderTooSmall(
            f"order {order} below leading index min(2s={2*s}, 4k={4*k})")
    # numerator and denominator-defect series in r
    N = {}
    N[2 * s] = TrigPoly.from_monomials([(m, 2 * s + 4, 0, 0)])
    N[4 * k] = N.get(4 * k, TrigPoly.zero()) + TrigPoly.from_monomials(
        [(-1, 0, 2 * k + 2, 0)])
    E = {}
    E[4 * k - 1] = TrigPoly.from_monomials([(1, 1, 2 * k + 1, 0)])
    E[2 * s - 1] = E.get(2 * s - 1, TrigPoly.zero()) + TrigPoly.from_monomials(
        [(2 * m, 2 * s + 1, 1, 0)])

    def smul(a, b):
        out = {}
        for pa, ca in a.items():
            for pb, cb in b.items():
                p = pa + pb
                if p > order:
                    continue
                out[p] = out.get(p, TrigPoly.zero()) + ca * cb
        return out

    # 1/(1 - E) = sum E^t; E starts at power >= 3, so t is bounded
    inv = {0: TrigPoly.const(1)}
    Et = {0: TrigPoly.const(1)}
    emin = min(p for p, c in E.items() if c)
    for _ in range(order // emin + 1):
        Et = smul(Et, E)
        if not Et:
            break
        for p, c in Et.items():
            inv[p] = inv.get(p, TrigPoly.zero()) + c
    series = smul(N, inv)
    return {i: series.get(i, TrigPoly.zero()) for i in range(2, order + 1)}


def _series_coefficient(u: dict[int, TrigPoly], R: dict[int, TrigPoly],
                        N: int) -> TrigPoly:
    """Coefficient of rho^N in sum_i R_i(theta) r(theta, rho)^i where
    r = sum_j u_j rho^j (u_1 = 1).  Only u_j with j < N enter."""
    base = dict(u)
    rp = dict(base)  # r^1
    total = TrigPoly.zero()
    for i in range(2, N + 1):
        # rp currently holds r^(i-1); lift to r^i truncated at N
        nxt = {}
        for pa, ca in rp.items():
            for pb, cb in base.items():
                p = pa + pb
                if p > N:
                    continue
                nxt[p] = nxt.get(p, TrigPoly.zero()) + ca * cb
        rp = nxt
        Ri = R.get(i)
        if Ri and N in rp:
            total = total + Ri * rp[N]
    return total


def lyapunov_constants(params: FamilyParams, upto: int) -> LyapunovReport:
    """Constants V_2..V_upto by the variational recursion; exact zeros
    are structural (the T/W algebra), never a float threshold."""
    first = min(2 * params.s, 4 * params.k)
    if upto < first:
        raise OrderTooSmall(f"upto={upto} below first candidate {first}")
    R = polar_rhs(params, upto)
    u = {1: TrigPoly.const(1)}
    constants = []
    first_nonzero = None
    for N in range(2, upto + 1):
        duN = _series_coefficient(u, R, N)
        VN = duN.definite_integral()
        constants.append(LyapunovConstant(
            index=N, exact=VN, descriptor=VN.describe(),
            value=float(VN.numeric())))
        if first_nonzero is None and not VN.is_zero():
            first_nonzero = N
        if N < upto:
            try:
                u[N] = duN.antiderivative()
            except PrecisionLoss:
                if first_nonzero is not None:
                    break  # stability already decided
                raise
    if first_nonzero is None:
        verdict = "Undetermined"
    else:
        sign = constants[first_nonzero - 2].exact.sign()
        verdict = "Repeller" if sign > 0 else "Attractor"
    return LyapunovReport(constants=tuple(constants),
                          first_nonzero=first_nonzero, verdict=verdict)


def v10_shortcut(params: FamilyParams) -> ExactVal:
    """V10 by the integration-by-parts shortcut
    V10 = int_0^T (R10 + 3 u4 R7), valid for (k, s) = (1, 2) when
    V4 = 0 (the boundary terms of the parts manipulation vanish)."""
    if (params.k, params.s) != (1, 2):
        raise PrecisionLoss("shortcut applies to (k, s) = (1, 2) only")
    R = polar_rhs(params, 10)
    u4 = R[4].antiderivative()
    V4 = R[4].definite_integral()
    if not V4.is_zero():
        raise PrecisionLoss("shortcut requires V4 = 0")
    return (R[10] + u4.scale(3) * R[7]).definite_integral()


def threshold_m(k: int) -> Fraction:
    """(2k+1)!! / (4k+1)!!!! with n!! = n (n-2)!! and n!!!! = n (n-4)!!!!."""
    if k < 1:
        raise ValueError("k must be >= 1")

    def dfact(n):
        return 1 if n <= 1 else n * dfact(n - 2)

    def qfact(n):
        return n if 1 <= n <= 4 else n * qfact(n - 4)

    return Fraction(dfact(2 * k + 1), qfact(4 * k + 1))


def classify_origin(params: FamilyParams) -> str:
    """Origin stability from the first nonvanishing Lyapunov constant.

    s < 2k: V_2s has the sign of m; s > 2k: V_4k < 0 regardless of m;
    s = 2k: V_4k changes sign at m = (2k+1)!!/(4k+1)!!!!; at the
    threshold only (k, s) = (1, 2) is resolved (V10 > 0)."""
    k, s, m = params.k, params.s, Fraction(params.m)
    if s < 2 * k:
        if m < 0:
            return "Attractor"
        if m > 0:
            return "Repeller"
        return "Undetermined"
    if s > 2 * k:
        return "Attractor"
    mt = threshold_m(k)
    if m < mt:
        return "Attractor"
    if m > mt:
        return "Repeller"
    if k == 1:
        return "Repeller"  # V10 = (128/1625) W > 0
    return "Undetermined"


def return_map_displacement(params: FamilyParams, rho0: float) -> float:
    """r(T) - rho0 by direct integration of dr/dtheta alongside the
    defining trig ODE; numeric cross-check of the series method."""
    k, s, m = params.k, params.s, float(params.m)
    T = float(gentrig.period(gentrig.TrigParams(1, 2)))

    def fun(_t, y):
        u, v, r = y
        num = m * u ** (2 * s + 4) * r ** (2 * s) \
            - v ** (2 * k + 2) * r ** (4 * k)
        den = 1.0 - u * v ** (2 * k + 1) * r ** (4 * k - 1) \
            - 2 * m * u ** (2 * s + 1) * v * r ** (2 * s - 1)
        return np.array([-v, u ** 3, num / den])

    def blow(_t, y):
        return abs(y[2]) - 10.0 * max(1.0, abs(rho0)) ** 2 - 1.0
    blow.terminal = True

    sol = solve_ivp(fun, (0.0, T), np.array([1.0, 0.0, float(rho0)]),
                    method="DOP853", rtol=1e-12, atol=1e-13, events=blow)
    if not sol.success or sol.t[-1] < T * (1 - 1e-12):
        raise NoReturn("orbit did not return to the section")
    return float(sol.y[2, -1]) - float(rho0)
