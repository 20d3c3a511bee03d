"""Generalized trigonometric functions Cs, Sn for weights (p, q).

Cs and Sn solve the Hamiltonian system

    u' = -v^(2p-1),   v' = u^(2q-1),
    u(0) = (1/p)^(1/(2q)),   v(0) = 0,

whose orbits live on the level set p u^(2q) + q v^(2p) = 1.  The pair
is periodic with period

    T = 2 p^(-1/(2q)) q^(-1/(2p)) Gamma(1/(2p)) Gamma(1/(2q))
        / Gamma(1/(2p) + 1/(2q)).

The artifact's primary instantiation is (p, q) = (1, 2), where the
even full-period moments of Sn^i Cs^j reduce to rational multiples of
T and of W = Gamma(3/4)^2/sqrt(pi); see exactval.  For general q (with
p = 1) the Gamma-ratio closed form is evaluated numerically.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy.integrate import DOP853, solve_ivp

from .errors import OutOfScope, ToleranceNotMet
from .exactval import ExactVal, moment_exact

_DPS = 50


@dataclass(frozen=True)
class TrigParams:
    p: int = 1
    q: int = 2

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("weights must be positive integers")


@dataclass(frozen=True)
class TrigValue:
    cs: float
    sn: float
    theta: float

    def energy_defect(self, params: TrigParams) -> float:
        p, q = params.p, params.q
        return abs(p * self.cs ** (2 * q) + q * self.sn ** (2 * p) - 1.0)


@dataclass(frozen=True)
class MomentResult:
    """Exact-form descriptor plus numeric value of a full-period moment."""
    i: int
    j: int
    q: int
    descriptor: str
    value: object          # mpmath.mpf
    exact: ExactVal | None  # populated for q = 2

    def __float__(self):
        return float(self.value)


_period_cache: dict[tuple[int, int], object] = {}
_moment_cache: dict[tuple[int, int, int], MomentResult] = {}
_cache_lock = threading.Lock()


def period(params: TrigParams):
    """Full period T of (Cs, Sn), as a 50-digit mpmath value."""
    key = (params.p, params.q)
    with _cache_lock:
        if key in _period_cache:
            return _period_cache[key]
    p, q = key
    with mpmath.workdps(_DPS):
        a = mpmath.mpf(1) / (2 * p)
        b = mpmath.mpf(1) / (2 * q)
        T = (2 * mpmath.mpf(p) ** (-b) * mpmath.mpf(q) ** (-a)
             * mpmath.gamma(a) * mpmath.gamma(b) / mpmath.gamma(a + b))
        T = +T
    with _cache_lock:
        _period_cache[key] = T
    return T


def _rhs(p, q):
    def fun(_t, y):
        return np.array([-y[1] ** (2 * p - 1), y[0] ** (2 * q - 1)])
    return fun


def _project(y, p, q):
    """Rescale (u, v) back onto p u^(2q) + q v^(2p) = 1.

    The quasihomogeneous scaling u -> u/E^(1/2q), v -> v/E^(1/2p)
    divides the energy by exactly E."""
    u, v = y
    E = p * u ** (2 * q) + q * v ** (2 * p)
    return np.array([u / E ** (1.0 / (2 * q)), v / E ** (1.0 / (2 * p))])


def eval(params: TrigParams, theta: float) -> TrigValue:  # noqa: A001
    """(Cs(theta), Sn(theta)) by adaptive integration with level-set
    projection after every accepted step."""
    p, q = params.p, params.q
    T = float(period(params))
    # exact periodicity is a theorem; reduce the argument so accuracy
    # is uniform in theta
    th = float(theta) % T
    c0 = (1.0 / p) ** (1.0 / (2 * q))
    if th == 0.0:
        return TrigValue(cs=c0, sn=0.0, theta=float(theta))
    solver = DOP853(_rhs(p, q), 0.0, np.array([c0, 0.0]), t_bound=th,
                    rtol=1e-13, atol=1e-14)
    while solver.status == "running":
        solver.step()
        solver.y = _project(solver.y, p, q)
    if solver.status != "finished":
        raise ToleranceNotMet(f"integrator stopped: {solver.status}")
    u, v = solver.y
    tv = TrigValue(cs=float(u), sn=float(v), theta=float(theta))
    if tv.energy_defect(params) > 1e-10:
        raise ToleranceNotMet(f"energy defect {tv.energy_defect(params)}")
    return tv


def period_ode(params: TrigParams) -> float:
    """Return time of the orbit to (c0, 0), as an independent check on
    the Gamma-product period formula."""
    p, q = params.p, params.q
    c0 = (1.0 / p) ** (1.0 / (2 * q))
    horizon = 4.0 * float(period(params))

    def cross(_t, y):
        return y[1]
    cross.direction = 1.0

    sol = solve_ivp(_rhs(p, q), (0.0, horizon), np.array([c0, 0.0]),
                    method="DOP853", rtol=1e-13, atol=1e-14,
                    events=cross, dense_output=False)
    times = [t for t in sol.t_events[0] if t > 1e-6]
    if not times:
        raise ToleranceNotMet("no return to the section v = 0, v' > 0")
    return float(times[0])


def _descriptor(i, j, q):
    a = Fraction(i + 1, 2)
    b = Fraction(j + 1, 2 * q)
    return (f"2*Gamma({a})*Gamma({b}) / ({q}^({a})*Gamma({a + b}))")


def moment(params: TrigParams, i: int, j: int) -> MomentResult:
    """Full-period integral of Sn^i Cs^j, p = 1 only (Gamma closed form).

    Odd i or j gives an exact zero.  For q = 2 the exact field carries
    the value in the T/W algebra; for other q it is None and only the
    numeric value is returned."""
    if params.p != 1:
        raise OutOfScope("moment closed form requires p = 1")
    if i < 0 or j < 0:
        raise ValueError("exponents must be nonnegative")
    q = params.q
    key = (q, i, j)
    with _cache_lock:
        if key in _moment_cache:
            return _moment_cache[key]
    if i % 2 == 1 or j % 2 == 1:
        res = MomentResult(i, j, q, descriptor="0",
                           value=mpmath.mpf(0),
                           exact=ExactVal.zero() if q == 2 else None)
    else:
        with mpmath.workdps(_DPS):
            a = mpmath.mpf(i + 1) / 2
            b = mpmath.mpf(j + 1) / (2 * q)
            val = (2 * mpmath.gamma(a) * mpmath.gamma(b)
                   / (mpmath.mpf(q) ** a * mpmath.gamma(a + b)))
            val = +val
        exact = moment_exact(i, j) if q == 2 else None
        res = MomentResult(i, j, q, descriptor=_descriptor(i, j, q),
                           value=val, exact=exact)
    with _cache_lock:
        _moment_cache[key] = res
    return res


def antiderivative_q2(kind: str, theta: float) -> float:
    """Closed-form antiderivatives for (p, q) = (1, 2):

        Cs8: integral of Cs^8 = (6 Sn Cs^5 + 10 Sn Cs + 5 theta)/21
        Sn4: integral of Sn^4 = (-Sn^3 Cs - Sn Cs + theta)/7
    """
    tv = eval(TrigParams(1, 2), theta)
    cs, sn = tv.cs, tv.sn
    th = float(theta)
    if kind == "Cs8":
        return (6 * sn * cs ** 5 + 10 * sn * cs + 5 * th) / 21
    if kind == "Sn4":
        return (-(sn ** 3) * cs - sn * cs + th) / 7
    raise ValueError(f"unknown kind {kind!r}; expected 'Cs8' or 'Sn4'")


def moment_quadrature(params: TrigParams, i: int, j: int,
                      rtol: float = 1e-12) -> float:
    """Numerical full-period moment by augmenting the defining ODE with
    dI/dtheta = Sn^i Cs^j.  Independent of the Gamma closed form."""
    p, q = params.p, params.q
    c0 = (1.0 / p) ** (1.0 / (2 * q))
    T = float(period(params))

    def fun(_t, y):
        u, v = y[0], y[1]
        return np.array([-v ** (2 * p - 1), u ** (2 * q - 1),
                         v ** i * u ** j])

    sol = solve_ivp(fun, (0.0, T), np.array([c0, 0.0, 0.0]),
                    method="DOP853", rtol=rtol, atol=1e-14)
    if not sol.success:
        raise ToleranceNotMet(sol.message)
    return float(sol.y[2, -1])
