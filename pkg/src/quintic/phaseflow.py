"""Numerical dynamics of the quintic family

    x' = y^3 - x^3,   y' = -x + m y^5

and relatives: integration with events, saddle data, separatrix
shooting and the gap delta(m), bisection for the connection parameter,
the Poincare return map on the positive y-axis, limit-cycle location
with its characteristic exponent, the polycycle exponent rho, the
Abel/Cherkas reduction, the two charts at infinity, and the algebraic
polycycle family of the worked example.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (Blowup, NoCrossing, NoReturn, NoSignChange,
                     NonPositiveParameter, StepUnderflow)
from .polys import UniPoly
from .lyapunov import TrigPoly
from . import gentrig

TOL_SHOOT = 1e-12   # separatrices, return map, delta
TOL_PLAIN = 1e-9    # everything else
EPS_SEED = 1e-6     # separatrix seed offset along the unit eigenvector


# ---------------------------------------------------------------------------
# planar polynomial systems

class PlanarSystem:
    """Bivariate polynomial vector field with rational coefficients.

    p_terms/q_terms map (x_exp, y_exp) -> Fraction.  Exact evaluation
    at rational points; float fast path for integration.
    """

    def __init__(self, p_terms, q_terms, name=""):
        self.p_terms = {k: Fraction(v) for k, v in p_terms.items() if v}
        self.q_terms = {k: Fraction(v) for k, v in q_terms.items() if v}
        self.name = name
        self._pf = [(float(c), i, j) for (i, j), c in self.p_terms.items()]
        self._qf = [(float(c), i, j) for (i, j), c in self.q_terms.items()]

    @classmethod
    def quintic(cls, m):
        m = Fraction(m)
        return cls({(0, 3): 1, (3, 0): -1},
                   {(1, 0): -1, (0, 5): m},
                   name=f"quintic(m={m})")

    @classmethod
    def example1(cls, m):
        m = Fraction(m)
        p = {(0, 1): -2, (1, 0): 3 * m - 4, (3, 0): 4 - 2 * m,
             (1, 2): 1, (5, 0): -1}
        q = {(1, 0): 4 - m, (1, 2): 1, (3, 0): -2 * m, (5, 0): -1}
        return cls(p, q, name=f"example1(m={m})")

    @staticmethod
    def _eval_terms(terms, x, y):
        total = 0
        for (i, j), c in terms.items():
            total = total + c * x ** i * y ** j
        return total

    def eval(self, x, y):
        """Exact when x, y (and coefficients) are rational."""
        return (self._eval_terms(self.p_terms, x, y),
                self._eval_terms(self.q_terms, x, y))

    def rhs(self, _t, state):
        x, y = state
        p = 0.0
        for c, i, j in self._pf:
            p += c * x ** i * y ** j
        q = 0.0
        for c, i, j in self._qf:
            q += c * x ** i * y ** j
        return np.array([p, q])

    @staticmethod
    def _diff(terms, var):
        out = {}
        for (i, j), c in terms.items():
            if var == 0 and i:
                out[(i - 1, j)] = out.get((i - 1, j), Fraction(0)) + c * i
            elif var == 1 and j:
                out[(i, j - 1)] = out.get((i, j - 1), Fraction(0)) + c * j
        return out

    def jacobian(self, x, y):
        px = self._eval_terms(self._diff(self.p_terms, 0), x, y)
        py = self._eval_terms(self._diff(self.p_terms, 1), x, y)
        qx = self._eval_terms(self._diff(self.q_terms, 0), x, y)
        qy = self._eval_terms(self._diff(self.q_terms, 1), x, y)
        return ((px, py), (qx, qy))

    def divergence(self, x, y):
        J = self.jacobian(x, y)
        return J[0][0] + J[1][1]


@dataclass
class Trajectory:
    t: np.ndarray
    states: np.ndarray           # shape (2, len(t))
    sol: object                  # scipy dense-output callable or None
    events: list                 # (event_index, t, state) in time order
    nfev: int

    def __call__(self, t):
        return self.sol(t)


def integrate(sys: PlanarSystem, x0, span, tol=TOL_PLAIN, events=(),
              escape_radius=None, dense=True):
    """Adaptive DOP853 integration with dense output and events."""
    ev = list(events)
    if escape_radius is not None:
        def esc(_t, y):
            return float(np.hypot(y[0], y[1])) - escape_radius
        esc.terminal = True
        ev.append(esc)
    sol = solve_ivp(sys.rhs, span, np.asarray(x0, dtype=float),
                    method="DOP853", rtol=tol, atol=tol * 1e-2,
                    events=ev or None, dense_output=dense)
    if sol.status == -1:
        raise StepUnderflow(sol.message)
    recs = []
    if ev:
        for idx, (te, ye) in enumerate(zip(sol.t_events, sol.y_events)):
            for t, y in zip(te, ye):
                recs.append((idx, float(t), np.array(y)))
        recs.sort(key=lambda r: r[1])
        if escape_radius is not None and recs and recs[-1][0] == len(ev) - 1 \
                and sol.status == 1:
            raise Blowup(f"escape radius {escape_radius} exceeded "
                         f"at t={recs[-1][1]:.6g}")
    return Trajectory(t=sol.t, states=sol.y, sol=sol.sol if dense else None,
                      events=recs, nfev=sol.nfev)


# ---------------------------------------------------------------------------
# saddles and separatrices

@dataclass(frozen=True)
class SaddleData:
    location: tuple          # (x, y) floats
    a: float                 # contraction rate, eigenvalue -a < 0
    b: float                 # expansion rate, eigenvalue b > 0
    v_stable: np.ndarray     # unit eigenvector of -a
    v_unstable: np.ndarray   # unit eigenvector of b


def saddles(m) -> tuple[SaddleData, SaddleData]:
    """The two saddles (+-m^(-1/4), +-m^(-1/4)) of the quintic system."""
    mf = float(m)
    if mf <= 0:
        raise NonPositiveParameter("saddles require m > 0")
    c = mf ** -0.25
    sys = PlanarSystem.quintic(mf)
    out = []
    for sgn in (1, -1):
        x = y = sgn * c
        J = np.array(sys.jacobian(x, y), dtype=float)
        lam, vec = np.linalg.eig(J)
        order = np.argsort(lam)
        lneg, lpos = lam[order[0]], lam[order[1]]
        vs = vec[:, order[0]] / np.linalg.norm(vec[:, order[0]])
        vu = vec[:, order[1]] / np.linalg.norm(vec[:, order[1]])
        assert lneg < 0 < lpos, "not a saddle"
        for L, V in ((lneg, vs), (lpos, vu)):
            assert np.linalg.norm(J @ V - L * V) < 1e-12
        out.append(SaddleData(location=(x, y), a=-lneg, b=lpos,
                              v_stable=vs, v_unstable=vu))
    return out[0], out[1]


def _first_section_cut(sys, seed, *, backward, escape_radius, tol,
                       tmax=400.0, want_y_positive=True):
    """Integrate (backward for stable manifolds) to the first crossing
    of {x = 0, y > 0}.  Returns (t, state) or None."""
    def rhs(t, y):
        d = sys.rhs(t, y)
        return -d if backward else d

    def xcross(_t, y):
        return y[0]
    xcross.terminal = True

    def esc(_t, y):
        return float(np.hypot(y[0], y[1])) - escape_radius
    esc.terminal = True

    def origin(_t, y):
        return float(np.hypot(y[0], y[1])) - 1e-4
    origin.terminal = True

    t0, state = 0.0, np.asarray(seed, dtype=float)
    for _ in range(64):
        sol = solve_ivp(rhs, (t0, tmax), state, method="DOP853",
                        rtol=tol, atol=tol * 1e-2,
                        events=[xcross, esc, origin])
        if sol.t_events[1].size or sol.t_events[2].size:
            return None           # escaped or fell into the origin
        if not sol.t_events[0].size:
            return None           # time budget exhausted
        te = float(sol.t_events[0][0])
        ye = np.array(sol.y_events[0][0])
        if not want_y_positive or ye[1] > 0:
            return te, ye
        # wrong half-axis: nudge past the crossing and continue
        step = solve_ivp(rhs, (te, te + 1e-6), ye, method="RK45",
                         rtol=1e-9, atol=1e-12)
        t0, state = float(step.t[-1]), step.y[:, -1]
    return None


@dataclass(frozen=True)
class SeparatrixCut:
    saddle: str        # "p+" or "p-"
    branch: str        # "stable" or "unstable"
    eps: float
    seed_sign: int
    t_cross: float
    point: tuple       # (0, y) crossing


def separatrix(m, saddle: str, branch: str, eps: float = EPS_SEED
               ) -> SeparatrixCut:
    """Trajectory of the chosen invariant-manifold branch from the
    saddle to its first cut with the positive y-axis.  The branch sign
    is picked automatically as the one entering the central region."""
    if not (0 < eps <= 1e-4):
        raise ValueError("eps must be in (0, 1e-4]")
    sp, sm = saddles(m)
    sd = sp if saddle == "p+" else sm
    sys = PlanarSystem.quintic(float(m))
    v = sd.v_stable if branch == "stable" else sd.v_unstable
    backward = branch == "stable"
    escape = 10.0 * float(m) ** -0.25
    loc = np.array(sd.location)
    for sign in (1, -1):
        seed = loc + sign * eps * v
        hit = _first_section_cut(sys, seed, backward=backward,
                                 escape_radius=escape, tol=TOL_SHOOT)
        if hit is not None:
            return SeparatrixCut(saddle=saddle, branch=branch, eps=eps,
                                 seed_sign=sign, t_cross=hit[0],
                                 point=(float(hit[1][0]), float(hit[1][1])))
    raise NoCrossing(f"{branch} branch of {saddle} at m={m} never cuts "
                     "the positive y-axis")


@dataclass(frozen=True)
class ShootingResult:
    m: float
    y_s: float       # stable manifold of p+ (refined seed)
    y_u: float       # unstable manifold of p- (refined seed)
    delta: float     # y_s - y_u
    eps: float
    richardson: float  # |delta(eps) - delta(eps/2)| consistency estimate


def delta(m, eps: float = EPS_SEED, richardson: bool = True
          ) -> ShootingResult:
    """Shooting gap delta(m) = y^s(m) - y^u(m) on the positive y-axis."""
    cuts = {}
    eps_list = (eps, eps / 2) if richardson else (eps,)
    for e in eps_list:
        ys = separatrix(m, "p+", "stable", e).point[1]
        yu = separatrix(m, "p-", "unstable", e).point[1]
        cuts[e] = (ys, yu)
    e_fine = eps_list[-1]
    ys, yu = cuts[e_fine]
    d_fine = ys - yu
    rich = abs((cuts[eps][0] - cuts[eps][1]) - d_fine) if richardson else 0.0
    return ShootingResult(m=float(m), y_s=ys, y_u=yu, delta=d_fine,
                          eps=eps, richardson=rich)


@dataclass(frozen=True)
class MStarScan:
    bracket: tuple
    scan_step: float
    tol: float
    intervals: tuple   # refined (lo, hi) per sign change


def find_mstar(bracket, tol, scan_step=1e-4) -> MStarScan:
    """All sign changes of delta on a scan grid over the bracket, each
    refined by bisection to width <= tol."""
    lo, hi = float(bracket[0]), float(bracket[1])
    n = max(2, int(round((hi - lo) / scan_step)) + 1)
    grid = np.linspace(lo, hi, n)
    vals = [delta(g, richardson=False).delta for g in grid]
    changes = []
    for i in range(n - 1):
        if vals[i] == 0.0:
            changes.append((grid[i], grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            changes.append((grid[i], grid[i + 1]))
    if not changes:
        raise NoSignChange(f"delta has no sign change on {bracket} "
                           f"at step {scan_step}")
    refined = []
    for a, b in changes:
        if a == b:
            refined.append((a, b))
            continue
        fa = delta(a, richardson=False).delta
        while b - a > tol:
            mid = 0.5 * (a + b)
            fm = delta(mid, richardson=False).delta
            if fm == 0.0:
                a = b = mid
                break
            if fa * fm < 0:
                b = mid
            else:
                a, fa = mid, fm
        refined.append((a, b))
    return MStarScan(bracket=(lo, hi), scan_step=scan_step, tol=tol,
                     intervals=tuple(refined))


# ---------------------------------------------------------------------------
# return map and limit cycle

def return_map(m, y0, tol=TOL_SHOOT, with_period=False):
    """First return to {x = 0, y > 0}; at x = 0 with y > 0 the flow has
    x' = y^3 > 0, so direction +1 crossings are exactly the section."""
    mf = float(m)
    sys = PlanarSystem.quintic(mf)
    escape = 10.0 * mf ** -0.25

    def sect(_t, y):
        return y[0]
    sect.terminal = True
    sect.direction = 1.0

    def esc(_t, y):
        return float(np.hypot(y[0], y[1])) - escape
    esc.terminal = True

    def origin(_t, y):
        return float(np.hypot(y[0], y[1])) - 1e-4
    origin.terminal = True

    t0, state = 0.0, np.array([0.0, float(y0)])
    # leave the section before arming the crossing detector
    warm = solve_ivp(sys.rhs, (0.0, 1e-4), state, method="DOP853",
                     rtol=tol, atol=tol * 1e-2)
    t0, state = float(warm.t[-1]), warm.y[:, -1]
    sol = solve_ivp(sys.rhs, (t0, 500.0), state, method="DOP853",
                    rtol=tol, atol=tol * 1e-2, events=[sect, esc, origin])
    if sol.t_events[1].size:
        raise NoReturn(f"orbit from y0={y0} escapes")
    if sol.t_events[2].size:
        raise NoReturn(f"orbit from y0={y0} converges to the origin")
    if not sol.t_events[0].size:
        raise NoReturn(f"no return within the time budget from y0={y0}")
    y1 = float(sol.y_events[0][0][1])
    if with_period:
        return y1, float(sol.t_events[0][0])
    return y1


@dataclass(frozen=True)
class LimitCycle:
    fixed_point: float   # y* on the positive y-axis
    period: float
    exponent: float      # h = integral of div X over one period

    def __post_init__(self):
        assert self.period > 0


def locate_cycle(m, y_grid=None, tol=1e-12):
    """Fixed point of the return map by scan + secant refinement, or
    None when the displacement map has no sign change."""
    mf = float(m)
    if y_grid is None:
        # the cycle, when present, hugs the stable-manifold cut from
        # inside, so refine the scan toward that ordinate
        ys = separatrix(mf, "p+", "stable").point[1]
        y_grid = np.concatenate([
            np.linspace(0.1, 0.97 * ys, 18, endpoint=False),
            ys * np.linspace(0.97, 0.9995, 18)])
    samples = []
    for y0 in y_grid:
        try:
            g = return_map(mf, y0) - y0
        except NoReturn:
            continue
        samples.append((y0, g))
    bracket = None
    for (ya, ga), (yb, gb) in zip(samples, samples[1:]):
        if ga * gb < 0:
            bracket = (ya, ga, yb, gb)
            break
    if bracket is None:
        return None
    ya, ga, yb, gb = bracket
    for _ in range(80):
        ym = ya - ga * (yb - ya) / (gb - ga)   # secant/regula falsi
        ym = min(max(ym, min(ya, yb)), max(ya, yb))
        gm = return_map(mf, ym) - ym
        if abs(gm) < tol:
            ya = ym
            break
        if ga * gm < 0:
            yb, gb = ym, gm
        else:
            ya, ga = ym, gm
        if abs(yb - ya) < 1e-14:
            break
    ystar = ya
    # period and exponent along one turn
    _, period = return_map(mf, ystar, with_period=True)
    sys = PlanarSystem.quintic(mf)

    def rhs3(t, y):
        d = sys.rhs(t, y[:2])
        div = -3.0 * y[0] ** 2 + 5.0 * mf * y[1] ** 4
        return np.array([d[0], d[1], div])

    sol = solve_ivp(rhs3, (0.0, period), np.array([0.0, ystar, 0.0]),
                    method="DOP853", rtol=1e-12, atol=1e-14)
    return LimitCycle(fixed_point=float(ystar), period=period,
                      exponent=float(sol.y[2, -1]))


def cycle_points(m, cycle: LimitCycle, samples=400):
    """Evenly spaced (x, y) samples along a located cycle, returned in
    counterclockwise order (the flow itself runs clockwise)."""
    sys = PlanarSystem.quintic(float(m))
    sol = solve_ivp(sys.rhs, (0.0, cycle.period),
                    np.array([0.0, cycle.fixed_point]), method="DOP853",
                    rtol=1e-12, atol=1e-14, dense_output=True)
    ts = np.linspace(0.0, cycle.period, samples, endpoint=False)
    return sol.sol(ts).T[::-1]


def winding_number(sys: PlanarSystem, points) -> int:
    """Index of the vector field along a closed positively-oriented
    polyline, by summing the angle increments of X."""
    pts = list(np.asarray(points, dtype=float))
    pts.append(pts[0])   # close the loop
    angles = []
    for x, y in pts:
        p, q = sys.rhs(0.0, (x, y))
        angles.append(math.atan2(q, p))
    ang = np.unwrap(np.array(angles))
    return int(round((ang[-1] - ang[0]) / (2 * math.pi)))


# ---------------------------------------------------------------------------
# polycycle exponent

def rho_polycycle(m) -> float:
    """Closed-form exponent of the two-saddle polycycle."""
    mf = float(m)
    if mf <= 0:
        raise NonPositiveParameter("rho requires m > 0")
    sq = math.sqrt(mf)
    return (5 * sq - 3 + math.sqrt(25 * mf + 18 * sq + 9)) ** 4 / (48 ** 2 * mf)


def rho_eigenproduct(m) -> float:
    """The same exponent as the product of b_i/a_i over the polycycle's
    saddles; must match rho_polycycle."""
    sp, sm = saddles(m)
    return (sp.b / sp.a) * (sm.b / sm.a)


# ---------------------------------------------------------------------------
# Abel / Cherkas reduction

def abel_coefficients(m):
    """alpha, beta of the Abel equation drho/dtheta = alpha rho^3 +
    beta rho^2 obtained from the Cherkas map
    rho = r^3/(1 - r^3 Sn Cs (Sn^2 + 2m Cs^4))."""
    m = Fraction(m)
    cs_sn = TrigPoly.from_monomials([(3, 1, 1, 0)])
    f1 = TrigPoly.from_monomials([(2 * m, 4, 0, 0), (1, 0, 2, 0)])
    f2 = TrigPoly.from_monomials([(m, 8, 0, 0), (-1, 0, 4, 0)])
    alpha = cs_sn * f1 * f2
    beta = TrigPoly.from_monomials([(5 * m, 8, 0, 0), (-4, 0, 4, 0),
                                    (3 - 10 * m, 4, 2, 0)])
    return alpha, beta


def _trig_eval(poly: TrigPoly, cs, sn, theta):
    total = 0.0
    for (i, j, k), c in poly.terms.items():
        total += float(c) * cs ** i * sn ** j * theta ** k
    return total


def abel_residual(m, r0, samples=2000):
    """Sup-norm residual of the Abel ODE along the orbit of the polar
    equation started at r(0) = r0, over one full trig period.

    The trajectory is generated by the r-equation; rho and drho/dtheta
    come from the Cherkas map and its exact theta-derivative, so the
    residual measures the correctness of the displayed alpha, beta."""
    mq = Fraction(m)
    mf = float(mq)
    T = float(gentrig.period(gentrig.TrigParams(1, 2)))
    alpha, beta = abel_coefficients(mq)
    S = TrigPoly.from_monomials([(1, 1, 3, 0), (2 * mq, 5, 1, 0)])
    dS = S.derivative()

    def fun(_t, y):
        u, v, r = y
        num = mf * u ** 8 * r ** 4 - v ** 4 * r ** 4
        den = 1.0 - u * v ** 3 * r ** 3 - 2 * mf * u ** 5 * v * r ** 3
        return np.array([-v, u ** 3, num / den])

    sol = solve_ivp(fun, (0.0, T), np.array([1.0, 0.0, float(r0)]),
                    method="DOP853", rtol=1e-12, atol=1e-14,
                    dense_output=True)
    worst = 0.0
    for th in np.linspace(0.0, T, samples):
        u, v, r = sol.sol(th)
        rp = fun(th, (u, v, r))[2]
        s = _trig_eval(S, u, v, th)
        sp = _trig_eval(dS, u, v, th)
        den = 1.0 - r ** 3 * s
        rho = r ** 3 / den
        drho = (3 * r ** 2 * rp * den + r ** 3 * (3 * r ** 2 * rp * s
                                                  + r ** 3 * sp)) / den ** 2
        a = _trig_eval(alpha, u, v, th)
        b = _trig_eval(beta, u, v, th)
        worst = max(worst, abs(drho - (a * rho ** 3 + b * rho ** 2)))
    return worst


def polar_return(m, r0):
    """r(T) from r(0) = r0 by integrating dr/dtheta of the polar form
    over one trig period; for a limit-cycle radius this must return r0
    (the cycle's period in theta is exactly T)."""
    mf = float(m)
    T = float(gentrig.period(gentrig.TrigParams(1, 2)))

    def fun(_t, y):
        u, v, r = y
        num = mf * u ** 8 * r ** 4 - v ** 4 * r ** 4
        den = 1.0 - u * v ** 3 * r ** 3 - 2 * mf * u ** 5 * v * r ** 3
        return np.array([-v, u ** 3, num / den])

    sol = solve_ivp(fun, (0.0, T), np.array([1.0, 0.0, float(r0)]),
                    method="DOP853", rtol=1e-12, atol=1e-14)
    return float(sol.y[2, -1])


# ---------------------------------------------------------------------------
# charts at infinity

@dataclass(frozen=True)
class InfinityCharts:
    chart_vz: PlanarSystem   # (x, y) = (v/z, 1/z), time scaled by z^4
    chart_uz: PlanarSystem   # (x, y) = (1/z, u/z), time scaled by z^4
    vz_eigenvalues: tuple
    vz_verdict: str
    uz_verdict: str


def infinity_charts(m) -> InfinityCharts:
    m = Fraction(m)
    if m <= 0:
        raise NonPositiveParameter("charts classified for m > 0")
    vz = PlanarSystem({(1, 0): -m, (0, 2): 1, (3, 2): -1, (2, 4): 1},
                      {(0, 1): -m, (1, 5): 1}, name="chart-vz")
    uz = PlanarSystem({(1, 2): 1, (0, 4): -1, (5, 0): m, (4, 2): -1},
                      {(0, 3): 1, (3, 3): -1}, name="chart-uz")
    # chart (v,z): linear part is -m*I, an attracting node for m > 0
    vz_eigs = (-float(m), -float(m))
    vz_verdict = "attracting node"
    # chart (u,z): nilpotent linear part; classify by radial sampling
    # backward in time.  Decay toward the origin is only algebraic
    # (z' ~ z^3, u' ~ m u^5), so ask for the norm to halve rather than
    # to vanish.
    r0 = 0.1
    repelling = True
    for kk in range(16):
        ang = 2 * math.pi * kk / 16
        seed = np.array([r0 * math.cos(ang), r0 * math.sin(ang)])

        def back(_t, y):
            return -uz.rhs(_t, y)

        def halved(_t, y):
            return float(np.hypot(y[0], y[1])) - r0 / 2
        halved.terminal = True
        halved.direction = -1.0

        sol = solve_ivp(back, (0.0, 2e6), seed, method="DOP853",
                        rtol=1e-8, atol=1e-12, events=[halved])
        if not sol.t_events[0].size:
            repelling = False
            break
    uz_verdict = "repeller" if repelling else "undetermined"
    return InfinityCharts(chart_vz=vz, chart_uz=uz,
                          vz_eigenvalues=vz_eigs, vz_verdict=vz_verdict,
                          uz_verdict=uz_verdict)


# ---------------------------------------------------------------------------
# algebraic polycycles of the worked example

def _xym_poly(terms):
    """{(x_exp, y_exp, m_exp): c} -> UniPoly in x over UniPoly in y
    over UniPoly in m (Fraction coefficients)."""
    max_x = max(i for i, _, _ in terms)
    xs = []
    for i in range(max_x + 1):
        ys = {}
        for (xi, yj, mk), c in terms.items():
            if xi == i:
                ys.setdefault(yj, {})[mk] = Fraction(c)
        max_y = max(ys) if ys else 0
        ycoeffs = []
        for j in range(max_y + 1):
            md = ys.get(j, {})
            if md:
                deg = max(md)
                ycoeffs.append(UniPoly([md.get(t, Fraction(0))
                                        for t in range(deg + 1)]))
            else:
                ycoeffs.append(UniPoly([Fraction(0)]))
        xs.append(UniPoly(ycoeffs))
    return UniPoly(xs)


def _example1_data():
    P = _xym_poly({(0, 1, 0): -2, (1, 0, 1): 3, (1, 0, 0): -4,
                   (3, 0, 0): 4, (3, 0, 1): -2, (1, 2, 0): 1,
                   (5, 0, 0): -1})
    Q = _xym_poly({(1, 0, 0): 4, (1, 0, 1): -1, (1, 2, 0): 1,
                   (3, 0, 1): -2, (5, 0, 0): -1})
    H = _xym_poly({(0, 2, 0): 1, (4, 0, 0): -1, (2, 0, 1): -2,
                   (2, 0, 0): 4, (0, 0, 2): -1, (0, 0, 1): 4,
                   (0, 0, 0): -4})
    Hx = _xym_poly({(3, 0, 0): -4, (1, 0, 1): -4, (1, 0, 0): 8})
    Hy = _xym_poly({(0, 1, 0): 2})
    W = Hx * P + Hy * Q
    return W, H


def example1_resultant():
    """Res_x(W_m, H_m) as a polynomial in y (outer) and m (inner),
    together with the cofactor R(y, m) after stripping the exact
    factor m^4 (1-m)^4 y^4."""
    from .polys import resultant
    W, H = _example1_data()
    res = resultant(W, H)          # UniPoly in y over UniPoly in m
    mp = UniPoly.x()               # m
    one = UniPoly.const(Fraction(1))
    factor_m = (mp ** 4) * ((one - mp) ** 4)
    assert all(not c for c in res.coeffs[:4]), "y^4 factor missing"
    stripped = UniPoly(res.coeffs[4:])   # divide by y^4
    cof = stripped.map_coeffs(
        lambda c: c.divexact(factor_m) if isinstance(c, UniPoly)
        else UniPoly(()))
    return res, cof


def algebraic_polycycle_check(m):
    """Invariance verdict of {H_m = 0} for the worked example: true iff
    Res_x(W_m, H_m) vanishes identically in y at this m."""
    m = Fraction(m)
    res, _ = example1_resultant()
    sub = res.map_coeffs(
        lambda c: c(m) if isinstance(c, UniPoly) else Fraction(c))
    invariant = all(v == 0 for v in sub.coeffs)
    return invariant, sub


# ---------------------------------------------------------------------------
# basin convergence batch (compiled)

def _make_kernels():
    import numba

    @numba.njit(cache=True)
    def _converge_one(m, x0, y0, tmax, target, escape):
        # embedded RK45 (Cash-Karp) on x' = y^3 - x^3, y' = -x + m y^5
        x, y = x0, y0
        t = 0.0
        h = 1e-3
        while t < tmax:
            nrm = (x * x + y * y) ** 0.5
            if nrm < target:
                return 1
            if nrm > escape:
                return 0
            # stage evaluations
            k1x = y ** 3 - x ** 3
            k1y = -x + m * y ** 5
            x2 = x + h * 0.2 * k1x
            y2 = y + h * 0.2 * k1y
            k2x = y2 ** 3 - x2 ** 3
            k2y = -x2 + m * y2 ** 5
            x3 = x + h * (0.075 * k1x + 0.225 * k2x)
            y3 = y + h * (0.075 * k1y + 0.225 * k2y)
            k3x = y3 ** 3 - x3 ** 3
            k3y = -x3 + m * y3 ** 5
            x4 = x + h * (0.3 * k1x - 0.9 * k2x + 1.2 * k3x)
            y4 = y + h * (0.3 * k1y - 0.9 * k2y + 1.2 * k3y)
            k4x = y4 ** 3 - x4 ** 3
            k4y = -x4 + m * y4 ** 5
            x5 = x + h * (-11.0 / 54 * k1x + 2.5 * k2x - 70.0 / 27 * k3x
                          + 35.0 / 27 * k4x)
            y5 = y + h * (-11.0 / 54 * k1y + 2.5 * k2y - 70.0 / 27 * k3y
                          + 35.0 / 27 * k4y)
            k5x = y5 ** 3 - x5 ** 3
            k5y = -x5 + m * y5 ** 5
            x6 = x + h * (1631.0 / 55296 * k1x + 175.0 / 512 * k2x
                          + 575.0 / 13824 * k3x + 44275.0 / 110592 * k4x
                          + 253.0 / 4096 * k5x)
            y6 = y + h * (1631.0 / 55296 * k1y + 175.0 / 512 * k2y
                          + 575.0 / 13824 * k3y + 44275.0 / 110592 * k4y
                          + 253.0 / 4096 * k5y)
            k6x = y6 ** 3 - x6 ** 3
            k6y = -x6 + m * y6 ** 5
            x5th = x + h * (37.0 / 378 * k1x + 250.0 / 621 * k3x
                            + 125.0 / 594 * k4x + 512.0 / 1771 * k6x)
            y5th = y + h * (37.0 / 378 * k1y + 250.0 / 621 * k3y
                            + 125.0 / 594 * k4y + 512.0 / 1771 * k6y)
            x4th = x + h * (2825.0 / 27648 * k1x + 18575.0 / 48384 * k3x
                            + 13525.0 / 55296 * k4x + 277.0 / 14336 * k5x
                            + 0.25 * k6x)
            y4th = y + h * (2825.0 / 27648 * k1y + 18575.0 / 48384 * k3y
                            + 13525.0 / 55296 * k4y + 277.0 / 14336 * k5y
                            + 0.25 * k6y)
            err = max(abs(x5th - x4th), abs(y5th - y4th))
            tol = 1e-9 * max(1.0, nrm)
            if err <= tol or h < 1e-10:
                t += h
                x, y = x5th, y5th
            if err > 0.0:
                fac = 0.9 * (tol / err) ** 0.2
                if fac > 5.0:
                    fac = 5.0
                if fac < 0.1:
                    fac = 0.1
                h *= fac
            else:
                h *= 5.0
        return 0

    @numba.njit(parallel=True, cache=True)
    def _converge_batch(m, pts, tmax, target, escape):
        out = np.zeros(pts.shape[0], dtype=np.int64)
        for i in numba.prange(pts.shape[0]):
            out[i] = _converge_one(m, pts[i, 0], pts[i, 1], tmax,
                                   target, escape)
        return out

    return _converge_batch


_BATCH = None


def basin_converges(m, points, target=1e-3, tmax=5e8):
    """For each (x, y) start, 1 if the orbit's norm drops below target
    before tmax, else 0.  Compiled batch integrator."""
    global _BATCH
    if _BATCH is None:
        _BATCH = _make_kernels()
    pts = np.ascontiguousarray(np.asarray(points, dtype=float))
    escape = 10.0 * float(m) ** -0.25
    return _BATCH(float(m), pts, float(tmax), float(target), escape)


def energy(x, y):
    """x^2/2 + y^4/4, nonincreasing along orbits when m <= 0."""
    return x * x / 2 + y ** 4 / 4
