"""Command-line front end.

One executable (installed as ``quintic``) binding origin classification,
sign certificates, the bifurcation scan, cycle location, portrait/basin
data emission and the summary report.

Conventions shared by every subcommand:

* numeric parameters are parsed exactly: ``0.547`` becomes the rational
  547/1000, ``3/5`` stays 3/5;
* a plain ``key=value`` config file can supply any long option, flags
  given on the command line win;
* exit codes: 0 success, 2 a certificate failed, 3 a numeric procedure
  failed, 64 usage error.

Outputs carry no timestamps and use fixed float formatting, so a fixed
config yields byte-identical text/CSV/SVG.
"""

import argparse
import sys
from fractions import Fraction

import mpmath
import numpy as np

from . import dulac, gentrig, lyapunov, phaseflow
from .errors import (Blowup, ContactPossible, EndpointRoot, HypothesisFailed,
                     NoCrossing, NonPositiveParameter, NoOval, NoReturn,
                     NoSignChange, OrderTooSmall, OutOfScope, PieceFailed,
                     PrecisionLoss, QuinticError, SignAmbiguous,
                     SingularConditionSystem, StepUnderflow, ToleranceNotMet)

EXIT_OK = 0
EXIT_CERT = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64

_CERT_ERRORS = (PieceFailed, ContactPossible, HypothesisFailed,
                SignAmbiguous, SingularConditionSystem, NoOval)
_NUMERIC_ERRORS = (NoReturn, NoCrossing, NoSignChange, Blowup,
                   StepUnderflow, ToleranceNotMet, PrecisionLoss,
                   EndpointRoot, OrderTooSmall)
_USAGE_ERRORS = (OutOfScope, NonPositiveParameter, ValueError,
                 ZeroDivisionError)


# ---------------------------------------------------------------------------
# value parsing and formatting

def _rat(text):
    """Exact rational from a decimal or p/q literal (0.547 -> 547/1000)."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def _rat_pair(text):
    parts = str(text).split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'a,b', got {text!r}")
    return (_rat(parts[0]), _rat(parts[1]))


def _rat_list(text):
    return tuple(_rat(p) for p in str(text).split(",") if p.strip())


def _int_pair(text):
    parts = str(text).split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'i,j', got {text!r}")
    return (int(parts[0]), int(parts[1]))


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _fnum(x):
    """Deterministic float rendering (shortest repr round-trips)."""
    return repr(float(x))


def _f12(x):
    return format(float(x), ".12g")


def _load_config(path):
    if path is None:
        return {}
    cfg = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(
                        f"{path}:{lineno}: expected key=value, got {raw!r}")
                key, val = line.split("=", 1)
                cfg[key.strip().replace("-", "_")] = val.strip()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from exc
    return cfg


class _Resolver:
    """Merge precedence: command-line flag > config file > default."""

    def __init__(self, args):
        self.args = args
        self.cfg = _load_config(getattr(args, "config", None))

    def get(self, name, cast, default):
        val = getattr(self.args, name, None)
        if val is not None:
            return val
        if name in self.cfg:
            return cast(self.cfg[name])
        return default


# ---------------------------------------------------------------------------
# argument plumbing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _build_parser():
    top = _Parser(prog="quintic",
                  description="planar quintic family x' = y^3 - x^3, "
                              "y' = -x + m y^5")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    def cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key=value file; flags win")
        return p

    p = cmd("classify", "origin stability from Lyapunov constants")
    p.add_argument("--m", type=_rat)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--upto", type=int,
                   help="also list the constants V_2..V_upto")

    p = cmd("certify", "run a sign certificate")
    p.add_argument("--prop", choices=["nc", "nc-simple", "nc-Km", "35",
                                      "uniq", "925", "547"])
    p.add_argument("--m", type=_rat)
    p.add_argument("--interval", type=_rat_pair, metavar="A,B")
    p.add_argument("--samples", type=_rat_list, metavar="S1,S2,...")
    p.add_argument("--full-interval", action="store_true", default=None,
                   help="opt-in long-running whole-interval run "
                        "(props 925 and 547)")

    p = cmd("bifurcate", "scan the shooting gap for sign changes")
    p.add_argument("--bracket", type=_rat_pair, metavar="A,B")
    p.add_argument("--tol", type=float)
    p.add_argument("--scan-step", type=float, dest="scan_step")

    p = cmd("cycle", "locate the limit cycle of the return map")
    p.add_argument("--m", type=_rat)

    p = cmd("portrait", "emit phase-portrait data (CSV or SVG)")
    p.add_argument("--m", type=_rat)
    p.add_argument("--out")
    p.add_argument("--tmax", type=float)

    p = cmd("basin", "basin oval polyline plus convergence log")
    p.add_argument("--m", type=_rat)
    p.add_argument("--out")
    p.add_argument("--points", type=int)
    p.add_argument("--target", type=float)

    p = cmd("gentrig", "generalized trigonometric diagnostics")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--moment", type=_int_pair, action="append",
                   metavar="I,J", help="repeatable: full-period moment")

    p = cmd("polycycle-example", "algebraic polycycle worked example")
    p.add_argument("--m", type=_rat)

    p = cmd("report", "per-interval verdict table")
    p.add_argument("--full", action="store_true", default=None,
                   help="include the uniqueness certificate and the "
                        "bifurcation enclosure (minutes, exact+numeric)")
    p.add_argument("--out")
    p.add_argument("--tol", type=float, help="bisection width for m*")
    p.add_argument("--scan-step", type=float, dest="scan_step")

    return top


# ---------------------------------------------------------------------------
# subcommand handlers (each returns an exit code)

def _cmd_classify(args, out):
    r = _Resolver(args)
    m = r.get("m", _rat, None)
    if m is None:
        raise ValueError("classify requires --m")
    k = r.get("k", int, 1)
    s = r.get("s", int, 2)
    params = lyapunov.FamilyParams(m=m, k=k, s=s)
    verdict = lyapunov.classify_origin(params)
    print(f"classify: m = {m}, k = {k}, s = {s}", file=out)
    print(f"threshold (s = 2k case): m = {lyapunov.threshold_m(k)}",
          file=out)
    print(f"verdict: {verdict}", file=out)
    if (k, s) == (1, 2) and m == lyapunov.threshold_m(1):
        v10 = lyapunov.v10_shortcut(params)
        with mpmath.workdps(30):
            num = mpmath.nstr(v10.numeric(), 15)
        print(f"V10 = {v10.describe()} = {num}", file=out)
        print("  (W = Gamma(3/4)^2 / sqrt(pi))", file=out)
    upto = r.get("upto", int, None)
    if upto is not None:
        rep = lyapunov.lyapunov_constants(params, upto)
        for c in rep.constants:
            print(f"V{c.index} = {c.descriptor}", file=out)
        first = ("none up to this order" if rep.first_nonzero is None
                 else f"V{rep.first_nonzero}")
        print(f"first nonzero: {first}", file=out)
    return EXIT_OK


def _cmd_certify(args, out):
    r = _Resolver(args)
    prop = r.get("prop", str, None)
    if prop is None:
        raise ValueError("certify requires --prop")
    m = r.get("m", _rat, None)
    interval = r.get("interval", _rat_pair, None)
    samples = r.get("samples", _rat_list, None)
    full = bool(r.get("full_interval", _bool, False))
    cert = dulac.certify(prop, m=m, interval=interval, samples=samples,
                         full_interval=full)
    print(f"proposition: {prop}", file=out)
    print(f"verdict: {'certified' if cert.verdict else 'FAILED'}", file=out)
    print(cert.to_text(), file=out)
    return EXIT_OK if cert.verdict else EXIT_CERT


def _cmd_bifurcate(args, out):
    r = _Resolver(args)
    bracket = r.get("bracket", _rat_pair,
                    (Fraction(547, 1000), Fraction(3, 5)))
    tol = r.get("tol", float, 1e-6)
    step = r.get("scan_step", float, 1e-4)
    lo, hi = bracket
    print(f"bifurcate: bracket = [{lo}, {hi}], tol = {_fnum(tol)}, "
          f"scan-step = {_fnum(step)}, seed-eps = {_fnum(phaseflow.EPS_SEED)}",
          file=out)
    dlo = phaseflow.delta(lo, richardson=False).delta
    dhi = phaseflow.delta(hi, richardson=False).delta
    print(f"delta({lo}) = {_fnum(dlo)} "
          f"({'positive' if dlo > 0 else 'negative' if dlo < 0 else 'zero'})",
          file=out)
    print(f"delta({hi}) = {_fnum(dhi)} "
          f"({'positive' if dhi > 0 else 'negative' if dhi < 0 else 'zero'})",
          file=out)
    scan = phaseflow.find_mstar(bracket, tol, scan_step=step)
    print(f"sign changes: {len(scan.intervals)}", file=out)
    for idx, (a, b) in enumerate(scan.intervals, 1):
        print(f"m* interval {idx}: [{_fnum(a)}, {_fnum(b)}]  "
              f"width = {_fnum(b - a)}", file=out)
    print("record: bifurcate/shooting-scan", file=out)
    return EXIT_OK


def _cmd_cycle(args, out):
    r = _Resolver(args)
    m = r.get("m", _rat, Fraction(57, 100))
    print(f"cycle: m = {m}", file=out)
    cyc = phaseflow.locate_cycle(m)
    if cyc is None:
        print("no limit cycle: return-map displacement has no sign change "
              "on the scan grid", file=out)
        return EXIT_OK
    print(f"fixed point y* = {_fnum(cyc.fixed_point)}", file=out)
    print(f"period T = {_fnum(cyc.period)}", file=out)
    print(f"characteristic exponent = {_fnum(cyc.exponent)}", file=out)
    print(f"stability: {'unstable' if cyc.exponent > 0 else 'stable'} "
          f"(exponent {'>' if cyc.exponent > 0 else '<='} 0)", file=out)
    pts = phaseflow.cycle_points(m, cyc, samples=200)
    wn = phaseflow.winding_number(phaseflow.PlanarSystem.quintic(m), pts)
    print(f"vector-field index along the cycle: {wn}", file=out)
    return EXIT_OK


def _clip_event(radius):
    def ev(_t, y):
        return float(np.hypot(y[0], y[1])) - radius
    ev.terminal = True
    return ev


def _portrait_curves(m, tmax):
    """List of (orbit-id, rows) with rows = [(t, x, y), ...]."""
    mf = float(m)
    sysq = phaseflow.PlanarSystem.quintic(m)
    scale = mf ** -0.25
    escape = 10.0 * scale
    curves = []

    span = 1.6 * scale
    grid = np.linspace(-span, span, 201)
    curves.append(("nullcline-x", [(float(g), float(g), float(g))
                                   for g in grid]))
    curves.append(("nullcline-y", [(float(g), mf * float(g) ** 5, float(g))
                                   for g in grid]))

    def traj_rows(x0, tspan):
        try:
            tr = phaseflow.integrate(sysq, x0, tspan,
                                     events=[_clip_event(escape)])
        except StepUnderflow:
            return []
        return [(float(t), float(x), float(y))
                for t, x, y in zip(tr.t, tr.states[0], tr.states[1])]

    seeds = [(0.0, 0.15 * scale), (0.0, 0.45 * scale), (0.0, 1.25 * scale),
             (0.6 * scale, -0.6 * scale)]
    for idx, seed in enumerate(seeds, 1):
        curves.append((f"orbit-{idx}", traj_rows(seed, (0.0, tmax))))

    for sd, name in zip(phaseflow.saddles(m), ("p+", "p-")):
        loc = np.array(sd.location)
        for branch, vec in (("unstable", sd.v_unstable),
                            ("stable", sd.v_stable)):
            back = branch == "stable"
            for sign in (1, -1):
                seed = loc + sign * 1e-5 * vec
                rows = traj_rows(tuple(seed),
                                 (0.0, -tmax if back else tmax))
                sgn = "a" if sign > 0 else "b"
                curves.append((f"sep-{name}-{branch}-{sgn}", rows))

    cyc = phaseflow.locate_cycle(m)
    if cyc is not None:
        pts = phaseflow.cycle_points(m, cyc, samples=400)
        dt = cyc.period / len(pts)
        curves.append(("cycle", [(k * dt, float(x), float(y))
                                 for k, (x, y) in enumerate(pts)]))
    if Fraction(1, 2) < Fraction(m) < Fraction(3, 5):
        oval = dulac.basin_oval(m)
        curves.append(("basin-oval", [(float(k), float(x), float(y))
                                      for k, (x, y) in enumerate(oval)]))
    return curves


def _write_csv(path, curves):
    n = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,x,y,orbit-id\n")
        for cid, rows in curves:
            for t, x, y in rows:
                fh.write(f"{_f12(t)},{_f12(x)},{_f12(y)},{cid}\n")
                n += 1
    return n


_SVG_COLORS = {"nullcline": "#999999", "orbit": "#1f77b4",
               "sep": "#d62728", "cycle": "#2ca02c", "basin": "#9467bd"}


def _write_svg(path, curves, size=640):
    xs = [x for _, rows in curves for _, x, _ in rows]
    ys = [y for _, rows in curves for _, _, y in rows]
    if not xs:
        raise ValueError("no portrait data to render")
    lo = min(min(xs), min(ys))
    hi = max(max(xs), max(ys))
    pad = 0.05 * (hi - lo or 1.0)
    lo, hi = lo - pad, hi + pad
    span = hi - lo

    def sx(x):
        return (x - lo) / span * size

    def sy(y):
        return size - (y - lo) / span * size

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    n = 0
    for cid, rows in curves:
        if not rows:
            continue
        color = _SVG_COLORS.get(cid.split("-")[0], "#000000")
        d = " ".join(f"{'M' if k == 0 else 'L'} "
                     f"{format(sx(x), '.2f')} {format(sy(y), '.2f')}"
                     for k, (_, x, y) in enumerate(rows))
        lines.append(f'<path d="{d}" fill="none" stroke="{color}" '
                     f'stroke-width="1"><title>{cid}</title></path>')
        n += len(rows)
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return n


def _cmd_portrait(args, out):
    r = _Resolver(args)
    m = r.get("m", _rat, Fraction(57, 100))
    path = r.get("out", str, "portrait.csv")
    tmax = r.get("tmax", float, 30.0)
    if float(m) <= 0:
        raise NonPositiveParameter("portrait drawn for m > 0")
    curves = _portrait_curves(m, tmax)
    print(f"portrait: m = {m}, tmax = {_fnum(tmax)}", file=out)
    if path.endswith(".csv"):
        n = _write_csv(path, curves)
    elif path.endswith(".svg"):
        n = _write_svg(path, curves)
    else:
        raise ValueError(f"--out must end in .csv or .svg, got {path!r}")
    for cid, rows in curves:
        print(f"  {cid}: {len(rows)} points", file=out)
    print(f"wrote {path} ({n} points)", file=out)
    return EXIT_OK


def _interior_points(oval, count):
    """Deterministic sample of points strictly inside the oval: the
    polyline scaled toward the origin (the oval is star-shaped about
    the enclosed equilibrium at the origin)."""
    verts = oval[:-1]  # drop the closing repeat
    pts = []
    factors = (0.25, 0.5, 0.75, 0.9)
    stride = max(1, (len(verts) * len(factors)) // count)
    k = 0
    for f in factors:
        for x, y in verts:
            if k % stride == 0 and len(pts) < count:
                pts.append((f * x, f * y))
            k += 1
    while len(pts) < count:
        pts.append((0.0, 0.0))
    return pts[:count]


def _cmd_basin(args, out):
    r = _Resolver(args)
    m = r.get("m", _rat, Fraction(57, 100))
    path = r.get("out", str, "basin-oval.csv")
    count = r.get("points", int, 100)
    target = r.get("target", float, 1e-3)
    oval = dulac.basin_oval(m)
    n = _write_csv(path, [("basin-oval",
                           [(float(k), x, y)
                            for k, (x, y) in enumerate(oval)])])
    print(f"basin: m = {m}, points = {count}, target = {_fnum(target)}",
          file=out)
    print(f"oval polyline: {path} ({n} vertices, closed)", file=out)
    pts = _interior_points(oval, count)
    flags = phaseflow.basin_converges(m, pts, target=target)
    ok = 0
    for (x, y), flag in zip(pts, flags):
        status = "converged" if flag else "FAILED"
        print(f"  start ({_f12(x)}, {_f12(y)}): {status}", file=out)
        ok += int(bool(flag))
    print(f"containment: {ok}/{count} starts reached "
          f"|state| < {_fnum(target)}", file=out)
    return EXIT_OK if ok == count else EXIT_NUMERIC


def _cmd_gentrig(args, out):
    r = _Resolver(args)
    p = r.get("p", int, 1)
    q = r.get("q", int, 2)
    params = gentrig.TrigParams(p=p, q=q)
    T = gentrig.period(params)
    T_ode = gentrig.period_ode(params)
    print(f"gentrig: p = {p}, q = {q}", file=out)
    print(f"period (Gamma product) = {mpmath.nstr(T, 20)}", file=out)
    print(f"period (ODE return time) = {_fnum(T_ode)}", file=out)
    print(f"period agreement = {_fnum(abs(float(T) - T_ode))}", file=out)
    theta = r.get("theta", float, None)
    if theta is not None:
        val = gentrig.eval(params, theta)
        energy = p * val.cs ** (2 * q) + q * val.sn ** (2 * p) - 1.0
        print(f"Cs({_fnum(theta)}) = {_fnum(val.cs)}", file=out)
        print(f"Sn({_fnum(theta)}) = {_fnum(val.sn)}", file=out)
        print(f"energy residual = {_fnum(energy)}", file=out)
    moments = getattr(args, "moment", None)
    if not moments and "moment" in r.cfg:
        moments = [_int_pair(r.cfg["moment"])]
    for i, j in moments or []:
        mom = gentrig.moment(params, i, j)
        quad = gentrig.moment_quadrature(params, i, j)
        print(f"moment Sn^{i} Cs^{j}: {mom.descriptor} = "
              f"{mpmath.nstr(mom.value, 17)}  "
              f"(quadrature {_fnum(quad)}, "
              f"diff {_fnum(abs(float(mom.value) - quad))})", file=out)
    return EXIT_OK


def _cmd_polycycle_example(args, out):
    r = _Resolver(args)
    m = r.get("m", _rat, None)
    if m is None:
        raise ValueError("polycycle-example requires --m")
    invariant, sub = phaseflow.algebraic_polycycle_check(m)
    print(f"polycycle-example: m = {m}", file=out)
    print("resultant factor stripped exactly: m^4 (1 - m)^4 y^4", file=out)
    nz = sum(1 for c in sub.coeffs if c)
    desc = ("identically zero" if nz == 0
            else f"{nz} nonzero coefficients, degree {sub.degree()}")
    print(f"resultant in y at this m: {desc}", file=out)
    print(f"invariant algebraic polycycle: {'yes' if invariant else 'no'}",
          file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# report

_REPORT_DEFAULTS = (
    ("shoot-tol", phaseflow.TOL_SHOOT),
    ("plain-tol", phaseflow.TOL_PLAIN),
    ("seed-eps", phaseflow.EPS_SEED),
    ("mstar-tol", 1e-5),
    ("mstar-scan-step", 1e-3),
    ("basin-target", 1e-3),
)


def _cmd_report(args, out):
    r = _Resolver(args)
    full = bool(r.get("full", _bool, False))
    path = r.get("out", str, None)
    tol = r.get("tol", float, 1e-5)
    step = r.get("scan_step", float, 1e-3)

    lines = []
    lines.append("quintic report: cycles and polycycles of "
                 "x' = y^3 - x^3, y' = -x + m y^5")
    lines.append("=" * 72)
    defaults = list(_REPORT_DEFAULTS)
    defaults[3] = ("mstar-tol", tol)
    defaults[4] = ("mstar-scan-step", step)
    lines.append("defaults: " + ", ".join(f"{k} = {_fnum(v)}"
                                          for k, v in defaults))
    lines.append(f"mode: {'full' if full else 'standard'}")
    lines.append("")
    lines.append("certificates and numeric records")
    lines.append("-" * 72)

    failed = False
    records = {}

    def record(rid, text, ok=True):
        nonlocal failed
        records[rid] = ok
        lines.append(f"[{rid}] {text}" + ("" if ok else "  ** FAILED **"))
        if not ok:
            failed = True

    # C1: divergence is -3x^2 + 5m y^4; for m <= 0 both terms are <= 0.
    sys0 = phaseflow.PlanarSystem.quintic(Fraction(-1))
    px = phaseflow.PlanarSystem._diff(sys0.p_terms, 0)
    qy = phaseflow.PlanarSystem._diff(sys0.q_terms, 1)
    ok1 = (px == {(2, 0): Fraction(-3)}
           and qy == {(0, 4): Fraction(-5)}
           and all(i % 2 == 0 and j % 2 == 0
                   for terms in (px, qy) for i, j in terms))
    record("C1", "m <= 0: div X = -3 x^2 + 5 m y^4 is nonpositive "
                 "(exact coefficient signs, even powers)", ok1)

    cert = dulac.certify("nc")
    record("C2", "proposition nc: series Dulac function, interval "
                 "(0, 3/10], "
                 f"{'certified' if cert.verdict else 'failed'}",
           cert.verdict)

    cert = dulac.certify("nc-Km")
    record("C3", "proposition nc-Km: K(m) comparison up to 9/25, "
                 f"{'certified' if cert.verdict else 'failed'}",
           cert.verdict)

    cert = dulac.certify("925")
    record("C4", "proposition 925: boundary-sign/without-contact "
                 "certificates at 3 sampled rational parameters in "
                 "(9/25, 1/2); whole-interval run: "
                 "quintic certify --prop 925 --full-interval",
           cert.verdict)

    cert = dulac.certify("547")
    record("C5", "proposition 547: saddle-anchored Dulac certificates at "
                 "3 sampled rational parameters in [1/2, 547/1000]; "
                 "whole-interval run: "
                 "quintic certify --prop 547 --full-interval",
           cert.verdict)

    ok35 = True
    for mq in (Fraction(3, 5), Fraction(7, 10), Fraction(1)):
        ok35 = ok35 and dulac.certify("35", m=mq).verdict
    record("C6", "proposition 35: truncated series certificate at "
                 "m in {3/5, 7/10, 1} (per-parameter certificate)", ok35)

    inv0, _ = phaseflow.algebraic_polycycle_check(0)
    inv1, _ = phaseflow.algebraic_polycycle_check(1)
    record("C7", "worked example: algebraic polycycle invariant exactly "
                 "at m in {0, 1}", inv0 and inv1)

    if full:
        cert = dulac.certify("uniq")
        record("C8", "proposition uniq: divergence-sign uniqueness "
                     "certificate on the full interval [1/2, 3/5)",
               cert.verdict)
        scan = phaseflow.find_mstar((Fraction(547, 1000), Fraction(3, 5)),
                                    tol, scan_step=step)
        ivs = scan.intervals
        ok_scan = len(ivs) == 1
        enc = ", ".join(f"[{_fnum(a)}, {_fnum(b)}]" for a, b in ivs)
        record("N1", f"shooting scan on (547/1000, 3/5): "
                     f"{len(ivs)} sign change(s) of delta, "
                     f"enclosure(s) {enc}", ok_scan)

    lines.append("")
    lines.append("verdict table")
    lines.append("-" * 72)
    lines.append(f"{'interval':<22}{'verdict':<34}backing")

    def row(interval, verdict, backing):
        nonlocal failed
        for rid in backing.split(", "):
            if rid not in records:
                raise QuinticError(f"dangling report row: {interval} "
                                   f"cites unknown record {rid}")
            if not records[rid]:
                failed = True
        lines.append(f"{interval:<22}{verdict:<34}{backing}")

    row("(-inf, 0]", "no cycles, no polycycles", "C1")
    row("(0, 3/10]", "no cycles, no polycycles", "C2")
    row("(0, 9/25]", "no cycles, no polycycles", "C2, C3")
    row("(9/25, 1/2)", "none (sampled evidence)", "C4")
    row("[1/2, 547/1000]", "none (sampled evidence)", "C5")
    if full:
        row("(547/1000, 3/5)", "at most one cycle or polycycle", "C8")
        row("(547/1000, 3/5)", "one delta sign change (m*)", "N1")
    row("[3/5, +inf)", "none (sampled evidence)", "C6")
    row("m in {0, 1}", "algebraic polycycle (example)", "C7")

    lines.append("")
    if not full:
        lines.append("note: rerun with --full for the uniqueness row on "
                     "(547/1000, 3/5) and the m* enclosure.")
    lines.append("basin data: quintic basin --m 57/100 "
                 "(oval polyline and convergence log)")
    lines.append(f"status: {'FAILED' if failed else 'ok'}")

    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {path}", file=out)
    else:
        out.write(text)
    return EXIT_CERT if failed else EXIT_OK


_HANDLERS = {
    "classify": _cmd_classify,
    "certify": _cmd_certify,
    "bifurcate": _cmd_bifurcate,
    "cycle": _cmd_cycle,
    "portrait": _cmd_portrait,
    "basin": _cmd_basin,
    "gentrig": _cmd_gentrig,
    "polycycle-example": _cmd_polycycle_example,
    "report": _cmd_report,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](args, out)
    except _CERT_ERRORS as exc:
        print(f"certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERT
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _USAGE_ERRORS as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuinticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
