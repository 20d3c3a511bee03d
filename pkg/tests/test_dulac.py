import dataclasses
import math
from fractions import Fraction as Q

import mpmath
import pytest

from quintic import dulac as D
from quintic.errors import (ContactPossible, HypothesisFailed,
                            OutOfScope, PieceFailed, SignAmbiguous,
                            SingularConditionSystem)
from quintic.polys import UniPoly, eval_parampoly


def one():
    return UniPoly.const(Q(1))


class TestRings:
    def test_sext_cube_collapses(self):
        c = Q(7)
        s = D.SExt(0, 1, 0, c)
        assert s * s * s == D.SExt(c, 0, 0, c)

    def test_sext_hashable(self):
        c = Q(2)
        a = D.SExt(1, 2, 3, c)
        assert hash(a) == hash(D.SExt(1, 2, 3, c))

    def test_quadext_inverse(self):
        q = D.QuadExt(Q(3), Q(-2), Q(5))
        r = q * q.inverse()
        assert r == D.QuadExt(1, 0, Q(5))

    def test_conjugate_product_same_real_roots(self):
        # P = A + sB with s = 2^(1/3); G = A^3 + 2 B^3 has the same
        # real roots: spot check on a polynomial with a known root
        c = Q(2)
        s = D.SExt(0, 1, 0, c)
        p = UniPoly((-(s * 3), D.SExt(3, 0, 0, c)))  # 3(y - s)
        G, A, B = D._conjugate_product(p, c)
        root = 2 ** (1 / 3)
        # the scalar parts come back wrapped as constant parameter polys
        val = sum(float(cf.coeff(0)) * root ** j
                  for j, cf in enumerate(G.coeffs) if cf)
        assert abs(val) < 1e-9
        assert A == UniPoly((UniPoly(()), UniPoly.const(Q(3))))
        assert B == UniPoly.const(UniPoly.const(Q(-3)))


class TestLemma6Invariants:
    def test_broken_g1_rejected(self):
        V = D.build_V2_series(Q(11, 20))
        with pytest.raises(HypothesisFailed):
            dataclasses.replace(V, g1=V.g1 + V.g2)

    def test_x2_cancellation(self):
        for m in (Q(11, 20), Q(57, 100)):
            M = D.compute_M(D.build_V2_series(m))
            assert M.x_degree == 1
            assert M.y_factor == 4

    def test_wrong_k_leaves_x2(self):
        V = D.build_V2_series(Q(11, 20))
        with pytest.raises(HypothesisFailed):
            D.compute_M(V, k=Q(1, 2))

    def test_antipodal_symmetry(self):
        M = D.compute_M(D.build_V2_series(Q(57, 100)))
        assert M.antipodal_symmetric()


class TestDisplays:
    def test_simple_seed_m_identity(self):
        # M for V = 2x^2 + y^4, k = 2/3 is (2/3)((3-10m)x^2 + m y^4)y^4,
        # symbolically in m
        M = D.compute_M(D.build_Vnc())
        m = UniPoly.x()
        want = {(2, 4): (UniPoly.const(Q(3)) - m.scale(Q(10))).scale(Q(2, 3)),
                (0, 8): m.scale(Q(2, 3))}
        assert M.bi() == want

    def test_general_k_three_terms(self):
        a, b, c = D.general_k_m_coeffs(Q(1, 3), Q(1, 2))
        assert (a, b, c) == (Q(-1), Q(1, 2) * (3 - Q(10, 3)), Q(3, 2) * Q(1, 3))

    def test_km_at_crossover(self):
        # R vanishes at m = 9/25, K = 8/11 exactly
        with mpmath.workdps(30):
            assert abs(D.km_value(Q(9, 25)) - mpmath.mpf(8) / 11) < 1e-25

    def test_kummer_j0_term(self):
        spec = D.build_V1_kummer(Q(1, 2))
        series = D.m1_series(spec)
        # lowest term: (1/3)(3 - 5m) on y^3 * y (the inner series
        # starts at y^1)
        assert series.coeff(4) == Q(1, 3) * (3 - 5 * Q(1, 2))

    def test_kummer_coefficient_recursion(self):
        spec = D.build_V1_kummer(Q(3, 5), truncation=4)
        g1 = spec.g1
        r = Q(1)
        for j in range(4):
            assert g1.coeff(6 * j + 1) == r
            r = r * (Q(-1, 9) + j) / (Q(7, 6) + j) / (j + 1) * Q(3, 5) / 6

    def test_kummer_residual_truncation(self):
        spec = D.build_V1_kummer(Q(3, 5), truncation=6)
        res = D.kummer_residual(spec)
        # residual supported only at the truncation frontier
        low = min(j for j, c in enumerate(res.coeffs) if c)
        assert low >= 6 * 5 + 1 - 2

    def test_g2final_reproduced(self):
        for m in (Q(1, 2), Q(11, 20), Q(57, 100), Q(59, 100), Q(3, 5)):
            V = D.build_V2_series(m)
            assert V.g2 == D.g2final(m)

    def test_a12_display(self):
        assert D.a12_value(Q(1, 2)) == Q(-157) * 2 * Q(41, 2) / 44550000

    def test_eee_poly_root(self):
        lo, hi = D.ntilde_bounds()
        assert hi - lo <= Q(1, 10 ** 9)
        assert float(lo) == pytest.approx(0.8045592, abs=5e-7)
        assert D.EEE_POLY(lo) * D.EEE_POLY(hi) < 0


class TestEnclosures:
    def test_frozen_brackets(self):
        assert (D.ENCLOSE_8_4.lower, D.ENCLOSE_8_4.upper) == \
            (Q(3002, 1785), Q(37, 22))
        assert (D.ENCLOSE_10_3.lower, D.ENCLOSE_10_3.upper) == \
            (Q(28, 13), Q(265, 123))

    def test_bracket_truth(self):
        assert Q(3002, 1785) ** 4 < 8 < Q(37, 22) ** 4
        assert Q(28, 13) ** 3 < 10 < Q(265, 123) ** 3

    def test_n0_powers(self):
        # (1/2)^(k/4) table stays within float truth
        for k in range(1, 9):
            cf, keys = D._n0_power(k)
            val = float(cf)
            for key in keys:
                enc = D._N0_ENCL[key]
                val *= (float(enc.lower) + float(enc.upper)) / 2
            assert val == pytest.approx(0.5 ** (k / 4), rel=1e-3)


@pytest.fixture(scope="module")
def uniq_M():
    return D.compute_M(D.build_V2_series(UniPoly.x() ** 4))


class TestUniqDisplay:
    @pytest.fixture
    def M(self, uniq_M):
        return uniq_M

    def test_q2_pinned_coefficients(self, M):
        q2 = D.uniq_q2_display(M)
        assert q2.degree() == 16
        c0 = q2.coeff(0)
        assert not c0.e0 and not c0.e2
        assert c0.e1 == UniPoly.from_dict({1: Q(-224532), 5: Q(374220)})
        c4 = q2.coeff(4)
        assert c4.e0 == UniPoly.from_dict({1: Q(561330), 5: Q(-935550)})
        c16 = q2.coeff(16)
        assert c16.e0 == UniPoly.from_dict(
            {9: Q(-15561), 13: Q(-129675), 17: Q(605150)})

    def test_majorants_negative_at_sample(self, M):
        for name, p, spans, _, _ in D._uniq_pieces(M):
            ok, notes, witness = D._majorant_negative(p, spans)
            assert ok, (name, witness)

    def test_broken_M_fails_fast(self, M):
        bad = dataclasses.replace(
            M, x_coeffs=tuple(-g for g in M.x_coeffs))
        with pytest.raises(PieceFailed):
            D.certify_uniq(M=bad)

    def test_interval_validation(self):
        with pytest.raises(OutOfScope):
            D.certify_uniq(interval=(Q(2, 5), Q(3, 5)))
        with pytest.raises(OutOfScope):
            D.certify_uniq(interval=(Q(1, 2), Q(2, 3)))

    def test_needs_symbolic_parameter(self):
        M = D.compute_M(D.build_V2_series(Q(11, 20)))
        with pytest.raises(OutOfScope):
            D._uniq_pieces(M)


class TestLightCertifiers:
    def test_nc(self):
        cert = D.certify_nc()
        assert cert.verdict

    def test_nc_interval_guard(self):
        with pytest.raises(OutOfScope):
            D.certify_nc((Q(0), Q(1, 2)))

    def test_nc_km(self):
        assert D.certify_nc_km().verdict

    def test_35(self):
        assert D.certify_35(Q(3, 5)).verdict
        assert D.certify_35(Q(7, 10)).verdict

    def test_35_guard(self):
        with pytest.raises(OutOfScope):
            D.certify_35(Q(59, 100))


class TestProp925Sampled:
    def test_boundary_route(self):
        cert = D.certify_925(Q(78, 100))
        assert cert.verdict
        assert "boundary sign" in cert.to_text()

    def test_contact_route(self):
        cert = D.certify_925(Q(83, 100))
        assert cert.verdict
        assert "without contact" in cert.to_text()

    def test_inside_bracket_rejected(self):
        lo, hi = D.ntilde_bounds()
        with pytest.raises(OutOfScope):
            D.certify_925((lo + hi) / 2)

    def test_outside_window_rejected(self):
        with pytest.raises(OutOfScope):
            D.certify_925(Q(3, 4))

    def test_deterministic_replay(self):
        a = D.certify_925(Q(78, 100)).to_text()
        b = D.certify_925(Q(78, 100)).to_text()
        assert a == b


class TestProp547Sampled:
    def test_three_samples(self):
        for n in (Q(71, 100), Q(18, 25), Q(73, 100)):
            assert D.certify_547(n).verdict

    def test_saddle_exact(self):
        V = D.build_V2_prop547(n=Q(71, 100))
        w = (Q(100, 71)) ** Q(1)  # 1/n
        # V2(sqrt(1/n), sqrt(1/n)) = 0 exactly: parity split
        ev = Q(0)
        od = Q(0)
        for (i, j), c in V.bi().items():
            t = i + j
            if t % 2:
                od += Q(c) * w ** ((t - 1) // 2)
            else:
                ev += Q(c) * w ** (t // 2)
        assert ev == 0 and od == 0

    def test_quadext_build(self):
        V = D.build_V2_prop547(m=Q(1, 2))
        c0 = V.bi()[(0, 0)]
        assert isinstance(c0, D.QuadExt)

    def test_window_guard(self):
        with pytest.raises(OutOfScope):
            D.build_V2_prop547(m=Q(3, 5))
        with pytest.raises(ValueError):
            D.build_V2_prop547()

    def test_singular_system_detected(self):
        eqs = [D.LinForm.unknown(2) + D.LinForm.unknown(4)]
        with pytest.raises(SingularConditionSystem):
            D._linsolve_ratfunc(eqs, (2, 4))


class TestDispatcher:
    def test_ids(self):
        for prop in ("nc", "nc-Km", "35"):
            assert D.certify(prop).verdict

    def test_unknown_id(self):
        with pytest.raises(OutOfScope):
            D.certify("prop42")

    def test_sampled_merge(self):
        cert = D.certify("925", samples=(Q(78, 100),))
        assert cert.verdict
        assert "sampled at 1 rational parameters" in cert.to_text()

    def test_547_default_samples(self):
        cert = D.certify("547")
        assert cert.verdict
        assert cert.to_text().count("sample n =") == 3


class TestSpecWrappers:
    def test_sign_dispatch_nc(self):
        M = D.compute_M(D.build_Vnc())
        assert D.certify_sign(M).verdict

    def test_sign_925_boundary_route(self):
        n = Q(78, 100)
        M = D.compute_M(D.build_V2_prop925(n))
        r = D.RegionOmega(n=n, provenance="925")
        assert D.certify_sign(M, region=r).verdict

    def test_sign_925_wrong_side(self):
        n = Q(83, 100)
        M = D.compute_M(D.build_V2_prop925(n))
        r = D.RegionOmega(n=n, provenance="925")
        with pytest.raises(OutOfScope):
            D.certify_sign(M, region=r)

    def test_without_contact(self):
        n = Q(83, 100)
        M = D.compute_M(D.build_V2_prop925(n))
        r = D.RegionOmega(n=n, provenance="925")
        assert D.certify_without_contact(M, region=r).verdict

    def test_without_contact_wrong_side(self):
        n = Q(78, 100)
        M = D.compute_M(D.build_V2_prop925(n))
        r = D.RegionOmega(n=n, provenance="925")
        with pytest.raises(OutOfScope):
            D.certify_without_contact(M, region=r)

    def test_region_membership(self):
        r = D.RegionOmega(n=Q(4, 5), provenance="925")
        assert r.contains(0.0, 0.0)
        assert not r.contains(2.0, 0.0)
        assert len(r.pieces) == 5


class TestCycleTools:
    def test_stability_sign_positive(self):
        V = D.build_V2_series(Q(57, 100))
        M = D.compute_M(V)
        assert D.cycle_stability_sign(M, V) == 1

    def test_sign_flip_invariance(self):
        V = D.build_V2_series(Q(57, 100))
        M = D.compute_M(V)
        negM = dataclasses.replace(M, x_coeffs=tuple(-g for g in M.x_coeffs))
        negV = dataclasses.replace(V, g0=-V.g0, g1=-V.g1, g2=-V.g2)
        assert D.cycle_stability_sign(negM, negV) == 1

    def test_ambiguous_points(self):
        V = D.build_V2_series(Q(57, 100))
        M = D.compute_M(V)
        # V changes sign between the origin side and far field
        with pytest.raises(SignAmbiguous):
            D.cycle_stability_sign(M, V, points=[(0.05, 0.05), (0.95, 0.3)])

    def test_basin_oval_closed(self):
        pts = D.basin_oval(Q(57, 100), 120)
        assert pts[0] == pts[-1]
        assert len(set(pts)) == len(pts) - 1
        assert len(pts) > 100
        assert max(abs(y) for _, y in pts) < 0.8
        assert max(abs(x) for x, _ in pts) < 0.5
        # genuine oval: spans both half planes, point symmetric,
        # winds once around the enclosed equilibrium
        assert min(y for _, y in pts) < -0.5 < 0.5 < max(y for _, y in pts)
        body = pts[:-1]
        # point symmetry up to the seam bisection's float resolution
        mirrored = {(round(-x, 6), round(-y, 6)) for x, y in body}
        assert {(round(x, 6), round(y, 6)) for x, y in body} == mirrored
        ang = 0.0
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            ang += math.atan2(x1 * y2 - x2 * y1, x1 * x2 + y1 * y2)
        assert abs(ang - 2 * math.pi) < 1e-9

    def test_basin_guards(self):
        with pytest.raises(OutOfScope):
            D.basin_oval(Q(2, 5))
        with pytest.raises(ValueError):
            D.basin_oval(Q(57, 100), samples=4)


class TestAdaptiveMachinery:
    def test_param_gcd(self):
        n = UniPoly.x()
        A = UniPoly((-n, one())) * UniPoly((n * n, one()))
        B = UniPoly((-n, one())) * UniPoly((UniPoly.const(Q(-3)), one()))
        g = D._param_gcd(A, B)
        assert g.degree() == 1
        # primitive representative of (y - n)
        assert g == UniPoly((-n, one())) or g == UniPoly((n, -one()))

    def test_param_squarefree(self):
        n = UniPoly.x()
        f = UniPoly((-n, one()))
        assert D._param_squarefree(f ** 3 * UniPoly((n, one()))).degree() == 2

    def test_clean_interval(self):
        n = UniPoly.x()
        G = UniPoly((-n, UniPoly(()), one()))  # y^2 - n
        w = (UniPoly.const(Q(1, 2)), one())
        cert = D._family_count_adaptive(
            G, (UniPoly.const(Q(-1, 2)), one()), w, (Q(1), Q(2)), 0)
        assert cert.verdict

    def test_bracket_discharge(self):
        n = UniPoly.x()
        # (y - 2)^2 - (n - 3/2): double root at n = 3/2, ordinate 2,
        # outside the window (-1, 1); count 0 throughout
        G = UniPoly((UniPoly.const(Q(4)) - (n - UniPoly.const(Q(3, 2))),
                     UniPoly.const(Q(-4)), one()))
        cert = D._family_count_adaptive(
            G, (UniPoly.const(Q(-1)), one()), (one(), one()),
            (Q(1), Q(2)), 0)
        assert cert.verdict
        text = cert.to_text()
        assert "double-root" in text and "bracket" in text

    def test_honest_failure_on_entry(self):
        n = UniPoly.x()
        # y^2 + (n - 3/2): roots really enter the window
        G = UniPoly((n - UniPoly.const(Q(3, 2)), UniPoly(()), one()))
        cert = D._family_count_adaptive(
            G, (UniPoly.const(Q(-1, 2)), one()),
            (UniPoly.const(Q(1, 2)), one()), (Q(1), Q(2)), 0)
        assert not cert.verdict

    def test_isolate_exact_rational_root(self):
        p = (UniPoly.x() - UniPoly.const(Q(3, 2))) \
            * (UniPoly.x() ** 2 + UniPoly.const(Q(1)))
        out = D._isolate_n_roots(p, Q(1), Q(2), Q(1, 100))
        assert len(out) == 1
        a, b = out[0]
        assert a < Q(3, 2) < b and b - a <= Q(1, 100)


class TestWholeIntervalConstructions:
    def test_edge_identity_symbolic(self):
        M = D.m925_symbolic()
        assert D._925_edge_identity(D._as_parampoly(M.phi),
                                    D._as_parampoly(M.psi))

    def test_symbolic_matches_rational_925(self):
        M = D.m925_symbolic()
        n0 = Q(78, 100)
        Mr = D.compute_M(D.build_V2_prop925(n0))
        assert eval_parampoly(D._as_parampoly(M.phi), n0) == \
            UniPoly(tuple(Q(c) for c in Mr.phi.coeffs))
        assert eval_parampoly(D._as_parampoly(M.psi), n0) == \
            UniPoly(tuple(Q(c) for c in Mr.psi.coeffs))

    def test_symbolic_matches_rational_547(self):
        bi, L = D._prop547_symbolic()
        n0 = Q(71, 100)
        V = D.build_V2_prop547(n=n0).bi()
        Lv = L(n0)
        assert Lv != 0
        for key, c in bi.items():
            assert Q(c(n0)) == Q(V.get(key, 0)) * Lv

    def test_full_flag_dispatch_exists(self):
        # the whole-interval runs take hours; only the wiring is checked
        import inspect
        sig = inspect.signature(D.certify)
        assert "full_interval" in sig.parameters
        assert callable(D.certify_925_full) and callable(D.certify_547_full)
