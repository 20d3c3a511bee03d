from fractions import Fraction

import mpmath
import pytest

from quintic.errors import NoReturn, OrderTooSmall, PrecisionLoss
from quintic.exactval import ExactVal
from quintic.lyapunov import (FamilyParams, TrigPoly, classify_origin,
                              lyapunov_constants, polar_rhs,
                              return_map_displacement, threshold_m,
                              v10_shortcut)


def P(m, k=1, s=2):
    return FamilyParams(Fraction(m), k, s)


class TestTrigPoly:
    def test_sn_square_reduction(self):
        sn2 = TrigPoly.from_monomials([(1, 0, 2, 0)])
        want = TrigPoly.from_monomials([(Fraction(1, 2), 0, 0, 0),
                                        (Fraction(-1, 2), 4, 0, 0)])
        assert sn2 == want

    def test_product_closure(self):
        a = TrigPoly.from_monomials([(1, 2, 1, 0)])
        b = TrigPoly.from_monomials([(1, 3, 1, 1)])
        prod = a * b
        # Sn^2 reduced away: only sn_exp 0 keys remain
        assert all(key[1] == 0 for key in prod.terms)

    def test_derivative_of_antiderivative(self):
        f = TrigPoly.from_monomials([(Fraction(2, 3), 8, 0, 0),
                                     (1, 5, 1, 0), (1, 0, 4, 1)])
        F = f.antiderivative()
        assert (F.derivative() - f).is_zero()

    def test_antiderivative_vanishes_at_zero(self):
        f = TrigPoly.from_monomials([(1, 4, 0, 0)])
        F = f.antiderivative()
        assert abs(F.eval_numeric(0.0)) == 0.0
        c0 = sum(c for (i, j, k), c in F.terms.items() if j == 0 and k == 0)
        assert c0 == 0

    def test_cs2_has_no_ring_antiderivative(self):
        with pytest.raises(PrecisionLoss):
            TrigPoly.from_monomials([(1, 2, 0, 0)]).antiderivative()

    def test_definite_integral_cs8(self):
        f = TrigPoly.from_monomials([(1, 8, 0, 0)])
        assert f.definite_integral() == ExactVal.T(Fraction(5, 21))

    def test_definite_integral_theta_term(self):
        # int_0^T theta*Cs^4 vs numeric quadrature
        f = TrigPoly.from_monomials([(1, 4, 0, 1)])
        exact = f.definite_integral()
        import numpy as np
        from scipy.integrate import solve_ivp
        from quintic import gentrig
        T = float(gentrig.period(gentrig.TrigParams(1, 2)))

        def fun(t, y):
            return np.array([-y[1], y[0] ** 3, t * y[0] ** 4])
        sol = solve_ivp(fun, (0, T), np.array([1.0, 0.0, 0.0]),
                        method="DOP853", rtol=1e-12, atol=1e-13)
        assert abs(float(exact.numeric()) - sol.y[2, -1]) < 1e-9

    def test_odd_monomial_integral_is_structural_zero(self):
        f = TrigPoly.from_monomials([(1, 5, 1, 0)])
        assert f.definite_integral().is_zero()


class TestPolarRhs:
    def test_R4_display(self):
        m = Fraction(3, 5)
        R = polar_rhs(P(m), 10)
        assert R[4] == TrigPoly.from_monomials([(m, 8, 0, 0), (-1, 0, 4, 0)])

    def test_R7_R10_displays(self):
        for m in (Fraction(3, 5), Fraction(2, 7)):
            R = polar_rhs(P(m), 10)
            r7 = TrigPoly.from_monomials([
                (2 * m * m, 13, 1, 0), (m, 9, 3, 0),
                (-2 * m, 5, 5, 0), (-1, 1, 7, 0)])
            r10 = TrigPoly.from_monomials([
                (4 * m ** 3, 18, 2, 0), (4 * m * m, 14, 4, 0),
                (m * (1 - 4 * m), 10, 6, 0), (-4 * m, 6, 8, 0),
                (-1, 2, 10, 0)])
            assert R[7] == r7 and R[10] == r10

    def test_low_orders_vanish(self):
        R = polar_rhs(P(Fraction(1, 2), k=1, s=2), 10)
        assert all(R[i].is_zero() for i in (2, 3, 5, 6, 8, 9))
        R = polar_rhs(P(Fraction(1, 2), k=1, s=1), 8)
        assert R[2] == TrigPoly.from_monomials([(Fraction(1, 2), 6, 0, 0)])

    def test_order_too_small(self):
        with pytest.raises(OrderTooSmall):
            polar_rhs(P(Fraction(1, 2), k=2, s=1), 1)
        with pytest.raises(OrderTooSmall):
            lyapunov_constants(P(Fraction(1, 2), k=2, s=1), 1)


class TestLyapunovConstants:
    def test_V2_closed_form_s1(self):
        # k=1, s=1: V2 = m sqrt(2 pi) Gamma(7/4)/Gamma(9/4)
        for m in (Fraction(-1), Fraction(1, 3)):
            rep = lyapunov_constants(P(m, 1, 1), 2)
            with mpmath.workdps(40):
                want = (float(m) * mpmath.sqrt(2 * mpmath.pi)
                        * mpmath.gamma(1.75) / mpmath.gamma(2.25))
                assert abs(rep.constants[0].value - float(want)) < 1e-12

    def test_V4_closed_form_s3(self):
        # k=1, s=3 (s > 2k): V4 = -Gamma(1/4)Gamma(5/2)/(2^(3/2)Gamma(11/4))
        rep = lyapunov_constants(P(Fraction(5), 1, 3), 4)
        v4 = rep.constants[2]
        assert v4.exact == ExactVal.T(Fraction(-1, 7))
        with mpmath.workdps(40):
            want = -(mpmath.gamma(0.25) * mpmath.gamma(2.5)
                     / (2 ** 1.5 * mpmath.gamma(2.75)))
            assert abs(v4.value - float(want)) < 1e-12

    def test_V4_affine_in_m_vanishes_at_threshold(self):
        # V4(m) = m*T(5/21)... evaluate at three rationals and check
        # the exact affine root is 3/5
        vals = {}
        for m in (Fraction(0), Fraction(1), Fraction(3, 5)):
            rep = lyapunov_constants(P(m, 1, 2), 4)
            vals[m] = rep.constants[2].exact
        assert vals[Fraction(3, 5)].is_zero()
        # affine: V4(m) = V4(0) + m (V4(1) - V4(0)); root exactly 3/5
        a = vals[Fraction(1)] - vals[Fraction(0)]
        assert (vals[Fraction(0)] + Fraction(3, 5) * a).is_zero()

    def test_V10_at_threshold(self):
        rep = lyapunov_constants(P(Fraction(3, 5), 1, 2), 10)
        assert rep.first_nonzero == 10
        assert rep.verdict == "Repeller"
        for c in rep.constants[:-1]:
            assert c.exact.is_zero()
        assert rep.constants[-1].exact == ExactVal.W(Fraction(128, 1625))

    def test_u4_closed_form_pointwise(self):
        R = polar_rhs(P(Fraction(3, 5)), 10)
        u4 = R[4].antiderivative()
        from quintic import gentrig
        for th in [0.2, 0.7, 1.3, 2.9, 5.0]:
            tv = gentrig.eval(gentrig.TrigParams(1, 2), th)
            want = (6 * tv.sn * tv.cs ** 5 + 15 * tv.sn * tv.cs
                    + 5 * tv.sn ** 3 * tv.cs) / 35
            assert abs(u4.eval_numeric(th) - want) < 1e-10

    def test_shortcut_agrees_with_recursion(self):
        rep = lyapunov_constants(P(Fraction(3, 5)), 10)
        assert v10_shortcut(P(Fraction(3, 5))) == rep.constants[-1].exact

    def test_shortcut_guards(self):
        with pytest.raises(PrecisionLoss):
            v10_shortcut(P(Fraction(1, 2)))  # V4 != 0
        with pytest.raises(PrecisionLoss):
            v10_shortcut(P(Fraction(3, 5), 2, 4))

    def test_combined_s_eq_2k_closed_form(self):
        # V_4k = 2 pi^(3/2) (m (4k+1)!!!! - (2k+1)!!)/(Gamma(3/4)^2 (4k+3)!!!!)
        def qf(n):
            return n if 1 <= n <= 4 else n * qf(n - 4)

        def df(n):
            return 1 if n <= 1 else n * df(n - 2)

        with mpmath.workdps(40):
            for k in (1, 2, 3):
                m = Fraction(1, 7)
                rep = lyapunov_constants(P(m, k, 2 * k), 4 * k)
                got = rep.constants[4 * k - 2].value
                want = (2 * mpmath.pi ** 1.5
                        * (float(m) * qf(4 * k + 1) - df(2 * k + 1))
                        / (mpmath.gamma(0.75) ** 2 * qf(4 * k + 3)))
                assert abs(got - float(want)) < 1e-12, k


class TestThreshold:
    def test_values(self):
        assert threshold_m(1) == Fraction(3, 5)
        assert threshold_m(2) == Fraction(1, 3)
        assert threshold_m(3) == Fraction(7, 39)

    def test_matches_V4k_root(self):
        # the exact m where V_4k vanishes equals the factorial ratio
        for k in (1, 2, 3):
            mt = threshold_m(k)
            rep = lyapunov_constants(FamilyParams(mt, k, 2 * k), 4 * k)
            assert rep.constants[4 * k - 2].exact.is_zero()


class TestClassify:
    def test_grid(self):
        cases = [
            ((-1, 2, 1), "Attractor"),
            ((1, 2, 1), "Repeller"),
            ((5, 1, 3), "Attractor"),
            ((Fraction(1, 2), 1, 2), "Attractor"),
            ((Fraction(7, 10), 1, 2), "Repeller"),
            ((Fraction(3, 5), 1, 2), "Repeller"),
            ((Fraction(1, 3), 2, 4), "Undetermined"),
            ((0, 2, 1), "Undetermined"),
        ]
        for (m, k, s), want in cases:
            assert classify_origin(P(m, k, s)) == want, (m, k, s)

    def test_classify_agrees_with_constants(self):
        for m, k, s in [(Fraction(-1), 1, 1), (Fraction(1, 2), 1, 2),
                        (Fraction(3, 5), 1, 2), (Fraction(2), 1, 3),
                        (Fraction(1, 4), 2, 4)]:
            want = classify_origin(P(m, k, s))
            upto = 10 if (k, s) == (1, 2) else max(2 * s, 4 * k)
            rep = lyapunov_constants(P(m, k, s), upto)
            assert rep.verdict == want, (m, k, s)


class TestReturnMap:
    @pytest.mark.parametrize("m,k,s,sign", [
        (Fraction(3, 5), 1, 2, 1),
        (Fraction(-1), 1, 1, -1),
        (Fraction(1, 2), 1, 2, -1),
        (Fraction(7, 10), 1, 2, 1),
        (Fraction(2), 1, 3, -1),
        (Fraction(1, 5), 1, 1, 1),
    ])
    def test_sign_matches_first_constant(self, m, k, s, sign):
        d = return_map_displacement(P(m, k, s), 0.05)
        assert (d > 0) == (sign > 0)

    def test_many_samples(self):
        samples = [
            (Fraction(-2), 1, 1), (Fraction(1, 9), 1, 1),
            (Fraction(1, 2), 1, 2), (Fraction(2, 3), 1, 2),
            (Fraction(3), 1, 3), (Fraction(-1, 3), 1, 3),
            (Fraction(1, 4), 2, 4), (Fraction(1, 2), 2, 4),
            (Fraction(-1), 2, 1), (Fraction(1), 2, 1),
            (Fraction(1, 8), 3, 6), (Fraction(1), 3, 6),
        ]
        for m, k, s in samples:
            upto = max(2 * s, 4 * k)
            rep = lyapunov_constants(FamilyParams(m, k, s), upto)
            assert rep.first_nonzero is not None, (m, k, s)
            vs = rep.constants[rep.first_nonzero - 2].exact.sign()
            d = return_map_displacement(FamilyParams(m, k, s), 0.05)
            assert (d > 0) == (vs > 0), (m, k, s, d, vs)
