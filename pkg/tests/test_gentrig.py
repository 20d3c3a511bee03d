import math
from fractions import Fraction

import mpmath
import pytest

from quintic.errors import OutOfScope
from quintic.exactval import ExactVal, moment_exact
from quintic import gentrig
from quintic.gentrig import TrigParams, antiderivative_q2, moment, period


P12 = TrigParams(1, 2)


class TestPeriod:
    def test_classical_case_is_2pi(self):
        with mpmath.workdps(50):
            assert abs(period(TrigParams(1, 1)) - 2 * mpmath.pi) < mpmath.mpf("1e-40")

    def test_q2_gamma_form(self):
        with mpmath.workdps(50):
            want = (2 * 2 ** mpmath.mpf(-0.5) * mpmath.gamma(0.5)
                    * mpmath.gamma(0.25) / mpmath.gamma(0.75))
            assert abs(period(P12) - want) < mpmath.mpf("1e-40")

    def test_matches_exactval_T(self):
        with mpmath.workdps(50):
            assert abs(period(P12) - ExactVal.T(1).numeric()) < mpmath.mpf("1e-40")

    def test_ode_return_time_agrees(self):
        assert abs(gentrig.period_ode(P12) - float(period(P12))) < 1e-12

    def test_ode_return_time_q3(self):
        p13 = TrigParams(1, 3)
        assert abs(gentrig.period_ode(p13) - float(period(p13))) < 1e-11


class TestEval:
    def test_initial_condition(self):
        tv = gentrig.eval(P12, 0.0)
        assert tv.cs == 1.0 and tv.sn == 0.0

    def test_full_period(self):
        T = float(period(P12))
        tv = gentrig.eval(P12, T)
        assert abs(tv.cs - 1.0) < 1e-10 and abs(tv.sn) < 1e-10

    def test_half_period(self):
        T = float(period(P12))
        tv = gentrig.eval(P12, T / 2)
        assert abs(tv.cs + 1.0) < 1e-10 and abs(tv.sn) < 1e-10

    def test_energy_invariant(self):
        T = float(period(P12))
        worst = 0.0
        for k in range(1000):
            tv = gentrig.eval(P12, 3 * T * k / 1000.0)
            worst = max(worst, tv.energy_defect(P12))
        assert worst < 1e-11

    def test_periodicity(self):
        T = float(period(P12))
        for th in [0.13, 0.9, 1.7, 2.4]:
            a = gentrig.eval(P12, th)
            b = gentrig.eval(P12, th + T)
            assert abs(a.cs - b.cs) + abs(a.sn - b.sn) < 1e-9

    def test_derivative_of_cs_is_minus_sn(self):
        h = 1e-6
        up = gentrig.eval(P12, 0.7 + h)
        dn = gentrig.eval(P12, 0.7 - h)
        mid = gentrig.eval(P12, 0.7)
        assert abs((up.cs - dn.cs) / (2 * h) + mid.sn) < 1e-8
        assert abs((up.sn - dn.sn) / (2 * h) - mid.cs ** 3) < 1e-8

    def test_general_weights_energy(self):
        p23 = TrigParams(2, 3)
        tv = gentrig.eval(p23, 0.41)
        assert tv.energy_defect(p23) < 1e-11


class TestMoment:
    def test_odd_is_exact_zero(self):
        res = moment(P12, 1, 3)
        assert res.value == 0 and res.exact.is_zero()
        assert moment(P12, 2, 5).value == 0
        assert moment(P12, 3, 2).value == 0

    def test_cs8_moment(self):
        res = moment(P12, 0, 8)
        assert res.exact == ExactVal.T(Fraction(5, 21))
        with mpmath.workdps(50):
            assert abs(res.value - period(P12) * 5 / 21) < mpmath.mpf("1e-40")

    def test_sn4_moment(self):
        res = moment(P12, 4, 0)
        assert res.exact == ExactVal.T(Fraction(1, 7))

    def test_rejects_p_not_1(self):
        with pytest.raises(OutOfScope):
            moment(TrigParams(2, 2), 0, 0)

    def test_exact_matches_numeric(self):
        with mpmath.workdps(50):
            for i in range(0, 10, 2):
                for j in range(0, 12, 2):
                    res = moment(P12, i, j)
                    assert abs(res.exact.numeric() - res.value) < mpmath.mpf("1e-40")

    def test_closed_form_vs_quadrature(self):
        for i in range(0, 17, 2):
            for j in range(0, 17 - i, 2):
                res = moment(P12, i, j)
                quad = gentrig.moment_quadrature(P12, i, j)
                assert abs(float(res.value) - quad) < 1e-9, (i, j)

    def test_quadrature_q3(self):
        p13 = TrigParams(1, 3)
        res = moment(p13, 2, 4)
        quad = gentrig.moment_quadrature(p13, 2, 4)
        assert abs(float(res.value) - quad) < 1e-9
        assert res.exact is None


class TestAntiderivatives:
    def test_cs8_at_zero(self):
        assert antiderivative_q2("Cs8", 0.0) == 0.0

    def test_sn4_at_period(self):
        T = float(period(P12))
        assert abs(antiderivative_q2("Sn4", T) - T / 7) < 1e-10

    def test_cs8_at_period(self):
        T = float(period(P12))
        assert abs(antiderivative_q2("Cs8", T) - 5 * T / 21) < 1e-10

    def test_cs8_derivative(self):
        h = 1e-5
        d = (antiderivative_q2("Cs8", 0.3 + h)
             - antiderivative_q2("Cs8", 0.3 - h)) / (2 * h)
        cs = gentrig.eval(P12, 0.3).cs
        assert abs(d - cs ** 8) < 1e-9

    def test_sn4_derivative(self):
        h = 1e-5
        for th in [0.3, 1.1, 2.0]:
            d = (antiderivative_q2("Sn4", th + h)
                 - antiderivative_q2("Sn4", th - h)) / (2 * h)
            sn = gentrig.eval(P12, th).sn
            assert abs(d - sn ** 4) < 1e-8

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            antiderivative_q2("Cs4", 0.1)


class TestExactValAlgebra:
    def test_tw_is_2pi(self):
        assert (ExactVal.T() * ExactVal.W()).terms == {(0, 0, 1): Fraction(2)}

    def test_moment_table_values(self):
        assert moment_exact(0, 0) == ExactVal.T(1)
        assert moment_exact(0, 2) == ExactVal.W(4)
        assert moment_exact(0, 4) == ExactVal.T(Fraction(1, 3))
        # energy relation: Cs^4 + 2 Sn^2 = 1, so the Sn^2 moment is
        # (T - T/3)/2 = T/3
        assert moment_exact(2, 0) == ExactVal.T(Fraction(1, 3))

    def test_structural_zero_sign(self):
        v = ExactVal.T(Fraction(2, 3)) - ExactVal.T(Fraction(2, 3))
        assert v.sign() == 0 and v.is_zero()

    def test_mixed_sign(self):
        # T ~ 3.7, W ~ 0.847
        assert (ExactVal.T(1) - ExactVal.W(4)).sign() == 1
        assert (ExactVal.W(1) - ExactVal.T(1)).sign() == -1
