import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from replete import (CharacterConvention, ConventionError, IdelePresentation, TruncationError,
                     archimedean_idele, fourier_tables, gaussian_test_function, make_field,
                     preset, principal_ideal, self_dual_volume, tate_check, theta_lhs, theta_rhs,
                     unit_ideal, vol_B)
from replete.adelic import default_convention
from replete.enclosure import endpoints, ivprec, to_iv

from oracles import jacobi_theta

Q = preset("Q")
QI = preset("Qi")
Q2 = preset("Qsqrt:2")
PRESETS = [Q, QI, Q2, preset("Qsqrt:5"), preset("Qsqrt:-3"), make_field([-2, 0, 0, 1])]


def test_vol_b_examples():
    assert float(vol_B(Q).mid) == pytest.approx(2.0, rel=1e-15)
    assert float(vol_B(QI).mid) == pytest.approx(math.pi, rel=1e-15)
    assert float(vol_B(Q2).mid) == pytest.approx(math.sqrt(2), rel=1e-15)


@pytest.mark.parametrize("K", PRESETS, ids=lambda K: str(K.discriminant))
def test_vol_b_identity(K):
    from mpmath import iv

    with ivprec(200):
        lhs = vol_B(K, 200) * iv.sqrt(to_iv(K.abs_disc))
        rhs = iv.mpf(2) ** K.r * (2 * iv.pi) ** K.s
        a, b = endpoints(lhs)
        c, d = endpoints(rhs)
    assert a <= d and c <= b
    assert b - a < Fraction(1, 2**150)


def test_self_dual_volume_examples():
    assert self_dual_volume(Q, unit_ideal(Q)) == 1
    assert self_dual_volume(QI, unit_ideal(QI)) == pytest.approx(0.5)
    assert self_dual_volume(QI, principal_ideal(QI, 1 + QI.theta)) == pytest.approx(0.25)


def test_fourier_tables_real_examples():
    conv = CharacterConvention()
    assert conv.real_gaussian(1) == (1.0, 1.0)
    assert conv.real_gaussian(4) == (0.5, 0.25)
    assert conv.complex_gaussian(1) == (1.0, 1.0)
    assert conv.complex_gaussian(Fraction(1, 2)) == (2.0, 2.0)


def test_fourier_tables_validate():
    conv = fourier_tables()
    assert conv.validated


def test_fourier_tables_reject_wrong_convention():
    # pairing through the bare real part does not make the doubled measure self-dual
    class Mislabelled(CharacterConvention):
        def complex_gaussian(self, rate):
            return 1.0 / float(rate), 1.0 / float(rate)

    with pytest.raises(ConventionError):
        fourier_tables(Mislabelled(complex_pairing="real"), real_rates=(), complex_rates=(1,))


def test_complex_transform_against_independent_quadrature():
    # 2 * int exp(-2 pi l |z|^2) cos(4 pi Re(z w)) dx dy, done by iterated 1-d quad
    lam, w = 0.5, complex(0.4, -0.3)

    def inner(y):
        return integrate.quad(lambda x: math.exp(-2 * math.pi * lam * (x * x + y * y))
                              * math.cos(4 * math.pi * (x * w.real - y * w.imag)), -8, 8)[0]

    val = 2 * integrate.quad(inner, -8, 8)[0]
    scale, dual = default_convention().complex_gaussian(lam)
    assert val == pytest.approx(scale * math.exp(-2 * math.pi * dual * abs(w) ** 2), abs=1e-10)


def _f(K, b, lam):
    return gaussian_test_function(b, lam)


def test_theta_examples():
    f = _f(Q, unit_ideal(Q), 1)
    one = archimedean_idele(Q, [1])
    two = archimedean_idele(Q, [2])
    assert theta_lhs(Q, f, one).value == pytest.approx(1.0864348, abs=1e-7)
    assert theta_lhs(Q, f, two).value == pytest.approx(1.0000070, abs=1e-7)
    assert theta_rhs(Q, f, two).value == pytest.approx(1.0000070, abs=1e-7)
    assert theta_rhs(Q, f, one).value == pytest.approx(theta_lhs(Q, f, one).value, abs=1e-15)
    # direct series
    assert theta_lhs(Q, f, two).value == pytest.approx(jacobi_theta(4), abs=1e-14)
    assert theta_rhs(Q, f, two).value == pytest.approx(jacobi_theta(0.25) / 2, abs=1e-14)


def test_theta_gaussian_integers():
    y = archimedean_idele(QI, [1])
    # exp(-2 pi l |z|^2) summed over Z[i] is the square of the 1-d series at rate 2l
    half = theta_lhs(QI, _f(QI, unit_ideal(QI), Fraction(1, 2)), y).value
    assert half == pytest.approx(1.1803406, abs=1e-6)
    assert half == pytest.approx(jacobi_theta(1) ** 2, abs=1e-14)
    one = theta_lhs(QI, _f(QI, unit_ideal(QI), 1), y).value
    assert one == pytest.approx(jacobi_theta(2) ** 2, abs=1e-14)
    b = principal_ideal(QI, 1 + QI.theta)
    f = _f(QI, b, 1)
    assert theta_lhs(QI, f, y).value == pytest.approx(theta_rhs(QI, f, y).value, abs=1e-8)


def test_tail_bound_is_rigorous():
    f = _f(Q, unit_ideal(Q), Fraction(1, 20))
    y = archimedean_idele(Q, [1])
    s = theta_lhs(Q, f, y, trunc_radius=3)
    exact = jacobi_theta(Fraction(1, 20), terms=400)
    assert s.value <= exact
    assert exact - s.value <= s.tail
    assert s.points == 7


def test_truncation_error():
    f = _f(Q, unit_ideal(Q), 1)
    y = archimedean_idele(Q, [1])
    with pytest.raises(TruncationError):
        theta_lhs(Q, f, y, trunc_radius=0.5, tol=1e-9)
    with pytest.raises(TruncationError):
        tate_check(Q, f, y, trunc_radius=1, tol=1e-9)
    with pytest.raises(ValueError):
        theta_lhs(Q, f, y, trunc_radius=0)


@pytest.mark.parametrize("y", [Fraction(1, 2), 1, 2, 5])
def test_tate_rationals(y):
    rep = tate_check(Q, _f(Q, unit_ideal(Q), 1), archimedean_idele(Q, [y]), 10, 1e-9)
    assert rep.passed and rep.diff <= 1e-9


@pytest.mark.parametrize("K,b,lam,y,fin", [
    (QI, "O", 1, [1], None),
    (QI, "1+t", 1, [1], None),
    (QI, "1+t", Fraction(1, 3), [Fraction(3, 2)], "2+t"),
    (Q2, "O", 1, [2, Fraction(1, 2)], None),
    (Q2, "t", [1, Fraction(1, 2)], [Fraction(3, 2), 1], "3"),
    (preset("Qsqrt:5"), "O", 2, [1, 1], "t"),
    (make_field([-2, 0, 0, 1]), "1+t", [1, Fraction(1, 3)], [2, Fraction(1, 2)], "t+3"),
    (make_field([1, -2, -1, 1]), "O", 1, [1, 2, Fraction(1, 2)], None),
])
def test_tate_general(K, b, lam, y, fin):
    def elem(s):
        return eval(s, {"t": K.theta, "O": K.one})  # noqa: S307 - literal test table

    ideal = unit_ideal(K) if b == "O" else principal_ideal(K, elem(b))
    finite = () if fin is None else ((elem(fin), 1),)
    x = IdelePresentation(K, finite, tuple(y))
    rep = tate_check(K, gaussian_test_function(ideal, lam), x, 10, 1e-8)
    assert rep.passed, rep


def test_theta_invariance_under_principal_multiplication():
    # sum_alpha f(alpha * gamma * y) does not depend on gamma in K^*
    for K, gammas in [(Q, [Q.rational(3), Q.rational(Fraction(-2, 5))]),
                      (QI, [QI.theta, 1 + QI.theta, 2 - QI.theta])]:
        f = gaussian_test_function(unit_ideal(K), Fraction(1, 3))
        y = archimedean_idele(K, [Fraction(3, 2)])
        base = theta_lhs(K, f, y).value
        for g in gammas:
            gy = y.mul_principal(g)
            assert theta_lhs(K, f, gy).value == pytest.approx(base, abs=1e-12)
            assert gy.norm() == y.norm()


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8),
       st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=6))
def test_tate_random_quadratic(lam, y0):
    rep = tate_check(Q2, gaussian_test_function(unit_ideal(Q2), lam),
                     archimedean_idele(Q2, [y0, 1 / y0]), 10, 1e-8)
    assert rep.passed


def test_schwartz_validation():
    with pytest.raises(ValueError):
        gaussian_test_function(unit_ideal(Q2), [1])
    with pytest.raises(ValueError):
        gaussian_test_function(unit_ideal(Q), [0])
