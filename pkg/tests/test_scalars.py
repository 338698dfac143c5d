from fractions import Fraction as F

import pytest

from rikit.errors import UndefinedOperationError, ZeroTimesInfinityError
from rikit.scalars import (
    INF,
    ONE,
    REL_TOL,
    ZERO,
    Scalar,
    as_fraction,
    compare_powers,
    power_value,
    rational_pow,
    scalar_max,
)


def test_as_fraction_accepts_ints_and_strings():
    assert as_fraction(3) == F(3)
    assert as_fraction("5/4") == F(5, 4)
    assert as_fraction(F(1, 3)) == F(1, 3)


def test_rational_pow_exact_roots():
    assert rational_pow(F(4), F(1, 2)) == F(2)
    assert rational_pow(F(27), F(2, 3)) == F(9)
    assert rational_pow(F(1, 16), F(3, 4)) == F(1, 8)
    assert rational_pow(F(8), F(-1, 3)) == F(1, 2)


def test_rational_pow_reports_irrational():
    assert rational_pow(F(2), F(1, 2)) is None
    assert rational_pow(F(3, 5), F(1, 3)) is None


def test_compare_powers_exact_sign():
    # 2 * 4^(1/2) = 4
    assert compare_powers(F(2), F(4), F(1, 2), F(4), F(1), F(0)) == 0
    # (1/3) * 27^(2/3) = 3
    assert compare_powers(F(1, 3), F(27), F(2, 3), F(3), F(1), F(0)) == 0
    # 5 * (1/2)^(-2/3) = 5 * 2^(2/3) < 8, a one-ulp-scale gap floats mishandle
    assert compare_powers(F(5), F(1, 2), F(-2, 3), F(8), F(1), F(0)) == -1
    assert compare_powers(F(3), F(3), F(1, 2), F(5), F(1), F(0)) == 1


def test_exact_arithmetic_stays_exact():
    a = Scalar.exact(F(3, 4))
    assert (a * a).as_fraction() == F(9, 16)
    assert (a + a).as_fraction() == F(3, 2)
    assert (a - Scalar.exact(F(1, 4))).as_fraction() == F(1, 2)
    assert (a / Scalar.exact(F(3))).as_fraction() == F(1, 4)
    assert a.pow(F(2)).as_fraction() == F(9, 16)


def test_mixing_with_approx_poisons_exactness():
    a = Scalar.exact(F(3, 4))
    b = Scalar.approx(0.5)
    assert not (a + b).is_exact
    assert not (a * b).is_exact


def test_exact_pow_falls_back_to_float():
    r = Scalar.exact(F(3, 4)).pow(F(1, 2))
    assert not r.is_exact
    assert r.as_float() == pytest.approx(0.75**0.5)
    # a perfect power stays exact
    assert Scalar.exact(F(4)).pow(F(1, 2)).as_fraction() == F(2)


def test_infinity_propagates():
    assert (INF + ONE).is_inf
    assert (INF * Scalar.exact(F(2))).is_inf
    assert (ONE / INF).is_zero()
    assert INF > Scalar.exact(F(10**9))


def test_zero_times_infinity_is_refused():
    with pytest.raises(ZeroTimesInfinityError):
        ZERO * INF
    with pytest.raises((ZeroTimesInfinityError, UndefinedOperationError)):
        INF / INF


def test_close_to_uses_relative_tolerance():
    one = Scalar.exact(F(1))
    assert one.close_to(Scalar.approx(1 + REL_TOL / 2))
    assert not one.close_to(Scalar.approx(1 + 5 * REL_TOL))
    assert INF.close_to(INF)
    assert not INF.close_to(one)


def test_scalar_max_and_power_value():
    vals = [Scalar.exact(F(1, 2)), Scalar.exact(F(5, 4)), Scalar.exact(F(1))]
    assert scalar_max(vals).as_fraction() == F(5, 4)
    assert power_value(Scalar.exact(F(2)), F(4), F(1, 2)).as_fraction() == F(4)
