from fractions import Fraction as F

import pytest

from rikit.errors import ValidationError
from rikit.intervals import Interval, IntervalSet, measure_inverse


def test_interval_validation():
    with pytest.raises(ValidationError):
        Interval(F(2), F(1))
    with pytest.raises(ValidationError):
        Interval(F(-1), F(1))
    with pytest.raises(ValidationError):
        Interval(F(1), F(1))


def test_interval_intersect():
    a = Interval(F(0), F(2))
    assert a.intersect(Interval(F(1), F(3))) == Interval(F(1), F(2))
    assert a.intersect(Interval(F(2), F(3))) is None
    unbounded = Interval(F(1), None)
    assert unbounded.intersect(a) == Interval(F(1), F(2))


def test_set_measure():
    E = IntervalSet.of(Interval(F(1), F(2)), Interval(F(3), F(5)))
    assert E.measure().as_fraction() == F(3)
    assert IntervalSet.of(Interval(F(2), None)).measure().is_inf
    assert IntervalSet.of().measure().is_zero()


def test_measure_upto():
    E = IntervalSet.of(Interval(F(1), F(2)), Interval(F(3), F(5)))
    assert E.measure_upto(F(0)) == F(0)
    assert E.measure_upto(F(3, 2)) == F(1, 2)
    assert E.measure_upto(F(4)) == F(2)
    assert E.measure_upto(F(100)) == F(3)


def test_measure_inverse_walks_the_parts():
    E = IntervalSet.of(Interval(F(1), F(2)), Interval(F(3), F(5)))
    # half a unit of mass is reached inside the first part
    assert measure_inverse(E, F(1, 2)).as_fraction() == F(3, 2)
    # 3/2 units: one from the first part, half a unit into the second
    assert measure_inverse(E, F(3, 2)).as_fraction() == F(7, 2)
