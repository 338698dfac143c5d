from fractions import Fraction as F

import pytest

from rikit.errors import ValidationError
from rikit.functions import (
    Atomic,
    DecreasingProfile,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
    steps_profile,
)
from rikit.intervals import Interval, IntervalSet
from rikit.rearrange import (
    distribution,
    equimeasurable,
    hl_gap,
    maximal_eval,
    rearrange_restricted,
    rearrangement,
    step_add_rearranged,
    tail_limit,
)
from rikit.scalars import Scalar

SPACE = NonAtomic(None)


def step(pairs, space=SPACE):
    return StepFunction(space, tuple((Interval(F(a), F(b)), F(v)) for a, b, v in pairs))


def test_distribution_bands():
    f = step([(0, 1, 3), (2, 4, 1)])
    d = distribution(f)
    assert d.value_at(F(0)).as_fraction() == F(3)
    assert d.value_at(F(1, 2)).as_fraction() == F(3)
    assert d.value_at(F(2)).as_fraction() == F(1)
    assert d.value_at(F(3)).is_zero()


def test_rearrangement_sorts_level_sets():
    f = step([(0, 1, 3), (2, 4, 1)])
    r = rearrangement(f)
    assert r.value_at(F(1, 2)).as_fraction() == F(3)
    assert r.value_at(F(2)).as_fraction() == F(1)
    assert r.value_at(F(3)).is_zero()
    assert r.tail_start() == F(3)


def test_rearrangement_on_atoms_counts_cells():
    space = Atomic(F(1, 2), None)
    f = StepFunction(space, ((Interval(F(1), F(2)), F(5)), (Interval(F(3), F(7, 2)), F(7))))
    r = rearrangement(f)
    # one cell of value 7, then two cells of value 5, in cell-width steps
    assert r.value_at(F(1, 4)).as_fraction() == F(7)
    assert r.value_at(F(1)).as_fraction() == F(5)
    assert r.value_at(F(3, 2)).is_zero()


def test_equimeasurable_ignores_position():
    assert equimeasurable(step([(0, 1, 2)]), step([(5, 6, 2)]))
    assert not equimeasurable(step([(0, 1, 2)]), step([(0, 2, 2)]))


def test_maximal_function_of_indicator():
    p = steps_profile([(F(1), F(1))])
    assert maximal_eval(p, F(1, 2)).as_fraction() == F(1)
    assert maximal_eval(p, F(2)).as_fraction() == F(1, 2)
    with pytest.raises(ValidationError):
        maximal_eval(p, F(0))


def test_hl_gap_disjoint_supports():
    f = step([(0, 1, 1)])
    g = step([(1, 2, 1)])
    lhs, rhs = hl_gap(f, g)
    assert lhs.is_zero()
    assert rhs.as_fraction() == F(1)


def test_hl_gap_aligned_equality():
    f = step([(0, 1, 3), (1, 2, 1)])
    g = step([(0, 1, 2), (1, 2, 1)])
    lhs, rhs = hl_gap(f, g)
    assert lhs.as_fraction() == rhs.as_fraction() == F(7)


def test_hl_gap_needs_common_space():
    f = step([(0, 1, 1)])
    g = step([(0, 1, 1)], space=NonAtomic(F(4)))
    with pytest.raises(ValidationError):
        hl_gap(f, g)


def test_step_add_rearranged():
    f = step([(0, 1, 1)])
    g = step([(1, 2, 2)])
    r = step_add_rearranged(f, g)
    assert r.value_at(F(1, 2)).as_fraction() == F(2)
    assert r.value_at(F(3, 2)).as_fraction() == F(1)


def test_rearrange_restricted_window():
    p = steps_profile([(F(1), F(1))])
    q = rearrange_restricted(p, IntervalSet.of(Interval(F(1, 2), F(3, 2))))
    assert q.value_at(F(1, 4)).as_fraction() == F(1)
    assert q.value_at(F(3, 4)).is_zero()


def test_rearrange_restricted_shifts_the_tail():
    p = DecreasingProfile((), Tail.power(F(1), F(-2), F(1)))
    q = rearrange_restricted(p, IntervalSet.of(Interval(F(3), F(5))))
    # on [3, 5) the profile runs from (3+1)^-2 down; restriction starts there
    assert q.value_at(F(0)).as_fraction() == F(1, 16)
    assert q.value_at(F(3)).is_zero()


def test_tail_limit():
    assert tail_limit(steps_profile([(F(1), F(1))])).is_zero()
    assert tail_limit(DecreasingProfile((), Tail.constant(F(2)))).as_fraction() == F(2)
    assert tail_limit(DecreasingProfile((), Tail.power(F(1), F(-1), F(0)))).is_zero()
