from fractions import Fraction as F

import pytest

from rikit.errors import UnsupportedOperationError
from rikit.functions import (
    Atomic,
    DecreasingProfile,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
    steps_profile,
)
from rikit.intervals import Interval
from rikit.represent import (
    RepresentationSpec,
    atomic_transfer,
    bar_norm,
    nonatomic_transfer,
    representation_identity_check,
    transfer_partial_integral_check,
)
from rikit.scalars import Scalar
from rikit.spaces import intersection_space, lp_space, sum_space


def test_atomic_transfer_averages_cells():
    p = steps_profile([(F(1), F(3, 4))])
    seq = atomic_transfer(p, F(1, 2))
    assert [v.as_fraction() for v in seq.values] == [F(1), F(1, 2)]
    assert seq.tail.is_zero()
    assert seq.entry(0).as_fraction() == F(1)
    assert seq.entry(7).is_zero()


def test_atomic_transfer_blowup_lands_in_cell_zero():
    p = DecreasingProfile(
        (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1)), F(-1)),),
        Tail.zero(),
    )
    seq = atomic_transfer(p, F(1))
    assert seq.entry(0).is_inf


def test_atomic_transfer_unsettled_tail_needs_a_limit():
    p = DecreasingProfile((), Tail.power(F(1), F(-2), F(1)))
    with pytest.raises(UnsupportedOperationError):
        atomic_transfer(p, F(1))
    seq = atomic_transfer(p, F(1), n_limit=4)
    # cell n holds 1/(n+1) - 1/(n+2)
    assert seq.entry(0).as_fraction() == F(1, 2)
    assert seq.entry(3).as_fraction() == F(1, 4) - F(1, 5)


def test_nonatomic_transfer_restricts_the_head():
    p = steps_profile([(F(2), F(3))])
    q = nonatomic_transfer(p, F(1))
    assert q.value_at(F(1, 2)).as_fraction() == F(2)
    assert q.integral(Interval(F(0), None)).as_fraction() == F(2)
    untouched = nonatomic_transfer(p, None)
    assert untouched.integral(Interval(F(0), None)).as_fraction() == F(6)


def test_bar_norm_matches_counting_sums():
    desc = lp_space(F(1), Atomic(F(1, 2), None))
    p = steps_profile([(F(1), F(3, 4))])
    assert bar_norm(RepresentationSpec(desc), p).as_fraction() == F(3, 4)
    sup = lp_space(None, Atomic(F(1, 2), None))
    assert bar_norm(RepresentationSpec(sup), p).as_fraction() == F(1)


def test_identity_check_on_atoms():
    space = Atomic(F(1, 2), None)
    f = StepFunction(space, ((Interval(F(1), F(2)), F(3)), (Interval(F(3), F(7, 2)), F(1))))
    for desc in (lp_space(F(1), space), lp_space(F(2), space),
                 sum_space(space), intersection_space(space)):
        check = representation_identity_check(desc, f)
        assert check.equal, desc.label()
    assert representation_identity_check(lp_space(F(1), space), f).exact
    assert representation_identity_check(lp_space(F(1), space), f).lhs.as_fraction() == F(7, 2)


def test_identity_check_on_nonatomic_total_one():
    space = NonAtomic(F(1))
    f = StepFunction(space, ((Interval(F(0), F(1, 2)), F(2)),))
    check = representation_identity_check(intersection_space(space), f)
    assert check.equal and check.exact
    assert check.lhs.as_fraction() == F(3)


def test_transfer_partial_integrals_exact_on_rational_profile():
    # partial integrals of (t+1)^(-2) are rational at every rational point
    p = DecreasingProfile((), Tail.power(F(1), F(-2), F(1)))
    for beta in (F(1, 2), F(1), F(2)):
        report = transfer_partial_integral_check(p, beta, 8)
        assert report.all_equal()


def test_transfer_midpoint_interpolation_on_steps():
    p = steps_profile([(F(3), F(1)), (F(1), F(2))])
    report = transfer_partial_integral_check(p, F(1, 2), 6)
    assert report.all_equal()
    assert any(row.interpolated for row in report.rows)
