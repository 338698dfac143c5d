from fractions import Fraction as F

import pytest

from rikit.acontinuity import (
    ac_order_checks,
    ac_simulate,
    ac_two_limit_test,
    custom_family,
    head_family,
    marcinkiewicz_ac_classify,
    tail_family,
)
from rikit.errors import ValidationError
from rikit.functions import (
    Atomic,
    DecreasingProfile,
    NonAtomic,
    PowerPiece,
    Tail,
    steps_profile,
)
from rikit.intervals import Interval, IntervalSet
from rikit.samples import shrink_families, rng_for
from rikit.scalars import Scalar
from rikit.spaces import (
    identity_phi,
    intersection_space,
    linf_space,
    lp_space,
    phi_from_power,
    reciprocal_profile,
    weak_space,
)

BASE = NonAtomic(None)

MIN_ONE_OVER_T = DecreasingProfile(
    (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1)), F(0)),),
    Tail.power(F(1), F(-1), F(0)),
)


def test_families_shrink_as_documented():
    assert head_family().member(4).parts[0] == Interval(F(0), F(1, 4))
    assert tail_family().member(4).parts[0] == Interval(F(4), None)
    fam = custom_family(
        (IntervalSet.of(Interval(F(0), F(1))), IntervalSet.of(Interval(F(0), F(1, 2))))
    )
    assert fam.length == 2
    assert fam.member(2).measure().as_fraction() == F(1, 2)


def test_custom_family_must_vanish():
    stuck = (IntervalSet.of(Interval(F(20), F(21))),) * 3
    with pytest.raises(ValidationError):
        custom_family(stuck)


def test_two_limit_oracle_cases():
    chi = steps_profile([(F(1), F(1))])
    assert ac_two_limit_test(lp_space(F(1), BASE), chi).describe() == "AC"
    v = ac_two_limit_test(linf_space(BASE), steps_profile([(F(2), F(1))]))
    assert v.describe() == "notAC (head limit = 2)"
    mt = weak_space(identity_phi(), BASE)
    assert ac_two_limit_test(mt, MIN_ONE_OVER_T).describe() == "notAC (tail limit = 1)"


def test_finite_base_kills_the_tail_limit():
    flat = DecreasingProfile((), Tail.constant(F(1)))
    verdict = ac_two_limit_test(lp_space(F(1), NonAtomic(F(1))), flat)
    assert verdict.tail_limit.is_zero()
    assert verdict.ac


def test_two_limit_on_atoms():
    desc = intersection_space(Atomic(F(1), None))
    chi = steps_profile([(F(3), F(2))])
    # cell averaging tames the sup near zero, so steps are AC on atoms
    assert ac_two_limit_test(desc, chi).ac
    slow = ac_two_limit_test(desc, MIN_ONE_OVER_T)
    assert not slow.ac
    assert slow.failing_side == "tail"
    assert slow.limit.is_inf


def test_simulation_rows_track_exactness():
    q = DecreasingProfile(
        (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1)), F(-1, 4)),),
        Tail.zero(),
    )
    rows = ac_simulate(lp_space(F(1), BASE), q, head_family(), 16)
    assert [r.k for r in rows] == [1, 2, 4, 8, 16]
    assert rows[0].norm.as_fraction() == F(4, 3)
    # 16^(-3/4) is rational, so the k = 16 row is exact again
    assert rows[-1].norm.as_fraction() == F(1, 6)
    assert not rows[1].norm.is_exact


def test_simulation_walks_custom_families():
    fams = shrink_families(rng_for(11), count=3, depth=6)
    q = steps_profile([(F(2), F(4))])
    for fam in fams:
        rows = ac_simulate(lp_space(F(1), BASE), q, fam, 10**9)
        assert len(rows) == fam.length
        assert rows[-1].norm <= rows[0].norm


def test_simulation_agrees_with_failing_limit():
    mt = weak_space(identity_phi(), BASE)
    verdict = ac_two_limit_test(mt, MIN_ONE_OVER_T)
    rows = ac_simulate(mt, MIN_ONE_OVER_T, tail_family(), 64)
    for row in rows:
        assert row.norm.as_float() >= verdict.tail_limit.as_float() - 1e-9


def test_weak_classification_of_reciprocal_witnesses():
    for phi in (identity_phi(), phi_from_power(F(2), F(1)), phi_from_power(F(1), F(1, 2))):
        cls = marcinkiewicz_ac_classify(phi, reciprocal_profile(phi))
        assert cls.member
        assert not cls.ac
        assert cls.norm.as_fraction() == F(1)


def test_weak_classification_vanishing_member():
    cls = marcinkiewicz_ac_classify(
        phi_from_power(F(1), F(1, 2)),
        DecreasingProfile(
            (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1)), F(-1, 4)),),
            Tail.zero(),
        ),
    )
    assert cls.member and cls.ac
    assert cls.limit_at_zero.is_zero() and cls.limit_at_inf.is_zero()


def test_weak_classification_non_member():
    # profile decaying slower than 1/phi: phi * p grows without bound
    cls = marcinkiewicz_ac_classify(
        identity_phi(),
        DecreasingProfile((), Tail.power(F(1), F(-1, 2), F(1))),
    )
    assert not cls.member
    assert not cls.ac


def test_order_checks_applicable_for_l1():
    f = steps_profile([(F(1), F(1))])
    g = steps_profile([(F(2), F(1))])
    report = ac_order_checks(lp_space(F(1), BASE), f, g)
    assert report.clean
    by_name = {e.relation: e for e in report.entries}
    assert by_name["pointwise"].applicable and by_name["pointwise"].order_holds
    assert by_name["partial_integral"].applicable


def test_order_checks_skip_partial_integral_for_weak_spaces():
    mt = weak_space(identity_phi(), BASE)
    f = steps_profile([(F(1), F(1))])
    g = steps_profile([(F(2), F(1))])
    report = ac_order_checks(mt, f, g)
    entry = {e.relation: e for e in report.entries}["partial_integral"]
    assert not entry.applicable
    assert "falsified" in entry.reason
