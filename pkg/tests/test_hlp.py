from fractions import Fraction as F

import pytest

from rikit.errors import NonIntegrableHeadError, UnsupportedOperationError
from rikit.functions import (
    DecreasingProfile,
    NonAtomic,
    PowerPiece,
    Tail,
    steps_profile,
)
from rikit.hlp import embedding_check, hlp_compare, hlp_principle_probe
from rikit.intervals import Interval
from rikit.scalars import Scalar
from rikit.spaces import identity_phi, lp_space, weak_space

BASE = NonAtomic(None)

INDICATOR = steps_profile([(F(1), F(1))])
HALF_SQRT = DecreasingProfile(
    (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1, 2)), F(-1, 2)),),
    Tail.zero(),
)


def test_designed_pair_is_majorized():
    # primitives t <= sqrt(t) on (0, 1], equal from 1 on
    verdict = hlp_compare(INDICATOR, HALF_SQRT)
    assert verdict.majorized
    assert verdict.witness is None


def test_reversed_pair_finds_an_interior_witness():
    verdict = hlp_compare(HALF_SQRT, INDICATOR)
    assert not verdict.majorized
    assert verdict.witness == F(1, 4)
    assert verdict.f_primitive.as_fraction() == F(1, 2)
    assert verdict.g_primitive.as_fraction() == F(1, 4)


def test_breakpoint_witness():
    f = steps_profile([(F(2), F(1))])
    g = steps_profile([(F(1), F(3))])
    verdict = hlp_compare(f, g)
    assert not verdict.majorized
    assert verdict.witness == F(1)
    assert verdict.f_primitive.as_fraction() == F(2)
    assert verdict.g_primitive.as_fraction() == F(1)


def test_scaling_majorizes():
    f = steps_profile([(F(1), F(2))])
    g = steps_profile([(F(3, 2), F(2))])
    assert hlp_compare(f, g).majorized


def test_finite_mass_sits_below_a_big_step():
    f = DecreasingProfile((), Tail.power(F(1), F(-2), F(1)))
    g = steps_profile([(F(10), F(1))])
    # f carries total mass 1, so its primitive never reaches g's
    assert hlp_compare(f, g).majorized
    back = hlp_compare(g, f)
    assert not back.majorized
    assert back.witness == F(1)


def test_unbounded_tail_mass_defeats_a_finite_lead():
    slow = DecreasingProfile((), Tail.power(F(1), F(-1, 2), F(1)))
    g = steps_profile([(F(10), F(1))])
    # the primitive of slow passes 10 near t = 35; the doubling search
    # must find a witness out there
    verdict = hlp_compare(slow, g)
    assert not verdict.majorized
    assert verdict.witness is not None and verdict.witness > 35
    assert verdict.f_primitive.as_float() > verdict.g_primitive.as_float()


def test_equal_profiles_majorize_both_ways():
    assert hlp_compare(HALF_SQRT, HALF_SQRT).majorized
    assert hlp_compare(INDICATOR, INDICATOR).majorized


def test_different_shift_crossings_are_refused():
    a = DecreasingProfile(
        (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1)), F(-1, 2), F(1, 2)),),
        Tail.zero(),
    )
    b = DecreasingProfile(
        (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(2, 3)), F(-1, 3), F(1, 4)),),
        Tail.zero(),
    )
    with pytest.raises(UnsupportedOperationError):
        hlp_compare(a, b)


def test_divergent_head_is_rejected_by_default():
    hyper = DecreasingProfile(
        (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1)), F(-1)),),
        Tail.zero(),
    )
    with pytest.raises(NonIntegrableHeadError):
        hlp_compare(hyper, INDICATOR)
    # an infinite primitive dominates everything once allowed
    assert hlp_compare(INDICATOR, hyper, divergent_majorizes=True).majorized
    verdict = hlp_compare(hyper, INDICATOR, divergent_majorizes=True)
    assert not verdict.majorized
    assert verdict.f_primitive.is_inf


def test_principle_probe_reports_the_weak_space_reversal():
    mt = weak_space(identity_phi(), BASE)
    report = hlp_principle_probe(mt, [(INDICATOR, HALF_SQRT)])
    assert not report.holds
    assert "norm 1 > 1/2" in report.describe()
    clean = hlp_principle_probe(lp_space(F(1), BASE), [(INDICATOR, HALF_SQRT)])
    assert clean.holds
    assert "no violation" in clean.describe()


def test_embedding_check_flags_infinite_sum_norm():
    mt = weak_space(identity_phi(), BASE)
    hyper_both = DecreasingProfile(
        (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1)), F(-1)),),
        Tail.power(F(1), F(-1), F(0)),
    )
    report = embedding_check(mt, [hyper_both])
    assert not report.holds
    assert report.failures[0].side == "out_of"


def test_embedding_constants_for_l1():
    desc = lp_space(F(1), BASE)
    report = embedding_check(desc, [INDICATOR, steps_profile([(F(2), F(3))])])
    assert report.holds
    # chi: norms (cap, L1, sum) = (2, 1, 1); the tall step: (8, 6, 2)
    assert report.lower_constant.as_fraction() == F(3, 4)
    assert report.upper_constant.as_fraction() == F(1)
