"""Absolute-continuity analysis of quasinorms.

A profile has an absolutely continuous quasinorm when its norm over a
vanishing sequence of sets goes to zero.  Over the half line this
reduces to two symbolic limits: the norm of the head restriction as
the head shrinks, and the norm of the left-shifted profile as the
shift grows.  Both are decided by exponent comparison on the first
atom and on the tail, so the classifier is total over the supported
grammar; the simulation harness realizes the same sequences
numerically through the representation norm.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    NonIntegrableHeadError,
    UnsupportedOperationError,
    ValidationError,
)
from .functions import Atomic, DecreasingProfile, Tail, pointwise_le, space_bound
from .hlp import hlp_compare
from .intervals import Interval, IntervalSet
from .rearrange import rearrange_restricted, tail_limit
from .represent import RepresentationSpec, bar_norm
from .scalars import INF, Scalar, ZERO
from .spaces import (
    FundamentalFn,
    L1_CAP_LINF,
    L1_PLUS_LINF,
    LP,
    SpaceDescriptor,
    WEAK_MARCINKIEWICZ,
    evaluate_norm,
    weak_space,
)
from .functions import NonAtomic

log = logging.getLogger("rikit")

F0 = Fraction(0)
F1 = Fraction(1)

HEAD_FAMILY = "head"
TAIL_FAMILY = "tail"
CUSTOM_FAMILY = "custom"


@dataclass(frozen=True)
class ShrinkFamily:
    """A sequence of sets E_k vanishing in the interval-union sense.

    Built-in kinds shrink the head ([0, 1/k)) or slide off to the
    right ([k, inf)).  Custom families supply an explicit list; they
    are accepted when, against every probe bound n, the measure of
    E_k inside [0, n) has at least halved from the first set to the
    last (or hit zero).  That finite-prefix check is a stand-in for
    the limit statement, which a finite list cannot witness.
    """

    kind: str
    sets: tuple[IntervalSet, ...] = ()

    def __post_init__(self):
        if self.kind not in (HEAD_FAMILY, TAIL_FAMILY, CUSTOM_FAMILY):
            raise ValidationError(f"unknown family kind {self.kind!r}")
        if self.kind != CUSTOM_FAMILY:
            if self.sets:
                raise ValidationError("only custom families carry explicit sets")
            return
        if not self.sets:
            raise ValidationError("a custom family needs at least one set")
        if len(self.sets) == 1:
            return
        # Probe bounds stay near the first set; later sets are allowed to
        # have drifted past any fixed bound, so their own endpoints must
        # not define the window they are judged against.
        bounds = {F1, Fraction(4)}
        for part in self.sets[0].parts:
            if part.right is not None:
                bounds.add(part.right)
        first, last = self.sets[0], self.sets[-1]
        for n in sorted(bounds):
            a = first.measure_upto(n)
            b = last.measure_upto(n)
            if b != 0 and 2 * b > a:
                raise ValidationError(
                    f"custom family does not vanish against the bound {n}: "
                    f"measure inside [0, {n}) went from {a} to {b}"
                )

    @property
    def length(self) -> int | None:
        return len(self.sets) if self.kind == CUSTOM_FAMILY else None

    def member(self, k: int) -> IntervalSet:
        if k < 1:
            raise ValidationError("family index starts at 1")
        if self.kind == HEAD_FAMILY:
            return IntervalSet.of(Interval(F0, F1 / k))
        if self.kind == TAIL_FAMILY:
            return IntervalSet.of(Interval(Fraction(k), None))
        if k > len(self.sets):
            raise ValidationError(
                f"custom family has {len(self.sets)} sets, index {k} requested"
            )
        return self.sets[k - 1]


def head_family() -> ShrinkFamily:
    return ShrinkFamily(HEAD_FAMILY)


def tail_family() -> ShrinkFamily:
    return ShrinkFamily(TAIL_FAMILY)


def custom_family(sets: Sequence[IntervalSet]) -> ShrinkFamily:
    return ShrinkFamily(CUSTOM_FAMILY, tuple(sets))


@dataclass(frozen=True)
class AcVerdict:
    head_limit: Scalar
    tail_limit: Scalar

    @property
    def ac(self) -> bool:
        return self.head_limit.is_zero() and self.tail_limit.is_zero()

    @property
    def failing_side(self) -> str | None:
        if not self.head_limit.is_zero():
            return "head"
        if not self.tail_limit.is_zero():
            return "tail"
        return None

    @property
    def limit(self) -> Scalar | None:
        side = self.failing_side
        if side is None:
            return None
        return self.head_limit if side == "head" else self.tail_limit

    @property
    def status(self) -> str:
        return "AC" if self.ac else "notAC"

    def describe(self) -> str:
        if self.ac:
            return "AC"
        return f"notAC ({self.failing_side} limit = {self.limit})"


# ---------------------------------------------------------------------------
# symbolic limits


def _phi_profile_limit_at_zero(phi: FundamentalFn, q: DecreasingProfile) -> Scalar:
    """lim of phi(t) q(t) as t -> 0, by exponent comparison."""
    if q.is_zero():
        return ZERO
    ps = phi.segments()[0]
    C, r = ps.coeff, ps.exponent
    qs = q.segments()[0]
    c, a, s = qs.coeff, qs.exponent, qs.shift
    if c.is_zero():
        return ZERO
    if r == 0:
        return C * q.value_at_zero()
    if s > 0 or a == 0:
        return ZERO
    top = r + a
    if top > 0:
        return ZERO
    if top == 0:
        return C * c
    return INF


def _phi_profile_limit_at_inf(phi: FundamentalFn, q: DecreasingProfile) -> Scalar:
    """lim of phi(t) q(t) as t -> inf, by tail-exponent comparison."""
    qt = q.tail
    if qt.kind == Tail.ZERO_KIND:
        return ZERO
    pt = phi.tail
    if qt.kind == Tail.CONSTANT:
        if pt.kind == Tail.CONSTANT:
            return pt.coeff * qt.coeff
        return INF
    if pt.kind == Tail.CONSTANT:
        return ZERO
    top = pt.exponent + qt.exponent
    if top < 0:
        return ZERO
    if top == 0:
        return pt.coeff * qt.coeff
    return INF


def _head_limit(desc: SpaceDescriptor, q: DecreasingProfile) -> Scalar:
    if q.is_zero():
        return ZERO
    first = q.segments()[0]
    c, a, s = first.coeff, first.exponent, first.shift
    integrable = c.is_zero() or s > 0 or a > -1
    if isinstance(desc.space, Atomic):
        # cell averaging absorbs any integrable blow-up
        return ZERO if integrable else INF
    if desc.kind == LP:
        if desc.p is None:
            return q.value_at_zero()
        if c.is_zero() or s > 0 or a * desc.p > -1:
            return ZERO
        return INF
    if desc.kind == L1_PLUS_LINF:
        return ZERO if integrable else INF
    if desc.kind == L1_CAP_LINF:
        return q.value_at_zero() if integrable else INF
    return _phi_profile_limit_at_zero(desc.phi, q)


def _tail_limit(desc: SpaceDescriptor, q: DecreasingProfile) -> Scalar:
    t = q.tail
    if t.kind == Tail.ZERO_KIND:
        return ZERO
    if t.kind == Tail.CONSTANT:
        c = t.coeff
        if desc.kind == LP:
            return c if desc.p is None else INF
        if desc.kind == L1_PLUS_LINF:
            return c
        if desc.kind == L1_CAP_LINF:
            return INF
        pt = desc.phi.tail
        return pt.coeff * c if pt.kind == Tail.CONSTANT else INF
    a = t.exponent
    if desc.kind == LP:
        if desc.p is None:
            return ZERO
        return ZERO if a * desc.p < -1 else INF
    if desc.kind == L1_PLUS_LINF:
        return ZERO
    if desc.kind == L1_CAP_LINF:
        return ZERO if a < -1 else INF
    pt = desc.phi.tail
    if pt.kind == Tail.CONSTANT:
        return ZERO
    top = pt.exponent + a
    if top < 0:
        return ZERO
    if top == 0:
        return pt.coeff * t.coeff
    return INF


def ac_two_limit_test(desc: SpaceDescriptor, p: DecreasingProfile) -> AcVerdict:
    """Symbolic head and tail limits of the restricted norms.

    The verdict is AC exactly when both vanish.  Finite-measure bases
    have no tail to escape through, so that limit is zero outright.
    """
    bound = space_bound(desc.space)
    q = p if bound is None else p.restrict_head(bound)
    head = _head_limit(desc, q)
    tail = ZERO if bound is not None else _tail_limit(desc, q)
    return AcVerdict(head, tail)


# ---------------------------------------------------------------------------
# simulation


@dataclass(frozen=True)
class SimRow:
    k: int
    norm: Scalar


def ac_simulate(
    desc: SpaceDescriptor,
    p: DecreasingProfile,
    family: ShrinkFamily,
    k_max: int,
) -> tuple[SimRow, ...]:
    """Realize the vanishing-set norms through the representation.

    Built-in families are sampled at k = 1, 2, 4, ... up to k_max;
    custom families are walked through their whole list.
    """
    if k_max < 1:
        raise ValidationError("k_max must be at least 1")
    bound = space_bound(desc.space)
    q = p if bound is None else p.restrict_head(bound)
    rspec = RepresentationSpec(desc)
    if family.length is not None:
        ks = range(1, family.length + 1)
    else:
        ks = []
        k = 1
        while k <= k_max:
            ks.append(k)
            k *= 2
    rows = []
    for k in ks:
        r = rearrange_restricted(q, family.member(k))
        rows.append(SimRow(k, bar_norm(rspec, r)))
    return tuple(rows)


def ac_necessary_tail(desc: SpaceDescriptor, p: DecreasingProfile) -> bool:
    """Cheap necessary condition over an infinite base: the profile
    must die out at infinity.  False certifies the norm is not
    absolutely continuous without running the full test."""
    if space_bound(desc.space) is not None:
        log.info(
            "necessary-tail check is vacuous over a finite base "
            "(no set of infinite measure to retreat along)"
        )
        return True
    return tail_limit(p).is_zero()


# ---------------------------------------------------------------------------
# order-relation consistency


@dataclass(frozen=True)
class OrderCheckEntry:
    relation: str
    applicable: bool
    order_holds: bool | None = None
    violation: bool = False
    reason: str = ""


@dataclass(frozen=True)
class OrderCheckReport:
    f_verdict: AcVerdict
    g_verdict: AcVerdict
    entries: tuple[OrderCheckEntry, ...] = field(default_factory=tuple)

    @property
    def clean(self) -> bool:
        return not any(e.violation for e in self.entries)


_WEAK_SKIP_REASON = (
    "norm monotonicity along the partial-integral order is falsified for "
    "this space: the indicator of [0,1) sits below (1/2)t^(-1/2) in that "
    "order yet has twice its norm"
)


def ac_order_checks(
    desc: SpaceDescriptor, f: DecreasingProfile, g: DecreasingProfile
) -> OrderCheckReport:
    """Check that absolute continuity is inherited downward, both along
    the pointwise order and along the partial-integral order.

    The partial-integral form is only meaningful where the norm is
    monotone for that order, so it is skipped with a reason for the
    weak space built on a fundamental function.
    """
    fv = ac_two_limit_test(desc, f)
    gv = ac_two_limit_test(desc, g)
    entries: list[OrderCheckEntry] = []

    try:
        le = pointwise_le(f, g)
        entries.append(
            OrderCheckEntry(
                "pointwise",
                True,
                le,
                violation=bool(le and gv.ac and not fv.ac),
            )
        )
    except UnsupportedOperationError as e:
        entries.append(OrderCheckEntry("pointwise", False, reason=str(e)))

    if desc.kind == WEAK_MARCINKIEWICZ:
        entries.append(OrderCheckEntry("partial_integral", False, reason=_WEAK_SKIP_REASON))
    else:
        try:
            verdict = hlp_compare(f, g)
            entries.append(
                OrderCheckEntry(
                    "partial_integral",
                    True,
                    verdict.majorized,
                    violation=bool(verdict.majorized and gv.ac and not fv.ac),
                )
            )
        except (NonIntegrableHeadError, UnsupportedOperationError) as e:
            entries.append(OrderCheckEntry("partial_integral", False, reason=str(e)))

    return OrderCheckReport(fv, gv, tuple(entries))


# ---------------------------------------------------------------------------
# weak-space classification


@dataclass(frozen=True)
class WeakClassification:
    member: bool
    ac: bool
    norm: Scalar
    limit_at_zero: Scalar
    limit_at_inf: Scalar


def marcinkiewicz_ac_classify(
    phi: FundamentalFn, p: DecreasingProfile
) -> WeakClassification:
    """Membership and absolute continuity in the weak space of phi.

    Membership is finiteness of sup phi * p; absolute continuity
    additionally needs that product to vanish at both ends.  The
    limits here are the same ones the two-limit test computes for the
    weak descriptor, so the two formulations must agree.
    """
    desc = weak_space(phi, NonAtomic(None))
    norm = evaluate_norm(desc, p)
    member = not norm.is_inf
    l0 = _phi_profile_limit_at_zero(phi, p)
    li = _phi_profile_limit_at_inf(phi, p)
    return WeakClassification(
        member=member,
        ac=bool(member and l0.is_zero() and li.is_zero()),
        norm=norm,
        limit_at_zero=l0,
        limit_at_inf=li,
    )
