"""Transfer operators onto the half line and the representation
identity checks built on them.

A space over a non-atomic base is represented by truncation to
[0, total); over an atomic base by per-cell averaging onto a step
profile with cell width beta.  The represented norm (bar_norm) composes
truncation, transfer, and the base evaluator, so no second evaluator
type exists.

Averaging a profile whose power tail never settles cannot be
materialized as a finite sequence over infinitely many atoms; for the
norms whose value only needs cell masses (L1, Linf, their sum and
intersection endpoints) bar_norm falls back to closed forms, anything
else raises UnsupportedOperationError.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import UnsupportedOperationError, ValidationError
from .functions import (
    Atomic,
    DecreasingProfile,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
    product_integral,
    space_bound,
)
from .intervals import Interval
from .rearrange import rearrangement
from .scalars import INF, RationalLike, Scalar, ZERO, as_fraction
from .spaces import (
    L1_CAP_LINF,
    L1_PLUS_LINF,
    LP,
    SpaceDescriptor,
    evaluate_norm,
)

log = logging.getLogger(__name__)

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class AtomicSequence:
    """Cell averages of a profile: entry n covers [n*beta, (n+1)*beta).

    Entries beyond the stored prefix all equal tail (zero or a positive
    constant).  A blow-up in cell 0 yields an INF first entry; the
    sequence is still non-increasing.
    """

    beta: Fraction
    values: tuple[Scalar, ...]
    tail: Scalar
    count: int | None

    def __post_init__(self):
        if self.beta <= 0:
            raise ValidationError("cell width beta must be positive")
        for v in self.values:
            if v < ZERO:
                raise ValidationError("sequence entries must be non-negative")
        if self.tail < ZERO or self.tail.is_inf:
            raise ValidationError("sequence tail must be a finite non-negative constant")

    def entry(self, n: int) -> Scalar:
        if n < 0:
            raise ValidationError("sequence index must be >= 0")
        if self.count is not None and n >= self.count:
            return ZERO
        if n < len(self.values):
            return self.values[n]
        return self.tail

    def to_profile(self) -> DecreasingProfile:
        """The induced step profile on [0, inf); rejects an INF entry."""
        pieces: list[PowerPiece] = []
        edge = F0
        for v in self.values:
            if v.is_inf:
                raise UnsupportedOperationError(
                    "a divergent cell average cannot be drawn as a step profile"
                )
            pieces.append(PowerPiece(Interval(edge, edge + self.beta), v))
            edge += self.beta
        if self.count is not None:
            stop = self.beta * self.count
            if not self.tail.is_zero() and edge < stop:
                pieces.append(PowerPiece(Interval(edge, stop), self.tail))
            return DecreasingProfile(tuple(pieces), Tail.zero()).canonical()
        tail = Tail.zero() if self.tail.is_zero() else Tail.constant(self.tail)
        return DecreasingProfile(tuple(pieces), tail).canonical()


def _cell_average(p: DecreasingProfile, n: int, beta: Fraction) -> Scalar:
    lo = n * beta
    return p.integral(Interval(lo, lo + beta)) / Scalar.exact(beta)


def _settling_cell(p: DecreasingProfile, beta: Fraction) -> int | None:
    """First cell index from which all averages equal one constant, or None."""
    t0 = p.tail_start()
    if p.tail.kind == Tail.POWER:
        return None
    # beyond t0 the profile is constant (possibly zero); averages settle
    # once a cell lies entirely in [t0, inf)
    n = t0 / beta
    return int(n) if n.denominator == 1 else int(n) + 1


def atomic_transfer(
    p: DecreasingProfile,
    beta: RationalLike,
    count: int | None = None,
    n_limit: int | None = None,
) -> AtomicSequence:
    """Per-cell averages of p over cells of width beta.

    With count = None and a power tail the sequence never settles; a
    finite n_limit must then be supplied (entries beyond it are not
    needed by the caller) or the call is rejected.
    """
    beta = as_fraction(beta)
    if beta <= 0:
        raise ValidationError("cell width beta must be positive")
    if count is not None:
        stop = count
        tail = ZERO
    else:
        settle = _settling_cell(p, beta)
        if settle is not None:
            stop = settle
            tail = p.tail.coeff if p.tail.kind == Tail.CONSTANT else ZERO
        elif n_limit is not None:
            stop = n_limit
            tail = ZERO  # entries beyond n_limit are undefined for this carrier
        else:
            raise UnsupportedOperationError(
                "cell averages of a power tail over infinitely many atoms "
                "never settle; pass n_limit or a finite count"
            )
    values = tuple(_cell_average(p, n, beta) for n in range(stop))
    if values and values[0].is_inf:
        log.info("cell 0 average diverges; recording an INF entry")
    return AtomicSequence(beta, values, tail, count)


def nonatomic_transfer(p: DecreasingProfile, total: RationalLike | None) -> DecreasingProfile:
    """Identity embedding of [0, total): just the head restriction of p."""
    if total is None:
        return p
    return p.restrict_head(as_fraction(total))


@dataclass(frozen=True)
class RepresentationSpec:
    """The half-line functional representing a descriptor's norm."""

    descriptor: SpaceDescriptor


def bar_norm(rspec: RepresentationSpec, f: DecreasingProfile) -> Scalar:
    """Represented norm: truncate to the base's total measure, transfer,
    evaluate the base formula on the result."""
    desc = rspec.descriptor
    space = desc.space
    if isinstance(space, NonAtomic):
        return evaluate_norm(desc, nonatomic_transfer(f, space.total))
    assert isinstance(space, Atomic)
    bound = space_bound(space)
    p = f if bound is None else f.restrict_head(bound)
    try:
        seq = atomic_transfer(p, space.beta, space.count)
    except UnsupportedOperationError:
        return _bar_norm_unsettled(desc, p)
    if any(v.is_inf for v in seq.values):
        return INF
    return evaluate_norm(desc, seq.to_profile())


def _bar_norm_unsettled(desc: SpaceDescriptor, p: DecreasingProfile) -> Scalar:
    """Closed forms for averaging sequences that never settle.

    Averaging preserves cell masses, so any norm depending on the
    averages only through masses over half-open prefixes has a closed
    form; the genuinely pointwise norms do not.
    """
    beta = desc.space.beta
    first = _cell_average(p, 0, beta)
    if desc.kind == LP and desc.p == 1:
        return p.integral()
    if desc.kind == LP and desc.p is None:
        return first
    if desc.kind == L1_CAP_LINF:
        return first + p.integral()
    if desc.kind == L1_PLUS_LINF:
        k = int(F1 / beta)  # full cells inside [0, 1)
        mass = p.integral(Interval(F0, k * beta))
        frac = F1 - k * beta
        if frac == 0:
            return mass
        return mass + Scalar.exact(frac) * _cell_average(p, k, beta)
    raise UnsupportedOperationError(
        f"{desc.label()} over infinitely many atoms needs settled averages"
    )


@dataclass(frozen=True)
class IdentityCheck:
    lhs: Scalar
    rhs: Scalar
    equal: bool
    exact: bool


def representation_identity_check(desc: SpaceDescriptor, f: StepFunction) -> IdentityCheck:
    """Compare the direct norm of f with the represented norm of f*."""
    if f.space != desc.space:
        raise ValidationError("step function must live on the descriptor's measure space")
    star = rearrangement(f)
    lhs = evaluate_norm(desc, star)
    rhs = bar_norm(RepresentationSpec(desc), star)
    exact = (lhs.is_exact and rhs.is_exact) or (lhs.is_inf and rhs.is_inf)
    return IdentityCheck(lhs, rhs, lhs.close_to(rhs), exact)


@dataclass(frozen=True)
class PartialIntegralRow:
    t: Fraction
    lhs: Scalar
    rhs: Scalar
    equal: bool
    interpolated: bool
    skipped: bool


@dataclass(frozen=True)
class PartialIntegralReport:
    rows: tuple[PartialIntegralRow, ...]

    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows if not r.skipped)


def transfer_partial_integral_check(
    p: DecreasingProfile, beta: RationalLike, n_max: int
) -> PartialIntegralReport:
    """Verify that averaging preserves partial integrals at cell
    boundaries, and the one-fractional-cell formula at midpoints.

    At t = n*beta the step profile of the averages and p itself must
    integrate identically (exactly).  Between multiples the step
    profile is linear in t, so its partial integral is the full-cell
    mass plus the fractional next average; midpoints exercise that
    formula.  Rows where either side diverges are marked skipped.
    """
    beta = as_fraction(beta)
    seq = atomic_transfer(p, beta, None, n_limit=n_max + 2)
    rows: list[PartialIntegralRow] = []

    def averaged_prefix(n: int) -> Scalar:
        total = ZERO
        for m in range(n):
            total = total + seq.entry(m) * Scalar.exact(beta)
        return total

    for n in range(1, n_max + 1):
        t = n * beta
        lhs = averaged_prefix(n)
        rhs = p.integral(Interval(F0, t))
        skipped = lhs.is_inf or rhs.is_inf
        rows.append(
            PartialIntegralRow(t, lhs, rhs, skipped or lhs.close_to(rhs), False, skipped)
        )
    for n in range(n_max):
        t = n * beta + beta / 2
        lhs = averaged_prefix(n) + Scalar.exact(beta / 2) * seq.entry(n)
        # the same quantity read off the induced step profile directly
        try:
            rhs = seq.to_profile().integral(Interval(F0, t))
        except UnsupportedOperationError:
            rows.append(PartialIntegralRow(t, lhs, lhs, True, True, True))
            continue
        skipped = lhs.is_inf or rhs.is_inf
        rows.append(
            PartialIntegralRow(t, lhs, rhs, skipped or lhs.close_to(rhs), True, skipped)
        )
    return PartialIntegralReport(tuple(rows))


def associate_probe(
    desc: SpaceDescriptor, f: DecreasingProfile, family: Iterable[DecreasingProfile]
) -> Scalar:
    """Largest pairing integral of f against normalized family members.

    A certified lower bound on the associate norm of f; members with
    zero or infinite norm are skipped, as are pairings outside the
    closed-form product family.
    """
    best = ZERO
    for g in family:
        norm = evaluate_norm(desc, g)
        if norm.is_zero() or norm.is_inf:
            log.info("associate probe skipping member with norm %s", norm)
            continue
        try:
            pairing = product_integral(f, g)
        except UnsupportedOperationError:
            log.info("associate probe skipping a pairing without closed form")
            continue
        ratio = pairing / norm
        if ratio > best:
            best = ratio
    return best
