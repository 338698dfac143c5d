"""Distribution functions, non-increasing rearrangements, and the
Hardy-Littlewood pairing bound.

Rearrangement is computed for step functions by sorting level sets by
value and concatenating their measures; piecewise-power decreasing
profiles enter the system already rearranged, and restriction of a
profile to a finite union of intervals is rearranged exactly by gluing
the selected stretches back to back (the profile is monotone, so the
glue order is the value order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ValidationError
from .functions import (
    DecreasingProfile,
    PowerPiece,
    StepFunction,
    Tail,
    product_integral,
    step_add,
    step_product,
)
from .intervals import Interval, IntervalSet
from .scalars import Scalar, ZERO, as_fraction, RationalLike

F0 = Fraction(0)


@dataclass(frozen=True)
class DistributionFunction:
    """Step function of the level variable s: s -> measure of {value > s}.

    Bands cover [0, s_max) consecutively; beyond the last band the
    measure is 0.  Band measures may be +inf.
    """

    pieces: tuple[tuple[Interval, Scalar], ...]

    def value_at(self, s: RationalLike) -> Scalar:
        s = as_fraction(s)
        if s < 0:
            raise ValidationError("level variable lives on [0, inf)")
        for iv, m in self.pieces:
            if iv.contains(s):
                return m
        return ZERO


def distribution(f: StepFunction) -> DistributionFunction:
    """Exact distribution function s -> mu({f > s})."""
    levels = f.level_sets()  # (value, measure), values descending
    if not levels:
        return DistributionFunction(())
    cumulative: list[Scalar] = []
    running = ZERO
    for _, m in levels:
        running = running + m
        cumulative.append(running)
    bands: list[tuple[Interval, Scalar]] = []
    lo = F0
    for j in range(len(levels) - 1, -1, -1):
        hi = levels[j][0]
        bands.append((Interval(lo, hi), cumulative[j]))
        lo = hi
    return DistributionFunction(tuple(bands))


def rearrangement(f: StepFunction) -> DecreasingProfile:
    """Non-increasing rearrangement f* as an exact step profile."""
    pieces: list[PowerPiece] = []
    edge = F0
    for value, measure in f.level_sets():
        if measure.is_inf:
            # everything from here on sits under an infinite level set
            return DecreasingProfile(tuple(pieces), Tail.constant(value))
        width = measure.as_fraction()
        pieces.append(PowerPiece(Interval(edge, edge + width), Scalar.exact(value)))
        edge += width
    return DecreasingProfile(tuple(pieces), Tail.zero())


def rearrange_restricted(p: DecreasingProfile, E: IntervalSet) -> DecreasingProfile:
    """(p restricted to E) rearranged, i.e. t -> p(measure_inverse(E, t)).

    Walking E left to right visits values of p in non-increasing order,
    so sliding each selected stretch [a, b) leftward onto the
    accumulated measure gives the rearrangement directly.  A stretch
    starting at a contributes t -> p(t + delta) with delta the gap
    swallowed so far, realized by re-anchoring pieces with shift+delta.
    """
    pieces: list[PowerPiece] = []
    tail = Tail.zero()
    placed = F0  # measure of E already consumed
    for part in E.parts:
        delta = part.left - placed
        for piece in p.pieces:
            cut = piece.interval.intersect(part)
            if cut is None:
                continue
            pieces.append(
                PowerPiece(
                    Interval(cut.left - delta, cut.right - delta),
                    piece.coeff,
                    piece.exponent,
                    piece.shift if piece.is_constant else piece.shift + delta,
                )
            )
        t0 = p.tail_start()
        tail_iv = Interval(t0, None).intersect(part)
        if tail_iv is not None and p.tail.kind != Tail.ZERO_KIND:
            tk = p.tail
            if tail_iv.right is None:
                tail = (
                    Tail.constant(tk.coeff)
                    if tk.kind == Tail.CONSTANT
                    else Tail.power(tk.coeff, tk.exponent, tk.shift + delta)
                )
            else:
                pieces.append(
                    PowerPiece(
                        Interval(tail_iv.left - delta, tail_iv.right - delta),
                        tk.coeff,
                        tk.exponent,
                        tk.shift if tk.kind == Tail.CONSTANT else tk.shift + delta,
                    )
                )
        if part.right is None:
            break
        placed += part.right - part.left
    return DecreasingProfile(tuple(pieces), tail).canonical()


ProfileLike = Union[StepFunction, DecreasingProfile]


def _as_profile(f: ProfileLike) -> DecreasingProfile:
    if isinstance(f, StepFunction):
        return rearrangement(f)
    return f.canonical()


def equimeasurable(f: ProfileLike, g: ProfileLike) -> bool:
    """True iff f and g have identical rearrangements (spaces may differ)."""
    return _as_profile(f) == _as_profile(g)


def maximal_eval(p: DecreasingProfile, t: RationalLike) -> Scalar:
    """Value of the maximal function (1/t) * integral of p over [0, t)."""
    t = as_fraction(t)
    if t <= 0:
        raise ValidationError("maximal function needs t > 0")
    return p.integral(Interval(F0, t)) / Scalar.exact(t)


def hl_gap(f: StepFunction, g: StepFunction) -> tuple[Scalar, Scalar]:
    """Both sides of the rearrangement pairing bound.

    Returns (integral of f*g over the space, integral of f*g* over the
    half line); the first never exceeds the second.
    """
    if f.space != g.space:
        raise ValidationError("pairing needs a common measure space")
    lhs = step_product(f, g).integral()
    rhs = product_integral(rearrangement(f), rearrangement(g))
    return lhs, rhs


def step_add_rearranged(f: StepFunction, g: StepFunction) -> DecreasingProfile:
    """Rearrangement of the pointwise sum f + g."""
    return rearrangement(step_add(f, g))


def tail_limit(p: DecreasingProfile) -> Scalar:
    """Symbolic limit of p at +inf."""
    return p.limit_at_inf()
