"""Half-open intervals on [0, inf) and finite unions of them.

The convention is [left, right) throughout, matching right-continuous
decreasing profiles.  right is None for an unbounded interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .scalars import INF, RationalLike, Scalar, as_fraction


@dataclass(frozen=True)
class Interval:
    """[left, right) with rational left >= 0; right rational or None (+inf)."""

    left: Fraction
    right: Fraction | None

    def __post_init__(self):
        if not isinstance(self.left, Fraction) or (
            self.right is not None and not isinstance(self.right, Fraction)
        ):
            raise ValidationError("interval endpoints must be Fractions (or None)")
        if self.left < 0:
            raise ValidationError(f"interval starts below 0: {self}")
        if self.right is not None and self.right <= self.left:
            raise ValidationError(f"empty or reversed interval: {self}")

    @property
    def bounded(self) -> bool:
        return self.right is not None

    def length(self) -> Scalar:
        if self.right is None:
            return INF
        return Scalar.exact(self.right - self.left)

    def contains(self, t: Fraction) -> bool:
        return t >= self.left and (self.right is None or t < self.right)

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = max(self.left, other.left)
        if self.right is None:
            hi = other.right
        elif other.right is None:
            hi = self.right
        else:
            hi = min(self.right, other.right)
        if hi is not None and hi <= lo:
            return None
        return Interval(lo, hi)

    def __repr__(self):
        hi = "inf" if self.right is None else str(self.right)
        return f"[{self.left}, {hi})"


def interval(left: RationalLike, right: RationalLike | None) -> Interval:
    """Convenience constructor coercing rational literals; right None or "inf" = +inf."""
    if right in (None, "inf"):
        return Interval(as_fraction(left), None)
    return Interval(as_fraction(left), as_fraction(right))


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of pairwise disjoint intervals, sorted; adjacent ones merged."""

    parts: tuple[Interval, ...]

    def __post_init__(self):
        prev: Interval | None = None
        for iv in self.parts:
            if prev is not None:
                if prev.right is None:
                    raise ValidationError("interval after an unbounded one")
                if iv.left < prev.right:
                    raise ValidationError(f"overlapping intervals at {iv.left}")
                if iv.left == prev.right:
                    raise ValidationError(
                        f"adjacent intervals must be merged at {iv.left}"
                    )
            prev = iv

    @classmethod
    def of(cls, *parts: Interval) -> "IntervalSet":
        """Normalize arbitrary intervals: sort, merge touching/overlapping ones."""
        todo = sorted(parts, key=lambda iv: (iv.left, iv.left if iv.right is None else iv.right))
        merged: list[Interval] = []
        for iv in todo:
            if merged:
                last = merged[-1]
                if last.right is None or iv.left <= last.right:
                    if last.right is not None and (
                        iv.right is None or iv.right > last.right
                    ):
                        merged[-1] = Interval(last.left, iv.right)
                    continue
            merged.append(iv)
        return cls(tuple(merged))

    def measure(self) -> Scalar:
        total = Scalar.exact(0)
        for iv in self.parts:
            if iv.right is None:
                return INF
            total = total + iv.length()
        return total

    def intersect(self, window: Interval) -> "IntervalSet":
        kept = [x for iv in self.parts if (x := iv.intersect(window)) is not None]
        return IntervalSet(tuple(kept))

    def measure_upto(self, t: Fraction) -> Fraction:
        """Lebesgue measure of the set clipped to [0, t]."""
        acc = Fraction(0)
        for iv in self.parts:
            if iv.left > t:
                break
            hi = t if iv.right is None else min(iv.right, t)
            acc += hi - iv.left
        return acc

    def __repr__(self):
        return " u ".join(repr(iv) for iv in self.parts) if self.parts else "{}"


def measure_inverse(E: IntervalSet, t: RationalLike) -> Scalar:
    """inf{ s : lambda(E intersect [0, s]) > t }, or +inf if lambda(E) <= t.

    Walks the intervals accumulating measure; within the interval that
    carries the accumulated mass past t the inverse grows with slope 1.
    """
    t = as_fraction(t)
    if t < 0:
        raise ValidationError("measure_inverse needs t >= 0")
    acc = Fraction(0)
    for iv in E.parts:
        if iv.right is None:
            return Scalar.exact(iv.left + (t - acc))
        if acc + (iv.right - iv.left) > t:
            return Scalar.exact(iv.left + (t - acc))
        acc += iv.right - iv.left
    return INF
