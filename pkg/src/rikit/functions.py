"""Measure spaces, step functions, and decreasing piecewise-power profiles.

Values are non-negative throughout (any modulus is applied at input
time).  A DecreasingProfile is the canonical carrier of a non-increasing
right-continuous function on [0, inf): finitely many power pieces
c*(t+shift)**p on consecutive intervals from 0, then a tail that is
zero, a positive constant, or a decaying power.  Step functions live on
one of the two resonant measure-space forms; on an atomic space every
piece must be a union of whole atom cells.

Integration is closed-form.  Power pieces use the antiderivative
c*(t+shift)**(p+1)/(p+1); p = -1 integrals bounded away from 0 and inf
evaluate through log and are tagged approximate, while divergent
integrals come back as the symbolic +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import UnsupportedOperationError, ValidationError
from .intervals import Interval, IntervalSet
from .scalars import (
    INF,
    REL_TOL,
    RationalLike,
    Scalar,
    ZERO,
    as_fraction,
    compare_powers,
    power_value,
)

F0 = Fraction(0)
F1 = Fraction(1)


# ---------------------------------------------------------------------------
# measure spaces


@dataclass(frozen=True)
class NonAtomic:
    """Non-atomic measure space of the given total measure (None = infinite)."""

    total: Fraction | None = None

    def __post_init__(self):
        if self.total is not None and (
            not isinstance(self.total, Fraction) or self.total <= 0
        ):
            raise ValidationError("non-atomic total must be a positive Fraction or None")

    def total_measure(self) -> Scalar:
        return INF if self.total is None else Scalar.exact(self.total)


@dataclass(frozen=True)
class Atomic:
    """Completely atomic space: count atoms (None = infinitely many) of mass beta."""

    beta: Fraction
    count: int | None = None

    def __post_init__(self):
        if not isinstance(self.beta, Fraction) or self.beta <= 0:
            raise ValidationError("atom mass beta must be a positive Fraction")
        if self.count is not None and (not isinstance(self.count, int) or self.count < 1):
            raise ValidationError("atom count must be a positive int or None")

    def total_measure(self) -> Scalar:
        return INF if self.count is None else Scalar.exact(self.beta * self.count)


MeasureSpace = Union[NonAtomic, Atomic]


def space_bound(space: MeasureSpace) -> Fraction | None:
    """Total measure as a Fraction, or None when infinite."""
    m = space.total_measure()
    return None if m.is_inf else m.as_fraction()


# ---------------------------------------------------------------------------
# power pieces and tails


def _cmp_values(a: Scalar, b: Scalar) -> int:
    """Numeric comparison that tolerates REL_TOL slack once floats are involved."""
    if a.is_approx or b.is_approx:
        x, y = a.as_float(), b.as_float()
        if math.isclose(x, y, rel_tol=REL_TOL, abs_tol=REL_TOL):
            return 0
        return (x > y) - (x < y)
    return (a > b) - (a < b)


@dataclass(frozen=True)
class PowerPiece:
    """t maps to coeff*(t+shift)**exponent on a bounded half-open interval.

    coeff is a finite non-negative Scalar; a zero coefficient forces
    exponent = shift = 0, and exponent 0 forces shift = 0, so constants
    have one representation.
    """

    interval: Interval
    coeff: Scalar
    exponent: Fraction = F0
    shift: Fraction = F0

    def __post_init__(self):
        if not isinstance(self.coeff, Scalar) or not self.coeff.is_finite:
            raise ValidationError("piece coefficient must be a finite Scalar")
        if self.coeff < ZERO:
            raise ValidationError("piece coefficient must be non-negative")
        if self.shift < 0:
            raise ValidationError("piece shift must be non-negative")
        if self.coeff.is_zero() and (self.exponent != 0 or self.shift != 0):
            object.__setattr__(self, "exponent", F0)
            object.__setattr__(self, "shift", F0)
        if self.exponent == 0 and self.shift != 0:
            object.__setattr__(self, "shift", F0)

    @property
    def is_constant(self) -> bool:
        return self.exponent == 0

    def value_at(self, t: Fraction) -> Scalar:
        """Value of the formula at t (not restricted to the interval)."""
        if self.coeff.is_zero():
            return ZERO
        u = t + self.shift
        if u == 0:
            if self.exponent < 0:
                return INF
            if self.exponent == 0:
                return self.coeff
            return ZERO
        return power_value(self.coeff, u, self.exponent)

    def integral_over(self, window: Interval | None = None) -> Scalar:
        part = self.interval if window is None else self.interval.intersect(window)
        if part is None:
            return ZERO
        return power_integral(self.coeff, self.exponent, self.shift, part.left, part.right)


@dataclass(frozen=True)
class Tail:
    """Behavior on [T, inf): zero, a constant, or a shifted power.

    The power direction (decay for profiles, growth for fundamental
    functions) is validated by the containing type, not here.
    """

    kind: str
    coeff: Scalar = ZERO
    exponent: Fraction = F0
    shift: Fraction = F0

    ZERO_KIND = "zero"
    CONSTANT = "constant"
    POWER = "power"

    def __post_init__(self):
        if self.kind not in (self.ZERO_KIND, self.CONSTANT, self.POWER):
            raise ValidationError(f"unknown tail kind {self.kind!r}")
        if not isinstance(self.coeff, Scalar) or not self.coeff.is_finite:
            raise ValidationError("tail coefficient must be a finite Scalar")
        if self.coeff < ZERO:
            raise ValidationError("tail coefficient must be non-negative")
        if self.kind != self.ZERO_KIND and self.coeff.is_zero():
            object.__setattr__(self, "kind", self.ZERO_KIND)
        if self.kind == self.POWER and self.exponent == 0:
            object.__setattr__(self, "kind", self.CONSTANT)
        if self.kind == self.ZERO_KIND:
            object.__setattr__(self, "coeff", ZERO)
            object.__setattr__(self, "exponent", F0)
            object.__setattr__(self, "shift", F0)
        elif self.kind == self.CONSTANT:
            object.__setattr__(self, "exponent", F0)
            object.__setattr__(self, "shift", F0)
        elif self.shift < 0:
            raise ValidationError("tail shift must be non-negative")

    @classmethod
    def zero(cls) -> "Tail":
        return cls(cls.ZERO_KIND)

    @classmethod
    def constant(cls, c: Scalar | RationalLike) -> "Tail":
        c = c if isinstance(c, Scalar) else Scalar.exact(c)
        return cls(cls.CONSTANT, c)

    @classmethod
    def power(
        cls, c: Scalar | RationalLike, exponent: RationalLike, shift: RationalLike = 0
    ) -> "Tail":
        c = c if isinstance(c, Scalar) else Scalar.exact(c)
        return cls(cls.POWER, c, as_fraction(exponent), as_fraction(shift))

    def value_at(self, t: Fraction) -> Scalar:
        if self.kind == self.ZERO_KIND:
            return ZERO
        if self.kind == self.CONSTANT:
            return self.coeff
        u = t + self.shift
        if u == 0:
            return INF if self.exponent < 0 else ZERO
        return power_value(self.coeff, u, self.exponent)

    def limit_at_inf(self) -> Scalar:
        if self.kind == self.CONSTANT:
            return self.coeff
        if self.kind == self.POWER and self.exponent > 0:
            return INF
        return ZERO


def power_integral(
    coeff: Scalar, exponent: Fraction, shift: Fraction, lo: Fraction, hi: Fraction | None
) -> Scalar:
    """Closed-form integral of coeff*(t+shift)**exponent over [lo, hi)."""
    if coeff.is_zero():
        return ZERO
    u0 = lo + shift
    u1 = None if hi is None else hi + shift
    if exponent == 0:
        if u1 is None:
            return INF
        return coeff * Scalar.exact(hi - lo)
    if exponent == -1:
        if u0 == 0 or u1 is None:
            return INF
        return coeff * Scalar.approx(math.log(u1 / u0))
    q = exponent + 1
    if u1 is None:
        if q > 0 or u0 == 0:
            return INF
        return coeff * Scalar.exact(u0).pow(q) / Scalar.exact(-q)
    if u0 == 0:
        if q < 0:
            return INF
        t0: Scalar = ZERO
    else:
        t0 = Scalar.exact(u0).pow(q)
    t1 = Scalar.exact(u1).pow(q)
    return coeff * (t1 - t0) / Scalar.exact(q)


# ---------------------------------------------------------------------------
# decreasing profiles


@dataclass(frozen=True)
class Segment:
    """One cell of a profile overlay: an atom (coeff, exponent, shift) on [left, right)."""

    left: Fraction
    right: Fraction | None
    coeff: Scalar
    exponent: Fraction
    shift: Fraction

    def value_at(self, t: Fraction) -> Scalar:
        if self.coeff.is_zero():
            return ZERO
        u = t + self.shift
        if u == 0:
            return INF if self.exponent < 0 else (self.coeff if self.exponent == 0 else ZERO)
        return power_value(self.coeff, u, self.exponent)


@dataclass(frozen=True)
class DecreasingProfile:
    """Globally non-increasing, right-continuous piecewise-power function.

    Pieces sit on consecutive bounded intervals starting at 0 and the
    tail covers the rest of the half line.  A blow-up at 0 is permitted
    (first piece with negative exponent and zero shift); the value at 0
    is then +inf.  Construction validates monotonicity and names the
    first violating breakpoint on failure.
    """

    pieces: tuple[PowerPiece, ...]
    tail: Tail

    def __post_init__(self):
        edge = F0
        for k, piece in enumerate(self.pieces):
            iv = piece.interval
            if iv.left != edge:
                raise ValidationError(
                    f"piece {k} starts at {iv.left}, expected {edge} (pieces must be consecutive from 0)"
                )
            if iv.right is None:
                raise ValidationError("profile pieces must be bounded; use the tail for [T, inf)")
            if not piece.coeff.is_zero() and piece.exponent > 0:
                raise ValidationError(
                    f"piece {k} increases on {iv} (exponent {piece.exponent} > 0)"
                )
            edge = iv.right
        if self.tail.kind == Tail.POWER and self.tail.exponent >= 0:
            raise ValidationError("profile power tail must decay (exponent < 0)")
        prev: PowerPiece | None = None
        for piece in self.pieces:
            if prev is not None:
                t = piece.interval.left
                c = _compare_piecelike(prev, piece, t)
                if c < 0:
                    raise ValidationError(
                        f"profile increases at t = {t}: left limit "
                        f"{prev.value_at(t)} < next value {piece.value_at(t)}"
                    )
            prev = piece
        t0 = self.tail_start()
        if self.tail.kind != Tail.ZERO_KIND:
            if prev is not None:
                c = _compare_piecelike(prev, self.tail, t0)
                if c < 0:
                    raise ValidationError(
                        f"profile increases at tail start t = {t0}: left limit "
                        f"{prev.value_at(t0)} < tail value {self.tail.value_at(t0)}"
                    )
    def tail_start(self) -> Fraction:
        return self.pieces[-1].interval.right if self.pieces else F0

    # -- evaluation ---------------------------------------------------

    def value_at(self, t: RationalLike) -> Scalar:
        t = as_fraction(t)
        if t < 0:
            raise ValidationError("profiles live on [0, inf)")
        for piece in self.pieces:
            if piece.interval.contains(t):
                return piece.value_at(t)
        return self.tail.value_at(t)

    def value_at_zero(self) -> Scalar:
        return self.value_at(F0)

    def limit_at_inf(self) -> Scalar:
        return self.tail.limit_at_inf()

    def is_zero(self) -> bool:
        return all(p.coeff.is_zero() for p in self.pieces) and self.tail.kind == Tail.ZERO_KIND

    def support_end(self) -> Fraction | None:
        """sup of the support when finite; None when the support is unbounded."""
        if self.tail.kind != Tail.ZERO_KIND:
            return None
        for piece in reversed(self.pieces):
            if not piece.coeff.is_zero():
                return piece.interval.right
        return F0

    def breakpoints(self) -> list[Fraction]:
        pts = [p.interval.left for p in self.pieces]
        pts.append(self.tail_start())
        return sorted(set(pts))

    def segments(self) -> list[Segment]:
        """Full cover of [0, inf): one atom per piece, then the tail atom."""
        out = [
            Segment(p.interval.left, p.interval.right, p.coeff, p.exponent, p.shift)
            for p in self.pieces
        ]
        t0 = self.tail_start()
        out.append(Segment(t0, None, self.tail.coeff, self.tail.exponent, self.tail.shift))
        return out

    # -- integration --------------------------------------------------

    def integral(self, window: Interval | None = None) -> Scalar:
        total = ZERO
        for piece in self.pieces:
            total = total + piece.integral_over(window)
        t0 = self.tail_start()
        if self.tail.kind != Tail.ZERO_KIND:
            tail_iv = Interval(t0, None)
            part = tail_iv if window is None else tail_iv.intersect(window)
            if part is not None:
                total = total + power_integral(
                    self.tail.coeff, self.tail.exponent, self.tail.shift, part.left, part.right
                )
        return total

    def integral_set(self, E: IntervalSet) -> Scalar:
        total = ZERO
        for iv in E.parts:
            total = total + self.integral(iv)
        return total

    # -- structural operations ---------------------------------------

    def restrict_head(self, cut: Fraction | None) -> "DecreasingProfile":
        """The profile times the indicator of [0, cut)."""
        if cut is None:
            return self
        cut = as_fraction(cut)
        if cut < 0:
            raise ValidationError("head cut must be >= 0")
        if cut == 0:
            return zero_profile()
        pieces: list[PowerPiece] = []
        for piece in self.pieces:
            part = piece.interval.intersect(Interval(F0, cut))
            if part is not None:
                pieces.append(PowerPiece(part, piece.coeff, piece.exponent, piece.shift))
        t0 = self.tail_start()
        if self.tail.kind != Tail.ZERO_KIND and cut > t0:
            pieces.append(
                PowerPiece(Interval(t0, cut), self.tail.coeff, self.tail.exponent, self.tail.shift)
            )
        return DecreasingProfile(tuple(pieces), Tail.zero())

    def shift_left(self, k: Fraction) -> "DecreasingProfile":
        """The profile of t -> value(t + k); realizes restriction to [k, inf)."""
        k = as_fraction(k)
        if k < 0:
            raise ValidationError("shift must be >= 0")
        if k == 0:
            return self
        pieces: list[PowerPiece] = []
        for piece in self.pieces:
            iv = piece.interval
            if iv.right is not None and iv.right <= k:
                continue
            lo = max(iv.left, k)
            pieces.append(
                PowerPiece(
                    Interval(lo - k, None if iv.right is None else iv.right - k),
                    piece.coeff,
                    piece.exponent,
                    piece.shift + k if not piece.is_constant else F0,
                )
            )
        tail = self.tail
        if tail.kind == Tail.POWER:
            tail = Tail.power(tail.coeff, tail.exponent, tail.shift + k)
        return DecreasingProfile(tuple(pieces), tail)

    def canonical(self) -> "DecreasingProfile":
        """Merge redundant pieces so equal functions compare equal structurally."""
        pieces = list(self.pieces)
        tail = self.tail
        # absorb trailing pieces that continue the tail formula
        while pieces:
            last = pieces[-1]
            if tail.kind == Tail.ZERO_KIND and last.coeff.is_zero():
                pieces.pop()
            elif (
                tail.kind == Tail.CONSTANT
                and last.is_constant
                and last.coeff == tail.coeff
            ):
                pieces.pop()
            elif (
                tail.kind == Tail.POWER
                and not last.is_constant
                and last.coeff == tail.coeff
                and last.exponent == tail.exponent
                and last.shift == tail.shift
            ):
                pieces.pop()
            else:
                break
        merged: list[PowerPiece] = []
        for piece in pieces:
            if merged:
                prev = merged[-1]
                same = (
                    prev.coeff == piece.coeff
                    and prev.exponent == piece.exponent
                    and prev.shift == piece.shift
                )
                if same:
                    merged[-1] = PowerPiece(
                        Interval(prev.interval.left, piece.interval.right),
                        prev.coeff,
                        prev.exponent,
                        prev.shift,
                    )
                    continue
            merged.append(piece)
        return DecreasingProfile(tuple(merged), tail)

    def __repr__(self):
        bits = []
        for p in self.pieces:
            if p.is_constant:
                bits.append(f"{p.coeff} on {p.interval}")
            else:
                s = f"(t+{p.shift})" if p.shift else "t"
                bits.append(f"{p.coeff}*{s}^{p.exponent} on {p.interval}")
        t = self.tail
        t0 = self.tail_start()
        if t.kind == Tail.ZERO_KIND:
            bits.append(f"0 on [{t0}, inf)")
        elif t.kind == Tail.CONSTANT:
            bits.append(f"{t.coeff} on [{t0}, inf)")
        else:
            s = f"(t+{t.shift})" if t.shift else "t"
            bits.append(f"{t.coeff}*{s}^{t.exponent} on [{t0}, inf)")
        return "Profile(" + ", ".join(bits) + ")"


def _compare_piecelike(a, b, t: Fraction) -> int:
    """Compare two piece/tail formulas at position t, exactly when possible."""
    va, vb = a.value_at(t), b.value_at(t)
    if va.is_inf or vb.is_inf:
        if va.is_inf and vb.is_inf:
            return 0
        return 1 if va.is_inf else -1
    ca, cb = a.coeff, b.coeff
    if ca.is_exact and cb.is_exact:
        ua, ub = t + a.shift, t + b.shift
        if ua > 0 and ub > 0:
            return compare_powers(
                ca.as_fraction(), ua, a.exponent, cb.as_fraction(), ub, b.exponent
            )
        return (va > vb) - (va < vb)
    return _cmp_values(va, vb)


def zero_profile() -> DecreasingProfile:
    return DecreasingProfile((), Tail.zero())


def steps_profile(
    pairs: Iterable[tuple[RationalLike, RationalLike]],
    tail_value: RationalLike = 0,
) -> DecreasingProfile:
    """Build a step profile from (value, length) runs starting at 0.

    Values must be non-increasing; a positive tail_value continues after
    the runs forever.
    """
    pieces: list[PowerPiece] = []
    edge = F0
    for value, length in pairs:
        value, length = as_fraction(value), as_fraction(length)
        pieces.append(PowerPiece(Interval(edge, edge + length), Scalar.exact(value)))
        edge += length
    tv = as_fraction(tail_value)
    tail = Tail.zero() if tv == 0 else Tail.constant(tv)
    return DecreasingProfile(tuple(pieces), tail)


def validate_profile(p: DecreasingProfile) -> DecreasingProfile:
    """Re-run all construction checks; returns the profile or raises."""
    return DecreasingProfile(tuple(p.pieces), p.tail)


def profiles_equal(f: DecreasingProfile, g: DecreasingProfile) -> bool:
    """Equality as functions, via canonical forms."""
    return f.canonical() == g.canonical()


# ---------------------------------------------------------------------------
# profile overlays and pointwise algebra


def overlay(f: DecreasingProfile, g: DecreasingProfile) -> list[tuple[Segment, Segment]]:
    """Common refinement of two profiles' segment covers of [0, inf)."""
    cuts = sorted(set(f.breakpoints()) | set(g.breakpoints()))
    fs, gs = f.segments(), g.segments()

    def seg_at(segs: list[Segment], t: Fraction) -> Segment:
        for s in segs:
            if t >= s.left and (s.right is None or t < s.right):
                return s
        return segs[-1]

    out: list[tuple[Segment, Segment]] = []
    for i, lo in enumerate(cuts):
        hi = cuts[i + 1] if i + 1 < len(cuts) else None
        sf, sg = seg_at(fs, lo), seg_at(gs, lo)
        out.append(
            (
                Segment(lo, hi, sf.coeff, sf.exponent, sf.shift),
                Segment(lo, hi, sg.coeff, sg.exponent, sg.shift),
            )
        )
    return out


def add_profiles(f: DecreasingProfile, g: DecreasingProfile) -> DecreasingProfile:
    """Pointwise sum, staying in the grammar; raises when a cell sum leaves it."""
    pieces: list[PowerPiece] = []
    tail = Tail.zero()
    cells = overlay(f, g)
    for sf, sg in cells:
        if sf.coeff.is_zero():
            coeff, expo, shift = sg.coeff, sg.exponent, sg.shift
        elif sg.coeff.is_zero():
            coeff, expo, shift = sf.coeff, sf.exponent, sf.shift
        elif sf.exponent == 0 and sg.exponent == 0:
            coeff, expo, shift = sf.coeff + sg.coeff, F0, F0
        elif sf.exponent == sg.exponent and sf.shift == sg.shift:
            coeff, expo, shift = sf.coeff + sg.coeff, sf.exponent, sf.shift
        else:
            raise UnsupportedOperationError(
                f"sum leaves the piecewise-power family on [{sf.left}, "
                f"{'inf' if sf.right is None else sf.right})"
            )
        if sf.right is None:
            if coeff.is_zero():
                tail = Tail.zero()
            elif expo == 0:
                tail = Tail.constant(coeff)
            else:
                tail = Tail(Tail.POWER, coeff, expo, shift)
        else:
            pieces.append(PowerPiece(Interval(sf.left, sf.right), coeff, expo, shift))
    return DecreasingProfile(tuple(pieces), tail)


def scale_profile(f: DecreasingProfile, r: Scalar | RationalLike) -> DecreasingProfile:
    r = r if isinstance(r, Scalar) else Scalar.exact(r)
    if not r.is_finite or r < ZERO:
        raise ValidationError("profile scale must be finite and non-negative")
    if r.is_zero():
        return zero_profile()
    pieces = tuple(
        PowerPiece(p.interval, p.coeff * r, p.exponent, p.shift) for p in f.pieces
    )
    t = f.tail
    tail = t if t.kind == Tail.ZERO_KIND else Tail(t.kind, t.coeff * r, t.exponent, t.shift)
    return DecreasingProfile(pieces, tail)


def _le_near_zero(a: Segment, b: Segment) -> bool:
    """a <= b on a right neighborhood of 0 (atoms may blow up there)."""
    va, vb = a.value_at(F0), b.value_at(F0)
    if not va.is_inf and not vb.is_inf:
        return va <= vb
    if va.is_inf and not vb.is_inf:
        return False
    if not va.is_inf and vb.is_inf:
        return True
    # both blow up: larger exponent means smaller values near 0
    if a.exponent != b.exponent:
        return a.exponent > b.exponent
    return a.coeff <= b.coeff


def _le_near_inf(a: Segment, b: Segment) -> bool:
    """a <= b on a neighborhood of +inf."""
    la = a.coeff if a.exponent == 0 else ZERO
    lb = b.coeff if b.exponent == 0 else ZERO
    if la != lb:
        return la < lb
    if la > ZERO:  # both constant with equal limits
        return True
    if a.coeff.is_zero():
        return True
    if b.coeff.is_zero():
        return False
    # both decay: the slower decayer dominates eventually
    if a.exponent != b.exponent:
        return a.exponent < b.exponent
    if a.coeff != b.coeff:
        return a.coeff < b.coeff
    return a.shift >= b.shift


def pointwise_le(f: DecreasingProfile, g: DecreasingProfile) -> bool:
    """Exact pointwise f <= g on [0, inf).

    Within each overlay cell the ratio of two power atoms is unimodal,
    so it suffices to compare at the endpoints and at the single
    interior critical point of the ratio, which is rational.
    """
    for sf, sg in overlay(f, g):
        if sf.coeff.is_zero():
            continue
        if sg.coeff.is_zero():
            return False
        if sf.left == 0:
            if not _le_near_zero(sf, sg):
                return False
        else:
            if _compare_piecelike(sf, sg, sf.left) > 0:
                return False
        if sf.right is None:
            if not _le_near_inf(sf, sg):
                return False
        else:
            if _compare_piecelike(sf, sg, sf.right) > 0:
                return False
        a1, s1, a2, s2 = sf.exponent, sf.shift, sg.exponent, sg.shift
        if a1 != a2:
            den = a1 - a2
            t_star = (a2 * s1 - a1 * s2) / den
            lo, hi = sf.left, sf.right
            if t_star > lo and (hi is None or t_star < hi):
                if _compare_piecelike(sf, sg, t_star) > 0:
                    return False
    return True


def product_integral(
    f: DecreasingProfile, g: DecreasingProfile, window: Interval | None = None
) -> Scalar:
    """Integral of the pointwise product f*g over window (default all of [0, inf))."""
    total = ZERO
    for sf, sg in overlay(f, g):
        lo, hi = sf.left, sf.right
        if window is not None:
            cell = Interval(lo, hi).intersect(window)
            if cell is None:
                continue
            lo, hi = cell.left, cell.right
        if sf.coeff.is_zero() or sg.coeff.is_zero():
            continue
        if sf.exponent == 0:
            total = total + power_integral(sf.coeff * sg.coeff, sg.exponent, sg.shift, lo, hi)
        elif sg.exponent == 0:
            total = total + power_integral(sf.coeff * sg.coeff, sf.exponent, sf.shift, lo, hi)
        elif sf.shift == sg.shift:
            total = total + power_integral(
                sf.coeff * sg.coeff, sf.exponent + sg.exponent, sf.shift, lo, hi
            )
        else:
            raise UnsupportedOperationError(
                f"product of shifted powers with different shifts on [{lo}, "
                f"{'inf' if hi is None else hi}) has no closed form here"
            )
    return total


def truncate_level(
    p: DecreasingProfile, level: RationalLike
) -> tuple[DecreasingProfile, bool]:
    """Pointwise min(p, level); second result reports whether it is exact.

    An irrational crossing of the level is replaced by a rational point
    one float ulp above it, which keeps the result non-increasing (the
    flat cap extends by at most that ulp); the flag then turns False.
    """
    level = as_fraction(level)
    if level <= 0:
        raise ValidationError("truncation level must be positive")
    lv = Scalar.exact(level)
    exact = True
    pieces: list[PowerPiece] = []
    tail = p.tail

    def crossing(seg, lo: Fraction, hi: Fraction | None) -> tuple[Fraction | None, bool]:
        # first t in (lo, hi) with value <= level, given value(lo) > level;
        # None means the level is never reached inside the cell
        if seg.exponent == 0:
            return None, True
        base = (lv / seg.coeff).pow(F1 / seg.exponent)
        if base.is_exact:
            t = base.as_fraction() - seg.shift
            ok = True
        else:
            raw = Fraction(math.nextafter(base.as_float(), math.inf))
            if seg.coeff.is_exact:
                # float pow is not correctly rounded, so a single ulp may not
                # clear the true crossing; bump until the cap level dominates
                c = seg.coeff.as_fraction()
                for _ in range(8):
                    if compare_powers(c, raw, seg.exponent, level, F1, F0) <= 0:
                        break
                    raw = Fraction(math.nextafter(float(raw), math.inf))
            t = raw - seg.shift
            ok = False
        if t <= lo:
            t = lo  # only reachable through the ulp slack
        if hi is not None and t >= hi:
            return None, True
        return t, ok

    for piece in p.pieces:
        iv = piece.interval
        if _cmp_values(piece.value_at(iv.left), lv) <= 0:
            pieces.append(piece)
            continue
        t, ok = crossing(piece, iv.left, iv.right)
        exact = exact and ok
        if t is None:
            pieces.append(PowerPiece(iv, lv))
        else:
            if t > iv.left:
                pieces.append(PowerPiece(Interval(iv.left, t), lv))
            pieces.append(
                PowerPiece(Interval(t, iv.right), piece.coeff, piece.exponent, piece.shift)
            )
    t0 = p.tail_start()
    if tail.kind == Tail.CONSTANT and tail.coeff > lv:
        tail = Tail.constant(lv)
    elif tail.kind == Tail.POWER and _cmp_values(tail.value_at(t0), lv) > 0:
        seg = Segment(t0, None, tail.coeff, tail.exponent, tail.shift)
        t, ok = crossing(seg, t0, None)
        exact = exact and ok
        if t is not None and t > t0:
            pieces.append(PowerPiece(Interval(t0, t), lv))
        # the power tail resumes where the flat cap ends
    return DecreasingProfile(tuple(pieces), tail), exact


# ---------------------------------------------------------------------------
# step functions


def _aligned(x: Fraction, beta: Fraction) -> bool:
    return (x / beta).denominator == 1


@dataclass(frozen=True)
class StepFunction:
    """Non-negative simple function on a resonant measure space.

    pieces are (interval, value) with implicit zero elsewhere.  On an
    atomic space each interval must align with the atom cells
    [n*beta, (n+1)*beta), so the function is constant on atoms; measure
    and Lebesgue integrals then agree with the counting-weighted ones.
    """

    space: MeasureSpace
    pieces: tuple[tuple[Interval, Fraction], ...]

    def __post_init__(self):
        for _, v in self.pieces:
            if not isinstance(v, Fraction):
                raise ValidationError("step values must be Fractions")
            if v < 0:
                raise ValidationError("step values must be non-negative (modulus at parse time)")
        cleaned = sorted(
            ((iv, v) for iv, v in self.pieces if v != 0),
            key=lambda q: q[0].left,
        )
        for (iv1, _), (iv2, _) in zip(cleaned, cleaned[1:]):
            if iv1.right is None or iv2.left < iv1.right:
                raise ValidationError(f"overlapping pieces at {iv2.left}")
        bound = space_bound(self.space)
        for iv, _ in cleaned:
            if bound is not None and (iv.right is None or iv.right > bound):
                raise ValidationError(
                    f"piece {iv} exceeds the space's total measure {bound}"
                )
            if isinstance(self.space, Atomic):
                if not _aligned(iv.left, self.space.beta) or (
                    iv.right is not None and not _aligned(iv.right, self.space.beta)
                ):
                    raise ValidationError(
                        f"piece {iv} is not aligned to atom cells of mass {self.space.beta}"
                    )
                if iv.right is None and self.space.count is not None:
                    raise ValidationError("unbounded piece on a finite atomic space")
        # merge adjacent pieces of equal value
        merged: list[tuple[Interval, Fraction]] = []
        for iv, v in cleaned:
            if merged:
                jv, w = merged[-1]
                if w == v and jv.right == iv.left:
                    merged[-1] = (Interval(jv.left, iv.right), v)
                    continue
            merged.append((iv, v))
        object.__setattr__(self, "pieces", tuple(merged))

    def value_at(self, t: Fraction) -> Fraction:
        for iv, v in self.pieces:
            if iv.contains(t):
                return v
        return F0

    def integral(self, window: Interval | None = None) -> Scalar:
        total = ZERO
        for iv, v in self.pieces:
            part = iv if window is None else iv.intersect(window)
            if part is None or v == 0:
                continue
            total = total + Scalar.exact(v) * part.length()
        return total

    def level_sets(self) -> list[tuple[Fraction, Scalar]]:
        """Distinct positive values with their measures, sorted descending."""
        acc: dict[Fraction, Scalar] = {}
        for iv, v in self.pieces:
            if v == 0:
                continue
            acc[v] = acc.get(v, ZERO) + iv.length()
        return sorted(acc.items(), key=lambda q: q[0], reverse=True)

    def endpoints(self) -> list[Fraction]:
        pts = {F0}
        for iv, _ in self.pieces:
            pts.add(iv.left)
            if iv.right is not None:
                pts.add(iv.right)
        return sorted(pts)


def _step_combine(f: StepFunction, g: StepFunction, op) -> StepFunction:
    if f.space != g.space:
        raise ValidationError("combining step functions needs a common measure space")
    cuts = sorted(set(f.endpoints()) | set(g.endpoints()))
    out: list[tuple[Interval, Fraction]] = []
    for i, lo in enumerate(cuts):
        hi = cuts[i + 1] if i + 1 < len(cuts) else None
        v = op(f.value_at(lo), g.value_at(lo))
        if v != 0:
            out.append((Interval(lo, hi), v))
    return StepFunction(f.space, tuple(out))


def step_product(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise product of two step functions on the same measure space."""
    return _step_combine(f, g, lambda a, b: a * b)


def step_add(f: StepFunction, g: StepFunction) -> StepFunction:
    """Pointwise sum of two step functions on the same measure space."""
    return _step_combine(f, g, lambda a, b: a + b)


def integrate(
    f: Union[StepFunction, DecreasingProfile], window: Interval | None = None
) -> Scalar:
    """Integral of a step function or profile over a window (default: everything)."""
    if isinstance(f, (StepFunction, DecreasingProfile)):
        return f.integral(window)
    raise TypeError(f"cannot integrate {type(f).__name__}")
