"""Seeded generators for the probe and verification harnesses.

Everything here is a pure function of the supplied random.Random, so a
fixed seed reproduces every suite byte for byte.  Generators only emit
objects the exact core accepts: rational data, non-negative shifts,
power pieces whose endpoint values stay rational whenever downstream
checks demand exact equality.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .acontinuity import ShrinkFamily, custom_family
from .errors import ValidationError
from .functions import (
    Atomic,
    DecreasingProfile,
    MeasureSpace,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
    scale_profile,
    space_bound,
    steps_profile,
)
from .intervals import Interval, IntervalSet
from .scalars import Scalar, rational_pow
from .spaces import FundamentalFn, identity_phi, phi_from_power

DEFAULT_SEED = 106033

F0 = Fraction(0)
F1 = Fraction(1)


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


_DENOMS = (1, 2, 3, 4, 6, 8)


def rand_frac(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    den = rng.choice(_DENOMS)
    lo_n = int(lo * den)
    hi_n = int(hi * den)
    if hi_n < lo_n:
        hi_n = lo_n
    return Fraction(rng.randint(lo_n, hi_n), den)


def _pos_frac(rng: random.Random, hi: Fraction) -> Fraction:
    v = rand_frac(rng, F0, hi)
    return v if v > 0 else Fraction(1, 8)


# ---------------------------------------------------------------------------
# step functions


def step_function(
    space: MeasureSpace, rng: random.Random, max_runs: int = 4
) -> StepFunction:
    """A random non-negative step function living on the given base."""
    pieces: list[tuple[Interval, Fraction]] = []
    if isinstance(space, Atomic):
        beta = space.beta
        cells = 8 if space.count is None else min(space.count, 8)
        pos = 0
        while pos < cells and len(pieces) < max_runs:
            if rng.random() < 0.3:
                pos += rng.randint(1, 2)
                continue
            run = rng.randint(1, 3)
            run = min(run, cells - pos)
            v = _pos_frac(rng, Fraction(8))
            pieces.append((Interval(beta * pos, beta * (pos + run)), v))
            pos += run + (1 if rng.random() < 0.4 else 0)
    else:
        bound = space_bound(space)
        top = Fraction(8) if bound is None else bound
        cuts = sorted({rand_frac(rng, F0, top) for _ in range(2 * max_runs)})
        cuts = [c for c in cuts if 0 < c <= top]
        if not cuts:
            cuts = [top]
        prev = F0
        for c in cuts:
            if rng.random() < 0.7 and c > prev:
                pieces.append((Interval(prev, c), _pos_frac(rng, Fraction(8))))
            prev = c
    if not pieces:
        unit = space.beta if isinstance(space, Atomic) else F1
        b = space_bound(space)
        if b is not None and unit > b:
            unit = b
        pieces.append((Interval(F0, unit), F1))
    return StepFunction(space, tuple(pieces))


def step_pair(
    space: MeasureSpace, rng: random.Random
) -> tuple[StepFunction, StepFunction]:
    return step_function(space, rng), step_function(space, rng)


def aligned_pair(
    space: MeasureSpace, rng: random.Random
) -> tuple[StepFunction, StepFunction]:
    """Two functions already arranged non-increasingly over a shared
    grid from zero; for such pairs the product integral equals the
    rearranged product integral."""
    unit = space.beta if isinstance(space, Atomic) else rng.choice((Fraction(1, 2), F1))
    bound = space_bound(space)
    n = rng.randint(2, 5)
    if bound is not None:
        n = min(n, max(1, int(bound / unit)))

    def stack() -> StepFunction:
        vals: list[Fraction] = []
        level = rand_frac(rng, Fraction(2), Fraction(8))
        for _ in range(n):
            vals.append(level)
            level = level * rand_frac(rng, Fraction(1, 4), F1)
        pieces = tuple(
            (Interval(unit * i, unit * (i + 1)), v)
            for i, v in enumerate(vals)
            if v > 0
        )
        return StepFunction(space, pieces)

    return stack(), stack()


GRID = Fraction(1, 64)


def grid_step_function(rng: random.Random, max_runs: int = 6) -> StepFunction:
    """Support on the 1/64 grid inside [0, 4); exercised against the
    brute-force grid oracle."""
    taken: list[tuple[Interval, Fraction]] = []
    cells = 256
    used: set[int] = set()
    for _ in range(rng.randint(1, max_runs)):
        start = rng.randrange(cells)
        length = rng.randint(1, 24)
        span = set(range(start, min(start + length, cells)))
        if span & used:
            continue
        used |= span
        taken.append(
            (Interval(GRID * start, GRID * min(start + length, cells)),
             _pos_frac(rng, Fraction(8)))
        )
    if not taken:
        taken.append((Interval(F0, GRID), F1))
    taken.sort(key=lambda iv: iv[0].left)
    return StepFunction(NonAtomic(None), tuple(taken))


# ---------------------------------------------------------------------------
# profiles


def decreasing_steps(
    rng: random.Random, max_runs: int = 5, max_value: Fraction = Fraction(8)
) -> DecreasingProfile:
    n = rng.randint(1, max_runs)
    level = rand_frac(rng, F1, max_value)
    pairs: list[tuple[Fraction, Fraction]] = []
    for _ in range(n):
        width = rand_frac(rng, Fraction(1, 4), Fraction(3))
        if width == 0 or level == 0:
            break
        pairs.append((level, width))
        level = level * rand_frac(rng, F0, F1)
    if not pairs:
        pairs = [(F1, F1)]
    return steps_profile(pairs)


# head exponents paired with widths whose power stays rational
_HEAD_TABLE: dict[Fraction, tuple[Fraction, ...]] = {
    Fraction(-1, 4): (F1, Fraction(16)),
    Fraction(-1, 3): (F1, Fraction(8)),
    Fraction(-1, 2): (Fraction(1, 4), F1, Fraction(9, 4), Fraction(4)),
    Fraction(-2): (Fraction(1, 2), F1, Fraction(2)),
}


def _attach_tail(
    pieces: tuple[PowerPiece, ...],
    exponent: Fraction,
    shift: Fraction,
    guide: float,
) -> Tail:
    """Largest small-denominator coefficient (guided by a float
    estimate) whose power tail still fits under the current level; the
    profile constructor is the exact judge."""
    c = Fraction(int(guide * 16), 16)
    for _ in range(8):
        if c <= 0:
            return Tail.zero()
        try:
            DecreasingProfile(pieces=pieces, tail=Tail.power(c, exponent, shift))
            return Tail.power(c, exponent, shift)
        except ValidationError:
            c = c / 2
    return Tail.zero()


def mixed_profile(
    rng: random.Random,
    head_exponents: Sequence[Fraction] = (Fraction(-1, 4), Fraction(-1, 2)),
    tail_exponents: Sequence[Fraction] = (Fraction(-2), Fraction(-3)),
    allow_const_tail: bool = False,
    max_value: Fraction = Fraction(8),
) -> DecreasingProfile:
    """Power head (optional), constant runs, then a zero, constant, or
    power tail; monotone by construction with exact validation."""
    pieces: list[PowerPiece] = []
    t = F0
    level = rand_frac(rng, F1, max_value)
    if head_exponents and rng.random() < 0.4:
        a = rng.choice(list(head_exponents))
        w = rng.choice(_HEAD_TABLE[a])
        c = _pos_frac(rng, Fraction(2))
        pieces.append(PowerPiece(Interval(F0, w), Scalar.exact(c), a))
        t = w
        level = c * rational_pow(w, a)
    runs = rng.randint(0 if pieces else 1, 3)
    for _ in range(runs):
        if level == 0:
            break
        v = level * rand_frac(rng, Fraction(1, 4), F1)
        if v == 0:
            break
        w = rand_frac(rng, Fraction(1, 4), Fraction(3))
        if w == 0:
            continue
        pieces.append(PowerPiece(Interval(t, t + w), Scalar.exact(v)))
        t += w
        level = v
    base = tuple(pieces)
    roll = rng.random()
    if level == 0 or roll < 0.35 or not base:
        tail = Tail.zero()
    elif allow_const_tail and roll < 0.55:
        tail = Tail.constant(level * rand_frac(rng, Fraction(1, 4), F1))
    else:
        a = rng.choice(list(tail_exponents))
        s = rng.choice((F0, Fraction(1, 2), F1))
        u = t + s
        guide = float(level) * float(u) ** float(-a) * 0.9 if u > 0 else 0.0
        tail = _attach_tail(base, a, s, guide)
    return DecreasingProfile(pieces=base, tail=tail)


def integrable_profile(rng: random.Random) -> DecreasingProfile:
    """Finite first and second power integrals: heads above -1/2,
    tails at or below -2."""
    return mixed_profile(
        rng,
        head_exponents=(Fraction(-1, 4), Fraction(-1, 3)),
        tail_exponents=(Fraction(-2), Fraction(-3)),
        allow_const_tail=False,
    )


def rational_transfer_profile(rng: random.Random) -> DecreasingProfile:
    """Integer power exponents glued continuously, so every partial
    integral at a rational point is rational."""
    pieces: list[PowerPiece] = []
    t = F0
    level = rand_frac(rng, Fraction(2), Fraction(8))
    for _ in range(rng.randint(1, 3)):
        w = rng.choice((Fraction(1, 2), F1, Fraction(3, 2), Fraction(2)))
        if rng.random() < 0.5:
            v = level * rand_frac(rng, Fraction(1, 3), F1)
            if v == 0:
                break
            pieces.append(PowerPiece(Interval(t, t + w), Scalar.exact(v)))
            level = v
        else:
            a = rng.choice((Fraction(-2), Fraction(-3)))
            sigma = rng.choice((Fraction(1, 2), F1, Fraction(2)))
            c = level * (t + sigma) ** int(-a)
            pieces.append(PowerPiece(Interval(t, t + w), Scalar.exact(c), a, sigma))
            level = c / (t + w + sigma) ** int(-a)
        t += w
    if not pieces:
        pieces.append(PowerPiece(Interval(F0, F1), Scalar.exact(level)))
        t = F1
    if rng.random() < 0.5 or level == 0:
        tail = Tail.zero()
    else:
        a = rng.choice((Fraction(-2), Fraction(-3)))
        sigma = rng.choice((Fraction(1, 2), F1))
        c = level * (t + sigma) ** int(-a)
        tail = Tail.power(c, a, sigma)
    return DecreasingProfile(pieces=tuple(pieces), tail=tail)


def ac_profile(rng: random.Random) -> DecreasingProfile:
    """Profiles tuned so the vanishing-set simulations settle within
    the harness budget: blow-up heads no steeper than -1/4 with small
    coefficients, decay tails at -2 or below, plus the constant-tail
    and hyperbolic-tail shapes whose limits are exact."""
    kind = rng.choices(
        ("steps", "head", "decay", "const", "hyper"), weights=(3, 2, 3, 2, 2)
    )[0]
    if kind == "steps":
        return decreasing_steps(rng)
    if kind == "head":
        a = Fraction(-1, 4)
        w = rng.choice(_HEAD_TABLE[a])
        c = _pos_frac(rng, Fraction(2))
        pieces = (PowerPiece(Interval(F0, w), Scalar.exact(c), a),)
        level = c * rational_pow(w, a)
        if rng.random() < 0.5:
            return DecreasingProfile(pieces=pieces, tail=Tail.zero())
        guide = float(level) * float(w) ** 2 * 0.9
        return DecreasingProfile(
            pieces=pieces, tail=_attach_tail(pieces, Fraction(-2), F0, guide)
        )
    if kind == "decay":
        return mixed_profile(rng, head_exponents=())
    if kind == "const":
        p = decreasing_steps(rng, max_runs=3)
        last = p.pieces[-1]
        c = last.coeff.as_fraction() * rand_frac(rng, Fraction(1, 4), F1)
        if c == 0:
            c = last.coeff.as_fraction() / 2
        return DecreasingProfile(pieces=p.pieces, tail=Tail.constant(c))
    v = rand_frac(rng, F1, Fraction(4))
    w = rng.choice((Fraction(1, 2), F1, Fraction(2)))
    pieces = (PowerPiece(Interval(F0, w), Scalar.exact(v)),)
    return DecreasingProfile(pieces=pieces, tail=Tail.power(v * w, Fraction(-1)))


# ---------------------------------------------------------------------------
# ordered pairs


def hlp_pair(
    rng: random.Random,
) -> tuple[DecreasingProfile, DecreasingProfile]:
    """(f, g) with f below g in the partial-integral order: g is f
    scaled up, or f with mass moved toward zero."""
    m = rng.randint(3, 6)
    width = rng.choice((Fraction(1, 2), F1, Fraction(2)))
    vals: list[Fraction] = []
    level = rand_frac(rng, Fraction(2), Fraction(8))
    for _ in range(m):
        vals.append(level)
        level = level * rand_frac(rng, Fraction(1, 4), F1)
    f = steps_profile([(v, width) for v in vals if v > 0])
    mode = rng.random()
    if mode < 0.2:
        return f, f
    if mode < 0.5:
        return f, scale_profile(f, F1 + rand_frac(rng, Fraction(1, 8), F1))
    vals = [v for v in vals if v > 0]
    if len(vals) < 2:
        return f, scale_profile(f, Fraction(2))
    i = rng.randrange(len(vals) - 1)
    j = rng.randrange(i + 1, len(vals))
    up_room = vals[i - 1] - vals[i] if i > 0 else Fraction(8)
    down_room = vals[j] - (vals[j + 1] if j + 1 < len(vals) else F0)
    e = min(up_room, down_room) * rand_frac(rng, F0, F1)
    moved = list(vals)
    moved[i] += e
    moved[j] -= e
    g = steps_profile([(v, width) for v in moved if v > 0])
    return f, g


def pointwise_pair(
    rng: random.Random,
) -> tuple[DecreasingProfile, DecreasingProfile]:
    """(f, g) with f <= g everywhere."""
    g = decreasing_steps(rng)
    if rng.random() < 0.5:
        lam = rand_frac(rng, Fraction(1, 8), F1)
        if lam == 0:
            lam = Fraction(1, 8)
        return scale_profile(g, lam), g
    floor = F0
    lowered: list[tuple[Fraction, Fraction]] = []
    for piece in reversed(g.pieces):
        v = piece.coeff.as_fraction()
        lo = v * rand_frac(rng, Fraction(1, 4), F1)
        lo = max(lo, floor)
        floor = lo
        width = piece.interval.right - piece.interval.left
        lowered.append((lo, width))
    lowered.reverse()
    f = steps_profile([(v, w) for v, w in lowered if v > 0] or [(F1, F1)])
    if not any(v > 0 for v, _ in lowered):
        f = scale_profile(g, Fraction(1, 2))
    return f, g


# ---------------------------------------------------------------------------
# families and fundamental functions


def shrink_families(rng: random.Random, count: int = 20, depth: int = 19) -> tuple[ShrinkFamily, ...]:
    """Random vanishing families: shrinking heads, windows sliding off
    to the right, and unions of both."""
    fams: list[ShrinkFamily] = []
    for _ in range(count):
        mode = rng.choice(("heads", "windows", "mixed"))
        q = rand_frac(rng, Fraction(1, 2), F1)
        a = rng.choice((F1, Fraction(3, 2), Fraction(2)))
        w = rand_frac(rng, Fraction(1, 4), F1)
        if q == 0:
            q = F1
        if w == 0:
            w = Fraction(1, 4)
        sets = []
        for j in range(depth):
            parts = []
            if mode in ("heads", "mixed"):
                parts.append(Interval(F0, q / 2**j))
            if mode in ("windows", "mixed"):
                parts.append(Interval(a * 2**j, a * 2**j + w))
            sets.append(IntervalSet.of(*parts))
        fams.append(custom_family(sets))
    return tuple(fams)


_PHIS: tuple[FundamentalFn, ...] | None = None


def classification_phis() -> tuple[FundamentalFn, ...]:
    """Five fundamental functions covering linear, sublinear,
    superlinear, rescaled, and eventually-flat growth."""
    global _PHIS
    if _PHIS is None:
        capped = FundamentalFn(
            pieces=(PowerPiece(Interval(F0, F1), Scalar.exact(F1), F1),),
            tail=Tail.constant(F1),
        )
        _PHIS = (
            identity_phi(),
            phi_from_power(Fraction(2), F1),
            phi_from_power(F1, Fraction(1, 2)),
            phi_from_power(F1, Fraction(3, 2)),
            capped,
        )
    return _PHIS


def weak_case(
    rng: random.Random,
) -> tuple[FundamentalFn, DecreasingProfile]:
    phi = rng.choice(classification_phis())
    roll = rng.random()
    if roll < 0.5:
        return phi, ac_profile(rng)
    return phi, mixed_profile(
        rng,
        head_exponents=(Fraction(-1, 2), Fraction(-1, 4)),
        allow_const_tail=True,
    )


# ---------------------------------------------------------------------------
# axiom-harness inputs


def hyper_head_profile() -> DecreasingProfile:
    """1/t on (0, 1): finite weak norm against the identity weight but
    a divergent integral over [0, 1)."""
    return DecreasingProfile(
        pieces=(PowerPiece(Interval(F0, F1), Scalar.exact(F1), Fraction(-1)),),
        tail=Tail.zero(),
    )


def disjoint_function_pair(
    space: MeasureSpace, rng: random.Random
) -> tuple[StepFunction, StepFunction]:
    """Two step functions with disjoint supports, for quasi-triangle
    probing at the function level."""
    bound = space_bound(space)
    if isinstance(space, Atomic):
        unit = space.beta
        hi = 6 if space.count is None else max(2, space.count)
    else:
        unit = rng.choice((Fraction(1, 2), F1))
        if bound is not None and unit * 4 > bound:
            unit = bound / 4
        hi = 6 if bound is None else int(bound / unit)
    cuts = sorted(rng.sample(range(hi + 1), 3)) if hi >= 2 else [0, 1, 2]
    a, b, c = (unit * x for x in cuts)
    f = StepFunction(space, ((Interval(a, b), _pos_frac(rng, Fraction(4))),))
    g = StepFunction(space, ((Interval(b, c), _pos_frac(rng, Fraction(4))),))
    return f, g


def axiom_profiles(rng: random.Random, n: int) -> tuple[DecreasingProfile, ...]:
    out: list[DecreasingProfile] = []
    while len(out) < n:
        r = rng.random()
        if r < 0.6:
            out.append(decreasing_steps(rng))
        else:
            out.append(mixed_profile(rng, allow_const_tail=False))
    return tuple(out)
