"""Exact majorization ordering of decreasing profiles by partial
integrals, with witnesses, plus the norm-monotonicity and embedding
probes built on it.

f is majorized by g when the primitive of f never exceeds the
primitive of g.  Within one overlay cell the primitive difference H
has critical points only where the two atoms cross, and two power
atoms cross at most twice with closed-form locations in the cases this
module supports (a constant involved, or equal shifts).  The tail cell
is decided symbolically by comparing growth keys (degree, log flag,
leading coefficient) before any scanning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    NonIntegrableHeadError,
    UnsupportedOperationError,
)
from .functions import (
    DecreasingProfile,
    Segment,
    overlay,
    power_integral,
)
from .intervals import Interval
from .scalars import REL_TOL, Scalar, ZERO
from .spaces import SpaceDescriptor, evaluate_norm, sum_space, intersection_space

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class HlpVerdict:
    majorized: bool
    witness: Fraction | None
    f_primitive: Scalar | None
    g_primitive: Scalar | None

    def __post_init__(self):
        if self.majorized and self.witness is not None:
            raise ValueError("a majorized verdict carries no witness")
        if not self.majorized and self.witness is None:
            raise ValueError("a rejection needs a witness")


def _head_divergent(p: DecreasingProfile) -> bool:
    seg = p.segments()[0]
    return not seg.coeff.is_zero() and seg.shift == 0 and seg.exponent <= -1


def _seg_integral(seg: Segment, lo: Fraction, hi: Fraction | None) -> Scalar:
    return power_integral(seg.coeff, seg.exponent, seg.shift, lo, hi)


def _positive(x: Scalar) -> bool:
    """Strictly positive, beyond tolerance once floats are involved."""
    if x.is_inf:
        return True
    if x.is_exact:
        return x > ZERO
    return x.as_float() > REL_TOL


def _atom_crossings(fs: Segment, gs: Segment, u: Fraction, v: Fraction | None) -> list[Fraction]:
    """Interior points of (u, v) where the two atom formulas are equal.

    Only configurations with closed-form crossings are handled; two
    non-constant powers with different shifts have none here and raise.
    """
    if fs.coeff.is_zero() or gs.coeff.is_zero():
        return []
    c1, a1, s1 = fs.coeff, fs.exponent, fs.shift
    c2, a2, s2 = gs.coeff, gs.exponent, gs.shift
    out: list[Fraction] = []

    def solve(cr: Scalar, inv_exp: Fraction, shift: Fraction) -> None:
        base = cr.pow(inv_exp)
        t = (base.as_fraction() if base.is_exact else Fraction(base.as_float())) - shift
        if t > u and (v is None or t < v):
            out.append(t)

    if a1 == 0 and a2 == 0:
        return []
    if a2 == 0:
        solve(c2 / c1, F1 / a1, s1)
    elif a1 == 0:
        solve(c1 / c2, F1 / a2, s2)
    elif s1 == s2:
        if a1 != a2:
            solve(c2 / c1, F1 / (a1 - a2), s1)
    else:
        raise UnsupportedOperationError(
            "crossings of shifted powers with different shifts have no "
            f"closed form here (cell starting at {u})"
        )
    return out


def _growth_key(seg: Segment) -> tuple[Fraction, int, Scalar]:
    """(degree, log flag, coefficient) of the primitive's growth.

    Degree and log flag rank how fast the primitive grows; the coefficient
    is the leading one for unbounded growth and the remaining mass when the
    primitive settles (exponent below -1, or a zero segment).
    """
    if seg.coeff.is_zero():
        return (F0, 0, ZERO)
    a = seg.exponent
    if a == 0:
        return (F1, 0, seg.coeff)
    if a > -1:
        return (a + 1, 0, seg.coeff / Scalar.exact(a + 1))
    if a == -1:
        return (F0, 1, seg.coeff)
    return (F0, 0, _seg_integral(seg, seg.left, None))


def _rank_cmp(kf, kg) -> int:
    if kf[0] != kg[0]:
        return 1 if kf[0] > kg[0] else -1
    if kf[1] != kg[1]:
        return 1 if kf[1] > kg[1] else -1
    return 0


def _tail_limit_difference(fs: Segment, gs: Segment, T: Fraction) -> Scalar:
    """Limit of the primitive difference over [T, inf) when the growing
    parts cancel exactly (equal rank, equal leading coefficient).

    Only the shift mismatch survives the cancellation; tail exponents of
    decreasing profiles never exceed 0, so that remainder is finite.
    """
    a = fs.exponent
    if a == 0:
        return ZERO  # constants ignore the shift entirely
    if a == -1:
        import math

        r = (T + gs.shift) / (T + fs.shift)
        return fs.coeff * Scalar.approx(math.log(r))
    q = a + 1
    d = Scalar.exact(T + gs.shift).pow(q) - Scalar.exact(T + fs.shift).pow(q)
    return fs.coeff * d / Scalar.exact(q)


def hlp_compare(
    f: DecreasingProfile,
    g: DecreasingProfile,
    divergent_majorizes: bool = False,
) -> HlpVerdict:
    """Exact verdict on whether f's primitive stays below g's everywhere.

    Profiles whose head integral diverges have an identically infinite
    primitive; they are rejected unless divergent_majorizes is set, in
    which case such a g majorizes everything (and such an f exceeds any
    integrable g at every point).
    """
    f_div, g_div = _head_divergent(f), _head_divergent(g)
    if f_div or g_div:
        if not divergent_majorizes:
            raise NonIntegrableHeadError(
                "a profile with a divergent head has an infinite primitive; "
                "the comparison is degenerate (set divergent_majorizes to allow it)"
            )
        if g_div:
            return HlpVerdict(True, None, None, None)
        w = F1
        return HlpVerdict(False, w, f.integral(Interval(F0, w)), g.integral(Interval(F0, w)))

    def verified(witness: Fraction) -> HlpVerdict | None:
        if witness <= 0:
            return None
        Fw = f.integral(Interval(F0, witness))
        Gw = g.integral(Interval(F0, witness))
        if _positive(Fw - Gw):
            return HlpVerdict(False, witness, Fw, Gw)
        return None

    Fu, Gu = ZERO, ZERO
    for fs, gs in overlay(f, g):
        u, v = fs.left, fs.right
        if v is not None:
            candidates = [v]
            candidates.extend(_atom_crossings(fs, gs, u, v))
            for t in candidates:
                h = Fu - Gu + _seg_integral(fs, u, t) - _seg_integral(gs, u, t)
                if _positive(h):
                    got = verified(t)
                    if got is not None:
                        return got
            Fu = Fu + _seg_integral(fs, u, v)
            Gu = Gu + _seg_integral(gs, u, v)
            continue
        # tail cell
        kf, kg = _growth_key(fs), _growth_key(gs)
        rank = _rank_cmp(kf, kg)
        if rank > 0:
            eventually_positive = True
        elif rank < 0:
            eventually_positive = False
        elif kf[0] == 0 and not kf[1]:
            # both primitives settle; a mass advantage alone proves nothing,
            # only the exact limit against the accumulated deficit does
            eventually_positive = _positive(Fu - Gu + (kf[2] - kg[2]))
        elif kf[2] != kg[2]:
            eventually_positive = kf[2] > kg[2]
        else:
            eventually_positive = _positive(Fu - Gu + _tail_limit_difference(fs, gs, u))
        if eventually_positive:
            # the difference is eventually positive; walk out until visible
            t = max(u, F1)
            for _ in range(4000):
                got = verified(t)
                if got is not None:
                    return got
                t *= 2
            raise AssertionError("tail analysis promised a witness but none was found")
        # the difference ends below zero but can still bulge past it once,
        # right where the densities cross
        for t in _atom_crossings(fs, gs, u, None):
            h = Fu - Gu + _seg_integral(fs, u, t) - _seg_integral(gs, u, t)
            if _positive(h):
                got = verified(t)
                if got is not None:
                    return got
    return HlpVerdict(True, None, None, None)


# ---------------------------------------------------------------------------
# probes


@dataclass(frozen=True)
class PrincipleViolation:
    index: int
    f: DecreasingProfile
    g: DecreasingProfile
    f_norm: Scalar
    g_norm: Scalar


@dataclass(frozen=True)
class PrincipleReport:
    checked: int
    violation: PrincipleViolation | None

    @property
    def holds(self) -> bool:
        return self.violation is None

    def describe(self) -> str:
        if self.violation is None:
            return f"no violation in {self.checked} pairs"
        v = self.violation
        return (
            f"pair {v.index}: smaller element has norm {v.f_norm} > {v.g_norm}"
        )


def hlp_principle_probe(
    desc: SpaceDescriptor,
    pairs: Iterable[tuple[DecreasingProfile, DecreasingProfile]],
) -> PrincipleReport:
    """Scan majorization-ordered pairs (f before g) for a norm reversal.

    The first pair with norm of f strictly above norm of g (beyond
    tolerance for approximate values) is reported; its absence is
    evidence, not a certificate.
    """
    checked = 0
    for i, (small, big) in enumerate(pairs):
        nf = evaluate_norm(desc, small)
        ng = evaluate_norm(desc, big)
        checked += 1
        if nf.is_inf and not ng.is_inf:
            return PrincipleReport(checked, PrincipleViolation(i, small, big, nf, ng))
        if nf.is_inf or ng.is_inf:
            continue
        if _positive(nf - ng):
            return PrincipleReport(checked, PrincipleViolation(i, small, big, nf, ng))
    return PrincipleReport(checked, None)


@dataclass(frozen=True)
class EmbeddingFailure:
    sample: DecreasingProfile
    side: str
    numerator: Scalar
    denominator: Scalar


@dataclass(frozen=True)
class EmbeddingReport:
    lower_constant: Scalar | None
    upper_constant: Scalar | None
    failures: tuple[EmbeddingFailure, ...]

    @property
    def holds(self) -> bool:
        return not self.failures


def embedding_check(
    desc: SpaceDescriptor, samples: Sequence[DecreasingProfile]
) -> EmbeddingReport:
    """Estimate the constants of the two-sided sandwich of desc between
    the intersection and sum endpoints.

    lower_constant bounds norm_X / norm_(L1&Linf), upper_constant
    bounds norm_(L1+Linf) / norm_X; a sample with an infinite ratio is
    returned as a failure witness falsifying that inclusion.
    """
    cap = intersection_space(desc.space)
    plus = sum_space(desc.space)
    c1: Scalar | None = None
    c2: Scalar | None = None
    failures: list[EmbeddingFailure] = []
    for p in samples:
        nx = evaluate_norm(desc, p)
        ncap = evaluate_norm(cap, p)
        nplus = evaluate_norm(plus, p)
        if not ncap.is_zero():
            if nx.is_inf and not ncap.is_inf:
                failures.append(EmbeddingFailure(p, "into", nx, ncap))
            elif not nx.is_inf and not ncap.is_inf:
                r = nx / ncap
                if c1 is None or r > c1:
                    c1 = r
        if not nx.is_zero():
            if nplus.is_inf and not nx.is_inf:
                failures.append(EmbeddingFailure(p, "out_of", nplus, nx))
            elif not nplus.is_inf and not nx.is_inf:
                r = nplus / nx
                if c2 is None or r > c2:
                    c2 = r
    return EmbeddingReport(c1, c2, tuple(failures))
