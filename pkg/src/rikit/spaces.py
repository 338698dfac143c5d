"""Quasinorm evaluation, fundamental functions, dilation, and the
axiom-probing harness.

Evaluators consume decreasing profiles (rearrangements), so
rearrangement invariance is structural.  Over a finite-measure space
the profile is truncated to [0, total) before anything else.

Supported descriptors: Lp for rational p > 0 and p = inf, the sum and
intersection endpoints of the L1/Linf pair, and the weak space built
from a fundamental function phi, normed by sup phi(t) * p(t).  The sup
is computed per overlay cell in closed form: on each cell the product
is C * t**r * (t+s)**q, whose only interior critical point is
t = -r*s/(r+q), so endpoint limits plus that point decide the cell.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UnsupportedOperationError, ValidationError
from .functions import (
    DecreasingProfile,
    MeasureSpace,
    PowerPiece,
    Segment,
    StepFunction,
    Tail,
    add_profiles,
    pointwise_le,
    power_integral,
    scale_profile,
    space_bound,
    steps_profile,
    truncate_level,
)
from .intervals import Interval
from .scalars import (
    INF,
    ONE,
    REL_TOL,
    RationalLike,
    Scalar,
    ZERO,
    as_fraction,
    power_value,
    scalar_max,
)

log = logging.getLogger(__name__)

F0 = Fraction(0)
F1 = Fraction(1)

LP = "lp"
L1_PLUS_LINF = "l1_plus_linf"
L1_CAP_LINF = "l1_cap_linf"
WEAK_MARCINKIEWICZ = "weak_marcinkiewicz"


# ---------------------------------------------------------------------------
# fundamental functions


@dataclass(frozen=True)
class FundamentalFn:
    """Non-decreasing piecewise-power function with value 0 at 0.

    Pieces are unshifted powers c*t**r with c > 0 and r >= 0 on
    consecutive intervals from 0; the tail is a positive constant or a
    growing power.  A constant first piece encodes a jump at 0 (the
    value at 0 itself is 0 by definition).  Quasiconcavity is not
    required; a violation is logged as a warning only.
    """

    pieces: tuple[PowerPiece, ...]
    tail: Tail

    def __post_init__(self):
        edge = F0
        for k, piece in enumerate(self.pieces):
            iv = piece.interval
            if iv.left != edge:
                raise ValidationError(
                    f"piece {k} starts at {iv.left}, expected {edge}"
                )
            if iv.right is None:
                raise ValidationError("pieces must be bounded; use the tail")
            if piece.coeff <= ZERO:
                raise ValidationError("fundamental function must be positive for t > 0")
            if piece.exponent < 0:
                raise ValidationError(
                    f"piece {k} decreases (exponent {piece.exponent} < 0)"
                )
            if piece.shift != 0:
                raise ValidationError("fundamental function pieces must be unshifted")
            edge = iv.right
        if self.tail.kind == Tail.ZERO_KIND:
            raise ValidationError("fundamental function must stay positive; zero tail invalid")
        if self.tail.kind == Tail.POWER and (self.tail.exponent < 0 or self.tail.shift != 0):
            raise ValidationError("tail must be a constant or an unshifted growing power")
        prev: PowerPiece | None = None
        for piece in self.pieces:
            if prev is not None:
                t = piece.interval.left
                if _decreases_at(prev, piece, t):
                    raise ValidationError(f"fundamental function decreases at t = {t}")
            prev = piece
        t0 = self.tail_start()
        if prev is not None and _decreases_at(prev, self.tail, t0):
            raise ValidationError(f"fundamental function decreases at tail start t = {t0}")
        self._warn_quasiconcavity()

    def _warn_quasiconcavity(self):
        # phi(t)/t non-increasing fails iff some exponent exceeds 1 or a
        # breakpoint jumps up faster than linearly; cheap local check
        for piece in self.pieces:
            if piece.exponent > 1:
                log.warning("fundamental function piece %s is not quasiconcave", piece)
        if self.tail.kind == Tail.POWER and self.tail.exponent > 1:
            log.warning("fundamental function tail grows faster than t")

    def tail_start(self) -> Fraction:
        return self.pieces[-1].interval.right if self.pieces else F0

    def value_at(self, t: RationalLike) -> Scalar:
        t = as_fraction(t)
        if t < 0:
            raise ValidationError("fundamental functions live on [0, inf)")
        if t == 0:
            return ZERO
        for piece in self.pieces:
            if piece.interval.contains(t):
                return piece.value_at(t)
        return self.tail.value_at(t)

    def left_limit_at(self, t: RationalLike) -> Scalar:
        """Limit from below at t > 0; equals value_at except across the jump at 0."""
        t = as_fraction(t)
        if t <= 0:
            raise ValidationError("left limit needs t > 0")
        for piece in self.pieces:
            if piece.interval.left < t and (
                piece.interval.right is None or t <= piece.interval.right
            ):
                return piece.value_at(t)
        return self.tail.value_at(t)

    def limit_at_inf(self) -> Scalar:
        return self.tail.limit_at_inf()

    def breakpoints(self) -> list[Fraction]:
        pts = [p.interval.left for p in self.pieces]
        pts.append(self.tail_start())
        return sorted(set(pts))

    def segments(self) -> list[Segment]:
        out = [
            Segment(p.interval.left, p.interval.right, p.coeff, p.exponent, p.shift)
            for p in self.pieces
        ]
        out.append(
            Segment(self.tail_start(), None, self.tail.coeff, self.tail.exponent, self.tail.shift)
        )
        return out


def _decreases_at(before, after, t: Fraction) -> bool:
    va, vb = before.value_at(t), after.value_at(t)
    if va.is_inf or vb.is_inf:
        return va.is_inf and not vb.is_inf
    return va > vb


def identity_phi() -> FundamentalFn:
    """phi(t) = t, the fundamental function of L1."""
    return FundamentalFn((), Tail.power(1, F1))


def phi_from_power(coeff: RationalLike, exponent: RationalLike) -> FundamentalFn:
    """phi(t) = coeff * t**exponent with exponent > 0."""
    e = as_fraction(exponent)
    if e <= 0:
        raise ValidationError("a single-power fundamental function needs exponent > 0")
    return FundamentalFn((), Tail.power(coeff, e))


def reciprocal_profile(phi: FundamentalFn) -> DecreasingProfile:
    """The decreasing profile 1/phi (the weak space's canonical witness)."""
    pieces = tuple(
        PowerPiece(p.interval, ONE / p.coeff, -p.exponent) for p in phi.pieces
    )
    t = phi.tail
    if t.kind == Tail.CONSTANT:
        tail = Tail.constant(ONE / t.coeff)
    else:
        tail = Tail.power(ONE / t.coeff, -t.exponent)
    return DecreasingProfile(pieces, tail)


# ---------------------------------------------------------------------------
# space descriptors


@dataclass(frozen=True)
class SpaceDescriptor:
    """One of the concrete quasinormed spaces, over a measure space.

    kind "lp" covers both finite exponents (p a positive Fraction) and
    the sup norm (p = None).
    """

    kind: str
    space: MeasureSpace
    p: Fraction | None = None
    phi: FundamentalFn | None = None

    def __post_init__(self):
        if self.kind not in (LP, L1_PLUS_LINF, L1_CAP_LINF, WEAK_MARCINKIEWICZ):
            raise ValidationError(f"unknown space kind {self.kind!r}")
        if self.kind == LP:
            if self.p is not None and (not isinstance(self.p, Fraction) or self.p <= 0):
                raise ValidationError("Lp exponent must be a positive Fraction or None (= inf)")
        elif self.p is not None:
            raise ValidationError(f"{self.kind} takes no exponent")
        if self.kind == WEAK_MARCINKIEWICZ:
            if self.phi is None:
                raise ValidationError("weak space needs a fundamental function")
        elif self.phi is not None:
            raise ValidationError(f"{self.kind} takes no fundamental function")

    def label(self) -> str:
        if self.kind == LP:
            return "Linf" if self.p is None else f"L{self.p}"
        if self.kind == L1_PLUS_LINF:
            return "L1+Linf"
        if self.kind == L1_CAP_LINF:
            return "L1&Linf"
        return "weak(phi)"


def lp_space(p: RationalLike | None, space: MeasureSpace) -> SpaceDescriptor:
    return SpaceDescriptor(LP, space, None if p is None else as_fraction(p))


def linf_space(space: MeasureSpace) -> SpaceDescriptor:
    return SpaceDescriptor(LP, space, None)


def sum_space(space: MeasureSpace) -> SpaceDescriptor:
    return SpaceDescriptor(L1_PLUS_LINF, space)


def intersection_space(space: MeasureSpace) -> SpaceDescriptor:
    return SpaceDescriptor(L1_CAP_LINF, space)


def weak_space(phi: FundamentalFn, space: MeasureSpace) -> SpaceDescriptor:
    return SpaceDescriptor(WEAK_MARCINKIEWICZ, space, phi=phi)


# ---------------------------------------------------------------------------
# norm evaluation


def _lp_norm(p: DecreasingProfile, exponent: Fraction) -> Scalar:
    total = ZERO
    for seg in p.segments():
        if seg.coeff.is_zero():
            continue
        cp = seg.coeff.pow(exponent)
        total = total + power_integral(
            cp, seg.exponent * exponent, seg.shift, seg.left, seg.right
        )
    if total.is_zero():
        return ZERO
    return total.pow(F1 / exponent)


def _product_value(cphi: Scalar, r: Fraction, seg: Segment, t: Fraction) -> Scalar:
    # phi_atom(t) * p_atom(t) at t > 0
    v = power_value(cphi * seg.coeff, t + seg.shift, seg.exponent)
    return power_value(v, t, r)


def _cell_sup(cphi: Scalar, r: Fraction, seg: Segment) -> Scalar:
    """sup over [seg.left, seg.right) of cphi*t**r times the profile atom."""
    if seg.coeff.is_zero() or cphi.is_zero():
        return ZERO
    q, s = seg.exponent, seg.shift
    u, v = seg.left, seg.right
    C = cphi * seg.coeff
    candidates: list[Scalar] = []
    if u == 0:
        if s > 0:
            candidates.append(power_value(C, s, q) if r == 0 else ZERO)
        else:
            rq = r + q
            if rq < 0:
                candidates.append(INF)
            elif rq == 0:
                candidates.append(C)
            else:
                candidates.append(ZERO)
    else:
        candidates.append(_product_value(cphi, r, seg, u))
    if v is None:
        rq = r + q
        if rq > 0:
            candidates.append(INF)
        elif rq == 0:
            candidates.append(C)
        else:
            candidates.append(ZERO)
    else:
        candidates.append(_product_value(cphi, r, seg, v))
    if r > 0 and q < 0 and s > 0 and r + q < 0:
        t_star = -r * s / (r + q)
        if t_star > u and (v is None or t_star < v):
            candidates.append(_product_value(cphi, r, seg, t_star))
    return scalar_max(candidates)


def _weak_norm(phi: FundamentalFn, p: DecreasingProfile) -> Scalar:
    cuts = sorted(set(phi.breakpoints()) | set(p.breakpoints()))
    phis, ps = phi.segments(), p.segments()

    def seg_at(segs: list[Segment], t: Fraction) -> Segment:
        for s in segs:
            if t >= s.left and (s.right is None or t < s.right):
                return s
        return segs[-1]

    best = ZERO
    for i, lo in enumerate(cuts):
        hi = cuts[i + 1] if i + 1 < len(cuts) else None
        fseg = seg_at(phis, lo)
        pseg = seg_at(ps, lo)
        cell = Segment(lo, hi, pseg.coeff, pseg.exponent, pseg.shift)
        best = scalar_max([best, _cell_sup(fseg.coeff, fseg.exponent, cell)])
    return best


def evaluate_norm(desc: SpaceDescriptor, p: DecreasingProfile) -> Scalar:
    """Quasinorm of the profile p in the space desc describes."""
    bound = space_bound(desc.space)
    if bound is not None:
        p = p.restrict_head(bound)
    if desc.kind == LP:
        if desc.p is None:
            return p.value_at_zero()
        return _lp_norm(p, desc.p)
    if desc.kind == L1_PLUS_LINF:
        return p.integral(Interval(F0, F1))
    if desc.kind == L1_CAP_LINF:
        return p.value_at_zero() + p.integral()
    return _weak_norm(desc.phi, p)


def fundamental_function(desc: SpaceDescriptor, t: RationalLike) -> Scalar:
    """Norm of the indicator of [0, t); 0 at t = 0.

    For the weak space this evaluates to the left limit of phi at t, a
    consequence of the half-open sup convention.
    """
    t = as_fraction(t)
    if t < 0:
        raise ValidationError("fundamental function needs t >= 0")
    bound = space_bound(desc.space)
    if bound is not None and t > bound:
        raise ValidationError(f"t = {t} exceeds the total measure {bound}")
    if t == 0:
        return ZERO
    return evaluate_norm(desc, steps_profile([(F1, t)]))


# ---------------------------------------------------------------------------
# dilation


def dilate(p: DecreasingProfile, t: RationalLike) -> DecreasingProfile:
    """The profile s -> p(t*s); compression for t > 1, stretching for t < 1."""
    t = as_fraction(t)
    if t <= 0:
        raise ValidationError("dilation parameter must be > 0")
    if t == 1:
        return p
    ts = Scalar.exact(t)
    pieces = []
    for piece in p.pieces:
        iv = piece.interval
        pieces.append(
            PowerPiece(
                Interval(iv.left / t, iv.right / t),
                piece.coeff if piece.is_constant else piece.coeff * ts.pow(piece.exponent),
                piece.exponent,
                piece.shift / t,
            )
        )
    tail = p.tail
    if tail.kind == Tail.POWER:
        tail = Tail(
            Tail.POWER, tail.coeff * ts.pow(tail.exponent), tail.exponent, tail.shift / t
        )
    return DecreasingProfile(tuple(pieces), tail)


def dilation_bound_probe(
    desc: SpaceDescriptor, t: RationalLike, samples: Iterable[DecreasingProfile]
) -> Scalar:
    """Largest observed ratio of the dilated norm to the norm.

    A lower bound on the dilation operator's norm; zero-norm or
    infinite-norm samples are skipped with a log note.
    """
    t = as_fraction(t)
    best = ZERO
    used = 0
    for p in samples:
        denom = evaluate_norm(desc, p)
        if denom.is_zero() or denom.is_inf:
            log.info("dilation probe skipping degenerate sample with norm %s", denom)
            continue
        num = evaluate_norm(desc, dilate(p, t))
        used += 1
        ratio = num / denom
        best = scalar_max([best, ratio])
    if used == 0:
        raise ValidationError("dilation probe needs at least one usable sample")
    return best


# ---------------------------------------------------------------------------
# axiom harness


@dataclass(frozen=True)
class Finding:
    axiom: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ProbeSetResult:
    probe_set: Interval
    bounded: bool
    estimate: Scalar | None
    witness: str


@dataclass(frozen=True)
class AxiomReport:
    findings: tuple[Finding, ...]
    concavity_modulus: Scalar | None
    probe_constants: tuple[ProbeSetResult, ...]

    def finding(self, axiom: str) -> Finding:
        for f in self.findings:
            if f.axiom == axiom:
                return f
        raise KeyError(axiom)

    def all_passed(self) -> bool:
        return all(f.passed for f in self.findings)


def _truncated_is_zero(desc: SpaceDescriptor, p: DecreasingProfile) -> bool:
    bound = space_bound(desc.space)
    if bound is not None:
        p = p.restrict_head(bound)
    return p.canonical().is_zero()


def _le_with_slack(a: Scalar, b: Scalar, rel: float = REL_TOL) -> bool:
    if a.is_inf:
        return b.is_inf
    if b.is_inf:
        return True
    if a.is_exact and b.is_exact:
        return a <= b
    return a.as_float() <= b.as_float() * (1 + rel) + rel


DEFAULT_PROBE_SETS = (
    Interval(F0, F1),
    Interval(F0, Fraction(2)),
    Interval(F1, Fraction(3)),
)


def axiom_suite(
    desc: SpaceDescriptor,
    samples: Sequence[DecreasingProfile],
    ordered_pairs: Sequence[tuple[DecreasingProfile, DecreasingProfile]] = (),
    function_pairs: Sequence[tuple["StepFunction", "StepFunction"]] = (),
    probe_sets: Sequence[Interval] = DEFAULT_PROBE_SETS,
    fatou_limit: int = 2**20,
) -> AxiomReport:
    """Probe the lattice/Fatou/embedding axioms and the quasi-triangle
    constant on the given samples.

    Findings are per axiom; failures carry a witness description.  The
    integral-bound probe reports one constant estimate per probe set,
    or flags it unbounded with the profile that breaks it.  The
    quasi-triangle ratio is taken over function_pairs (step functions
    on the descriptor's space, summed before rearranging, so disjoint
    supports can interact) as well as profile-level sums of samples.
    """
    findings: list[Finding] = []

    # homogeneity and the zero law
    hom_ok, hom_detail = True, "scaling by 1/3, 2, 7/2 matched exactly or within tolerance"
    zero_ok, zero_detail = True, "norm vanishes exactly on the zero class and only there"
    for p in samples:
        base = evaluate_norm(desc, p)
        if base.is_zero() != _truncated_is_zero(desc, p):
            zero_ok = False
            zero_detail = f"norm {base} vs zero test on {p}"
        for a in (Fraction(1, 3), Fraction(2), Fraction(7, 2)):
            lhs = evaluate_norm(desc, scale_profile(p, a))
            rhs = Scalar.exact(a) * base if not base.is_zero() else ZERO
            if base.is_inf:
                ok = lhs.is_inf
            else:
                ok = lhs.close_to(rhs)
            if not ok:
                hom_ok = False
                hom_detail = f"scale {a} on {p}: {lhs} vs {rhs}"
    findings.append(Finding("homogeneity", hom_ok, hom_detail))
    findings.append(Finding("zero_law", zero_ok, zero_detail))

    # lattice monotonicity on ordered pairs
    mono_ok, mono_detail = True, f"{len(ordered_pairs)} ordered pairs preserved order"
    for small, big in ordered_pairs:
        if not pointwise_le(small, big):
            mono_ok = False
            mono_detail = f"generator produced a non-ordered pair: {small} vs {big}"
            break
        if not _le_with_slack(evaluate_norm(desc, small), evaluate_norm(desc, big)):
            mono_ok = False
            mono_detail = (
                f"order violated: {evaluate_norm(desc, small)} > "
                f"{evaluate_norm(desc, big)} for {small} <= {big}"
            )
            break
    findings.append(Finding("lattice_order", mono_ok, mono_detail))

    # monotone convergence of truncations
    fat_ok, fat_detail = True, "truncation norms climb to the full norm"
    for p in samples:
        verdict, detail = _fatou_check(desc, p, fatou_limit)
        if not verdict:
            fat_ok, fat_detail = False, detail
            break
    findings.append(Finding("fatou", fat_ok, fat_detail))

    # finite norm of indicators
    chi_ok, chi_detail = True, "indicator norms finite on the probe grid"
    bound = space_bound(desc.space)
    for w in (Fraction(1, 4), F1, Fraction(3), Fraction(17, 2)):
        if bound is not None and w > bound:
            continue
        v = fundamental_function(desc, w)
        if v.is_inf:
            chi_ok = False
            chi_detail = f"indicator of [0, {w}) has infinite norm"
    findings.append(Finding("finite_indicators", chi_ok, chi_detail))

    # integral bound per probe set
    probe_results: list[ProbeSetResult] = []
    p5_ok = True
    for E in probe_sets:
        best: Scalar = ZERO
        witness = ""
        unbounded = False
        for p in samples:
            norm = evaluate_norm(desc, p)
            if norm.is_zero() or norm.is_inf:
                continue
            mass = p.integral(E)
            if mass.is_inf:
                unbounded = True
                witness = f"integral over {E} diverges while the norm is {norm} for {p}"
                break
            ratio = mass / norm
            if ratio > best:
                best, witness = ratio, f"attained by {p}"
        if unbounded:
            p5_ok = False
            probe_results.append(ProbeSetResult(E, False, None, witness))
        else:
            probe_results.append(ProbeSetResult(E, True, best, witness))
    findings.append(
        Finding(
            "integral_bound",
            p5_ok,
            "; ".join(
                f"{r.probe_set}: "
                + (f"C <= {r.estimate}" if r.bounded else f"unbounded ({r.witness})")
                for r in probe_results
            ),
        )
    )

    # quasi-triangle constant
    from .rearrange import rearrangement, step_add_rearranged

    modulus: Scalar | None = None
    pairs = list(zip(samples, samples[1:])) + [(p, p) for p in samples[:8]]
    for a, b in pairs:
        na, nb = evaluate_norm(desc, a), evaluate_norm(desc, b)
        if na.is_inf or nb.is_inf or (na.is_zero() and nb.is_zero()):
            continue
        try:
            s = add_profiles(a, b)
        except UnsupportedOperationError:
            continue  # cell sum leaves the closed-form family; skip the pair
        ratio = evaluate_norm(desc, s) / (na + nb)
        if modulus is None or ratio > modulus:
            modulus = ratio
    for f, g in function_pairs:
        na = evaluate_norm(desc, rearrangement(f))
        nb = evaluate_norm(desc, rearrangement(g))
        if na.is_inf or nb.is_inf or (na.is_zero() and nb.is_zero()):
            continue
        ratio = evaluate_norm(desc, step_add_rearranged(f, g)) / (na + nb)
        if modulus is None or ratio > modulus:
            modulus = ratio
    findings.append(
        Finding(
            "quasi_triangle",
            modulus is not None,
            f"largest observed ratio {modulus}" if modulus is not None else "no usable pairs",
        )
    )

    return AxiomReport(tuple(findings), modulus, tuple(probe_results))


def _fatou_check(desc: SpaceDescriptor, p: DecreasingProfile, n_max: int) -> tuple[bool, str]:
    """Truncation norms must increase to the norm of p (trend-checked)."""
    full = evaluate_norm(desc, p)
    ns: list[int] = []
    n = 1
    while n <= n_max:
        ns.append(n)
        n *= 4
    values: list[Scalar] = []
    for n in ns:
        capped, _ = truncate_level(p, Fraction(n))
        values.append(evaluate_norm(desc, capped.restrict_head(Fraction(n))))
    for a, b in zip(values, values[1:]):
        if not _le_with_slack(a, b):
            return False, f"truncation norms not monotone for {p}: {a} > {b}"
    for v in values:
        if not _le_with_slack(v, full):
            return False, f"truncation norm {v} exceeds the full norm {full} for {p}"
    if full.is_inf:
        last = values[-1]
        prev = values[-2] if len(values) > 1 else ZERO
        if last.is_inf:
            return True, ""
        if prev.is_zero():
            return False, f"truncation norms stay zero though the norm of {p} is infinite"
        growth = last.as_float() / max(prev.as_float(), 1e-300)
        if growth < 1 + 1 / 32:
            return False, f"truncation norms plateau at {last} though the norm is infinite"
        return True, ""
    if full.is_zero():
        return True, ""
    residuals = [full - v for v in values]
    tail_res = residuals[-1]
    if tail_res.as_float() <= 1e-9 * max(full.as_float(), 1.0):
        return True, ""
    anchor = residuals[len(residuals) // 2]
    if not anchor.is_zero() and tail_res.as_float() <= 0.8 * anchor.as_float():
        return True, ""
    return False, (
        f"truncation norms stall at {values[-1]} short of {full} for {p}"
    )
