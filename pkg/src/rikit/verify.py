"""Theorem-verification suites at desk scale.

Each criterion seeds its own generator stream, runs the relevant
property over a few hundred exact cases, and reports one pass/fail
line.  Failures carry the first offending case in the detail string.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .acontinuity import (
    ac_order_checks,
    ac_simulate,
    ac_two_limit_test,
    head_family,
    marcinkiewicz_ac_classify,
    tail_family,
)
from .functions import (
    DecreasingProfile,
    Atomic,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
    space_bound,
    steps_profile,
)
from .hlp import hlp_compare, hlp_principle_probe
from .intervals import Interval
from .rearrange import hl_gap, rearrange_restricted, rearrangement
from .represent import (
    RepresentationSpec,
    bar_norm,
    representation_identity_check,
    transfer_partial_integral_check,
)
from .samples import (
    DEFAULT_SEED,
    GRID,
    ac_profile,
    aligned_pair,
    axiom_profiles,
    classification_phis,
    decreasing_steps,
    disjoint_function_pair,
    grid_step_function,
    hlp_pair,
    hyper_head_profile,
    integrable_profile,
    pointwise_pair,
    rational_transfer_profile,
    rng_for,
    weak_case,
    shrink_families,
    step_function,
    step_pair,
)
from .scalars import Scalar
from .spaces import (
    WEAK_MARCINKIEWICZ,
    axiom_suite,
    dilate,
    dilation_bound_probe,
    evaluate_norm,
    identity_phi,
    intersection_space,
    linf_space,
    lp_space,
    reciprocal_profile,
    sum_space,
    weak_space,
)

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number}: {mark} - {self.title} ({self.detail})"


def _seed(seed: int, n: int) -> int:
    return seed * 100 + n


def _descriptors_over(space):
    return (
        lp_space(F1, space),
        lp_space(Fraction(2), space),
        linf_space(space),
        intersection_space(space),
        sum_space(space),
        weak_space(identity_phi(), space),
    )


def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Norm of a function equals the transferred norm of its
    rearrangement, across bases and space kinds."""
    rng = rng_for(_seed(seed, 1))
    bases = (
        Atomic(Fraction(1, 2), None),
        Atomic(F1, None),
        Atomic(Fraction(2), None),
        NonAtomic(F1),
        NonAtomic(None),
    )
    checks = 0
    for i in range(200):
        base = bases[i % len(bases)]
        f = step_function(base, rng)
        for desc in _descriptors_over(base):
            res = representation_identity_check(desc, f)
            checks += 1
            if not res.equal:
                return CriterionResult(
                    1, "representation identity", False,
                    f"mismatch {res.lhs} vs {res.rhs} for {desc.label()} on case {i}",
                )
    return CriterionResult(
        1, "representation identity", True,
        f"{checks} identities held across {len(bases)} bases x 6 space kinds",
    )


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Product integral never exceeds the rearranged product integral,
    with equality on commonly ordered pairs."""
    rng = rng_for(_seed(seed, 2))
    bases = (NonAtomic(None), Atomic(F1, None), Atomic(Fraction(1, 2), None))
    for i in range(1000):
        base = bases[i % len(bases)]
        f, g = step_pair(base, rng)
        lhs, rhs = hl_gap(f, g)
        if lhs > rhs:
            return CriterionResult(
                2, "product rearrangement inequality", False,
                f"pair {i}: {lhs} > {rhs}",
            )
    for i in range(100):
        base = bases[i % len(bases)]
        f, g = aligned_pair(base, rng)
        lhs, rhs = hl_gap(f, g)
        if not (lhs == rhs):
            return CriterionResult(
                2, "product rearrangement inequality", False,
                f"aligned pair {i} missed equality: {lhs} vs {rhs}",
            )
    return CriterionResult(
        2, "product rearrangement inequality", True,
        "1000 random pairs bounded, 100 aligned pairs exactly equal",
    )


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Rearrangement agrees with the sort-based grid oracle."""
    rng = rng_for(_seed(seed, 3))
    cells = 256
    for i in range(500):
        f = grid_step_function(rng)
        vals = [f.value_at(GRID * j + GRID / 2) for j in range(cells)]
        expected = sorted(vals, reverse=True)
        p = rearrangement(f)
        for j in range(cells):
            got = p.value_at(GRID * j)
            if got.as_fraction() != expected[j]:
                return CriterionResult(
                    3, "grid rearrangement oracle", False,
                    f"function {i} grid point {j}: {got} != {expected[j]}",
                )
    return CriterionResult(
        3, "grid rearrangement oracle", True,
        "500 functions matched the sort oracle at all 256 grid points",
    )


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Norm monotonicity along the partial-integral order: falsified
    exactly for the weak space, unfalsified elsewhere."""
    rng = rng_for(_seed(seed, 4))
    R = NonAtomic(None)
    f = steps_profile([(F1, F1)])
    g = DecreasingProfile(
        pieces=(PowerPiece(Interval(F0, F1), Scalar.exact(Fraction(1, 2)), Fraction(-1, 2)),),
        tail=Tail.zero(),
    )
    if not hlp_compare(f, g).majorized:
        return CriterionResult(4, "order-monotonicity probe", False,
                               "designed pair is not ordered")
    mt = weak_space(identity_phi(), R)
    nf = evaluate_norm(mt, f)
    ng = evaluate_norm(mt, g)
    if not (nf.as_fraction() == 1 and ng.as_fraction() == Fraction(1, 2)):
        return CriterionResult(4, "order-monotonicity probe", False,
                               f"designed norms off: {nf}, {ng}")
    descs = (
        lp_space(F1, R), lp_space(Fraction(2), R), linf_space(R),
        intersection_space(R), sum_space(R),
    )
    pairs = [hlp_pair(rng) for _ in range(1000)]
    for desc in descs:
        rep = hlp_principle_probe(desc, pairs)
        if not rep.holds:
            return CriterionResult(
                4, "order-monotonicity probe", False,
                f"{desc.label()}: {rep.describe()}",
            )
    return CriterionResult(
        4, "order-monotonicity probe", True,
        "weak-space reversal confirmed at ratio 2; no reversal in 1000 pairs "
        "for the five classical kinds",
    )


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Cell-averaged transfer preserves partial integrals at cell
    multiples, and interpolates exactly between them."""
    rng = rng_for(_seed(seed, 5))
    betas = (Fraction(1, 2), F1, Fraction(2))
    for i in range(160):
        p = rational_transfer_profile(rng) if i < 100 else decreasing_steps(rng)
        beta = betas[i % 3]
        report = transfer_partial_integral_check(p, beta, n_max=16)
        if not report.all_equal():
            bad = next(r for r in report.rows if not r.equal and not r.skipped)
            return CriterionResult(
                5, "transfer partial integrals", False,
                f"profile {i} beta {beta} t={bad.t}: {bad.lhs} != {bad.rhs}",
            )
    return CriterionResult(
        5, "transfer partial integrals", True,
        "exact at 16 cell multiples for 100 profiles x 3 cell sizes; "
        "midpoint interpolation exact on step profiles",
    )


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Dilation scales power norms by the predicted factor."""
    rng = rng_for(_seed(seed, 6))
    R = NonAtomic(None)
    l1 = lp_space(F1, R)
    l2 = lp_space(Fraction(2), R)
    half_l2 = Scalar.exact(Fraction(2)).pow(Fraction(-1, 2))
    for i in range(200):
        p = integrable_profile(rng)
        d = dilate(p, Fraction(2))
        n1, dn1 = evaluate_norm(l1, p), evaluate_norm(l1, d)
        if not dn1.close_to(n1 / Scalar.exact(2)):
            return CriterionResult(
                6, "dilation scaling", False,
                f"profile {i}: first-power {dn1} != half of {n1}",
            )
        n2, dn2 = evaluate_norm(l2, p), evaluate_norm(l2, d)
        if not dn2.close_to(n2 * half_l2):
            return CriterionResult(
                6, "dilation scaling", False,
                f"profile {i}: second-power {dn2} vs {n2} * 2^(-1/2)",
            )
    mt = weak_space(identity_phi(), R)
    sams = [decreasing_steps(rng) for _ in range(10)]
    probe = dilation_bound_probe(mt, Fraction(1, 2), sams)
    if not (probe.is_exact and probe.as_fraction() == 2):
        return CriterionResult(
            6, "dilation scaling", False, f"weak-space half-dilation probe gave {probe}"
        )
    return CriterionResult(
        6, "dilation scaling", True,
        "200 profiles scaled by 1/2 and 2^(-1/2); weak-space probe exactly 2",
    )


def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Symbolic vanishing-limit verdicts agree with the simulated
    shrinking-set norms."""
    rng = rng_for(_seed(seed, 7))
    R = NonAtomic(None)
    descs = (
        lp_space(F1, R),
        linf_space(R),
        weak_space(identity_phi(), R),
        intersection_space(Atomic(F1, None)),
    )
    fams = shrink_families(rng, 20)
    k_max = 2**20
    for i in range(50):
        p = ac_profile(rng)
        for desc in descs:
            verdict = ac_two_limit_test(desc, p)
            if verdict.ac:
                for fam in (head_family(), tail_family()):
                    rows = ac_simulate(desc, p, fam, k_max)
                    last = rows[-1].norm
                    if last.is_inf or last.as_float() >= 1e-3:
                        return CriterionResult(
                            7, "two-limit test vs simulation", False,
                            f"profile {i} {desc.label()} {fam.kind}: "
                            f"final norm {last} not below 1e-3",
                        )
                bound = space_bound(desc.space)
                q = p if bound is None else p.restrict_head(bound)
                rspec = RepresentationSpec(desc)
                for fam in fams:
                    r = rearrange_restricted(q, fam.member(fam.length))
                    last = bar_norm(rspec, r)
                    if last.is_inf or last.as_float() >= 1e-3:
                        return CriterionResult(
                            7, "two-limit test vs simulation", False,
                            f"profile {i} {desc.label()} custom family: "
                            f"final norm {last} not below 1e-3",
                        )
            else:
                fam = head_family() if verdict.failing_side == "head" else tail_family()
                rows = ac_simulate(desc, p, fam, k_max)
                limit = verdict.limit
                for row in rows:
                    if limit.is_inf:
                        ok = row.norm.is_inf
                    elif row.norm.is_inf:
                        ok = True
                    else:
                        ok = row.norm.as_float() >= limit.as_float() - 1e-9
                    if not ok:
                        return CriterionResult(
                            7, "two-limit test vs simulation", False,
                            f"profile {i} {desc.label()} k={row.k}: "
                            f"norm {row.norm} dropped below stated limit {limit}",
                        )
    return CriterionResult(
        7, "two-limit test vs simulation", True,
        "50 profiles x 4 descriptors consistent on head, tail, "
        "and 20 custom families",
    )


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Weak-space membership/vanishing classification matches the
    two-limit test, and the reciprocal of the weight is always the
    member that fails."""
    rng = rng_for(_seed(seed, 8))
    for i in range(100):
        phi, p = weak_case(rng)
        cls = marcinkiewicz_ac_classify(phi, p)
        verdict = ac_two_limit_test(weak_space(phi, NonAtomic(None)), p)
        if cls.ac != (cls.member and verdict.ac):
            return CriterionResult(
                8, "weak-space classification", False,
                f"case {i}: classify says ac={cls.ac}, test says {verdict.status}",
            )
    for phi in classification_phis():
        cls = marcinkiewicz_ac_classify(phi, reciprocal_profile(phi))
        if not (cls.member and not cls.ac):
            return CriterionResult(
                8, "weak-space classification", False,
                f"reciprocal witness misclassified: member={cls.member} ac={cls.ac}",
            )
    return CriterionResult(
        8, "weak-space classification", True,
        "100 cases agreed with the two-limit test; reciprocal witness is a "
        "non-vanishing member for all 5 weights",
    )


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Absolute continuity is inherited downward along both orders,
    with the weak space auto-skipped for the partial-integral form."""
    rng = rng_for(_seed(seed, 9))
    R = NonAtomic(None)
    descs = (
        lp_space(F1, R), lp_space(Fraction(2), R), linf_space(R),
        intersection_space(R), sum_space(R), weak_space(identity_phi(), R),
    )
    for desc in descs:
        skip_seen = False
        for i in range(200):
            f, g = pointwise_pair(rng) if i % 2 == 0 else hlp_pair(rng)
            rep = ac_order_checks(desc, f, g)
            if not rep.clean:
                bad = next(e for e in rep.entries if e.violation)
                return CriterionResult(
                    9, "order-relation consistency", False,
                    f"{desc.label()} pair {i}: {bad.relation} violation",
                )
            for e in rep.entries:
                if e.relation == "partial_integral" and not e.applicable:
                    skip_seen = True
        if desc.kind == WEAK_MARCINKIEWICZ and not skip_seen:
            return CriterionResult(
                9, "order-relation consistency", False,
                "weak descriptor did not skip the partial-integral form",
            )
    return CriterionResult(
        9, "order-relation consistency", True,
        "no violations in 200 pairs x 6 descriptors; weak space skipped "
        "the partial-integral form with the probe's counterexample",
    )


def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    """Axiom harness finds the designed failures and nothing else."""
    rng = rng_for(_seed(seed, 10))
    R = NonAtomic(None)

    lhalf = lp_space(Fraction(1, 2), R)
    pair = (
        StepFunction(R, ((Interval(F0, F1), F1),)),
        StepFunction(R, ((Interval(F1, Fraction(2)), F1),)),
    )
    report = axiom_suite(
        lhalf,
        axiom_profiles(rng, 40),
        ordered_pairs=[pointwise_pair(rng) for _ in range(20)],
        function_pairs=[pair] + [disjoint_function_pair(R, rng) for _ in range(20)],
    )
    modulus = report.concavity_modulus
    if modulus is None or modulus.as_float() < 2 - 1e-12:
        return CriterionResult(
            10, "axiom harness", False,
            f"half-power modulus estimate {modulus} below 2",
        )

    mt = weak_space(identity_phi(), R)
    adversary = list(axiom_profiles(rng, 30)) + [hyper_head_profile()]
    report = axiom_suite(
        mt,
        adversary,
        ordered_pairs=[pointwise_pair(rng) for _ in range(10)],
        function_pairs=[disjoint_function_pair(R, rng) for _ in range(10)],
    )
    p5 = report.finding("integral_bound")
    if p5 is None or p5.passed:
        return CriterionResult(
            10, "axiom harness", False,
            "integral-bound failure not detected for the weak space",
        )

    for desc in (lp_space(F1, R), intersection_space(R)):
        report = axiom_suite(
            desc,
            axiom_profiles(rng, 1000),
            ordered_pairs=[pointwise_pair(rng) for _ in range(100)],
            function_pairs=[disjoint_function_pair(R, rng) for _ in range(100)],
        )
        if not report.all_passed():
            bad = [f.axiom for f in report.findings if not f.passed]
            return CriterionResult(
                10, "axiom harness", False,
                f"{desc.label()} failed axioms: {', '.join(bad)}",
            )
    return CriterionResult(
        10, "axiom harness", True,
        "half-power modulus reached 2; weak-space integral bound failed as "
        "designed; all axioms passed for the integral and intersection kinds",
    )


_CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
)


def run_all(seed: int = DEFAULT_SEED) -> tuple[CriterionResult, ...]:
    return tuple(fn(seed) for fn in _CRITERIA)


def run_indexed(item: tuple[int, int]) -> CriterionResult:
    # picklable entry point for process pools: (criterion index, seed)
    index, seed = item
    return _CRITERIA[index](seed)
