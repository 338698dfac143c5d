"""Exact-arithmetic toolkit for rearrangement-invariant function spaces.

The core objects are decreasing profiles (piecewise powers with a
tail), step functions on non-atomic or atomic measure spaces, and
space descriptors for the classical quasinormed kinds.  Everything
user-facing computes in rational arithmetic where a closed form
exists and says so when it cannot.
"""

from .acontinuity import (
    AcVerdict,
    ShrinkFamily,
    ac_order_checks,
    ac_simulate,
    ac_two_limit_test,
    custom_family,
    head_family,
    marcinkiewicz_ac_classify,
    tail_family,
)
from .errors import (
    DocumentError,
    NonIntegrableHeadError,
    RikitError,
    UnsupportedOperationError,
    ValidationError,
)
from .functions import (
    Atomic,
    DecreasingProfile,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
    steps_profile,
    truncate_level,
    zero_profile,
)
from .hlp import HlpVerdict, embedding_check, hlp_compare, hlp_principle_probe
from .intervals import Interval, IntervalSet
from .rearrange import (
    distribution,
    equimeasurable,
    hl_gap,
    maximal_eval,
    rearrange_restricted,
    rearrangement,
)
from .represent import (
    RepresentationSpec,
    atomic_transfer,
    bar_norm,
    nonatomic_transfer,
    representation_identity_check,
    transfer_partial_integral_check,
)
from .scalars import INF, ONE, ZERO, Scalar
from .spaces import (
    FundamentalFn,
    SpaceDescriptor,
    axiom_suite,
    dilate,
    evaluate_norm,
    fundamental_function,
    identity_phi,
    intersection_space,
    linf_space,
    lp_space,
    phi_from_power,
    sum_space,
    weak_space,
)
from .specdoc import SpecDocument, dump_document, parse_document

__version__ = "0.1.0"

__all__ = [
    "AcVerdict",
    "Atomic",
    "DecreasingProfile",
    "DocumentError",
    "FundamentalFn",
    "HlpVerdict",
    "INF",
    "Interval",
    "IntervalSet",
    "NonAtomic",
    "NonIntegrableHeadError",
    "ONE",
    "PowerPiece",
    "RepresentationSpec",
    "RikitError",
    "Scalar",
    "ShrinkFamily",
    "SpaceDescriptor",
    "SpecDocument",
    "StepFunction",
    "Tail",
    "UnsupportedOperationError",
    "ValidationError",
    "ZERO",
    "ac_order_checks",
    "ac_simulate",
    "ac_two_limit_test",
    "atomic_transfer",
    "axiom_suite",
    "bar_norm",
    "custom_family",
    "dilate",
    "distribution",
    "dump_document",
    "embedding_check",
    "equimeasurable",
    "evaluate_norm",
    "fundamental_function",
    "head_family",
    "hl_gap",
    "hlp_compare",
    "hlp_principle_probe",
    "identity_phi",
    "intersection_space",
    "linf_space",
    "lp_space",
    "marcinkiewicz_ac_classify",
    "maximal_eval",
    "nonatomic_transfer",
    "parse_document",
    "phi_from_power",
    "rearrange_restricted",
    "rearrangement",
    "representation_identity_check",
    "steps_profile",
    "sum_space",
    "tail_family",
    "transfer_partial_integral_check",
    "truncate_level",
    "weak_space",
    "zero_profile",
]
