from fractions import Fraction as F

import pytest

from rikit.acontinuity import custom_family, head_family
from rikit.errors import DocumentError
from rikit.functions import (
    Atomic,
    DecreasingProfile,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
)
from rikit.intervals import Interval, IntervalSet
from rikit.scalars import Scalar
from rikit.spaces import identity_phi, lp_space, weak_space
from rikit.specdoc import SpecDocument, dump_document, parse_document


def full_document():
    return SpecDocument(
        space=weak_space(identity_phi(), NonAtomic(None)),
        functions=(
            StepFunction(Atomic(F(1, 2), 8), ((Interval(F(0), F(1)), F(2)),)),
            DecreasingProfile(
                (PowerPiece(Interval(F(0), F(1)), Scalar.exact(F(1, 2)), F(-1, 2)),),
                Tail.power(F(1), F(-2), F(1)),
            ),
        ),
        family=custom_family(
            (IntervalSet.of(Interval(F(0), F(1))), IntervalSet.of(Interval(F(0), F(1, 2))))
        ),
        seed=106033,
        k_max=1024,
        samples=50,
    )


def test_round_trip_is_identity():
    doc = full_document()
    text = dump_document(doc)
    assert parse_document(text) == doc
    assert dump_document(parse_document(text)) == text


def test_minimal_documents():
    doc = parse_document('{"space": {"kind": "lp", "p": "2"}}')
    assert doc.space == lp_space(F(2), NonAtomic(None))
    assert doc.functions == ()
    assert parse_document("{}") == SpecDocument()


def test_phi_power_shorthand():
    doc = parse_document(
        '{"space": {"kind": "weak_marcinkiewicz", "phi": {"coeff": "1", "exp": "1"}}}'
    )
    assert doc.space == weak_space(identity_phi(), NonAtomic(None))


def test_function_type_inference():
    text = """{"functions": [
        {"base": {"kind": "nonatomic"}, "pieces": [{"from": "0", "to": "1", "value": "2"}]},
        {"pieces": [{"from": "0", "to": "1", "coeff": "1"}], "tail": {"kind": "zero"}}
    ]}"""
    doc = parse_document(text)
    assert isinstance(doc.functions[0], StepFunction)
    assert isinstance(doc.functions[1], DecreasingProfile)


def test_family_round_trip():
    doc = parse_document('{"family": {"kind": "head"}}')
    assert doc.family == head_family()
    assert parse_document(dump_document(doc)) == doc


def diagnostic(text):
    with pytest.raises(DocumentError) as info:
        parse_document(text)
    return str(info.value)


def test_diagnostics_carry_positions():
    assert "missing field 'p'" in diagnostic('{"space": {"kind": "lp"}}')
    assert "space.p" in diagnostic('{"space": {"kind": "lp", "p": "zero"}}')
    assert "space.kind" in diagnostic('{"space": {"kind": "sobolev"}}')
    assert "function.pieces[1]" in diagnostic(
        '{"function": {"pieces": [{"from": "0", "to": "1", "coeff": "1"},'
        ' {"from": "1", "to": "2"}], "tail": {"kind": "zero"}}}'
    )
    assert "params.seed" in diagnostic('{"params": {"seed": -3}}')
    assert "line 1" in diagnostic("{nope")


def test_binary_floats_are_rejected():
    message = diagnostic('{"space": {"kind": "lp", "p": 0.5}}')
    assert "binary float" in message
    # a rational string for the same value is fine
    parse_document('{"space": {"kind": "lp", "p": "1/2"}}')


def test_core_validation_surfaces_as_document_errors():
    # increasing profile: rejected by the profile type, reported at the field
    message = diagnostic(
        '{"function": {"pieces": [{"from": "0", "to": "1", "coeff": "1"},'
        ' {"from": "1", "to": "2", "coeff": "2"}], "tail": {"kind": "zero"}}}'
    )
    assert "function" in message
    assert "increases" in message


def test_unknown_fields_are_named():
    assert "unknown field 'colour'" in diagnostic('{"space": {"kind": "lp", "p": "1", "colour": "red"}}')
