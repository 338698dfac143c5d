"""Read and write the JSON-compatible task document format.

A task document is a single JSON object naming a space, one or two
functions, an optional shrinking family, and run parameters.  Every
number that enters exact arithmetic is written as a rational string
("3", "-5/4"); binary float literals are rejected so no rounding can
leak into a computation.  "inf" stands for an infinite total, atom
count, or exponent p.  The full grammar is documented in the README;
`dump_document` always emits the canonical form, which re-parses to an
equal document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .acontinuity import (
    CUSTOM_FAMILY,
    HEAD_FAMILY,
    TAIL_FAMILY,
    ShrinkFamily,
    custom_family,
    head_family,
    tail_family,
)
from .errors import DocumentError, ValidationError
from .functions import (
    Atomic,
    DecreasingProfile,
    MeasureSpace,
    NonAtomic,
    PowerPiece,
    StepFunction,
    Tail,
)
from .intervals import Interval, IntervalSet
from .scalars import Scalar
from .spaces import (
    L1_CAP_LINF,
    L1_PLUS_LINF,
    LP,
    WEAK_MARCINKIEWICZ,
    FundamentalFn,
    SpaceDescriptor,
    lp_space,
    intersection_space,
    phi_from_power,
    sum_space,
    weak_space,
)

F0 = Fraction(0)

SPACE_KINDS = (LP, L1_PLUS_LINF, L1_CAP_LINF, WEAK_MARCINKIEWICZ)
FAMILY_KINDS = (HEAD_FAMILY, TAIL_FAMILY, CUSTOM_FAMILY)


@dataclass(frozen=True)
class SpecDocument:
    """Validated in-memory form of one task document."""

    space: SpaceDescriptor | None = None
    functions: tuple[StepFunction | DecreasingProfile, ...] = ()
    family: ShrinkFamily | None = None
    seed: int | None = None
    k_max: int | None = None
    samples: int | None = None


# ---------------------------------------------------------------------------
# scalar literals


def parse_rational(node: Any, where: str) -> Fraction:
    """A rational literal: an int or a string Fraction() accepts."""
    if isinstance(node, bool):
        raise DocumentError("expected a rational, got a boolean", where)
    if isinstance(node, int):
        return Fraction(node)
    if isinstance(node, float):
        raise DocumentError(
            "binary float literals are not accepted; write a rational string", where
        )
    if isinstance(node, str):
        try:
            return Fraction(node)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"not a rational literal: {node!r}", where) from None
    raise DocumentError('expected a rational string like "3/4"', where)


def _rational_or_inf(node: Any, where: str) -> Fraction | None:
    if node == "inf":
        return None
    return parse_rational(node, where)


def _integer(node: Any, where: str, low: int = 1) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        raise DocumentError("expected an integer", where)
    if node < low:
        raise DocumentError(f"expected an integer >= {low}", where)
    return node


def format_rational(q: Fraction) -> str:
    return str(q)


def _coeff_text(s: Scalar) -> str:
    # documents carry exact data only; an approximate object has no literal
    if not s.is_exact:
        raise DocumentError("only exact coefficients can be serialized")
    return format_rational(s.as_fraction())


# ---------------------------------------------------------------------------
# structural helpers


def _as_object(node: Any, where: str) -> dict:
    if not isinstance(node, dict):
        raise DocumentError("expected an object", where)
    return node


def _as_array(node: Any, where: str) -> list:
    if not isinstance(node, list):
        raise DocumentError("expected an array", where)
    return node


def _fields(obj: dict, where: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> None:
    for key in required:
        if key not in obj:
            raise DocumentError(f"missing field '{key}'", where)
    for key in obj:
        if key not in required and key not in optional:
            raise DocumentError(f"unknown field '{key}'", where)


def _validated(build: Callable[[], Any], where: str) -> Any:
    # constructors re-check everything; report their complaint at the field
    try:
        return build()
    except ValidationError as exc:
        raise DocumentError(str(exc), where) from None


# ---------------------------------------------------------------------------
# measure spaces and descriptors


def parse_base(node: Any, where: str) -> MeasureSpace:
    obj = _as_object(node, where)
    kind = obj.get("kind")
    if kind == "nonatomic":
        _fields(obj, where, ("kind",), ("total",))
        total = _rational_or_inf(obj.get("total", "inf"), where + ".total")
        return _validated(lambda: NonAtomic(total), where)
    if kind == "atomic":
        _fields(obj, where, ("kind", "cell"), ("count",))
        beta = parse_rational(obj["cell"], where + ".cell")
        raw_count = obj.get("count", "inf")
        count = None if raw_count == "inf" else _integer(raw_count, where + ".count")
        return _validated(lambda: Atomic(beta, count), where)
    raise DocumentError("base kind must be 'nonatomic' or 'atomic'", where + ".kind")


def base_node(space: MeasureSpace) -> dict:
    if isinstance(space, NonAtomic):
        total = "inf" if space.total is None else format_rational(space.total)
        return {"kind": "nonatomic", "total": total}
    count = "inf" if space.count is None else space.count
    return {"kind": "atomic", "cell": format_rational(space.beta), "count": count}


def parse_weight(node: Any, where: str) -> FundamentalFn:
    """A fundamental function, either {pieces, tail} or a {coeff, exp} power."""
    obj = _as_object(node, where)
    if "pieces" in obj or "tail" in obj:
        _fields(obj, where, ("pieces", "tail"))
        pieces = tuple(
            _parse_power_piece(item, f"{where}.pieces[{i}]", allow_shift=False)
            for i, item in enumerate(_as_array(obj["pieces"], where + ".pieces"))
        )
        tail = parse_tail(obj["tail"], where + ".tail")
        return _validated(lambda: FundamentalFn(pieces, tail), where)
    _fields(obj, where, ("coeff", "exp"))
    coeff = parse_rational(obj["coeff"], where + ".coeff")
    exponent = parse_rational(obj["exp"], where + ".exp")
    return _validated(lambda: phi_from_power(coeff, exponent), where)


def weight_node(phi: FundamentalFn) -> dict:
    return {
        "pieces": [_power_piece_node(p) for p in phi.pieces],
        "tail": tail_node(phi.tail),
    }


def parse_space(node: Any, where: str = "space") -> SpaceDescriptor:
    obj = _as_object(node, where)
    kind = obj.get("kind")
    if kind not in SPACE_KINDS:
        choices = ", ".join(SPACE_KINDS)
        raise DocumentError(f"space kind must be one of: {choices}", where + ".kind")
    base_raw = obj.get("base")
    base = NonAtomic(None) if base_raw is None else parse_base(base_raw, where + ".base")
    if kind == LP:
        _fields(obj, where, ("kind", "p"), ("base",))
        p = _rational_or_inf(obj["p"], where + ".p")
        return _validated(lambda: lp_space(p, base), where)
    if kind == L1_PLUS_LINF:
        _fields(obj, where, ("kind",), ("base",))
        return _validated(lambda: sum_space(base), where)
    if kind == L1_CAP_LINF:
        _fields(obj, where, ("kind",), ("base",))
        return _validated(lambda: intersection_space(base), where)
    _fields(obj, where, ("kind", "phi"), ("base",))
    phi = parse_weight(obj["phi"], where + ".phi")
    return _validated(lambda: weak_space(phi, base), where)


def space_node(desc: SpaceDescriptor) -> dict:
    out: dict[str, Any] = {"kind": desc.kind}
    if desc.kind == LP:
        out["p"] = "inf" if desc.p is None else format_rational(desc.p)
    if desc.kind == WEAK_MARCINKIEWICZ:
        out["phi"] = weight_node(desc.phi)
    out["base"] = base_node(desc.space)
    return out


# ---------------------------------------------------------------------------
# functions


def _parse_power_piece(node: Any, where: str, allow_shift: bool = True) -> PowerPiece:
    obj = _as_object(node, where)
    optional = ("exp", "shift") if allow_shift else ("exp",)
    _fields(obj, where, ("from", "to", "coeff"), optional)
    lo = parse_rational(obj["from"], where + ".from")
    hi = parse_rational(obj["to"], where + ".to")
    coeff = parse_rational(obj["coeff"], where + ".coeff")
    exponent = parse_rational(obj.get("exp", 0), where + ".exp")
    shift = parse_rational(obj.get("shift", 0), where + ".shift")
    interval = _validated(lambda: Interval(lo, hi), where)
    return _validated(
        lambda: PowerPiece(interval, Scalar.exact(coeff), exponent, shift), where
    )


def _power_piece_node(piece: PowerPiece) -> dict:
    out: dict[str, Any] = {
        "from": format_rational(piece.interval.left),
        "to": format_rational(piece.interval.right),
        "coeff": _coeff_text(piece.coeff),
        "exp": format_rational(piece.exponent),
    }
    if piece.shift != F0:
        out["shift"] = format_rational(piece.shift)
    return out


def parse_tail(node: Any, where: str) -> Tail:
    obj = _as_object(node, where)
    kind = obj.get("kind")
    if kind == Tail.ZERO_KIND:
        _fields(obj, where, ("kind",))
        return Tail.zero()
    if kind == Tail.CONSTANT:
        _fields(obj, where, ("kind", "value"))
        value = parse_rational(obj["value"], where + ".value")
        return _validated(lambda: Tail.constant(value), where)
    if kind == Tail.POWER:
        _fields(obj, where, ("kind", "coeff", "exp"), ("shift",))
        coeff = parse_rational(obj["coeff"], where + ".coeff")
        exponent = parse_rational(obj["exp"], where + ".exp")
        shift = parse_rational(obj.get("shift", 0), where + ".shift")
        return _validated(lambda: Tail.power(coeff, exponent, shift), where)
    raise DocumentError(
        "tail kind must be 'zero', 'constant', or 'power'", where + ".kind"
    )


def tail_node(tail: Tail) -> dict:
    if tail.kind == Tail.ZERO_KIND:
        return {"kind": Tail.ZERO_KIND}
    if tail.kind == Tail.CONSTANT:
        return {"kind": Tail.CONSTANT, "value": _coeff_text(tail.coeff)}
    out: dict[str, Any] = {
        "kind": Tail.POWER,
        "coeff": _coeff_text(tail.coeff),
        "exp": format_rational(tail.exponent),
    }
    if tail.shift != F0:
        out["shift"] = format_rational(tail.shift)
    return out


def parse_profile(node: Any, where: str) -> DecreasingProfile:
    obj = _as_object(node, where)
    _fields(obj, where, ("pieces", "tail"), ("type",))
    pieces = tuple(
        _parse_power_piece(item, f"{where}.pieces[{i}]")
        for i, item in enumerate(_as_array(obj["pieces"], where + ".pieces"))
    )
    tail = parse_tail(obj["tail"], where + ".tail")
    return _validated(lambda: DecreasingProfile(pieces, tail), where)


def parse_step(node: Any, where: str) -> StepFunction:
    obj = _as_object(node, where)
    _fields(obj, where, ("base", "pieces"), ("type",))
    base = parse_base(obj["base"], where + ".base")
    pieces = []
    for i, item in enumerate(_as_array(obj["pieces"], where + ".pieces")):
        pw = f"{where}.pieces[{i}]"
        pobj = _as_object(item, pw)
        _fields(pobj, pw, ("from", "to", "value"))
        lo = parse_rational(pobj["from"], pw + ".from")
        hi = parse_rational(pobj["to"], pw + ".to")
        interval = _validated(lambda: Interval(lo, hi), pw)
        pieces.append((interval, parse_rational(pobj["value"], pw + ".value")))
    return _validated(lambda: StepFunction(base, tuple(pieces)), where)


def parse_function(node: Any, where: str) -> StepFunction | DecreasingProfile:
    obj = _as_object(node, where)
    kind = obj.get("type")
    if kind is None:
        # a profile always has a tail; a step always names its base space
        if "tail" in obj:
            kind = "profile"
        elif "base" in obj:
            kind = "step"
        else:
            raise DocumentError(
                "cannot tell a step from a profile here; add \"type\"", where
            )
    if kind == "profile":
        return parse_profile(obj, where)
    if kind == "step":
        return parse_step(obj, where)
    raise DocumentError("function type must be 'step' or 'profile'", where + ".type")


def function_node(f: StepFunction | DecreasingProfile) -> dict:
    if isinstance(f, StepFunction):
        return {
            "type": "step",
            "base": base_node(f.space),
            "pieces": [
                {
                    "from": format_rational(iv.left),
                    "to": format_rational(iv.right),
                    "value": format_rational(value),
                }
                for iv, value in f.pieces
            ],
        }
    return {
        "type": "profile",
        "pieces": [_power_piece_node(p) for p in f.pieces],
        "tail": tail_node(f.tail),
    }


# ---------------------------------------------------------------------------
# shrinking families


def parse_family(node: Any, where: str = "family") -> ShrinkFamily:
    obj = _as_object(node, where)
    kind = obj.get("kind")
    if kind == HEAD_FAMILY:
        _fields(obj, where, ("kind",))
        return head_family()
    if kind == TAIL_FAMILY:
        _fields(obj, where, ("kind",))
        return tail_family()
    if kind == CUSTOM_FAMILY:
        _fields(obj, where, ("kind", "sets"))
        sets = []
        for i, raw_set in enumerate(_as_array(obj["sets"], where + ".sets")):
            sw = f"{where}.sets[{i}]"
            parts = []
            for j, pair in enumerate(_as_array(raw_set, sw)):
                pw = f"{sw}[{j}]"
                arr = _as_array(pair, pw)
                if len(arr) != 2:
                    raise DocumentError("an interval is a [left, right] pair", pw)
                lo = parse_rational(arr[0], pw)
                hi = _rational_or_inf(arr[1], pw)
                parts.append(_validated(lambda: Interval(lo, hi), pw))
            sets.append(_validated(lambda: IntervalSet.of(*parts), sw))
        return _validated(lambda: custom_family(tuple(sets)), where)
    choices = ", ".join(FAMILY_KINDS)
    raise DocumentError(f"family kind must be one of: {choices}", where + ".kind")


def family_node(family: ShrinkFamily) -> dict:
    if family.kind != CUSTOM_FAMILY:
        return {"kind": family.kind}
    sets = []
    for member in family.sets:
        sets.append(
            [
                [
                    format_rational(iv.left),
                    "inf" if iv.right is None else format_rational(iv.right),
                ]
                for iv in member.parts
            ]
        )
    return {"kind": CUSTOM_FAMILY, "sets": sets}


# ---------------------------------------------------------------------------
# whole documents


def parse_document(text: str) -> SpecDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"not valid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}"
        ) from None
    obj = _as_object(data, "document")
    _fields(obj, "document", (), ("space", "function", "functions", "family", "params"))
    if "function" in obj and "functions" in obj:
        raise DocumentError("give 'function' or 'functions', not both", "document")

    space = parse_space(obj["space"]) if "space" in obj else None
    functions: tuple[StepFunction | DecreasingProfile, ...] = ()
    if "function" in obj:
        functions = (parse_function(obj["function"], "function"),)
    elif "functions" in obj:
        items = _as_array(obj["functions"], "functions")
        functions = tuple(
            parse_function(item, f"functions[{i}]") for i, item in enumerate(items)
        )
    family = parse_family(obj["family"]) if "family" in obj else None

    seed = k_max = samples = None
    if "params" in obj:
        pobj = _as_object(obj["params"], "params")
        _fields(pobj, "params", (), ("seed", "k_max", "samples"))
        if "seed" in pobj:
            seed = _integer(pobj["seed"], "params.seed", low=0)
            if seed >= 2**64:
                raise DocumentError("seed must fit in 64 bits", "params.seed")
        if "k_max" in pobj:
            k_max = _integer(pobj["k_max"], "params.k_max")
        if "samples" in pobj:
            samples = _integer(pobj["samples"], "params.samples")

    return SpecDocument(space, functions, family, seed, k_max, samples)


def document_node(doc: SpecDocument) -> dict:
    out: dict[str, Any] = {}
    if doc.space is not None:
        out["space"] = space_node(doc.space)
    if len(doc.functions) == 1:
        out["function"] = function_node(doc.functions[0])
    elif doc.functions:
        out["functions"] = [function_node(f) for f in doc.functions]
    if doc.family is not None:
        out["family"] = family_node(doc.family)
    params = {
        key: value
        for key, value in (
            ("seed", doc.seed),
            ("k_max", doc.k_max),
            ("samples", doc.samples),
        )
        if value is not None
    }
    if params:
        out["params"] = params
    return out


def dump_document(doc: SpecDocument) -> str:
    """Canonical text form; parsing it back yields an equal document."""
    return json.dumps(document_node(doc), indent=2) + "\n"
