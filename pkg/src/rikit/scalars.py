"""Extended exact arithmetic for measures, integrals, and norm values.

A Scalar is an exact rational, a float tagged as approximate, or +inf.
Exactness is decided structurally: operations on exact inputs stay exact
unless the result is provably irrational, in which case they degrade to
a tagged float whose promised relative accuracy is REL_TOL.  There is no
negative infinity; forms that would need one (inf - inf, x - inf) are
rejected, as are 0 * inf and division by zero.  Nothing here rounds
silently.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import UndefinedOperationError, ZeroTimesInfinityError

#: Promised relative accuracy of every value tagged approximate.
REL_TOL = 1e-12

RationalLike = Union[int, str, Fraction]


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "num/den" string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational literal: {x!r}")


def _int_root(n: int, k: int) -> int | None:
    """Exact k-th root of a non-negative integer, or None if inexact."""
    if n < 0 or k < 1:
        raise ValueError("root domain")
    if n in (0, 1) or k == 1:
        return n
    if k == 2:
        r = math.isqrt(n)
        return r if r * r == n else None
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def rational_pow(base: Fraction, exp: Fraction) -> Fraction | None:
    """base**exp as an exact Fraction when the value is rational, else None.

    base must be positive.  base**(n/d) is rational exactly when the
    numerator and denominator of base are both perfect d-th powers.
    """
    if base <= 0:
        raise ValueError("rational_pow needs a positive base")
    if exp == 0 or base == 1:
        return Fraction(1)
    n, d = exp.numerator, exp.denominator
    pn = _int_root(base.numerator, d)
    pd = _int_root(base.denominator, d)
    if pn is None or pd is None:
        return None
    root = Fraction(pn, pd)
    return root**n


def compare_powers(
    c1: Fraction, u1: Fraction, a1: Fraction, c2: Fraction, u2: Fraction, a2: Fraction
) -> int:
    """Exact sign of c1*u1**a1 - c2*u2**a2 for rational data.

    c1, c2 >= 0 and u1, u2 > 0.  Both sides are raised to the common
    denominator of the exponents, which is order-preserving on
    non-negative reals and lands in pure integer-exponent arithmetic.
    """
    if u1 <= 0 or u2 <= 0:
        raise ValueError("compare_powers needs positive bases")
    if c1 == 0 or c2 == 0:
        if c1 == c2:
            return 0
        return 1 if c2 == 0 else -1
    d = math.lcm(a1.denominator, a2.denominator)
    n1 = a1.numerator * (d // a1.denominator)
    n2 = a2.numerator * (d // a2.denominator)
    lhs = c1**d * u1**n1
    rhs = c2**d * u2**n2
    return (lhs > rhs) - (lhs < rhs)


class Scalar:
    """Exact rational, tagged-approximate float, or +inf.

    Immutable; all arithmetic returns new instances.  Comparisons are
    numeric (an exact 1/2 equals an approximate 0.5); use is_exact when
    the tag matters.
    """

    __slots__ = ("_kind", "_value")

    _EXACT = "exact"
    _APPROX = "approx"
    _INF = "inf"

    def __init__(self, kind: str, value):
        object.__setattr__(self, "_kind", kind)
        object.__setattr__(self, "_value", value)

    def __setattr__(self, *a):  # pragma: no cover - guard only
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, x: RationalLike) -> "Scalar":
        return cls(cls._EXACT, as_fraction(x))

    @classmethod
    def approx(cls, x: float) -> "Scalar":
        x = float(x)
        if math.isnan(x):
            raise UndefinedOperationError("approximate value is NaN")
        if math.isinf(x):
            if x > 0:
                return INF
            raise UndefinedOperationError("negative infinity is not representable")
        return cls(cls._APPROX, x)

    # -- predicates ---------------------------------------------------

    @property
    def is_inf(self) -> bool:
        return self._kind == self._INF

    @property
    def is_exact(self) -> bool:
        return self._kind == self._EXACT

    @property
    def is_approx(self) -> bool:
        return self._kind == self._APPROX

    @property
    def is_finite(self) -> bool:
        return self._kind != self._INF

    def is_zero(self) -> bool:
        return self.is_finite and self._value == 0

    # -- conversions --------------------------------------------------

    def as_float(self) -> float:
        if self.is_inf:
            return math.inf
        return float(self._value)

    def as_fraction(self) -> Fraction:
        if not self.is_exact:
            raise UndefinedOperationError(f"{self} has no exact rational value")
        return self._value

    @property
    def flag(self) -> str:
        """Exactness tag for reports: "exact" or "approx" ("exact" for inf)."""
        return "approx" if self.is_approx else "exact"

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.exact(other)
        if isinstance(other, float):
            return Scalar.approx(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_inf or other.is_inf:
            return INF
        if self.is_exact and other.is_exact:
            return Scalar.exact(self._value + other._value)
        return Scalar.approx(self.as_float() + other.as_float())

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_inf:
            raise UndefinedOperationError("subtraction of +inf is undefined here")
        if self.is_inf:
            return INF
        if self.is_exact and other.is_exact:
            return Scalar.exact(self._value - other._value)
        return Scalar.approx(self.as_float() - other.as_float())

    def __neg__(self):
        if self.is_inf:
            raise UndefinedOperationError("negative infinity is not representable")
        if self.is_exact:
            return Scalar.exact(-self._value)
        return Scalar.approx(-self._value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_inf or other.is_inf:
            fin = other if self.is_inf else self
            if fin.is_inf:
                return INF
            if fin._value == 0:
                raise ZeroTimesInfinityError("0 * inf rejected; no default value")
            if fin._value < 0:
                raise UndefinedOperationError("negative multiple of +inf")
            return INF
        if self.is_exact and other.is_exact:
            return Scalar.exact(self._value * other._value)
        return Scalar.approx(self.as_float() * other.as_float())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_inf:
            if self.is_inf:
                raise UndefinedOperationError("inf / inf is undefined")
            return Scalar.exact(0)
        if other._value == 0:
            raise UndefinedOperationError("division by zero")
        if self.is_inf:
            if other._value < 0:
                raise UndefinedOperationError("negative divisor of +inf")
            return INF
        if self.is_exact and other.is_exact:
            return Scalar.exact(self._value / other._value)
        return Scalar.approx(self.as_float() / other.as_float())

    def pow(self, exp: RationalLike) -> "Scalar":
        """self**exp with rational exponent; exact whenever provably rational."""
        exp = as_fraction(exp)
        if self.is_inf:
            if exp > 0:
                return INF
            if exp < 0:
                return Scalar.exact(0)
            raise UndefinedOperationError("inf ** 0 is undefined")
        if self._value == 0:
            if exp > 0:
                return Scalar.exact(0)
            if exp == 0:
                return Scalar.exact(1)
            raise UndefinedOperationError("0 ** negative exponent")
        if self._value < 0:
            raise UndefinedOperationError("negative base for rational power")
        if self.is_exact:
            r = rational_pow(self._value, exp)
            if r is not None:
                return Scalar.exact(r)
        return Scalar.approx(self.as_float() ** float(exp))

    # -- comparisons --------------------------------------------------

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError("cannot compare Scalar with that type")
        if self.is_inf and other.is_inf:
            return 0
        if self.is_inf:
            return 1
        if other.is_inf:
            return -1
        a, b = self._value, other._value
        return (a > b) - (a < b)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        if self.is_inf:
            return hash(math.inf)
        return hash(self._value)

    def close_to(self, other: "Scalar", rel: float = REL_TOL) -> bool:
        """Equality under the numeric tower's promise.

        Exact pairs must agree exactly; once an approximate value is
        involved the comparison is relative within rel (absolute near 0).
        """
        if self.is_inf or other.is_inf:
            return self.is_inf and other.is_inf
        if self.is_exact and other.is_exact:
            return self._value == other._value
        return math.isclose(self.as_float(), other.as_float(), rel_tol=rel, abs_tol=rel)

    # -- presentation -------------------------------------------------

    def __repr__(self):
        if self.is_inf:
            return "inf"
        if self.is_exact:
            return str(self._value)
        return f"~{self._value!r}"

    def literal(self) -> str:
        """Serialized form: "num/den" or "inf"; approximate values as repr floats."""
        if self.is_inf:
            return "inf"
        if self.is_exact:
            return str(self._value)
        return repr(self._value)


INF = Scalar(Scalar._INF, None)
ZERO = Scalar.exact(0)
ONE = Scalar.exact(1)


def scalar_max(values: Iterable[Scalar]) -> Scalar:
    """Largest of the values; on numeric ties an exact representative wins."""
    best: Scalar | None = None
    for v in values:
        if best is None or v > best or (v == best and v.is_exact and not best.is_exact):
            best = v
    if best is None:
        raise ValueError("scalar_max of empty iterable")
    return best


def power_value(coeff: Scalar, base: Fraction, exponent: Fraction) -> Scalar:
    """coeff * base**exponent for base > 0, exact whenever provably rational."""
    if coeff.is_finite and coeff.is_zero():
        return ZERO
    if exponent == 0:
        return coeff
    return coeff * Scalar.exact(base).pow(exponent)
