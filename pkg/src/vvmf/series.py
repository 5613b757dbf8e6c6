"""Truncated q-expansions with exact rational coefficients.

A QSeries stands for ``q^offset * (c_0 + c_1 q + ... + c_N q^N) + O(q^(offset+N+1))``.
The offset is any rational; ``offset + N`` is called the reach, the largest
exponent whose coefficient is known. Leading zero coefficients are allowed,
so the offset need not be the valuation.

Arithmetic keeps track of truncation honestly: sums are known up to the
smaller reach, products up to the smaller relative order.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    BranchAmbiguityError,
    DivergentCompositionError,
    IncompatibleOffsetError,
    InputError,
    NotAUnitError,
    OutOfRangeError,
)

Scalar = Union[int, Fraction]


def default_order() -> int:
    """Truncation order used when none is given (env VVMF_DEFAULT_ORDER)."""
    raw = os.environ.get("VVMF_DEFAULT_ORDER")
    if raw is None:
        return 30
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"VVMF_DEFAULT_ORDER must be an integer, got {raw!r}")
    if value < 0:
        raise InputError("VVMF_DEFAULT_ORDER must be non-negative")
    return value


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {value!r}")


def format_rational(x: Scalar) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _is_integer(x: Fraction) -> bool:
    return x.denominator == 1


@dataclass(frozen=True)
class QSeries:
    offset: Fraction
    coeffs: tuple[Fraction, ...]

    def __init__(self, offset: Scalar, coeffs: Iterable[Scalar]):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise InputError("a QSeries needs at least one coefficient")
        object.__setattr__(self, "offset", Fraction(offset))
        object.__setattr__(self, "coeffs", cs)

    # construction

    @classmethod
    def zero(cls, offset: Scalar = 0, order: int = 0) -> "QSeries":
        return cls(offset, [0] * (order + 1))

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "QSeries":
        return cls(0, [value] + [0] * order)

    @classmethod
    def monomial(cls, coeff: Scalar, exponent: Scalar, order: int) -> "QSeries":
        """``coeff * q^exponent`` known exactly through relative order ``order``."""
        return cls(exponent, [coeff] + [0] * order)

    # basic properties

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def reach(self) -> Fraction:
        return self.offset + self.order

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def leading_exponent(self) -> Fraction | None:
        """Exponent of the first nonzero coefficient, None for the zero series."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return self.offset + k
        return None

    def leading_coefficient(self) -> Fraction:
        for c in self.coeffs:
            if c != 0:
                return c
        return Fraction(0)

    def strip(self) -> "QSeries":
        """Drop leading zero coefficients, moving the offset up."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return QSeries(self.offset + k, self.coeffs[k:]) if k else self
        return QSeries(self.reach, [0])

    def coefficient(self, exponent: Scalar) -> Fraction:
        e = Fraction(exponent)
        if e > self.reach:
            raise OutOfRangeError(
                f"coefficient of q^{format_rational(e)} requested beyond "
                f"reach {format_rational(self.reach)}"
            )
        diff = e - self.offset
        if not _is_integer(diff) or diff < 0:
            return Fraction(0)
        return self.coeffs[int(diff)]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise OutOfRangeError(f"cannot extend order {self.order} to {order}")
        return QSeries(self.offset, self.coeffs[: order + 1])

    def truncate_reach(self, reach: Scalar) -> "QSeries":
        """Truncate so that the reach does not exceed ``reach``."""
        order = math.floor(Fraction(reach) - self.offset)
        if order < 0:
            raise OutOfRangeError("truncation would leave no coefficients")
        return self.truncate(min(order, self.order))

    def with_offset(self, offset: Scalar) -> "QSeries":
        """Re-express with a smaller offset (padding zeros) or a larger one
        (dropping leading zeros)."""
        offset = Fraction(offset)
        diff = offset - self.offset
        if not _is_integer(diff):
            raise IncompatibleOffsetError(
                f"offsets {self.offset} and {offset} differ by a non-integer"
            )
        k = int(diff)
        if k <= 0:
            return QSeries(offset, [0] * (-k) + list(self.coeffs))
        if any(c != 0 for c in self.coeffs[:k]):
            raise OutOfRangeError("cannot raise offset past a nonzero coefficient")
        if k > self.order:
            return QSeries(offset, [0])
        return QSeries(offset, self.coeffs[k:])

    # arithmetic

    def _align(self, other: "QSeries") -> tuple[Fraction, int, int, int]:
        diff = other.offset - self.offset
        if not _is_integer(diff):
            raise IncompatibleOffsetError(
                f"offsets {format_rational(self.offset)} and "
                f"{format_rational(other.offset)} differ by a non-integer"
            )
        lo = min(self.offset, other.offset)
        reach = min(self.reach, other.reach)
        return lo, int(self.offset - lo), int(other.offset - lo), int(reach - lo)

    def _add(self, other: "QSeries", sign: int) -> "QSeries":
        lo, sa, sb, top = self._align(other)
        out = [Fraction(0)] * (top + 1)
        for k, c in enumerate(self.coeffs):
            if sa + k > top:
                break
            out[sa + k] += c
        for k, c in enumerate(other.coeffs):
            if sb + k > top:
                break
            out[sb + k] += sign * c
        return QSeries(lo, out)

    def _add_scalar(self, value: Fraction) -> "QSeries":
        if value == 0:
            return self
        if not _is_integer(self.offset):
            raise IncompatibleOffsetError(
                f"cannot add a constant to a series with offset {self.offset}"
            )
        if self.reach < 0:
            return self
        if self.offset <= 0:
            cs = list(self.coeffs)
            cs[int(-self.offset)] += value
            return QSeries(self.offset, cs)
        pad = [Fraction(0)] * int(self.offset)
        return QSeries(0, [value] + pad[1:] + list(self.coeffs))

    def __add__(self, other):
        if isinstance(other, QSeries):
            return self._add(other, 1)
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(Fraction(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.offset, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return self._add(other, -1)
        if isinstance(other, (int, Fraction)):
            return self._add_scalar(-Fraction(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return QSeries(self.offset, [s * c for c in self.coeffs])
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = Fraction(0)
            for i in range(k + 1):
                x = a[i]
                if x:
                    y = b[k - i]
                    if y:
                        acc += x * y
            out.append(acc)
        return QSeries(self.offset + other.offset, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            return pow_rational(self, k)
        if k < 0:
            return self.invert() ** (-k)
        result = QSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse; the leading stored coefficient must be nonzero."""
        a = self.coeffs
        if a[0] == 0:
            raise NotAUnitError(
                "leading coefficient is zero; strip() the series first if it is "
                "known to be nonzero"
            )
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if a[k]:
                    acc += a[k] * out[n - k]
            out.append(-acc * inv0)
        return QSeries(-self.offset, out)

    def shift(self, e: Scalar) -> "QSeries":
        """Multiply by q^e."""
        return QSeries(self.offset + Fraction(e), self.coeffs)

    def theta(self) -> "QSeries":
        """The derivation q d/dq."""
        return QSeries(
            self.offset, [(self.offset + k) * c for k, c in enumerate(self.coeffs)]
        )

    def agrees(self, other: "QSeries") -> bool:
        """True when both series agree up to their common reach."""
        try:
            return (self - other).is_zero()
        except IncompatibleOffsetError:
            return self.is_zero() and other.is_zero()

    # numerics and serialization

    def evaluate(self, tau: complex) -> complex:
        """Numerical value at tau, with q^e read as exp(2 pi i tau e)."""
        total = 0j
        for k, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(2j * math.pi * tau * float(self.offset + k))
        return total

    def to_json(self) -> dict:
        return {
            "offset": format_rational(self.offset),
            "coeffs": [format_rational(c) for c in self.coeffs],
            "order": self.order,
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        try:
            offset = parse_rational(data["offset"])
            coeffs = [parse_rational(c) for c in data["coeffs"]]
        except (KeyError, TypeError):
            raise InputError("series JSON needs 'offset' and 'coeffs'")
        if "order" in data and data["order"] != len(coeffs) - 1:
            raise InputError("series JSON 'order' disagrees with coefficient count")
        return cls(offset, coeffs)

    def __repr__(self) -> str:
        shown = ", ".join(format_rational(c) for c in self.coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"QSeries(offset={format_rational(self.offset)}, [{shown}{more}], order={self.order})"


def pow_rational(a: QSeries, r: Scalar) -> QSeries:
    """``a ** r`` for rational r.

    Integer powers are computed by repeated multiplication. For other r the
    leading coefficient must be 1 so that the principal branch is forced;
    the offset becomes ``r * offset``.
    """
    r = Fraction(r)
    if r.denominator == 1:
        return a ** int(r)
    if a.coeffs[0] != 1:
        raise BranchAmbiguityError(
            f"rational power {format_rational(r)} needs leading coefficient 1, "
            f"got {format_rational(a.coeffs[0])}"
        )
    c = a.coeffs
    out = [Fraction(1)]
    for n in range(1, len(c)):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if c[k]:
                acc += ((r + 1) * k - n) * c[k] * out[n - k]
        out.append(acc / n)
    return QSeries(r * a.offset, out)


def substitute(outer: Sequence[Scalar] | QSeries, inner: QSeries) -> QSeries:
    """Compose a power series in x with a q-series of valuation at least 1.

    ``outer`` is either a coefficient list (an exact polynomial) or a QSeries
    with offset 0 (a truncated power series). The result has offset 0.
    """
    if isinstance(outer, QSeries):
        if outer.offset != 0:
            raise InputError("outer series must have offset 0")
        coeffs = list(outer.coeffs)
        outer_order: int | None = outer.order
    else:
        coeffs = [Fraction(c) for c in outer]
        outer_order = None
    reach = inner.reach
    lead = inner.leading_exponent()
    if lead is None:
        return QSeries.constant(coeffs[0] if coeffs else 0, max(int(math.floor(reach)), 0))
    if not _is_integer(inner.offset) or lead < 1:
        raise DivergentCompositionError(
            f"inner series has valuation {format_rational(lead)}; need an "
            "integral valuation of at least 1"
        )
    v = int(lead)
    inner = inner.strip()
    top = int(reach)
    if outer_order is not None:
        top = min(top, (outer_order + 1) * v - 1)
    inner = inner.truncate(top - v) if top >= v else inner.truncate(0)
    kmax = min(top // v, len(coeffs) - 1)
    result = QSeries.constant(coeffs[kmax] if kmax >= 0 else 0, top)
    for k in range(kmax - 1, -1, -1):
        result = result * inner + coeffs[k]
        if result.offset != 0:
            result = result.with_offset(0)
    if result.order > top:
        result = result.truncate(top)
    return result


class SeriesMatrix:
    """A small matrix of QSeries, with the products needed for identities."""

    def __init__(self, rows: Sequence[Sequence[QSeries]]):
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> QSeries:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[QSeries]:
        return [row[j] for row in self.rows]

    def transpose(self) -> "SeriesMatrix":
        return SeriesMatrix(list(zip(*self.rows)))

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        n, m = self.shape
        _, p = other.shape
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = None
                for k in range(m):
                    term = self.rows[i][k] * other.rows[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out)

    def scale(self, s) -> "SeriesMatrix":
        return SeriesMatrix([[x * s for x in row] for row in self.rows])

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        return SeriesMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        return SeriesMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def det(self) -> QSeries:
        return _det([list(r) for r in self.rows])


def _det(rows: list[list[QSeries]]) -> QSeries:
    # Laplace expansion along the first row; ranks here are tiny.
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total
