"""Principal parts, the canonical basis X^(j;n), bijectivity and Serre duality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import InconclusiveError, InputError
from .forms import standard_series
from .fundamental import (
    ComponentVector,
    FundamentalMatrix,
    principal_terms,
    strip_principal_part,
)
from .series import QSeries, Scalar, format_rational


@dataclass(frozen=True)
class PrincipalPart:
    """Coefficients of q^(lambda_i + n) for n <= 0, keyed by (i, n)."""

    Lambda: tuple[Fraction, ...]
    terms: dict

    def to_json(self) -> dict:
        return {
            "lambda": [format_rational(x) for x in self.Lambda],
            "terms": [
                {"component": i, "n": n, "coeff": format_rational(c)}
                for (i, n), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
            ],
        }


def principal_part(Y: Sequence[QSeries], lam: Sequence[Scalar]) -> PrincipalPart:
    lam = tuple(Fraction(x) for x in lam)
    return PrincipalPart(lam, principal_terms(Y, lam))


@dataclass(frozen=True)
class BasisElement:
    j: int
    n: int
    series: tuple[QSeries, ...]

    def coefficient(self, i: int, m: int, Lambda: Sequence[Fraction]) -> Fraction:
        """The coefficient X^(j;n)_(m) i of q^(Lambda_i + m)."""
        return self.series[i].coefficient(Lambda[i] + m)


def basis_element(fm: FundamentalMatrix, j: int, n: int) -> BasisElement:
    """The unique form with principal part q^(Lambda_j - n) e_j.

    Built from J^n times column j of Xi by stripping every other principal
    term, most negative exponent first.
    """
    if not 0 <= j < fm.d:
        raise InputError(f"component index {j} out of range 0..{fm.d - 1}")
    if n < 0:
        raise InputError("n must be non-negative")
    col = fm.column(j)
    if n:
        Jn = standard_series("J", fm.order) ** n
        col = [x * Jn for x in col]
    residual, _ = strip_principal_part(fm, col, keep=(j, -n))
    return BasisElement(j, n, tuple(residual))


def coefficient_matrix(fm: FundamentalMatrix, ell: Sequence[int]) -> linalg.Matrix:
    """The matrix X(ell): rows (i;m) with 0 < m <= ell_i, columns (j;n) with
    0 <= n < -ell_j, entries X^(j;n)_(m) i."""
    rows = [(i, m) for i, e in enumerate(ell) for m in range(1, e + 1)]
    cols = [(j, n) for j, e in enumerate(ell) for n in range(0, -e)]
    needed = max((m for _, m in rows), default=0) + max((n for _, n in cols), default=0)
    if needed > fm.order:
        raise InconclusiveError(
            f"order {fm.order} too low for the coefficient matrix (need {needed})"
        )
    elements = {key: basis_element(fm, *key) for key in cols}
    return tuple(
        tuple(elements[(j, n)].coefficient(i, m, fm.Lambda) for (j, n) in cols)
        for (i, m) in rows
    )


def _ell(fm: FundamentalMatrix, lam: Sequence[Scalar]) -> list[int]:
    if len(lam) != fm.d:
        raise InputError(f"exponent needs {fm.d} entries")
    ell = []
    for x, base in zip(lam, fm.Lambda):
        diff = Fraction(x) - base
        if diff.denominator != 1:
            raise InputError(
                f"exponent entry {format_rational(Fraction(x))} is not congruent to "
                f"{format_rational(base)} mod 1"
            )
        ell.append(int(diff))
    return ell


def kernel_cokernel_dims(fm: FundamentalMatrix, lam: Sequence[Scalar]) -> tuple[int, int]:
    """Dimensions of the kernel and cokernel of the principal-part map P_lambda."""
    ell = _ell(fm, lam)
    X = coefficient_matrix(fm, ell)
    nrows = sum(max(e, 0) for e in ell)
    ncols = sum(max(-e, 0) for e in ell)
    r = linalg.rank(X) if nrows and ncols else 0
    return ncols - r, nrows - r


def bijectivity_test(fm: FundamentalMatrix, lam: Sequence[Scalar]) -> bool:
    """Whether P_lambda is bijective, i.e. X(lambda - Lambda) is square and invertible."""
    return kernel_cokernel_dims(fm, lam) == (0, 0)


def serre_dual(fm: FundamentalMatrix) -> FundamentalMatrix:
    """Xi* = (E4^2 E6/Delta) (Xi^t)^-1 at weight 2 - w, exponent -1 - Lambda.

    With Xi = q^Lambda U, the transpose inverse is q^-Lambda (U^t)^-1; the
    unit part is inverted as a matrix power series.
    """
    n, d = fm.order, fm.d
    Ut = [linalg.transpose(c) for c in fm.coefficients]
    V = [linalg.identity(d)]
    for k in range(1, n + 1):
        acc = linalg.zeros(d)
        for l in range(1, k + 1):
            acc = linalg.add(acc, linalg.mul(Ut[l], V[k - l]))
        V.append(linalg.scale(acc, -1))
    h = (standard_series("E14", n) * standard_series("Delta", n).invert()).shift(1)
    coeffs = []
    for k in range(n + 1):
        acc = linalg.zeros(d)
        for l in range(k + 1):
            if h.coeffs[l]:
                acc = linalg.add(acc, linalg.scale(V[k - l], h.coeffs[l]))
        coeffs.append(acc)
    return FundamentalMatrix(2 - fm.weight, tuple(-1 - x for x in fm.Lambda), tuple(coeffs))


def duality_symmetry_check(fm: FundamentalMatrix, dual: FundamentalMatrix, M: int) -> bool:
    """X^(j;n-1)_(m) i == -X*^(i;m-1)_(n) j for 1 <= m, n <= M."""
    if 2 * M > min(fm.order, dual.order) + 1:
        raise InconclusiveError(f"orders {fm.order}, {dual.order} too low for M = {M}")
    d = fm.d
    X = {(j, k): basis_element(fm, j, k) for j in range(d) for k in range(M)}
    Y = {(i, k): basis_element(dual, i, k) for i in range(d) for k in range(M)}
    for i in range(d):
        for j in range(d):
            for m in range(1, M + 1):
                for n in range(1, M + 1):
                    left = X[(j, n - 1)].coefficient(i, m, fm.Lambda)
                    right = Y[(i, m - 1)].coefficient(j, n, dual.Lambda)
                    if left != -right:
                        return False
    return True


def pairing_constant_term(X: Sequence[QSeries], Y: Sequence[QSeries]) -> Fraction:
    """Constant term of sum_i X_i Y_i."""
    if len(X) != len(Y):
        raise InputError("pairing needs vectors of equal length")
    total = Fraction(0)
    for x, y in zip(X, Y):
        total += (x * y).coefficient(0)
    return total
