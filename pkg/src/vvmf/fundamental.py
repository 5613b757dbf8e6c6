"""Fundamental matrices and the structure they determine.

A fundamental matrix at weight w is Xi = q^Lambda (1 + chi q + Xi_2 q^2 + ...),
where row i carries the factor q^Lambda_ii. It is stored as the exponent
Lambda and the coefficient matrices Xi_(0) = 1, Xi_(1) = chi, Xi_(2), ...

Given (Lambda, chi) everything else follows from the first-order equation

    (E4 E6/Delta) D_w Xi = Xi ((J - 984) Lambda_w + chi_w + [Lambda_w, chi_w])

with Lambda_w = Lambda - w/12 and chi_w = chi + 2w. Comparing coefficients
gives the recursion in solve_recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    InconclusiveError,
    InputError,
    ResonanceError,
    ShiftDegeneracyError,
    StructuralFailureError,
    UnderdeterminedError,
)
from .forms import aux_coefficients, derivative_power, modular_derivative, standard_series
from .linalg import Matrix
from .multiplier import MultiplierData, c_shift, c_value
from .series import QSeries, Scalar, SeriesMatrix, format_rational, pow_rational

ComponentVector = list[QSeries]


@dataclass(frozen=True)
class FundamentalMatrix:
    weight: Fraction
    Lambda: tuple[Fraction, ...]
    coefficients: tuple[Matrix, ...]

    @property
    def d(self) -> int:
        return len(self.Lambda)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def chi(self) -> Matrix:
        return self.coefficients[1]

    @property
    def higher(self) -> tuple[Matrix, ...]:
        return self.coefficients[2:]

    def entry(self, i: int, j: int) -> QSeries:
        return QSeries(self.Lambda[i], [c[i][j] for c in self.coefficients])

    def column(self, j: int) -> ComponentVector:
        return [self.entry(i, j) for i in range(self.d)]

    def series_matrix(self) -> SeriesMatrix:
        return SeriesMatrix([[self.entry(i, j) for j in range(self.d)] for i in range(self.d)])

    def truncate(self, order: int) -> "FundamentalMatrix":
        if order > self.order:
            raise InputError(f"cannot extend order {self.order} to {order}")
        return FundamentalMatrix(self.weight, self.Lambda, self.coefficients[: order + 1])

    def evaluate(self, tau: complex) -> list[list[complex]]:
        return [[self.entry(i, j).evaluate(tau) for j in range(self.d)] for i in range(self.d)]

    def to_json(self) -> dict:
        fmt = lambda m: [[format_rational(x) for x in row] for row in m]
        return {
            "d": self.d,
            "w": format_rational(self.weight),
            "Lambda": [format_rational(x) for x in self.Lambda],
            "order": self.order,
            "coefficients": [fmt(c) for c in self.coefficients],
        }


def _weighted(Lambda: Sequence[Fraction], chi: Matrix, w: Fraction) -> tuple[Matrix, Matrix]:
    d = len(Lambda)
    lam_w = linalg.diag([x - w / 12 for x in Lambda])
    chi_w = linalg.add(chi, linalg.scale(linalg.identity(d), 2 * w))
    return lam_w, chi_w


def _residue_term(lam_w: Matrix, chi_w: Matrix) -> Matrix:
    return linalg.add(chi_w, linalg.commutator(lam_w, chi_w))


def solve_recursion(
    Lambda: Sequence[Scalar], chi: Sequence[Sequence[Scalar]], w: Scalar, N: int
) -> FundamentalMatrix:
    """Coefficients Xi_(0..N) of the fundamental matrix with data (Lambda, chi).

    For n >= 2,
        (Lambda_ii - Lambda_jj + n) Xi_(n)ij
            = [sum_{l<n} Xi_(l) (f_(n-l) Lambda_w + (w/12) t_(n-l) + g_(n-l) K)]_ij
    with K = chi_w + [Lambda_w, chi_w]. A vanishing left factor is a
    resonance (nonzero right side) or leaves the entry undetermined.
    """
    lam = tuple(Fraction(x) for x in Lambda)
    chi_m = linalg.as_matrix(chi)
    w = Fraction(w)
    d = len(lam)
    if len(chi_m) != d or any(len(r) != d for r in chi_m):
        raise InputError(f"chi must be {d}x{d}")
    if N < 1:
        raise InputError("order must be at least 1")
    f, g, t = aux_coefficients(N)
    lam_w, chi_w = _weighted(lam, chi_m, w)
    K = _residue_term(lam_w, chi_w)
    ident = linalg.identity(d)
    kernels = [None]
    for k in range(1, N + 1):
        term = linalg.add(linalg.scale(lam_w, f[k]), linalg.scale(ident, w * t[k] / 12))
        kernels.append(linalg.add(term, linalg.scale(K, g[k])))
    coeffs: list[Matrix] = [ident, chi_m]
    for n in range(2, N + 1):
        rhs = [[Fraction(0)] * d for _ in range(d)]
        for l in range(n):
            prod = linalg.mul(coeffs[l], kernels[n - l])
            for i in range(d):
                row, prow = rhs[i], prod[i]
                for j in range(d):
                    row[j] += prow[j]
        new = []
        for i in range(d):
            row = []
            for j in range(d):
                div = lam[i] - lam[j] + n
                if div == 0:
                    if rhs[i][j] != 0:
                        raise ResonanceError(i, j, n)
                    raise UnderdeterminedError(i, j, n)
                row.append(rhs[i][j] / div)
            new.append(tuple(row))
        coeffs.append(tuple(new))
    return FundamentalMatrix(w, lam, tuple(coeffs[: N + 1]))


@dataclass(frozen=True)
class AMatrices:
    A2: Matrix
    A3: Matrix


def a_matrices(Lambda: Sequence[Scalar], chi: Sequence[Sequence[Scalar]], w: Scalar = 0) -> AMatrices:
    """A2 = 31/72 Lambda + K/1728 and A3 = 41/72 Lambda - K/1728, K = chi + [Lambda, chi].

    Data at weight w are first normalized to weight 0 (Lambda_w, chi_w).
    """
    lam_w, chi_w = _weighted([Fraction(x) for x in Lambda], linalg.as_matrix(chi), Fraction(w))
    K = linalg.scale(_residue_term(lam_w, chi_w), Fraction(1, 1728))
    A2 = linalg.add(linalg.scale(lam_w, Fraction(31, 72)), K)
    A3 = linalg.sub(linalg.scale(lam_w, Fraction(41, 72)), K)
    return AMatrices(A2, A3)


def _poly_vanishes(A: Matrix, roots: Sequence[Fraction]) -> bool:
    d = len(A)
    prod = linalg.identity(d)
    for r in roots:
        prod = linalg.mul(prod, linalg.sub(A, linalg.scale(linalg.identity(d), r)))
    return linalg.is_zero(prod)


def verify_elliptic(am: AMatrices) -> bool:
    """Whether A2 and A3 have the eigenvalue structure forced at tau = i and rho.

    In z = J/1728 the fundamental matrix satisfies
    dXi/dz = Xi (-A2/(z-1) - A3/z), so the local exponents are the eigenvalues
    of -A2 and -A3. Holomorphy at the elliptic points forces
    A2 (A2 + 1/2) = 0 and A3 (A3 + 1/3) (A3 + 2/3) = 0.
    """
    return _poly_vanishes(am.A2, [Fraction(-1, 2), Fraction(0)]) and _poly_vanishes(
        am.A3, [Fraction(0), Fraction(-1, 3), Fraction(-2, 3)]
    )


def eigenspace(A: Matrix, value: Scalar) -> list[tuple[Fraction, ...]]:
    """Exact basis of ker(A - value)."""
    d = len(A)
    return linalg.kernel(linalg.sub(A, linalg.scale(linalg.identity(d), Fraction(value))))


def elliptic_multiplicities(am: AMatrices) -> tuple[tuple[int, int], tuple[int, int, int]]:
    """(alpha, beta) read off as eigenvalue multiplicities of A2 and A3."""
    alpha = tuple(len(eigenspace(am.A2, -Fraction(k, 2))) for k in range(2))
    beta = tuple(len(eigenspace(am.A3, -Fraction(k, 3))) for k in range(3))
    return alpha, beta


def _diag_series_matrix(Lambda_w: Matrix, factor: QSeries, extra: Matrix) -> SeriesMatrix:
    d = len(Lambda_w)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            s = QSeries.constant(extra[i][j], factor.order)
            if i == j:
                s = s + factor * Lambda_w[i][i]
            row.append(s)
        rows.append(row)
    return SeriesMatrix(rows)


def fundeq1_residual(fm: FundamentalMatrix) -> SeriesMatrix:
    """(E4E6/Delta) D_w Xi - Xi ((J-984) Lambda_w + K), to truncation."""
    n = fm.order
    lam_w, chi_w = _weighted(fm.Lambda, fm.chi, fm.weight)
    K = _residue_term(lam_w, chi_w)
    h = standard_series("E10", n) * standard_series("Delta", n).invert()
    xi = fm.series_matrix()
    lhs = SeriesMatrix(
        [[h * modular_derivative(xi[i, j], fm.weight) for j in range(fm.d)] for i in range(fm.d)]
    )
    B = _diag_series_matrix(lam_w, standard_series("J", n) - 984, K)
    return lhs - xi @ B


def fundeq1_holds(fm: FundamentalMatrix) -> bool:
    return fundeq1_residual(fm).is_zero()


def det_exponents(m: MultiplierData) -> tuple[int, int, Fraction]:
    """Exponents (a, b, e) with det Xi = E4^a E6^b Delta^e."""
    a = m.beta[1] + 2 * m.beta[2]
    b = m.alpha[1]
    e = (m.d * m.w - 4 * m.beta[1] - 8 * m.beta[2] - 6 * m.alpha[1]) / 12
    return a, b, Fraction(e)


def det_identity_check(fm: FundamentalMatrix, m: MultiplierData) -> bool:
    """det Xi == E4^(beta_1+2beta_2) E6^alpha_1 Delta^((dw-4beta_1-8beta_2-6alpha_1)/12)."""
    n = fm.order
    a, b, e = det_exponents(m)
    expected = standard_series("E4", n) ** a * standard_series("E6", n) ** b
    expected = expected * pow_rational(standard_series("Delta", n), e)
    det = fm.series_matrix().det()
    if det.offset != expected.offset:
        return False
    return det.agrees(expected)


# Principal parts and the stripping procedure shared with the basis module.


def principal_terms(Y: Sequence[QSeries], Lambda: Sequence[Fraction]) -> dict[tuple[int, int], Fraction]:
    """Nonzero coefficients of q^(Lambda_i + n), n <= 0, keyed by (i, n)."""
    out: dict[tuple[int, int], Fraction] = {}
    for i, (y, lam) in enumerate(zip(Y, Lambda)):
        diff = y.offset - lam
        if diff.denominator != 1:
            raise InputError(
                f"component {i} has offset {format_rational(y.offset)}, not in "
                f"Lambda_{i} + Z = {format_rational(lam)} + Z"
            )
        if y.reach < lam:
            raise InconclusiveError(f"component {i} is truncated below its principal part")
        for k, c in enumerate(y.coeffs):
            n = int(diff) + k
            if n > 0:
                break
            if c != 0:
                out[(i, n)] = c
    return out


def _column_times_j_power(fm: FundamentalMatrix, j: int, k: int) -> ComponentVector:
    col = fm.column(j)
    if k == 0:
        return col
    Jk = standard_series("J", fm.order) ** k
    return [x * Jk for x in col]


def strip_principal_part(
    fm: FundamentalMatrix,
    Y: Sequence[QSeries],
    keep: tuple[int, int] | None = None,
) -> tuple[ComponentVector, dict[int, dict[int, Fraction]]]:
    """Remove principal-part terms of Y by subtracting c Xi_(col i) J^k.

    The most negative exponent goes first; ties are broken by ascending
    component. The term ``keep`` = (i, n), if given, is left in place.
    Returns the residual and the polynomials used, as {i: {k: coeff}}.
    """
    residual = list(Y)
    polys: dict[int, dict[int, Fraction]] = {}
    while True:
        terms = principal_terms(residual, fm.Lambda)
        if keep is not None:
            terms.pop(keep, None)
        if not terms:
            return residual, polys
        i, n = min(terms, key=lambda key: (key[1], key[0]))
        c = terms[(i, n)]
        k = -n
        sub = _column_times_j_power(fm, i, k)
        residual = [r - s * c for r, s in zip(residual, sub)]
        polys.setdefault(i, {})
        polys[i][k] = polys[i].get(k, Fraction(0)) + c


def module_membership(fm: FundamentalMatrix, Y: Sequence[QSeries]) -> list[list[Fraction]] | None:
    """Polynomials p_i with Y = Xi p(J), or None when Y is not in the module.

    The answer is a list of coefficient lists in J (lowest degree first).
    Raises InconclusiveError when truncation leaves nothing to check after
    the principal part is cleared.
    """
    if len(Y) != fm.d:
        raise InputError(f"expected {fm.d} components, got {len(Y)}")
    residual, polys = strip_principal_part(fm, Y)
    checked = False
    for r, lam in zip(residual, fm.Lambda):
        for k, c in enumerate(r.coeffs):
            if r.offset + k - lam <= 0:
                continue
            checked = True
            if c != 0:
                return None
    if not checked:
        raise InconclusiveError("truncation too low to test membership")
    out = []
    for i in range(fm.d):
        p = polys.get(i, {})
        deg = max(p, default=-1)
        out.append([p.get(k, Fraction(0)) for k in range(deg + 1)])
    return out


# Construction from columns, direct sums and weight shifting.


def from_columns(weight: Scalar, Lambda: Sequence[Fraction], columns: Sequence[ComponentVector]) -> FundamentalMatrix:
    """Read a fundamental matrix off explicit column series with exponent Lambda."""
    d = len(Lambda)
    order = None
    for j, col in enumerate(columns):
        for i, s in enumerate(col):
            rel = s.reach - Lambda[i]
            if rel.denominator != 1:
                raise StructuralFailureError(f"entry ({i}, {j}) has the wrong exponent class")
            order = int(rel) if order is None else min(order, int(rel))
    if order is None or order < 1:
        raise InconclusiveError("columns are truncated too low to read chi")
    coeffs = []
    for n in range(order + 1):
        coeffs.append(
            tuple(
                tuple(columns[j][i].coefficient(Lambda[i] + n) for j in range(d))
                for i in range(d)
            )
        )
    fm = FundamentalMatrix(Fraction(weight), tuple(Lambda), tuple(coeffs))
    if coeffs[0] != linalg.identity(d):
        raise StructuralFailureError("columns do not have principal part q^Lambda")
    for j, col in enumerate(columns):
        for i, s in enumerate(col):
            if s.leading_exponent() is not None and s.leading_exponent() < Lambda[i]:
                raise StructuralFailureError(f"entry ({i}, {j}) has a term below q^Lambda")
    return fm


def direct_sum(a: FundamentalMatrix, b: FundamentalMatrix) -> FundamentalMatrix:
    if a.weight != b.weight:
        raise InputError("direct sums need equal weights")
    n = min(a.order, b.order)
    da, db = a.d, b.d
    coeffs = []
    for k in range(n + 1):
        top = tuple(tuple(row) + (Fraction(0),) * db for row in a.coefficients[k])
        bottom = tuple((Fraction(0),) * da + tuple(row) for row in b.coefficients[k])
        coeffs.append(top + bottom)
    return FundamentalMatrix(a.weight, a.Lambda + b.Lambda, tuple(coeffs))


def _scale_columns(cols: Sequence[ComponentVector], s: QSeries) -> list[ComponentVector]:
    return [[x * s for x in col] for col in cols]


def _right_diag(cols: Sequence[ComponentVector], values: Sequence[Fraction]) -> list[ComponentVector]:
    return [[x * v for x in col] for col, v in zip(cols, values)]


def _sub_cols(a: Sequence[ComponentVector], b: Sequence[ComponentVector]) -> list[ComponentVector]:
    return [[x - y for x, y in zip(ca, cb)] for ca, cb in zip(a, b)]


def _shift_candidates(fm: FundamentalMatrix, i: int):
    """Candidate columns at weight w + 2i.

    Returns (base, raised): base columns have principal part q^Lambda, and
    each raised entry is (columns, leading matrix selector) whose leading
    coefficient sits at q^(Lambda+1).
    """
    n, w = fm.order, fm.weight
    lam_w = [x - w / 12 for x in fm.Lambda]
    am = a_matrices(fm.Lambda, fm.chi, w)
    cols = [fm.column(j) for j in range(fm.d)]
    E4, E6 = standard_series("E4", n), standard_series("E6", n)
    D1 = [[derivative_power(x, w, 1) for x in c] for c in cols]
    D2 = [[derivative_power(x, w, 2) for x in c] for c in cols]
    quad = [x * (x - Fraction(1, 6)) for x in lam_w]
    # E4 D Xi - E6 Xi Lambda_w: leading 1728 A2 q, nonzero on the -1/2 eigenspace
    m3 = _sub_cols(_scale_columns(D1, E4), _right_diag(_scale_columns(cols, E6), lam_w))
    # D^2 Xi - E4 Xi Lambda_w (Lambda_w - 1/6): nonzero on the -2/3 eigenspace of A3
    m2 = _sub_cols(D2, _right_diag(_scale_columns(cols, E4), quad))
    # E6 D Xi - E4^2 Xi Lambda_w: leading 1728 A3 q, nonzero on the -1/3, -2/3 eigenspaces
    m4 = _sub_cols(_scale_columns(D1, E6), _right_diag(_scale_columns(cols, E4 * E4), lam_w))
    half = eigenspace(am.A2, Fraction(-1, 2))
    third = eigenspace(am.A3, Fraction(-1, 3))
    two_thirds = eigenspace(am.A3, Fraction(-2, 3))
    if i == 2:
        return _scale_columns(cols, E4), [(m2, two_thirds)]
    if i == 3:
        return _scale_columns(cols, E6), [(m3, half)]
    if i == 4:
        return _scale_columns(cols, E4 * E4), [(m4, third + two_thirds)]
    if i == 5:
        return _scale_columns(cols, E4 * E6), [
            (_scale_columns(m3, E4), half),
            (_scale_columns(m2, E6), two_thirds),
        ]
    raise InputError("weight shift index must be 1..6")


def _combine(cols: Sequence[ComponentVector], vector: Sequence[Fraction]) -> ComponentVector:
    out = None
    for col, v in zip(cols, vector):
        if v == 0:
            continue
        scaled = [x * v for x in col]
        out = scaled if out is None else [a + b for a, b in zip(out, scaled)]
    if out is None:
        out = [x * 0 for x in cols[0]]
    return out


def _normalize_to_exponent(
    candidates: Sequence[ComponentVector], Lambda_new: Sequence[Fraction]
) -> list[ComponentVector]:
    """Combine candidate columns into columns with principal part q^Lambda_new e_j."""
    d = len(Lambda_new)
    levels = []
    for i in range(d):
        lo = min(col[i].offset for col in candidates)
        n = lo
        while n <= Lambda_new[i]:
            levels.append((i, n))
            n += 1
    A = tuple(
        tuple(col[i].coefficient(e) for col in candidates) for (i, e) in levels
    )
    out = []
    for j in range(d):
        rhs = [Fraction(int(i == j and e == Lambda_new[j])) for (i, e) in levels]
        sol = linalg.solve(A, rhs)
        if sol is None:
            raise ShiftDegeneracyError(f"no combination reaches q^Lambda' e_{j}")
        out.append(_combine(candidates, sol))
    return out


def weight_shift(fm: FundamentalMatrix, i: int, m: MultiplierData | None = None) -> FundamentalMatrix:
    """Fundamental matrix at weight w + 2i built from fm.

    i = 6 multiplies by Delta. i = 2..5 combine E4, E6 multiples of Xi with
    the derivative combinations whose leading terms are governed by A2 and
    A3; rows are raised by one along exact eigenspaces of those matrices.
    i = 1 shifts by 8, then by 6, then divides by Delta.
    When m is given the new trace is checked against c at the new weight.
    """
    if i == 6:
        delta = standard_series("Delta", fm.order)
        cols = _scale_columns([fm.column(j) for j in range(fm.d)], delta)
        result = from_columns(fm.weight + 12, [x + 1 for x in fm.Lambda], cols)
    elif i == 1:
        from .multiplier import shift_multiplicities

        step = weight_shift(fm, 4, m)
        m8 = None if m is None else shift_multiplicities(m, 4)
        step = weight_shift(step, 3, m8)
        inv = standard_series("Delta", step.order).invert()
        cols = _scale_columns([step.column(j) for j in range(step.d)], inv)
        result = from_columns(fm.weight + 2, [x - 1 for x in step.Lambda], cols)
    else:
        base, raised = _shift_candidates(fm, i)
        vectors = [v for _, vs in raised for v in vs]
        rows = linalg.pivot_rows(vectors)
        if len(rows) != len(vectors):
            raise ShiftDegeneracyError("eigenspaces are not independent")
        Lambda_new = [x + (1 if r in rows else 0) for r, x in enumerate(fm.Lambda)]
        candidates = list(base)
        for cols, vs in raised:
            candidates.extend(_combine(cols, v) for v in vs)
        new_cols = _normalize_to_exponent(candidates, Lambda_new)
        result = from_columns(fm.weight + 2 * i, Lambda_new, new_cols)
    if m is not None:
        expected = c_shift(m, i)
        if sum(result.Lambda) != expected:
            raise ShiftDegeneracyError(
                f"shifted trace {format_rational(sum(result.Lambda))} differs from "
                f"c = {format_rational(expected)}"
            )
    return result


def fundamental_from_multiplier(
    m: MultiplierData, Lambda: Sequence[Scalar], chi: Sequence[Sequence[Scalar]], N: int
) -> FundamentalMatrix:
    """solve_recursion after checking Tr(Lambda) = c."""
    lam = [Fraction(x) for x in Lambda]
    if sum(lam) != c_value(m):
        raise InputError(
            f"Tr(Lambda) = {format_rational(sum(lam))} but c = {format_rational(c_value(m))}"
        )
    return solve_recursion(lam, chi, m.w, N)
