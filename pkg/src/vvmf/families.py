"""Closed-form families: rank one, and the three classes of irreducible rank two.

Rank two at weight 0 has Lambda = diag(t, Tr - t) and chi given by rational
functions of t and a free scaling x. Its fundamental matrix is also given by
hypergeometric series in 1/z, z = J/1728, which serves as an independent
check on the recursion. The S-matrix depends on a normalization y tied to x
through a Gamma-function identity; fixed_point_check tests that numerically
at tau = i and tau = exp(pi i/3).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExcludedParameterError, InputError, ReducibleCaseError, StructuralFailureError
from .forms import standard_series
from .fundamental import FundamentalMatrix
from .multiplier import MultiplierData, shift_multiplicities
from .series import QSeries, Scalar, format_rational, pow_rational, substitute

# Rank one: (Delta exponent shift, Eisenstein factor) for j = 0..5 at weight 12u + 2j + 12n.
_RANK_ONE = {
    0: (0, None),
    1: (-1, "E14"),
    2: (0, "E4"),
    3: (0, "E6"),
    4: (0, "E8"),
    5: (0, "E10"),
}


def family_1d(u: Scalar, j: int, n: int, N: int) -> tuple[Fraction, QSeries]:
    """Fundamental matrix of the rank-one multiplier with T = exp(2 pi i u),
    at weight 12u + 2j + 12n. Returns (Lambda, series)."""
    u = Fraction(u)
    if not 0 <= u < 1:
        raise InputError("u must satisfy 0 <= u < 1")
    if j not in _RANK_ONE:
        raise InputError("j must be in 0..5")
    shift, factor = _RANK_ONE[j]
    exponent = u + n + shift
    series = pow_rational(standard_series("Delta", N), exponent)
    if factor is not None:
        series = series * standard_series(factor, N)
    return exponent, series


def family_1d_multiplier(u: Scalar, j: int, n: int) -> MultiplierData:
    u = Fraction(u)
    base = MultiplierData(1, 12 * u, (1, 0), (1, 0, 0))
    return shift_multiplicities(base, j + 6 * n)


def family_1d_fundamental(u: Scalar, j: int, n: int, N: int) -> FundamentalMatrix:
    lam, series = family_1d(u, j, n, N)
    coeffs = tuple(((c,),) for c in series.coeffs)
    return FundamentalMatrix(12 * Fraction(u) + 2 * j + 12 * n, (lam,), coeffs)


@dataclass(frozen=True)
class Family2D:
    cls: int
    t: Fraction
    x: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "x", Fraction(self.x))
        if self.cls not in (1, 2, 3):
            raise InputError("class must be 1, 2 or 3")
        if self.x == 0:
            raise InputError("x must be nonzero")
        frac = self.t - math.floor(self.t)
        if frac in _EXCLUDED[self.cls]:
            raise ExcludedParameterError(
                f"t = {format_rational(self.t)} is excluded for class {self.cls} "
                f"(t mod 1 in {sorted(format_rational(e) for e in _EXCLUDED[self.cls])})"
            )

    @property
    def trace(self) -> Fraction:
        return _TRACE[self.cls]

    @property
    def reducible(self) -> bool:
        """Whether the lower-left entry of rho(S) vanishes, so that rho is
        triangular. There the fixed-point equations may not pin down y."""
        return self.t - math.floor(self.t) in _REDUCIBLE[self.cls]

    @property
    def Lambda(self) -> tuple[Fraction, Fraction]:
        return (self.t, self.trace - self.t)

    @property
    def multiplier(self) -> MultiplierData:
        alpha, beta = _MULTIPLICITIES[self.cls]
        return MultiplierData(2, 0, alpha, beta, self.Lambda)

    @property
    def chi(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return _CHI[self.cls](self.t, self.x)


_TRACE = {1: Fraction(-5, 6), 2: Fraction(-3, 2), 3: Fraction(-7, 6)}
_MULTIPLICITIES = {1: ((1, 1), (1, 1, 0)), 2: ((1, 1), (0, 1, 1)), 3: ((1, 1), (1, 0, 1))}
_EXCLUDED = {
    1: {Fraction(1, 12), Fraction(7, 12)},
    2: {Fraction(1, 4), Fraction(3, 4)},
    3: {Fraction(5, 12), Fraction(11, 12)},
}

# zeros of the lower-left entry of rho(S), as t mod 1
_REDUCIBLE = {
    1: {Fraction(0), Fraction(1, 2), Fraction(1, 6), Fraction(2, 3)},
    2: {Fraction(1, 6), Fraction(1, 3), Fraction(2, 3), Fraction(5, 6)},
    3: {Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(5, 6)},
}


def _chi1(t, x):
    return (
        (
            24 * t * (60 * t - 11) / (12 * t + 5),
            10368 * x * t * (2 * t + 1) * (3 * t + 1) * (6 * t + 5)
            / ((12 * t + 11) * (12 * t + 5) ** 2),
        ),
        (10368 / (x * (12 * t - 1)), -4 * (6 * t + 5) * (60 * t + 61) / (12 * t + 5)),
    )


def _chi2(t, x):
    return (
        (
            24 * (20 * t * t + 51 * t + 32) / (4 * t + 3),
            384 * x * (3 * t + 2) * (3 * t + 1) * (6 * t + 5) * (6 * t + 7)
            / ((4 * t + 5) * (4 * t + 3) ** 2),
        ),
        (384 / (x * (4 * t + 1)), -12 * (40 * t * t + 18 * t + 1) / (4 * t + 3)),
    )


def _chi3(t, x):
    return (
        (
            24 * t * (60 * t + 71) / (12 * t + 7),
            10368 * x * t * (2 * t + 1) * (3 * t + 2) * (6 * t + 7)
            / ((12 * t + 13) * (12 * t + 7) ** 2),
        ),
        (10368 / (x * (12 * t + 1)), -4 * (6 * t + 7) * (60 * t - 1) / (12 * t + 7)),
    )


_CHI = {1: _chi1, 2: _chi2, 3: _chi3}


def family_2d(spec: Family2D) -> tuple[MultiplierData, tuple[Fraction, Fraction], tuple]:
    """(multiplier data, Lambda, chi) for a rank-two family member."""
    return spec.multiplier, spec.Lambda, spec.chi


# Hypergeometric description.


def _pochhammer_ratio_terms(a: Fraction, b: Fraction, c: Fraction, count: int) -> list[Fraction]:
    terms = [Fraction(1)]
    for k in range(count):
        terms.append(terms[-1] * (a + k) * (b + k) / ((c + k) * (k + 1)))
    return terms


def hypergeometric_column(a: Scalar, c: Scalar, N: int, b: Scalar | None = None) -> QSeries:
    """(-1728 z)^-a 2F1(a, b; 2a + c; 1/z) with z = J/1728, as a q-series of
    offset a normalized to leading coefficient 1.

    The default b = a + c - 1/2 gives local exponents in Z/2 at z = 1 and in
    Z/3 at z = infinity, as a weight-0 form requires. Pass b = a + 1/2 for
    the half-shift variant (see HALF_SHIFT_VARIANT).
    """
    a, c = Fraction(a), Fraction(c)
    b = a + c - Fraction(1, 2) if b is None else Fraction(b)
    lower = 2 * a + c
    if lower <= 0 and lower.denominator == 1:
        raise ExcludedParameterError(
            f"2a + c = {format_rational(lower)} is a non-positive integer"
        )
    qJ = standard_series("J", N).shift(1)
    inv_z = qJ.invert().shift(1) * 1728
    hyper = substitute(_pochhammer_ratio_terms(a, b, lower, N + 1), inv_z)
    prefactor = pow_rational(qJ, -a).shift(a)
    return (prefactor * hyper).truncate(N)


def _z_cube_root(N: int) -> QSeries:
    # z^(1/3) up to a constant: q^(-1/3) (qJ)^(1/3)
    qJ = standard_series("J", N).shift(1)
    return pow_rational(qJ, Fraction(1, 3)).shift(Fraction(-1, 3))


def _one_minus_z_cube_root(N: int) -> QSeries:
    # (1 - z)^(1/3) up to a constant: q^(-1/3) (qJ)^(1/3) (1 - 1728/J)^(1/3)
    qJ = standard_series("J", N).shift(1)
    inner = (1 - qJ.invert().shift(1) * 1728).truncate(N)
    return (pow_rational(qJ, Fraction(1, 3)) * pow_rational(inner, Fraction(1, 3))).shift(
        Fraction(-1, 3)
    )


def _hypergeometric_params(spec: Family2D) -> list[list[tuple[Fraction, Fraction]]]:
    t = spec.t
    if spec.cls == 1:
        c = Fraction(5, 6)
        return [[(t, c), (t + 1, c)], [(Fraction(1, 6) - t, c), (Fraction(-5, 6) - t, c)]]
    if spec.cls == 2:
        c = Fraction(5, 6)
        return [
            [(t + Fraction(1, 3), c), (t + Fraction(4, 3), c)],
            [(Fraction(-1, 6) - t, c), (-t - Fraction(7, 6), c)],
        ]
    c = Fraction(7, 6)
    return [[(t, c), (t + 1, c)], [(Fraction(-1, 6) - t, c), (-t - Fraction(7, 6), c)]]


# The half-shift form uses 2F1(a, a + 1/2; 2a + c; 1/z) and, for class 2,
# a prefactor (1 - z)^(1/3). It does not reproduce the recursion; it is kept
# so that the mismatch can be demonstrated.
HALF_SHIFT_VARIANT = "half-shift"
MATCHED_VARIANT = "matched"


def hypergeometric_entries(spec: Family2D, N: int, variant: str = MATCHED_VARIANT) -> list[list[QSeries]]:
    """Entries of the closed-form fundamental matrix, each normalized to
    leading coefficient 1 (the chi scaling of off-diagonal entries is not applied)."""
    if variant not in (MATCHED_VARIANT, HALF_SHIFT_VARIANT):
        raise InputError(f"unknown variant {variant!r}")
    half = variant == HALF_SHIFT_VARIANT
    pre = None
    if spec.cls == 2:
        pre = _one_minus_z_cube_root(N + 1) if half else _z_cube_root(N + 1)
    out = []
    for row in _hypergeometric_params(spec):
        out_row = []
        for a, c in row:
            b = a + Fraction(1, 2) if half else None
            if pre is None:
                out_row.append(hypergeometric_column(a, c, N, b))
            else:
                out_row.append((hypergeometric_column(a, c, N + 1, b) * pre).truncate(N))
        out.append(out_row)
    return out


def oracle_compare(
    fm: FundamentalMatrix, spec: Family2D, N: int, variant: str = MATCHED_VARIANT
) -> bool:
    """Whether Xi agrees with the hypergeometric closed form through Xi_(N).

    Diagonal entries must match exactly; off-diagonal entries must equal
    the closed form scaled to Xi's own leading coefficient chi_ij.
    """
    if N > fm.order:
        raise InputError(f"fundamental matrix has order {fm.order} < {N}")
    entries = hypergeometric_entries(spec, N, variant)
    for i in range(2):
        for j in range(2):
            h = entries[i][j]
            expected_offset = fm.Lambda[i] + (0 if i == j else 1)
            if h.offset != expected_offset:
                raise StructuralFailureError(
                    f"closed-form entry ({i}, {j}) starts at q^{format_rational(h.offset)}, "
                    f"expected q^{format_rational(expected_offset)}"
                )
            x = fm.entry(i, j)
            scale = x.coefficient(expected_offset)
            for n in range(N + 1):
                e = fm.Lambda[i] + n
                if x.coefficient(e) != scale * h.coefficient(e):
                    return False
    return True


# Monodromy at the elliptic fixed points.

_ZETA = cmath.exp(1j * math.pi / 3)


def _checked_gamma(value: float) -> float:
    if value <= 0 and float(value).is_integer():
        raise ReducibleCaseError(f"Gamma has a pole at {value}")
    return math.gamma(value)


def gamma_y(spec: Family2D) -> float:
    """The normalization y of rho(S) matching the given x."""
    t, x = float(spec.t), float(spec.x)
    g = _checked_gamma
    if spec.cls == 1:
        return (
            math.sqrt(3) * x / 1728 * 2 ** (2 / 3) / 432 ** (2 * t)
            * g(2 * t + 5 / 6) ** 2 / (g(2 * t) * g(2 * t + 2 / 3))
        )
    if spec.cls == 2:
        return (
            x * math.sqrt(3) / (6912 * 432 ** (2 * t))
            * g(2 * t + 3 / 2) ** 2 / (g(2 * t + 4 / 3) * g(2 * t + 2 / 3))
        )
    return (
        x * math.sqrt(3) * 2 ** (1 / 3) / (10368 * 432 ** (2 * t))
        * g(2 * t + 7 / 6) ** 2 / (g(2 * t) * g(2 * t + 4 / 3))
    )


def _gamma_args(spec: Family2D) -> list[Fraction]:
    t = spec.t
    if spec.cls == 1:
        return [2 * t + Fraction(5, 6), 2 * t, 2 * t + Fraction(2, 3)]
    if spec.cls == 2:
        return [2 * t + Fraction(3, 2), 2 * t + Fraction(4, 3), 2 * t + Fraction(2, 3)]
    return [2 * t + Fraction(7, 6), 2 * t, 2 * t + Fraction(4, 3)]


def rho_matrices(spec: Family2D, y: complex) -> tuple[list[list[complex]], list[list[complex]]]:
    """(rho(S), rho(T)) for the family member, in the basis fixed by y."""
    z = cmath.exp(2j * math.pi * float(spec.t))
    zeta, zbar = _ZETA, _ZETA.conjugate()
    if spec.cls == 1:
        a = zbar * z / (z * z - zeta)
        c = (z * z - 1) * (z * z - zeta * zeta) / (y * (z * z - zeta) ** 2)
        T = [[z, 0], [0, zeta / z]]
    elif spec.cls == 2:
        a = -z / (z * z + 1)
        c = (z**4 + z * z + 1) / (y * (z * z + 1) ** 2)
        T = [[z, 0], [0, -1 / z]]
    else:
        a = zeta * z / (z * z - zbar)
        c = (z * z - 1) * (z + zbar) * (z - zbar) / (y * (z * z - zbar) ** 2)
        T = [[z, 0], [0, zbar / z]]
    S = [[a, y], [c, -a]]
    return S, T


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def _max_residual(a, b) -> float:
    return max(abs(a[i][j] - b[i][j]) for i in range(len(a)) for j in range(len(a[0])))


def fixed_point_check(
    fm: FundamentalMatrix, spec: Family2D, y: complex | None = None
) -> tuple[float, float]:
    """Max-norm residuals of rho(S) Xi(i) - Xi(i) and rho(U) Xi(r) - Xi(r),
    r = exp(pi i/3), U = S T^-1. Powers q^e are read as exp(2 pi i tau e)."""
    for arg in _gamma_args(spec):
        if arg <= 0 and arg.denominator == 1:
            raise ReducibleCaseError(
                f"Gamma argument {format_rational(arg)} is a pole; the case is reducible"
            )
    if y is None:
        y = gamma_y(spec)
    S, T = rho_matrices(spec, y)
    Tinv = [[1 / T[0][0], 0], [0, 1 / T[1][1]]]
    U = _matmul(S, Tinv)
    xi_i = fm.evaluate(1j)
    xi_r = fm.evaluate(_ZETA)
    return _max_residual(_matmul(S, xi_i), xi_i), _max_residual(_matmul(U, xi_r), xi_r)
