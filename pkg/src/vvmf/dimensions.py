"""Dimension formulas, Hilbert-Poincare series and generator weights."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm
from typing import Sequence

from .errors import InputError, NotTightError
from .multiplier import MultiplierData, c_value, weight_c
from .series import QSeries, Scalar, format_rational


def _trace(m: MultiplierData, lam: Sequence[Scalar] | None) -> Fraction:
    lam = lam if lam is not None else m.exponent
    if lam is None:
        raise InputError("an exponent lambda is required")
    if len(lam) != m.d:
        raise InputError(f"exponent needs {m.d} entries")
    return sum((Fraction(x) for x in lam), Fraction(0))


def index(m: MultiplierData, lam: Sequence[Scalar] | None = None) -> Fraction:
    """Index of the principal-part map P_lambda: c - Tr(lambda)."""
    return c_value(m) - _trace(m, lam)


def dim_tight(m: MultiplierData, lam: Sequence[Scalar] | None, w_new: Scalar) -> int:
    """dim M^lambda_w' for tight lambda: max(0, c_(rho, w') + d - Tr(lambda))."""
    value = weight_c(m, w_new) + m.d - _trace(m, lam)
    if value.denominator != 1:
        raise InputError("Tr(lambda) is not congruent to c mod 1")
    return max(0, int(value))


def dim_difference(m: MultiplierData, lam: Sequence[Scalar] | None, w_new: Scalar) -> Fraction:
    """dim M^lambda_w' - dim M^(1-lambda)_(2-w')(rho*) = c_(rho, w') + d - Tr(lambda)."""
    return weight_c(m, w_new) + m.d - _trace(m, lam)


def holbound(m: MultiplierData, lam: Sequence[Scalar] | None, k: int) -> int:
    """Lower bound on dim M^lambda_(w+2k); equals it when lambda is tight."""
    tr = _trace(m, lam)
    a, b = m.alpha, m.beta
    value = (
        (m.w + 2 * k + 2) * m.d / 12
        + Fraction(a[k % 2], 2)
        + Fraction(b[k % 3] - b[(k + 2) % 3], 3)
        - tr
    )
    if value.denominator != 1:
        raise InputError("Tr(lambda) is not congruent to c mod 1")
    return max(0, int(value))


@dataclass(frozen=True)
class HilbertSeries:
    """x^w0 (n_0 + n_1 x^2 + ... + n_4 x^8) / ((1 - x^4)(1 - x^6))."""

    w0: Fraction
    numerator: tuple[int, int, int, int, int]

    @property
    def generator_weights(self) -> list[Fraction]:
        out = []
        for k, count in enumerate(self.numerator):
            out.extend([self.w0 + 2 * k] * count)
        return out

    def dimension(self, weight: Scalar) -> int:
        """Coefficient of x^weight."""
        total = 0
        for wt in self.generator_weights:
            rest = Fraction(weight) - wt
            if rest < 0 or rest.denominator != 1 or int(rest) % 2:
                continue
            r = int(rest)
            total += sum(1 for a in range(0, r // 4 + 1) if (r - 4 * a) % 6 == 0)
        return total

    def to_json(self) -> dict:
        return {
            "w0": format_rational(self.w0),
            "numerator": list(self.numerator),
            "generator_weights": [format_rational(x) for x in self.generator_weights],
        }


def minimal_tight_weight(m: MultiplierData, lam: Sequence[Scalar] | None) -> Fraction:
    """The smallest weight w' in w + 2Z with c_(rho, w') > Tr(lambda) - d."""
    tr = _trace(m, lam)
    # c grows by d every 12 weight units and varies by at most d within a period,
    # so starting well below the crossing point and scanning upward is enough.
    k = floor((tr - 2 * m.d - c_value(m)) / m.d) * 6 - 6
    while weight_c(m, m.w + 2 * k) <= tr - m.d:
        k += 1
    return m.w + 2 * k


def hilbert_tight(m: MultiplierData, lam: Sequence[Scalar] | None = None) -> HilbertSeries:
    """Hilbert-Poincare series of the free module M^lambda for tight lambda."""
    tr = _trace(m, lam)
    if (tr - c_value(m)).denominator != 1:
        raise InputError("Tr(lambda) is not congruent to c mod 1")
    w0 = minimal_tight_weight(m, lam)
    n = [weight_c(m, w0 + 2 * k) + m.d - tr for k in range(5)]
    num = (n[0], n[1], n[2] - n[0], n[3] - n[1] - n[0], n[4] - n[2] - n[1])
    num = tuple(int(x) for x in num)
    if min(num) < 0 or sum(num) != m.d:
        raise NotTightError(
            f"numerator {num} is not a valid generator count for rank {m.d}; "
            "lambda is not tight"
        )
    return HilbertSeries(w0, num)


def generator_weights(m: MultiplierData, lam: Sequence[Scalar] | None = None) -> list[Fraction]:
    return hilbert_tight(m, lam).generator_weights


def generator_congruence_counts(
    weights: Sequence[Scalar], w: Scalar
) -> tuple[tuple[int, int], tuple[int, int, int]]:
    """How many weights are congruent to w + 2i mod 4 (i = 0, 1) and to
    w + 2i mod 6 (i = 0, 1, 2). For generators these equal alpha and beta.

    The mod-6 count runs with w + 2i, the direction in which beta rotates
    under weight shifts: class 1 has generators in weights 0, 2 and
    beta = (1, 1, 0).
    """
    w = Fraction(w)
    rel = [(Fraction(x) - w) for x in weights]
    for r in rel:
        if r.denominator != 1 or int(r) % 2:
            raise InputError("weights must lie in w + 2Z")
    a = tuple(sum(1 for r in rel if int(r) % 4 == 2 * i) for i in range(2))
    b = tuple(sum(1 for r in rel if int(r) % 6 == 2 * i) for i in range(3))
    return a, b


def gap_check(weights: Sequence[Scalar]) -> bool:
    """Whether the weights leave no gap: every step of 2 from min to max occurs."""
    ws = sorted(Fraction(x) for x in weights)
    return all(b - a <= 2 for a, b in zip(ws, ws[1:]))


def denominator_profile(Y: Sequence[QSeries], N: int) -> list[int]:
    """For n = 0..N, the lcm of coefficient denominators through relative order n."""
    out = []
    current = 1
    for n in range(N + 1):
        for y in Y:
            if n <= y.order:
                current = lcm(current, y.coeffs[n].denominator)
        out.append(current)
    return out


# Closed-form generator weights for the irreducible families with d = 3, 4, 5,
# indexed by the multiplicities they apply to and L = Tr(lambda^hol) at weight 0.

_TABLE_DATA = {
    3: ((1, 2), (1, 1, 1)),
    4: ((2, 2), (2, 1, 1)),
    5: ((3, 2), (1, 2, 2)),
}


def generator_weights_table(d: int, L: int) -> list[int]:
    """Generator weights for d = 3, 4, 5 with the standard multiplicities."""
    if d == 3:
        return [4 * L - 2, 4 * L, 4 * L + 2]
    if d == 4:
        if L % 2 == 0:
            return [3 * L - 2, 3 * L, 3 * L, 3 * L + 2]
        return [3 * L - 3, 3 * L - 1, 3 * L + 1, 3 * L + 3]
    if d == 5:
        q, r = divmod(L, 5)
        base = 12 * q
        offsets = {
            0: (-4, -2, 0, 2, 4),
            1: (0, 2, 2, 4, 4),
            2: (2, 4, 4, 6, 8),
            3: (4, 6, 8, 8, 10),
            4: (8, 8, 10, 10, 12),
        }[r]
        return [base + o for o in offsets]
    raise InputError("closed-form generator weights exist for d = 3, 4, 5 only")


def table_multiplier(d: int) -> MultiplierData:
    """The weight-0 multiplicities the closed-form table assumes."""
    if d not in _TABLE_DATA:
        raise InputError("closed-form generator weights exist for d = 3, 4, 5 only")
    alpha, beta = _TABLE_DATA[d]
    return MultiplierData(d, 0, alpha, beta)

