"""Multiplier data of an admissible pair (rho, w) and the invariants built on it.

The data are the rank d, the weight w, the S-eigenvalue multiplicities
alpha = (alpha_0, alpha_1) of exp(pi i w/2) rho(S) and the U-eigenvalue
multiplicities beta = (beta_0, beta_1, beta_2) of exp(2 pi i w/3) rho(U),
optionally with a chosen exponent lambda (diagonal, exp(2 pi i lambda) = rho(T)).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import InputError, MultiplierError, NotApplicableError
from .series import Scalar, format_rational

# c_(rho, w+2k) - c_(rho, w) for k = 0..5, as functions of (alpha, beta)
_SHIFT_CORRECTION = (
    lambda a, b: 0,
    lambda a, b: a[1] - b[0],
    lambda a, b: b[2],
    lambda a, b: a[1],
    lambda a, b: b[1] + b[2],
    lambda a, b: a[1] + b[2],
)


@dataclass(frozen=True)
class MultiplierData:
    d: int
    w: Fraction
    alpha: tuple[int, int]
    beta: tuple[int, int, int]
    exponent: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "w", Fraction(self.w))
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        if self.d < 1:
            raise MultiplierError("rank d must be positive")
        if len(self.alpha) != 2 or len(self.beta) != 3:
            raise MultiplierError("alpha needs 2 entries and beta needs 3")
        if min(self.alpha) < 0 or min(self.beta) < 0:
            raise MultiplierError("multiplicities must be non-negative")
        if sum(self.alpha) != self.d:
            raise MultiplierError(f"alpha sums to {sum(self.alpha)}, expected d = {self.d}")
        if sum(self.beta) != self.d:
            raise MultiplierError(f"beta sums to {sum(self.beta)}, expected d = {self.d}")
        if self.exponent is not None:
            lam = tuple(Fraction(x) for x in self.exponent)
            if len(lam) != self.d:
                raise MultiplierError(f"exponent has {len(lam)} entries, expected {self.d}")
            object.__setattr__(self, "exponent", lam)

    def with_exponent(self, exponent: Sequence[Scalar] | None) -> "MultiplierData":
        return replace(self, exponent=None if exponent is None else tuple(exponent))

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "w": format_rational(self.w),
            "alpha": list(self.alpha),
            "beta": list(self.beta),
        }
        if self.exponent is not None:
            out["lambda"] = [format_rational(x) for x in self.exponent]
        return out


def c_value(m: MultiplierData) -> Fraction:
    """Trace of every bijective exponent: w d/12 - alpha_1/2 - (beta_1 + 2 beta_2)/3."""
    return m.w * m.d / 12 - Fraction(m.alpha[1], 2) - Fraction(m.beta[1] + 2 * m.beta[2], 3)


def trace_integrality_check(m: MultiplierData, exponent: Sequence[Scalar] | None = None) -> bool:
    """Whether Tr(lambda) is congruent to c_(rho, w) modulo 1.

    At weight 0 this is Tr(lambda) = alpha_1/2 + (beta_2 - beta_1)/3 mod 1.
    """
    lam = exponent if exponent is not None else m.exponent
    if lam is None:
        raise InputError("no exponent given")
    return (sum(Fraction(x) for x in lam) - c_value(m)).denominator == 1


def component_nonempty(m: MultiplierData) -> bool:
    """Whether a rank-d form with these multiplicities can be irreducible."""
    if m.d == 1:
        raise NotApplicableError("the component test applies to rank d > 1 only")
    return max(m.beta) <= min(m.alpha)


def shift_multiplicities(m: MultiplierData, k: int) -> MultiplierData:
    """Multiplicities of (rho, w + 2k): alpha_j -> alpha_(j+k), beta_j -> beta_(j+k)."""
    alpha = tuple(m.alpha[(j + k) % 2] for j in range(2))
    beta = tuple(m.beta[(j + k) % 3] for j in range(3))
    return replace(m, w=m.w + 2 * k, alpha=alpha, beta=beta)


def c_shift(m: MultiplierData, k: int, l: int = 0) -> Fraction:
    """c_(rho, w + 2k + 12 l); k outside 0..5 is folded into l."""
    l += k // 6
    k %= 6
    return c_value(m) + l * m.d + _SHIFT_CORRECTION[k](m.alpha, m.beta)


def weight_c(m: MultiplierData, w_new: Scalar) -> Fraction:
    """c at another weight in w + 2Z."""
    k = _weight_steps(m, w_new)
    return c_shift(m, k)


def _weight_steps(m: MultiplierData, w_new: Scalar) -> int:
    diff = (Fraction(w_new) - m.w) / 2
    if diff.denominator != 1:
        raise InputError(
            f"weight {format_rational(Fraction(w_new))} is not in "
            f"{format_rational(m.w)} + 2Z"
        )
    return int(diff)


def multiplier_at_weight(m: MultiplierData, w_new: Scalar) -> MultiplierData:
    return shift_multiplicities(m, _weight_steps(m, w_new))


def trace_bounds(m: MultiplierData) -> tuple[Fraction, Fraction]:
    """Bounds on Tr(lambda^hol) for irreducible rho (valid for d < 6)."""
    eps = m.d % 2
    base = m.w * m.d / 12
    return base - m.d + Fraction(eps, 4), base - Fraction(5 * m.d, 12) - Fraction(eps, 4)


def minimal_weight_bounds(m: MultiplierData, trace: Scalar) -> tuple[Fraction, Fraction]:
    """Bounds on the minimal weight of M(rho) given Tr(lambda^hol) at weight 0."""
    trace = Fraction(trace)
    eps = m.d % 2
    base = 12 * trace / m.d
    return base + 1 - m.d, base - Fraction(3 * eps, m.d)


def dual_multiplier(m: MultiplierData) -> MultiplierData:
    """Data of (rho*, 2 - w), the dual of rho at the complementary weight.

    alpha_i* = alpha_(i+1) and beta_j* = beta_(2-j); the exponent becomes
    1 - lambda when one is set.
    """
    alpha = (m.alpha[1], m.alpha[0])
    beta = (m.beta[2], m.beta[1], m.beta[0])
    exponent = None if m.exponent is None else tuple(1 - x for x in m.exponent)
    return MultiplierData(m.d, 2 - m.w, alpha, beta, exponent)


def direct_sum_multiplier(a: MultiplierData, b: MultiplierData) -> MultiplierData:
    if a.w != b.w:
        raise InputError("direct sums need equal weights")
    exponent = None
    if a.exponent is not None and b.exponent is not None:
        exponent = a.exponent + b.exponent
    return MultiplierData(
        a.d + b.d,
        a.w,
        tuple(x + y for x, y in zip(a.alpha, b.alpha)),
        tuple(x + y for x, y in zip(a.beta, b.beta)),
        exponent,
    )
