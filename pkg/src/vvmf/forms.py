"""Classical q-expansions and the modular differential operators.

Every generator returns a series of relative order N, counted from its own
offset: ``standard_series("J", 3)`` has coefficients for q^-1 .. q^2.
Results are cached per (name, N); the cache is an lru_cache, which is safe
to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InputError
from .series import QSeries, Scalar, SeriesMatrix, default_order

STANDARD_NAMES = ("E2", "E4", "E6", "E8", "E10", "E14", "Delta", "J")
AUX_NAMES = ("f", "g", "t")

_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


def _sigma(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def _int_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _eisenstein(k: int, n: int) -> QSeries:
    scale, power = _EISENSTEIN[k]
    return QSeries(0, [1] + [scale * _sigma(m, power) for m in range(1, n + 1)])


@lru_cache(maxsize=None)
def _delta(n: int) -> QSeries:
    # q * prod (1 - q^m)^24, expanded directly
    euler = [1] + [0] * n
    for m in range(1, n + 1):
        euler = [euler[i] - (euler[i - m] if i >= m else 0) for i in range(n + 1)]
    power = [1] + [0] * n
    base = euler
    e = 24
    while e:
        if e & 1:
            power = _int_mul(power, base, n)
        e >>= 1
        if e:
            base = _int_mul(base, base, n)
    return QSeries(1, power)


@lru_cache(maxsize=None)
def _standard(name: str, n: int) -> QSeries:
    if name == "E2":
        return _eisenstein(2, n)
    if name == "E4":
        return _eisenstein(4, n)
    if name == "E6":
        return _eisenstein(6, n)
    if name == "E8":
        return _standard("E4", n) ** 2
    if name == "E10":
        return _standard("E4", n) * _standard("E6", n)
    if name == "E14":
        return _standard("E8", n) * _standard("E6", n)
    if name == "Delta":
        return _delta(n)
    if name == "J":
        return _standard("E4", n) ** 3 * _delta(n).invert()
    raise InputError(f"unknown series {name!r}; expected one of {', '.join(STANDARD_NAMES)}")


def standard_series(name: str, n: int | None = None) -> QSeries:
    """One of E2, E4, E6, E8, E10, E14, Delta, J to relative order n."""
    n = default_order() if n is None else n
    if n < 0:
        raise InputError("order must be non-negative")
    return _standard(name, n)


@lru_cache(maxsize=None)
def _aux(which: str, n: int) -> QSeries:
    e4, e10, delta = _standard("E4", n), _standard("E10", n), _delta(n)
    if which == "f":
        return (e4**3 - delta * 984) * e10.invert()
    if which == "g":
        g = delta * e10.invert()
        return g.with_offset(0).truncate(n)
    if which == "t":
        return _standard("E2", n)
    raise InputError(f"unknown auxiliary series {which!r}; expected f, g or t")


def aux_series(which: str, n: int | None = None) -> QSeries:
    """The recursion inputs f = (J-984) Delta/E10, g = Delta/E10 and t = E2,
    all with offset 0 and relative order n."""
    n = default_order() if n is None else n
    return _aux(which, n)


def aux_coefficients(n: int) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Coefficient lists f_0..f_n, g_0..g_n, t_0..t_n."""
    return (
        list(aux_series("f", n).coeffs),
        list(aux_series("g", n).coeffs),
        list(aux_series("t", n).coeffs),
    )


def modular_derivative(a: QSeries, w: Scalar) -> QSeries:
    """D_w a = q da/dq - (w/12) E2 a."""
    w = Fraction(w)
    if w == 0:
        return a.theta()
    return a.theta() - _standard("E2", a.order) * a * (w / 12)


def derivative_power(a: QSeries, w: Scalar, j: int) -> QSeries:
    """D_w^j = D_(w+2j-2) o ... o D_(w+2) o D_w."""
    w = Fraction(w)
    for step in range(j):
        a = modular_derivative(a, w + 2 * step)
    return a


_NABLA = {1: ("E10", 1), 2: ("E8", 2), 3: ("E6", 3)}


def nabla(i: int, a: QSeries, w: Scalar) -> QSeries:
    """nabla_1 = (E4 E6/Delta) D, nabla_2 = (E4^2/Delta) D^2, nabla_3 = (E6/Delta) D^3."""
    if i not in _NABLA:
        raise InputError("nabla index must be 1, 2 or 3")
    name, power = _NABLA[i]
    n = a.order
    factor = _standard(name, n) * _delta(n).invert()
    return factor * derivative_power(a, w, power)


def wronskian(components: Sequence[QSeries], w: Scalar) -> QSeries:
    """det [X, D X, ..., D^(d-1) X] for a vector-valued form X of weight w."""
    d = len(components)
    rows = [[derivative_power(x, w, k) for k in range(d)] for x in components]
    return SeriesMatrix(rows).det()
