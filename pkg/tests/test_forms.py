from fractions import Fraction as F

import pytest

from vvmf.errors import InputError
from vvmf.forms import (
    aux_series,
    derivative_power,
    modular_derivative,
    nabla,
    standard_series,
    wronskian,
)
from vvmf.series import QSeries, pow_rational

N = 12

# Ramanujan tau(1..10)
TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


def sigma(n, k):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def S(name, n=N):
    return standard_series(name, n)


def test_delta_is_ramanujan_tau():
    d = S("Delta")
    assert d.offset == 1
    assert list(d.coeffs[:10]) == TAU


def test_j_coefficients():
    j = S("J")
    assert j.offset == -1
    assert list(j.coeffs[:5]) == [1, 744, 196884, 21493760, 864299970]


@pytest.mark.parametrize("k,const", [(2, -24), (4, 240), (6, -504), (8, 480), (10, -264), (14, -24)])
def test_eisenstein_divisor_sums(k, const):
    e = S(f"E{k}")
    assert e.coeffs[0] == 1
    assert [e.coeffs[n] for n in range(1, N + 1)] == [const * sigma(n, k - 1) for n in range(1, N + 1)]


def test_eisenstein_products():
    assert S("E8").agrees(S("E4") ** 2)
    assert S("E10").agrees(S("E4") * S("E6"))
    assert S("E14").agrees(S("E4") ** 2 * S("E6"))
    assert (S("E4") ** 3 - S("E6") ** 2).agrees(S("Delta") * 1728)


def test_ramanujan_serre_identities():
    assert modular_derivative(S("E4"), 4).agrees(S("E6") * F(-1, 3))
    assert modular_derivative(S("E6"), 6).agrees(S("E8") * F(-1, 2))
    assert modular_derivative(S("Delta"), 12).is_zero()
    dj = modular_derivative(S("J"), 0)
    assert dj.agrees(-(S("E14") * S("Delta").invert()))


def test_derivative_power_composes():
    e4 = S("E4")
    once = modular_derivative(modular_derivative(e4, 4), 6)
    assert derivative_power(e4, 4, 2).agrees(once)
    # D^2 E4 = E4^2/18 by Ramanujan-Serre twice
    assert once.agrees(S("E8") * F(1, 6))


def test_aux_series_definitions():
    f, g, t = aux_series("f", N), aux_series("g", N), aux_series("t", N)
    e10 = S("E10")
    assert (f * e10).agrees(S("E4") ** 3 - S("Delta") * 984)
    assert g.offset == 0 and g.coeffs[0] == 0
    assert (g.shift(-1) * e10).agrees(S("Delta").shift(-1))
    assert t.agrees(S("E2"))
    with pytest.raises(InputError):
        aux_series("h", N)


def test_nabla_on_constants_and_j():
    one = QSeries.constant(1, N)
    for i in (1, 2, 3):
        assert nabla(i, one, 0).is_zero()
    got = nabla(1, S("J"), 0)
    expected = -(S("E10") * S("E14") * S("Delta").invert() ** 2)
    assert got.agrees(expected)


def test_wronskian_of_class_one_column(class1):
    _, _, fm = class1
    col = fm.column(0)
    wr = wronskian(col, 0)
    # weight d(w+d-1) = 2; a nonzero holomorphic form of weight 2 with this
    # multiplier is a constant times Delta^(1/6)
    assert wr.leading_exponent() == F(1, 6)
    ratio = wr.strip() * pow_rational(S("Delta", fm.order), F(1, 6)).invert()
    assert ratio.offset == 0
    assert ratio.agrees(QSeries.constant(ratio.coeffs[0], ratio.order))
