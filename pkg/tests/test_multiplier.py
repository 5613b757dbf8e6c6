from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vvmf.errors import InputError, MultiplierError, NotApplicableError
from vvmf.multiplier import (
    MultiplierData,
    c_shift,
    c_value,
    component_nonempty,
    direct_sum_multiplier,
    dual_multiplier,
    minimal_weight_bounds,
    multiplier_at_weight,
    shift_multiplicities,
    trace_bounds,
    trace_integrality_check,
    weight_c,
)

TRIVIAL = MultiplierData(1, 0, (1, 0), (1, 0, 0))


@st.composite
def multipliers(draw):
    d = draw(st.integers(1, 6))
    a0 = draw(st.integers(0, d))
    b0 = draw(st.integers(0, d))
    b1 = draw(st.integers(0, d - b0))
    w = draw(st.fractions(min_value=-6, max_value=6, max_denominator=6))
    return MultiplierData(d, w, (a0, d - a0), (b0, b1, d - b0 - b1))


def test_c_values():
    assert c_value(TRIVIAL) == 0
    assert c_value(MultiplierData(1, 0, (0, 1), (0, 0, 1))) == F(-7, 6)
    assert c_value(MultiplierData(2, 0, (1, 1), (1, 1, 0))) == F(-5, 6)
    assert c_value(MultiplierData(2, 0, (1, 1), (0, 1, 1))) == F(-3, 2)
    assert c_value(MultiplierData(2, 0, (1, 1), (1, 0, 1))) == F(-7, 6)


def test_validation():
    with pytest.raises(MultiplierError):
        MultiplierData(2, 0, (1, 0), (1, 1, 0))
    with pytest.raises(MultiplierError):
        MultiplierData(1, 0, (1, 0), (2, -1, 0))
    with pytest.raises(MultiplierError):
        MultiplierData(1, 0, (1, 0), (1, 0, 0), exponent=(0, 0))
    assert issubclass(MultiplierError, InputError)


def test_trace_integrality_weight_zero_rule():
    m = MultiplierData(2, 0, (1, 1), (1, 1, 0))
    assert trace_integrality_check(m, (F(1, 6), F(-1)))
    assert not trace_integrality_check(m, (F(1, 6), F(0, 1) + F(1, 2)))


def test_trace_integrality_tracks_weight():
    # Delta^(1/2): weight 6, exponent 1/2. The weight-free congruence
    # alpha_1/2 + (beta_2 - beta_1)/3 = 0 misses it; c = 1/2 does not.
    half = MultiplierData(1, 6, (1, 0), (1, 0, 0))
    assert c_value(half) == F(1, 2)
    assert trace_integrality_check(half, (F(1, 2),))
    assert not trace_integrality_check(half, (F(0),))


def test_component_nonempty():
    assert component_nonempty(MultiplierData(2, 0, (1, 1), (1, 1, 0)))
    assert not component_nonempty(MultiplierData(2, 0, (2, 0), (1, 1, 0)))
    with pytest.raises(NotApplicableError):
        component_nonempty(TRIVIAL)


@given(multipliers(), st.integers(-8, 8))
def test_c_shift_equals_c_after_shifting(m, k):
    assert c_shift(m, k) == c_value(shift_multiplicities(m, k))
    assert weight_c(m, m.w + 2 * k) == c_shift(m, k)
    assert multiplier_at_weight(m, m.w + 2 * k) == shift_multiplicities(m, k)


@given(multipliers())
def test_c_grows_by_d_per_period(m):
    assert c_shift(m, 6) == c_value(m) + m.d
    assert c_shift(m, 0, 2) == c_value(m) + 2 * m.d


@given(multipliers())
def test_dual_is_involution_and_complements_c(m):
    dual = dual_multiplier(m)
    assert dual.w == 2 - m.w
    assert dual_multiplier(dual) == m
    assert c_value(dual) == -m.d - c_value(m)


def test_dual_exponent():
    m = MultiplierData(2, 0, (1, 1), (1, 1, 0), exponent=(F(1, 6), F(-1)))
    assert dual_multiplier(m).exponent == (F(5, 6), F(2))


def test_weight_c_rejects_other_classes():
    with pytest.raises(InputError):
        weight_c(TRIVIAL, 1)


def test_direct_sum_adds_c():
    a = MultiplierData(2, 0, (1, 1), (1, 1, 0))
    s = direct_sum_multiplier(a, TRIVIAL)
    assert s.d == 3 and s.alpha == (2, 1) and s.beta == (2, 1, 0)
    assert c_value(s) == c_value(a) + c_value(TRIVIAL)
    with pytest.raises(InputError):
        direct_sum_multiplier(a, MultiplierData(1, 2, (1, 0), (1, 0, 0)))


def test_trace_bounds():
    lo, hi = trace_bounds(MultiplierData(2, 0, (1, 1), (1, 1, 0)))
    assert (lo, hi) == (-2, F(-5, 6))
    for beta in [(1, 1, 0), (0, 1, 1), (1, 0, 1)]:
        m = MultiplierData(2, 0, (1, 1), beta)
        assert lo <= c_value(m) <= hi


def test_minimal_weight_bounds_contain_class_one():
    m = MultiplierData(2, 0, (1, 1), (1, 1, 0))
    assert minimal_weight_bounds(m, F(1, 6)) == (0, 1)
