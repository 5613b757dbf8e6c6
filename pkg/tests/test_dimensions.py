from fractions import Fraction as F

import pytest

from conftest import family_fm
from vvmf import dimensions, families
from vvmf.errors import InputError, NotTightError
from vvmf.multiplier import MultiplierData, shift_multiplicities

TRIVIAL = MultiplierData(1, 0, (1, 0), (1, 0, 0))


def classical_dim(k):
    if k < 0 or k % 2:
        return 0
    if k % 12 == 2:
        return k // 12
    return k // 12 + 1


def holomorphic(lam):
    return tuple(x - (x.numerator // x.denominator) for x in lam)


def test_trivial_series_counts_classical_forms():
    h = dimensions.hilbert_tight(TRIVIAL, [0])
    assert h.w0 == 0 and h.numerator == (1, 0, 0, 0, 0)
    for k in range(0, 60, 2):
        assert h.dimension(k) == classical_dim(k)
        assert dimensions.dim_tight(TRIVIAL, [0], k) == classical_dim(k)


def test_trivial_cusp_forms():
    h = dimensions.hilbert_tight(TRIVIAL, [1])
    assert h.generator_weights == [12]
    assert h.dimension(24) == 2


def test_index_and_difference():
    m = MultiplierData(2, 0, (1, 1), (1, 1, 0))
    assert dimensions.index(m, (F(1, 6), F(-1))) == 0
    assert dimensions.index(m, (F(1, 6), F(0))) == -1
    assert dimensions.dim_difference(m, (F(1, 6), F(0)), 0) == 1
    with pytest.raises(InputError):
        dimensions.dim_tight(m, (F(1, 6), F(1, 2)), 0)


@pytest.mark.parametrize("t", [F(1, 6), F(1, 7), F(1, 10)])
def test_class_one_small_t_generators(t):
    spec, m, _ = family_fm(1, t, N=2)
    weights = dimensions.generator_weights(m, holomorphic(spec.Lambda))
    assert weights == [0, 2]


@pytest.mark.parametrize("t", [F(1, 3), F(2, 5), F(-1, 5)])
def test_class_one_large_t_generators(t):
    spec, m, _ = family_fm(1, t, N=2)
    lam = holomorphic(spec.Lambda)
    weights = dimensions.generator_weights(m, lam)
    assert weights == [6, 8]
    assert sum(weights) == 12 * sum(lam)


@pytest.mark.parametrize("u", [F(0), F(1, 6), F(1, 2), F(11, 12)])
def test_rank_one_single_generator(u):
    m = families.family_1d_multiplier(u, 0, 0)
    h = dimensions.hilbert_tight(m, [u])
    assert h.generator_weights == [12 * u]


@pytest.mark.parametrize("d", [3, 4, 5])
@pytest.mark.parametrize("L", range(-6, 8))
def test_generator_tables(d, L):
    m = dimensions.table_multiplier(d)
    lam = [F(L)] + [F(0)] * (d - 1)
    weights = dimensions.generator_weights(m, lam)
    assert sorted(weights) == sorted(dimensions.generator_weights_table(d, L))
    assert sum(weights) == 12 * L
    assert dimensions.generator_congruence_counts(weights, 0) == (m.alpha, m.beta)
    assert dimensions.gap_check(weights)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_holbound_equals_tight_dimension(d):
    m = dimensions.table_multiplier(d)
    lam = [F(1)] + [F(0)] * (d - 1)
    for k in range(12):
        assert dimensions.holbound(m, lam, k) == dimensions.dim_tight(m, lam, 2 * k)


def test_non_tight_numerator_is_rejected():
    # 1 (+) 1 with lambda = (0, 1) has generators in weights 0 and 12, outside the tight shape
    m = MultiplierData(2, 0, (2, 0), (2, 0, 0))
    with pytest.raises(NotTightError):
        dimensions.hilbert_tight(m, [F(0), F(1)])


def test_congruence_counts_reject_other_classes():
    with pytest.raises(InputError):
        dimensions.generator_congruence_counts([0, 1], 0)


def test_gap_check():
    assert dimensions.gap_check([0, 2, 4])
    assert not dimensions.gap_check([0, 4])


def test_table_input_checks():
    with pytest.raises(InputError):
        dimensions.generator_weights_table(6, 0)
    with pytest.raises(InputError):
        dimensions.table_multiplier(2)


def test_denominator_profile(trivial):
    _, fm = trivial
    assert set(dimensions.denominator_profile(fm.column(0), fm.order)) == {1}
    _, _, c1 = family_fm(1, F(1, 7), N=6)
    profile = dimensions.denominator_profile(c1.column(0), 6)
    assert all(b % a == 0 for a, b in zip(profile, profile[1:]))
    assert profile[-1] > 1


def test_hilbert_json():
    h = dimensions.hilbert_tight(TRIVIAL, [0])
    assert h.to_json() == {"w0": "0", "numerator": [1, 0, 0, 0, 0], "generator_weights": ["0"]}


@pytest.mark.parametrize("k", range(12))
@pytest.mark.parametrize("u", [F(0), F(1, 6), F(1, 2)])
def test_congruence_counts_follow_weight_shifts(u, k):
    # the generator weight stays put while (alpha, beta) rotate with w
    m = shift_multiplicities(families.family_1d_multiplier(u, 0, 0), k)
    weights = dimensions.generator_weights(m, [u])
    assert weights == [12 * u]
    assert dimensions.generator_congruence_counts(weights, m.w) == (m.alpha, m.beta)


@pytest.mark.parametrize("cls,expected", [(1, [0, 2]), (2, [2, 4]), (3, [4, 6])])
def test_rank_two_generator_congruences(cls, expected):
    spec = families.Family2D(cls, F(1, 7))
    weights = dimensions.generator_weights(spec.multiplier, holomorphic(spec.Lambda))
    assert weights == expected
    assert dimensions.generator_congruence_counts(weights, 0) == (spec.multiplier.alpha, spec.multiplier.beta)
