from fractions import Fraction as F

import pytest

from conftest import GRID, family_fm
from vvmf import families, fundamental
from vvmf.errors import ExcludedParameterError, InputError, ReducibleCaseError
from vvmf.forms import standard_series
from vvmf.series import pow_rational


def test_rank_one_examples():
    lam, s = families.family_1d(0, 3, 0, 10)
    assert lam == 0 and s.agrees(standard_series("E6", 10))
    lam, s = families.family_1d(0, 1, 0, 10)
    assert lam == -1
    assert s.agrees(standard_series("E14", 10) * standard_series("Delta", 10).invert())
    lam, s = families.family_1d(F(1, 2), 0, 1, 10)
    assert lam == F(3, 2)
    assert s.agrees(pow_rational(standard_series("Delta", 10), F(3, 2)))


@pytest.mark.parametrize("u", [F(0), F(1, 4), F(2, 3)])
@pytest.mark.parametrize("j", range(6))
def test_rank_one_weight_and_trace(u, j):
    m = families.family_1d_multiplier(u, j, 0)
    fm = families.family_1d_fundamental(u, j, 0, 6)
    assert m.w == 12 * u + 2 * j == fm.weight
    assert fundamental.verify_elliptic(fundamental.a_matrices(fm.Lambda, fm.chi, fm.weight))


def test_rank_one_input_checks():
    with pytest.raises(InputError):
        families.family_1d(1, 0, 0, 4)
    with pytest.raises(InputError):
        families.family_1d(0, 6, 0, 4)


def test_class_one_chi_at_one_sixth():
    spec = families.Family2D(1, F(1, 6), 1)
    assert spec.Lambda == (F(1, 6), F(-1))
    assert spec.chi == ((F(-4, 7), F(20736, 637)), (F(10368), F(-1704, 7)))


@pytest.mark.parametrize("cls,trace", [(1, F(-5, 6)), (2, F(-3, 2)), (3, F(-7, 6))])
def test_class_traces(cls, trace):
    spec = families.Family2D(cls, F(1, 7), 1)
    assert spec.trace == trace == sum(spec.Lambda)


@pytest.mark.parametrize(
    "cls,t", [(1, F(1, 12)), (1, F(7, 12)), (1, F(-5, 12)), (2, F(1, 4)), (2, F(3, 4)), (3, F(5, 12)), (3, F(11, 12))]
)
def test_excluded_parameters(cls, t):
    with pytest.raises(ExcludedParameterError):
        families.Family2D(cls, t, 1)


def test_bad_class_and_scaling():
    with pytest.raises(InputError):
        families.Family2D(4, F(1, 7), 1)
    with pytest.raises(InputError):
        families.Family2D(1, F(1, 7), 0)


def test_scaling_x_only_moves_off_diagonal():
    a = families.Family2D(1, F(1, 7), 1).chi
    b = families.Family2D(1, F(1, 7), 3).chi
    assert a[0][0] == b[0][0] and a[1][1] == b[1][1]
    assert b[0][1] * b[1][0] == a[0][1] * a[1][0]


@pytest.mark.parametrize("cls,t", GRID)
def test_hypergeometric_oracle(cls, t):
    spec, _, fm = family_fm(cls, t, N=10)
    assert families.oracle_compare(fm, spec, 10)


@pytest.mark.parametrize("cls,t", [(1, F(1, 7)), (2, F(1, 7)), (3, F(1, 7))])
def test_half_shift_form_disagrees(cls, t):
    spec, _, fm = family_fm(cls, t, N=10)
    assert not families.oracle_compare(fm, spec, 10, families.HALF_SHIFT_VARIANT)


def test_oracle_detects_wrong_chi():
    spec, _, fm = family_fm(1, F(1, 7), N=10)
    other = families.Family2D(1, F(1, 7), 1)
    chi = [list(r) for r in other.chi]
    chi[0][0] += 1
    bad = fundamental.solve_recursion(fm.Lambda, chi, 0, 10)
    assert not families.oracle_compare(bad, spec, 10)


def test_hypergeometric_column_lower_parameter():
    with pytest.raises(ExcludedParameterError):
        families.hypergeometric_column(F(-1, 2), F(1), 4)


def test_gamma_pole_is_reducible():
    spec = families.Family2D(1, F(0), 1)
    with pytest.raises(ReducibleCaseError):
        families.gamma_y(spec)
    fm = fundamental.solve_recursion(spec.Lambda, spec.chi, 0, 4)
    with pytest.raises(ReducibleCaseError):
        families.fixed_point_check(fm, spec)


@pytest.mark.parametrize("cls,t", GRID)
def test_fixed_points(cls, t):
    spec, _, fm = family_fm(cls, t, N=30)
    res_i, res_rho = families.fixed_point_check(fm, spec)
    assert res_i < 1e-8 and res_rho < 1e-8
    if spec.reducible:
        return
    y = families.gamma_y(spec)
    bad_i, bad_rho = families.fixed_point_check(fm, spec, y * 1.01)
    assert max(bad_i, bad_rho) > 1e-4


def test_reducible_point_hides_y():
    # class 2, t = 1/3: rho(S) is triangular with a = 1, so S Xi(i) = Xi(i)
    # forces the second row of Xi(i) to vanish and y multiplies only zeros
    spec, _, fm = family_fm(2, F(1, 3), N=30)
    assert spec.reducible
    xi = fm.evaluate(1j)
    assert max(abs(v) for v in xi[1]) < 1e-9
    y = families.gamma_y(spec)
    assert max(families.fixed_point_check(fm, spec, y * 1.01)) < 1e-8


@pytest.mark.parametrize("cls", [1, 2, 3])
def test_reducible_parameters(cls):
    assert families.Family2D(cls, F(1, 7), 1).reducible is False
    bad = {1: F(1, 6), 2: F(1, 3), 3: F(1, 3)}[cls]
    assert families.Family2D(cls, bad, 1).reducible


def test_rho_matrices_relations():
    spec = families.Family2D(1, F(1, 7), 1)
    S, T = families.rho_matrices(spec, families.gamma_y(spec))

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]

    S2 = mul(S, S)
    ST = mul(S, T)
    ST3 = mul(ST, mul(ST, ST))
    ident = [[1, 0], [0, 1]]
    for M in (S2, ST3):
        # rho(S)^2 and rho(ST)^3 are scalars equal to the identity here
        assert max(abs(M[i][j] - ident[i][j]) for i in range(2) for j in range(2)) < 1e-12
