from fractions import Fraction as F

import pytest

from vvmf import families, fundamental
from vvmf.multiplier import MultiplierData

GRID_T = [F(1, 6), F(1, 3), F(2, 5), F(1, 7), F(-1, 5), F(3, 10)]
GRID = [(cls, t) for cls in (1, 2, 3) for t in GRID_T]


def family_fm(cls, t, N=12, x=1):
    spec = families.Family2D(cls, F(t), F(x))
    m, lam, chi = families.family_2d(spec)
    return spec, m, fundamental.solve_recursion(lam, chi, 0, N)


@pytest.fixture
def trivial():
    m = MultiplierData(1, 0, (1, 0), (1, 0, 0))
    return m, fundamental.solve_recursion([F(0)], [[F(0)]], 0, 12)


@pytest.fixture
def class1():
    return family_fm(1, F(1, 6), N=16)
