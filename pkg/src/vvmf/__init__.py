"""Exact vector-valued modular forms for SL2(Z)."""

from .basis import basis_element, bijectivity_test, serre_dual
from .dimensions import dim_tight, hilbert_tight
from .families import Family2D, family_1d, family_2d
from .forms import standard_series
from .fundamental import FundamentalMatrix, solve_recursion, weight_shift
from .multiplier import MultiplierData, c_value
from .series import QSeries

__version__ = "0.1.0"

__all__ = [
    "Family2D",
    "FundamentalMatrix",
    "MultiplierData",
    "QSeries",
    "basis_element",
    "bijectivity_test",
    "c_value",
    "dim_tight",
    "family_1d",
    "family_2d",
    "hilbert_tight",
    "serre_dual",
    "solve_recursion",
    "standard_series",
    "weight_shift",
]
