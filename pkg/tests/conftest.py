from fractions import Fraction

import pytest

from gsmult.derivpoly import build_coeff_table

_CACHE: dict[int, object] = {}


def get_table(m: int, k_max: int):
    """Session-wide table cache; rebuilds only when a larger k_max is needed."""
    table = _CACHE.get(m)
    if table is None or table.k_max < k_max:
        table = build_coeff_table(m, k_max)
        _CACHE[m] = table
    return table


@pytest.fixture
def tables():
    return get_table


def frac(text) -> Fraction:
    return Fraction(text)
