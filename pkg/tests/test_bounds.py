import pytest

from circmax.bounds import (format_ratio, hbe_floor_scaled, hbe_squared, integer_sqrt,
                            u01_bound, upm1_bound)
from circmax.reference import table_rows


def test_integer_sqrt():
    assert integer_sqrt(0) == 0
    assert integer_sqrt(17) == 4
    x = (2 * 9 - 1) * 8 ** 8
    assert x == 285212672
    assert 16888 ** 2 <= x < 16889 ** 2
    assert integer_sqrt(x) == 16888
    with pytest.raises(ValueError):
        integer_sqrt(-1)


def test_hbe_examples():
    assert hbe_floor_scaled(4, 0) == 16
    assert hbe_floor_scaled(6, 0) == 2 * 5 * 4 ** 2 == 160
    assert hbe_floor_scaled(9, 8) == 16888 // 256 == 65
    assert hbe_floor_scaled(2, 0) == 2


def test_u01_examples():
    assert u01_bound(13) == 9477
    assert u01_bound(3) == 2
    assert u01_bound(5) == 160 // 32 == 5
    assert u01_bound(8) == 65


def test_upm1_examples():
    assert upm1_bound(4) == 16
    assert upm1_bound(13) == 3645 * 2 ** 12
    assert upm1_bound(2) == 2


@pytest.mark.parametrize("n", [n for n in range(1, 65) if n % 2])
def test_odd_floor_brackets_the_square_root(n):
    h = hbe_floor_scaled(n, 0)
    x = (2 * n - 1) * (n - 1) ** (n - 1)
    assert h * h <= x < (h + 1) ** 2


@pytest.mark.parametrize("n", range(1, 65))
def test_below_hadamard(n):
    # H_BE(n) <= n^(n/2), compared through squares
    assert hbe_squared(n) <= n ** n
    assert hbe_floor_scaled(n, 0) ** 2 <= hbe_squared(n)


@pytest.mark.parametrize("n", range(1, 40))
def test_shift_commutes_with_floor(n):
    for s in (0, 1, 5, n - 1, n):
        assert hbe_floor_scaled(n, s) == hbe_floor_scaled(n, 0) >> s


@pytest.mark.parametrize("alphabet", ["01", "pm1"])
def test_table_ratios_reproduced(alphabet):
    for row in table_rows(alphabet):
        U = u01_bound(row.n) if alphabet == "01" else upm1_bound(row.n)
        assert format_ratio(row.abs_det, U) == row.ratio, row


def test_format_ratio_rounding():
    assert format_ratio(45, 65) == "0.6923"
    assert format_ratio(1, 1) == "1.0000"
    assert format_ratio(0, 7) == "0.0000"
    assert format_ratio(1, 20000) == "0.0001"  # half rounds away from zero
    assert format_ratio(-1, 20000) == "-0.0001"
