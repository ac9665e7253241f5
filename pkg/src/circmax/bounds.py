"""Exact Hadamard / Barba-Ehlich-Wojtas determinant bounds."""
from __future__ import annotations

import enum
import math
from fractions import Fraction


class BoundKind(enum.Enum):
    HBE = "HBE"
    U01 = "U01"
    UPM1 = "UPM1"


def integer_sqrt(x: int) -> int:
    """Floor of the square root of a nonnegative integer."""
    if x < 0:
        raise ValueError("integer_sqrt of a negative number")
    r = math.isqrt(x)
    if not (r * r <= x < (r + 1) * (r + 1)):
        raise ArithmeticError(f"isqrt postcondition failed for {x}")
    return r


def hbe_floor_scaled(n: int, shift: int) -> int:
    """``floor(H_BE(n) / 2**shift)`` computed without rounding error.

    For odd ``n`` the bound is irrational; flooring the square root first and
    dividing afterwards gives the same result.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    r = n % 4
    if r == 0:
        h = n ** (n // 2)
    elif r == 2:
        h = 2 * (n - 1) * (n - 2) ** ((n - 2) // 2)  # 0**0 == 1 covers n = 2
    else:
        h = integer_sqrt((2 * n - 1) * (n - 1) ** (n - 1))
    return h >> shift


def hbe_squared(n: int) -> int:
    """``H_BE(n)**2``, an integer for every ``n``."""
    r = n % 4
    if r == 0:
        return n ** n
    if r == 2:
        return (2 * (n - 1)) ** 2 * (n - 2) ** (n - 2)
    return (2 * n - 1) * (n - 1) ** (n - 1)


def u01_bound(n: int) -> int:
    """Upper bound on |det| of a {0,1} matrix of order ``n``."""
    return hbe_floor_scaled(n + 1, n)


def upm1_bound(n: int) -> int:
    """Upper bound on |det| of a {-1,+1} matrix of order ``n``."""
    return hbe_floor_scaled(n, n - 1) << (n - 1)


def bound(kind: BoundKind, n: int) -> int:
    if kind is BoundKind.HBE:
        return hbe_floor_scaled(n, 0)
    if kind is BoundKind.U01:
        return u01_bound(n)
    return upm1_bound(n)


def format_ratio(num: int, den: int, places: int = 4) -> str:
    """``num/den`` rounded half away from zero to ``places`` decimals."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    q = Fraction(abs(num), den) * 10 ** places
    r = math.floor(q + Fraction(1, 2))
    sign = "-" if num < 0 and r else ""
    whole, frac = divmod(r, 10 ** places)
    return f"{sign}{whole}.{frac:0{places}d}"
