"""Circulants described by their first row, and their periodic autocorrelations."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .words import Word


class Alphabet(enum.Enum):
    BINARY01 = "01"
    PM1 = "pm1"

    def symbol(self, bit: int) -> int:
        return bit if self is Alphabet.BINARY01 else 2 * bit - 1

    @classmethod
    def parse(cls, s) -> "Alphabet":
        if isinstance(s, cls):
            return s
        aliases = {"01": cls.BINARY01, "binary01": cls.BINARY01,
                   "pm1": cls.PM1, "+-1": cls.PM1, "±1": cls.PM1}
        try:
            return aliases[str(s).lower()]
        except KeyError:
            raise ValueError(f"unknown alphabet {s!r}") from None


@dataclass(frozen=True)
class CirculantSpec:
    alphabet: Alphabet
    word: Word

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def row(self) -> Tuple[int, ...]:
        sym = self.alphabet.symbol
        return tuple(sym(b) for b in self.word.bits)

    def matrix(self) -> List[List[int]]:
        """Dense ``circ(a_0, ..., a_{n-1})``; entry (j, k) is ``a_{(k-j) mod n}``."""
        a = self.row
        n = len(a)
        return [[a[(k - j) % n] for k in range(n)] for j in range(n)]


def circulant(row: Sequence) -> list:
    n = len(row)
    return [[row[(k - j) % n] for k in range(n)] for j in range(n)]


def associated_polynomial(spec: CirculantSpec) -> Tuple[int, ...]:
    """Coefficients ``(a_0, ..., a_{n-1})`` of ``f(z) = sum a_k z**k``."""
    return spec.row


def polynomial_kind(coeffs: Sequence[int]) -> Optional[str]:
    """``"littlewood"`` for all +-1 coefficients, ``"newman"`` for 0/1 with a_0 = 1."""
    if coeffs and all(c in (-1, 1) for c in coeffs):
        return "littlewood"
    if coeffs and coeffs[0] == 1 and all(c in (0, 1) for c in coeffs):
        return "newman"
    return None


def autocorrelation(a: Sequence[int]) -> Tuple[int, ...]:
    n = len(a)
    return tuple(sum(a[j] * a[(j + t) % n] for j in range(n)) for t in range(n))


def gram_first_row(spec: CirculantSpec) -> Tuple[int, ...]:
    """First row of ``A^T A``, i.e. the periodic autocorrelation of the mapped row."""
    return autocorrelation(spec.row)


def signed_gram_first_row(w: Word) -> Tuple[int, ...]:
    """First row of ``(2A - J)^T (2A - J)`` for the {0,1} circulant of ``w``."""
    return gram_first_row(CirculantSpec(Alphabet.PM1, w))


def is_flat_correlation(g: Sequence[int]) -> bool:
    n = len(g)
    return n > 0 and g[0] == n and all(x == -1 for x in g[1:])
