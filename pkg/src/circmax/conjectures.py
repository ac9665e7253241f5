"""Circulant cores of Hadamard matrices, quadratic-residue circulants, and
interior perturbations of maximal-determinant circulants.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .bounds import u01_bound
from .modfield import is_probable_prime
from .oracle import (IntPolynomial, det_polynomial_in_entry, poly_derivative,
                     poly_eval, poly_mul, poly_pow)
from .spectral import Alphabet, CirculantSpec
from .words import Word


class CoreClass(enum.Enum):
    PRIME_3_MOD_4 = 1
    TWIN_PRIME_PRODUCT = 2
    MERSENNE_FORM = 3
    HALL_PRIME = 4


def _is_prime(m: int) -> bool:
    return m >= 2 and is_probable_prime(m)


def circulant_core_classes(n: int) -> FrozenSet[CoreClass]:
    """Which of the known circulant-core constructions apply to order ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = set()
    if _is_prime(n) and n % 4 == 3:
        out.add(CoreClass.PRIME_3_MOD_4)
    q = math.isqrt(n + 1) - 1  # n = q(q+2) iff n + 1 = (q+1)**2
    if q >= 2 and q * (q + 2) == n and _is_prime(q) and _is_prime(q + 2):
        out.add(CoreClass.TWIN_PRIME_PRODUCT)
    if (n + 1) & n == 0:
        out.add(CoreClass.MERSENNE_FORM)
    if n > 27 and (n - 27) % 4 == 0 and _is_prime(n):
        k2 = (n - 27) // 4
        if math.isqrt(k2) ** 2 == k2:
            out.add(CoreClass.HALL_PRIME)
    return frozenset(out)


_EXPLAINING = {CoreClass.PRIME_3_MOD_4, CoreClass.TWIN_PRIME_PRODUCT, CoreClass.MERSENNE_FORM}


@dataclass(frozen=True)
class ConjectureAStatus:
    n: int
    D: int
    U: int
    classes: FrozenSet[CoreClass]

    @property
    def attains_bound(self) -> bool:
        return self.D == self.U

    @property
    def predicted(self) -> bool:
        return self.n <= 4 or bool(self.classes & _EXPLAINING)

    @property
    def consistent(self) -> bool:
        return self.attains_bound == self.predicted

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "D": str(self.D),
            "U": str(self.U),
            "attains_bound": self.attains_bound,
            "classes": sorted(c.value for c in self.classes),
            "consistent": self.consistent,
        }


def conjecture_a_status(n: int, D: int, U: Optional[int] = None) -> ConjectureAStatus:
    if U is None:
        U = u01_bound(n)
    return ConjectureAStatus(n, D, U, circulant_core_classes(n))


def legendre_symbol(j: int, n: int) -> int:
    if n < 3 or n % 2 == 0 or not _is_prime(n):
        raise ValueError(f"{n} is not an odd prime")
    t = pow(j % n, (n - 1) // 2, n)
    return -1 if t == n - 1 else t


def _ura_k(n: int) -> int:
    if n % 4 != 1 or not _is_prime(n):
        raise ValueError(f"{n} is not a prime congruent to 1 mod 4")
    return (n - 1) // 4


def ura_det_closed(n: int, x) -> Fraction:
    """``(x + 2k)(x^2 - x - k)^(2k)`` for ``n = 4k + 1`` prime."""
    k = _ura_k(n)
    x = Fraction(x)
    return (x + 2 * k) * (x * x - x - k) ** (2 * k)


def ura_det_polynomial(n: int) -> IntPolynomial:
    k = _ura_k(n)
    return poly_mul(IntPolynomial((2 * k, 1)), poly_pow(IntPolynomial((-k, -1, 1)), 2 * k))


def ura_spec(n: int) -> CirculantSpec:
    """Quadratic-residue indicator circulant; position 0 is the free entry."""
    _ura_k(n)
    bits = [0] + [(1 + legendre_symbol(j, n)) // 2 for j in range(1, n)]
    return CirculantSpec(Alphabet.BINARY01, Word.from_bits(bits))


def ura_local_max(k: int) -> Tuple[float, float]:
    """Interior local maximiser ``x_k`` and the gain ``det(x_k) / det(1/2)``."""
    if k < 1:
        raise ValueError("k must be positive")
    x = (math.sqrt(1 + 4 * k * k) + 1 - 2 * k) / 2
    # logarithmic derivative of (x + 2k)(x^2 - x - k)^(2k)
    t1 = 1 / (x + 2 * k)
    t2 = 2 * k * (2 * x - 1) / (x * x - x - k)
    if abs(t1 + t2) > 1e-10 * (abs(t1) + abs(t2)):
        raise ArithmeticError(f"derivative does not vanish at x_{k} = {x}")
    det = lambda y: (y + 2 * k) * (y * y - y - k) ** (2 * k)
    return x, det(x) / det(0.5)


# ---------------------------------------------------------------------------
# perturbation scan

@dataclass(frozen=True)
class PerturbationFinding:
    n: int
    alphabet: Alphabet
    base_word: Word
    position: int
    endpoint: int
    det_at_extreme: int
    derivative_inward: int
    witness: Optional[Tuple[Fraction, Fraction]]
    first_order: bool
    equivalent_rows: int = 1
    polynomial: IntPolynomial = field(default=IntPolynomial(()), repr=False, compare=False)

    def as_record(self) -> dict:
        rec = {
            "n": self.n,
            "alphabet": self.alphabet.value,
            "word": str(self.base_word),
            "position": self.position,
            "endpoint": self.endpoint,
            "det_at_extreme": str(self.det_at_extreme),
            "derivative_inward": str(self.derivative_inward),
            "first_order": self.first_order,
            "equivalent_rows": self.equivalent_rows,
            "exhaustive": False,
        }
        if self.witness is not None:
            x, v = self.witness
            rec["witness_x"] = str(x)
            rec["witness_abs_det"] = str(v)
            rec["witness_abs_det_float"] = float(v)
        return rec


def _grid_argmax(f: IntPolynomial, lo: int, hi: int, denom: int) -> Tuple[Fraction, Fraction]:
    """Maximiser of ``|f(i/denom)|`` over integers ``lo < i < hi``, exactly.

    Scaled to integers: ``f(i/m) * m**d = sum c_k i**k m**(d-k)``.
    """
    c = f.coeffs
    d = len(c) - 1
    mp = [denom ** (d - k) for k in range(d + 1)]
    best_i, best_v = None, -1
    for i in range(lo + 1, hi):
        acc = 0
        ip = 1
        for k in range(d + 1):
            acc += c[k] * ip * mp[k]
            ip *= i
        v = abs(acc)
        if v > best_v:
            best_i, best_v = i, v
    x = Fraction(best_i, denom)
    return x, Fraction(best_v, denom ** d)


def perturbation_scan(n: int, alphabet, maximizers: Sequence[Word], D: int,
                      grid: int = 1000) -> List[PerturbationFinding]:
    """Look for first rows at which moving ``a_0`` into the interior raises |det|.

    Every rotation of every maximiser is examined.  A row is flagged when |det|
    grows to first order at the extreme value of ``a_0``, or when some interior
    grid point ``i/grid`` beats ``D``.  Rows sharing the same determinant
    polynomial are reported once, under the smallest such row.  The scan is not
    exhaustive over the interior.
    """
    alphabet = Alphabet.parse(alphabet)
    lo_x = 0 if alphabet is Alphabet.BINARY01 else -1
    rows = sorted({base.rotate(r) for base in maximizers for r in range(n)})
    by_poly = {}
    for w in rows:
        spec = CirculantSpec(alphabet, w)
        f = det_polynomial_in_entry(spec, 0)
        if f.coeffs in by_poly:
            prev = by_poly[f.coeffs]
            if prev is not None:
                by_poly[f.coeffs] = replace(prev, equivalent_rows=prev.equivalent_rows + 1)
            continue
        e = spec.row[0]
        v = poly_eval(f, e)
        if abs(v) != D:
            raise ValueError(f"{w} does not achieve |det| = {D}")
        inward = 1 if e == lo_x else -1
        slope = inward * poly_eval(poly_derivative(f), e)
        sign = (v > 0) - (v < 0)
        first_order = sign * slope > 0 or (D == 0 and f.degree > 0)
        x, val = _grid_argmax(f, lo_x * grid, grid, grid)
        finding = None
        if val > D or first_order:
            witness = (x, val) if val > D else None
            finding = PerturbationFinding(n, alphabet, w, 0, e, v, slope, witness,
                                          first_order, 1, f)
        by_poly[f.coeffs] = finding
    findings = [f for f in by_poly.values() if f is not None]
    findings.sort(key=lambda r: (r.base_word, r.position))
    return findings


@dataclass(frozen=True)
class UraChain:
    n: int
    k: int
    u01: int
    det_at_xk: float
    det_at_half: Fraction
    d01: int
    det_at_one: Fraction
    det_at_zero: Fraction

    @property
    def holds(self) -> bool:
        return (self.u01 > self.det_at_xk > self.det_at_half > self.d01
                > self.det_at_one > self.det_at_zero)


def ura_chain(n: int, d01: int) -> UraChain:
    k = _ura_k(n)
    xk, _ = ura_local_max(k)
    return UraChain(n, k, u01_bound(n), float(ura_det_closed(n, Fraction(xk))),
                    ura_det_closed(n, Fraction(1, 2)), d01,
                    ura_det_closed(n, 1), ura_det_closed(n, 0))
