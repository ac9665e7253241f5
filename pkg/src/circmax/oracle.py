"""Brute-force reference computations, independent of the modular pipeline."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .spectral import Alphabet, CirculantSpec, circulant
from .words import Word

Number = Union[int, Fraction]


def bareiss_det(M: Sequence[Sequence[Number]]) -> Number:
    """Determinant by fraction-free elimination.

    Integer matrices stay in the integers throughout: every division is exact.
    Rational input is scaled to integers first.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    scale = 1
    rows = [list(r) for r in M]
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in rows for x in r):
        for r in rows:
            den = 1
            for x in r:
                den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
            for k in range(n):
                r[k] = int(Fraction(r[k]) * den)
            scale *= den
    a = [[int(x) for x in r] for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    det = sign * a[n - 1][n - 1]
    return Fraction(det, scale) if scale != 1 else det


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class OracleMax:
    n: int
    alphabet: Alphabet
    max_abs_det: int
    lex_least_word: Word


def exhaustive_max(n: int, alphabet) -> OracleMax:
    """Maximum |det| over all ``2**n`` first rows, by dense elimination."""
    if n > 14:
        raise ValueError("exhaustive oracle limited to n <= 14")
    alphabet = Alphabet.parse(alphabet)
    best, best_w = -1, None
    for v in range(1 << n):
        w = Word(n, v)
        d = abs(bareiss_det(CirculantSpec(alphabet, w).matrix()))
        if d > best:
            best, best_w = d, w
    return OracleMax(n, alphabet, best, best_w)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with coefficients indexed by degree, trailing zeros trimmed."""
    coeffs: Tuple[Number, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        c = [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in c]
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return poly_eval(self, x)

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(f"{c}" + ("" if k == 0 else "*x" if k == 1 else f"*x^{k}"))
        return " + ".join(terms) or "0"


def poly_eval(f: IntPolynomial, x) -> Number:
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(f: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(tuple(k * c for k, c in enumerate(f.coeffs) if k))


def poly_mul(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    if not f.coeffs or not g.coeffs:
        return IntPolynomial(())
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return IntPolynomial(tuple(out))


def poly_pow(f: IntPolynomial, e: int) -> IntPolynomial:
    out = IntPolynomial((1,))
    for _ in range(e):
        out = poly_mul(out, f)
    return out


def interpolate(xs: Sequence[Number], ys: Sequence[Number]) -> Tuple[Fraction, ...]:
    """Coefficients of the Lagrange interpolant through ``(xs, ys)``, exactly."""
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i in range(m):
        # basis numerator prod_{j != i} (x - x_j), built up by degree
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(m):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            den *= xs[i] - xs[j]
        w = Fraction(ys[i]) / den
        for k, b in enumerate(basis):
            coeffs[k] += w * b
    return tuple(coeffs)


def det_polynomial_in_entry(spec: CirculantSpec, position: int) -> IntPolynomial:
    """det of ``spec``'s circulant with the whole stripe of ``a_position`` set to x."""
    n = spec.n
    if not 0 <= position < n:
        raise IndexError(position)
    row = list(spec.row)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        row[position] = x
        ys.append(bareiss_det(circulant(row)))
    coeffs = interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integer coefficient in interpolated determinant")
    return IntPolynomial(tuple(int(c) for c in coeffs))
