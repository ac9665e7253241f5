"""Circulant determinants evaluated exactly in a prime field.

With ``p = 1 (mod n)`` the field contains a primitive n-th root of unity
``omega``, the circulant's eigenvalues ``f(omega**j)`` live in the field, and
their product is ``det A mod p``.  Taking ``p >= 2U + 1`` for a bound ``U`` on
``|det A|`` makes the symmetric residue equal to the determinant itself.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .spectral import Alphabet, CirculantSpec
from .words import Word

# deterministic Miller-Rabin witnesses for every n < 2**64
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_SEED = 0x5EED
_MR_ROUNDS = 64


class BoundViolation(ArithmeticError):
    """A lifted determinant exceeded its a-priori bound."""


def is_probable_prime(m: int) -> bool:
    if m < 2:
        return False
    for q in _MR_BASES_64:
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if m < 1 << 64:
        bases: Iterable[int] = _MR_BASES_64
    else:
        rng = random.Random(_MR_SEED)
        bases = [rng.randrange(2, m - 1) for _ in range(_MR_ROUNDS)]
    for a in bases:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def prime_factors(m: int) -> List[int]:
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def select_prime(n: int, U: int) -> int:
    """Smallest prime ``p`` with ``p = 1 (mod n)`` and ``p >= 2U + 1``."""
    if n < 1 or U < 1:
        raise ValueError("need n >= 1 and U >= 1")
    c = 2 * U + 1
    c += (1 - c) % n
    while not is_probable_prime(c):
        c += n
    return c


def has_order(omega: int, n: int, p: int) -> bool:
    if pow(omega, n, p) != 1:
        return False
    return all(pow(omega, n // q, p) != 1 for q in prime_factors(n))


def find_root_of_unity(p: int, n: int, rng: random.Random) -> int:
    """Random element of multiplicative order exactly ``n`` modulo ``p``."""
    if (p - 1) % n:
        raise ValueError(f"p = {p} is not 1 mod {n}")
    if n == 1:
        return 1
    e = (p - 1) // n
    while True:
        omega = pow(rng.randrange(1, p), e, p)
        if has_order(omega, n, p):
            return omega


@dataclass(frozen=True)
class FieldContext:
    n: int
    p: int
    omega: int
    power_table: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def build(cls, n: int, p: int, omega: int) -> "FieldContext":
        if (p - 1) % n or not has_order(omega, n, p):
            raise ValueError("omega is not a primitive n-th root of unity mod p")
        powers = [pow(omega, e, p) for e in range(n)]
        table = tuple(tuple(powers[(j * k) % n] for k in range(n)) for j in range(n))
        return cls(n, p, omega, table)

    @classmethod
    def for_bound(cls, n: int, U: int, rng: Optional[random.Random] = None) -> "FieldContext":
        p = select_prime(n, U)
        rng = rng if rng is not None else random.Random(0)
        return cls.build(n, p, find_root_of_unity(p, n, rng))


@dataclass
class EigenState:
    """Eigenvalue residues of one circulant, kept current under symbol flips."""
    ctx: FieldContext
    alphabet: Alphabet
    word: Word
    lam: List[int]

    def copy(self) -> "EigenState":
        return EigenState(self.ctx, self.alphabet, self.word, list(self.lam))


def eigen_init(spec: CirculantSpec, ctx: FieldContext) -> EigenState:
    if spec.n != ctx.n:
        raise ValueError("order mismatch between spec and field context")
    p = ctx.p
    a = spec.row
    lam = [sum(ak * w for ak, w in zip(a, row)) % p for row in ctx.power_table]
    return EigenState(ctx, spec.alphabet, spec.word, lam)


def eigen_update(state: EigenState, changes: Sequence[Tuple[int, int, int]]) -> EigenState:
    """Apply ``(position, old_bit, new_bit)`` changes in place and return ``state``."""
    if not changes:
        return state
    ctx = state.ctx
    p, n = ctx.p, ctx.n
    sym = state.alphabet.symbol
    value = state.word.value
    for k, old, new in changes:
        if state.word[k] != old:
            raise ValueError(f"position {k} holds {state.word[k]}, not {old}")
        if old == new:
            continue
        delta = sym(new) - sym(old)
        # column k of the power table: omega**(j*k) for j = 0..n-1
        step = ctx.power_table[k]
        state.lam = [(l + delta * c) % p for l, c in zip(state.lam, step)]
        value ^= 1 << (n - 1 - k)
    state.word = Word(n, value)
    return state


def det_residue(state: EigenState) -> int:
    p = state.ctx.p
    d = 1
    for l in state.lam:
        d = d * l % p
    return d


def lift_residue(r: int, p: int, U: int) -> int:
    """Symmetric representative of ``r`` mod ``p``, checked against ``|d| <= U``."""
    if not 0 <= r < p:
        raise ValueError("residue out of range")
    d = r if r <= (p - 1) // 2 else r - p
    if abs(d) > U:
        raise BoundViolation(f"lifted value {d} exceeds bound {U} (p = {p})")
    return d


def circulant_det(spec: CirculantSpec, ctx: Optional[FieldContext] = None,
                  U: Optional[int] = None) -> int:
    """Exact determinant of a binary circulant via one field evaluation."""
    from .bounds import u01_bound, upm1_bound

    n = spec.n
    if U is None:
        U = u01_bound(n) if spec.alphabet is Alphabet.BINARY01 else upm1_bound(n)
    U = max(U, 1)
    if ctx is None or ctx.p < 2 * U + 1:
        ctx = FieldContext.for_bound(n, U)
    return lift_residue(det_residue(eigen_init(spec, ctx)), ctx.p, U)
