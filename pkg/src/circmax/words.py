"""Binary words and necklaces.

A word of length ``n`` is stored packed into an integer, most significant bit
first, so the native integer order of ``value`` coincides with the
lexicographic order of the symbols.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple


@dataclass(frozen=True, order=True)
class Word:
    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"word length must be positive, got {self.n}")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} out of range for length {self.n}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "Word":
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"symbol {b!r} is not 0 or 1")
            value = (value << 1) | b
        return cls(len(bits), value)

    @classmethod
    def from_str(cls, s: str) -> "Word":
        """Parse ``"0101"`` or the signed form ``"-+-+"``."""
        table = {"0": 0, "1": 1, "-": 0, "+": 1}
        try:
            return cls.from_bits([table[c] for c in s])
        except KeyError as exc:
            raise ValueError(f"bad symbol in word {s!r}") from exc

    @classmethod
    def zeros(cls, n: int) -> "Word":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "Word":
        return cls(n, (1 << n) - 1)

    @property
    def bits(self) -> Tuple[int, ...]:
        n, v = self.n, self.value
        return tuple((v >> (n - 1 - j)) & 1 for j in range(n))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(j)
        return (self.value >> (self.n - 1 - j)) & 1

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    def signed_str(self) -> str:
        return "".join("+" if b else "-" for b in self.bits)

    def rotate(self, k: int) -> "Word":
        """Left rotation: the result starts with symbol ``k`` of ``self``."""
        n = self.n
        k %= n
        if k == 0:
            return self
        mask = (1 << n) - 1
        return Word(n, ((self.value << k) | (self.value >> (n - k))) & mask)

    def rotations(self) -> Iterator["Word"]:
        for k in range(self.n):
            yield self.rotate(k)


def word_to_decimal(w: Word) -> int:
    return w.value


def decimal_to_word(N: int, n: int) -> Word:
    if n < 1:
        raise ValueError("length must be positive")
    if not 0 <= N < (1 << n):
        raise ValueError(f"{N} does not fit in {n} bits")
    return Word(n, N)


def is_necklace(w: Word) -> bool:
    """Return True iff ``w`` is not larger than any of its rotations.

    Booth's least-rotation scan over the doubled word, stopped as soon as some
    rotation is found to be strictly smaller than rotation 0.
    """
    s = w.bits
    n = len(s)
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = fail[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                return False
            i = fail[i]
        if sj != s[(k + i + 1) % n]:
            # here i == -1
            if sj < s[k % n]:
                return False
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return True


def _successor_bits(a: list) -> Optional[int]:
    """Advance ``a`` in place to the next necklace; return the first changed index.

    Returns None (leaving ``a`` untouched) when ``a`` is all ones.
    """
    n = len(a)
    changed = n
    while True:
        i = n - 1
        while i >= 0 and a[i] == 1:
            i -= 1
        if i < 0:
            return None
        a[i] = 1
        for j in range(i + 1, n):
            a[j] = a[j - i - 1]
        if i < changed:
            changed = i
        if n % (i + 1) == 0:
            return changed


def next_necklace(w: Word) -> Optional[Tuple[Word, int]]:
    """Next necklace after ``w`` in lexicographic order, with the changed-from index."""
    if not is_necklace(w):
        raise ValueError(f"{w} is not a necklace")
    a = list(w.bits)
    changed = _successor_bits(a)
    if changed is None:
        return None
    return Word.from_bits(a), changed


def iter_necklaces(n: int, start: Optional[Word] = None,
                   end: Optional[Word] = None) -> Iterator[Tuple[Word, int]]:
    """Yield ``(necklace, changed_from)`` pairs from ``start`` up to (excluding) ``end``.

    The first pair carries ``changed_from = 0``.
    """
    w = start if start is not None else Word.zeros(n)
    if not is_necklace(w):
        raise ValueError(f"{w} is not a necklace")
    a = list(w.bits)
    changed = 0
    while True:
        cur = Word.from_bits(a)
        if end is not None and cur.value >= end.value:
            return
        yield cur, changed
        changed = _successor_bits(a)
        if changed is None:
            return


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    result = m
    q = 2
    while q * q <= m:
        if m % q == 0:
            while m % q == 0:
                m //= q
            result -= result // q
        q += 1
    if m > 1:
        result -= result // m
    return result


def necklace_count(n: int) -> int:
    """Number of binary necklaces of length ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    total = sum((1 << (n // d)) * euler_phi(d) for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n


def random_necklace(n: int, rng: random.Random) -> Word:
    """Uniform random necklace of length ``n`` other than 0...0 and 1...1.

    Rejection sampling over words of the form 0x...y1.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    while True:
        w = Word(n, (rng.getrandbits(n - 2) << 1) | 1)
        if is_necklace(w):
            return w
