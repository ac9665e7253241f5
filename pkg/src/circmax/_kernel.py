"""Compiled necklace scan for primes below 2**63.

Residues are kept in Montgomery form with R = 2**64 so that every modular
product needs only 64-bit integer operations.
"""
from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

MAX_PRIME = 1 << 62

# status codes returned by scan_segment
OK = 0
BOUND_VIOLATION = 1
STATE_MISMATCH = 2
COLLECT_OVERFLOW = 3


def available() -> bool:
    return njit is not None


class Montgomery:
    """Host-side helpers for one odd modulus ``p < 2**62``."""

    def __init__(self, p: int):
        if p % 2 == 0 or p >= MAX_PRIME:
            raise ValueError("Montgomery kernel needs an odd modulus below 2**62")
        self.p = p
        self.r = (1 << 64) % p
        # -p**-1 mod 2**64
        self.pinv = (-pow(p, -1, 1 << 64)) % (1 << 64)

    def to_mont(self, x: int) -> int:
        return (x % self.p) * self.r % self.p


if njit is not None:
    _M32 = np.uint64(0xFFFFFFFF)
    _S32 = np.uint64(32)
    _ONE = np.uint64(1)
    _ZERO = np.uint64(0)

    @njit(cache=True, inline="always")
    def _mulhi(a, b):
        a0 = a & _M32
        a1 = a >> _S32
        b0 = b & _M32
        b1 = b >> _S32
        p00 = a0 * b0
        p01 = a0 * b1
        p10 = a1 * b0
        p11 = a1 * b1
        mid = (p00 >> _S32) + (p01 & _M32) + (p10 & _M32)
        return p11 + (p01 >> _S32) + (p10 >> _S32) + (mid >> _S32)

    @njit(cache=True, inline="always")
    def _mulredc(a, b, p, pinv):
        lo = a * b
        hi = _mulhi(a, b)
        m = lo * pinv
        t = hi + _mulhi(m, p)
        if lo != _ZERO:
            t += _ONE
        if t >= p:
            t -= p
        return t

    @njit(cache=True, inline="always")
    def _addmod(a, b, p):
        s = a + b
        if s >= p:
            s -= p
        return s

    @njit(cache=True, inline="always")
    def _submod(a, b, p):
        if a >= b:
            return a - b
        return a + (p - b)

    @njit(cache=True)
    def _fresh(bits, table, n, p, pm1, lam):
        for j in range(n):
            acc = _ZERO
            for k in range(n):
                if bits[k] == 1:
                    acc = _addmod(acc, table[k, j], p)
                elif pm1:
                    acc = _submod(acc, table[k, j], p)
            lam[j] = acc

    @njit(cache=True)
    def scan_segment(start_bits, end_value, has_end, table, p, pinv, mont_one,
                     scale_mont, bound, pm1, target, collected, debug):
        """Enumerate necklaces from ``start_bits`` and track the maximal |det|.

        ``scale_mont`` multiplies every determinant residue (used to divide out a
        known power of two).  When ``target >= 0`` every necklace whose lifted
        |value| equals ``target`` is appended to ``collected``.
        Returns (status, best_abs, best_word, count, n_collected).
        """
        n = start_bits.shape[0]
        a = start_bits.copy()
        prev = start_bits.copy()
        lam = np.empty(n, dtype=np.uint64)
        _fresh(a, table, n, p, pm1, lam)
        check = np.empty(n, dtype=np.uint64)
        half = (p - _ONE) >> _ONE
        value = np.int64(0)
        for k in range(n):
            value = (value << np.int64(1)) | np.int64(a[k])
        best_abs = np.int64(-1)
        best_word = np.int64(-1)
        count = np.int64(0)
        n_coll = 0
        status = OK
        while True:
            if has_end and value >= end_value:
                break
            acc = mont_one
            for j in range(n):
                acc = _mulredc(acc, lam[j], p, pinv)
            acc = _mulredc(acc, scale_mont, p, pinv)
            r = _mulredc(acc, _ONE, p, pinv)
            if r > half:
                d = np.int64(p - r)
            else:
                d = np.int64(r)
            if d > bound:
                status = BOUND_VIOLATION
                best_word = value
                break
            count += 1
            if d > best_abs:
                best_abs = d
                best_word = value
            if target >= 0 and d == target:
                if n_coll < collected.shape[0]:
                    collected[n_coll] = value
                    n_coll += 1
                else:
                    status = COLLECT_OVERFLOW
                    break
            if debug and (count & np.int64(1023)) == 0:
                _fresh(a, table, n, p, pm1, check)
                for j in range(n):
                    if check[j] != lam[j]:
                        status = STATE_MISMATCH
                if status != OK:
                    break
            # successor necklace
            changed = n
            done = False
            while True:
                i = n - 1
                while i >= 0 and a[i] == 1:
                    i -= 1
                if i < 0:
                    done = True
                    break
                a[i] = 1
                for j in range(i + 1, n):
                    a[j] = a[j - i - 1]
                if i < changed:
                    changed = i
                if n % (i + 1) == 0:
                    break
            if done:
                break
            for k in range(changed, n):
                if a[k] != prev[k]:
                    value ^= np.int64(1) << np.int64(n - 1 - k)
                    if a[k] == 1:
                        for j in range(n):
                            lam[j] = _addmod(lam[j], table[k, j], p)
                            if pm1:
                                lam[j] = _addmod(lam[j], table[k, j], p)
                    else:
                        for j in range(n):
                            lam[j] = _submod(lam[j], table[k, j], p)
                            if pm1:
                                lam[j] = _submod(lam[j], table[k, j], p)
                    prev[k] = a[k]
        return status, best_abs, best_word, count, n_coll
