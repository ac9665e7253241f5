import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.stats import chisquare

from circmax.words import (Word, decimal_to_word, euler_phi, is_necklace,
                           iter_necklaces, necklace_count, next_necklace,
                           random_necklace, word_to_decimal)


def brute_is_necklace(w):
    return all(w.value <= r.value for r in w.rotations())


def necklace_mask(n):
    """Boolean array over all 2**n words: True where the word is its least rotation."""
    v = np.arange(1 << n, dtype=np.int64)
    mask = (1 << n) - 1
    least = v.copy()
    for k in range(1, n):
        rot = ((v << k) | (v >> (n - k))) & mask
        np.minimum(least, rot, out=least)
    return least == v


@pytest.mark.parametrize("s, expected", [("0101", True), ("1010", False), ("0010111", True),
                                         ("0000", True), ("1111", True), ("0", True)])
def test_is_necklace_examples(s, expected):
    assert is_necklace(Word.from_str(s)) is expected


def test_0010111_by_rotations():
    w = Word.from_str("0010111")
    assert all(w.value <= r.value for r in w.rotations())


@pytest.mark.parametrize("n", range(1, 13))
def test_is_necklace_matches_brute_force(n):
    for v in range(1 << n):
        w = Word(n, v)
        assert is_necklace(w) == brute_is_necklace(w)


@given(st.integers(1, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_is_necklace_property(nv):
    w = Word(*nv)
    assert is_necklace(w) == brute_is_necklace(w)


def test_next_necklace_examples():
    assert next_necklace(Word.from_str("0001")) == (Word.from_str("0011"), 2)
    assert next_necklace(Word.from_str("0101")) == (Word.from_str("0111"), 2)
    assert next_necklace(Word.from_str("1111")) is None


def test_next_necklace_rejects_non_necklace():
    with pytest.raises(ValueError):
        next_necklace(Word.from_str("1010"))


def test_length_four_listing():
    got = [str(w) for w, _ in iter_necklaces(4)]
    assert got == ["0000", "0001", "0011", "0101", "0111", "1111"]


@pytest.mark.parametrize("n", range(1, 17))
def test_enumeration_is_the_necklace_set(n):
    expected = np.flatnonzero(necklace_mask(n)).tolist()
    seq = [w.value for w, _ in iter_necklaces(n)]
    assert seq == expected
    assert len(seq) == necklace_count(n)


@pytest.mark.parametrize("n", [5, 8, 11])
def test_changed_from_is_exact(n):
    prev = None
    for w, changed in iter_necklaces(n):
        if prev is not None:
            a, b = prev.bits, w.bits
            assert a[:changed] == b[:changed]
            assert a[changed] != b[changed]
        prev = w


def test_mean_symbols_changed_is_about_two():
    n = 20
    flips, suffix, prev = [], [], None
    for w, c in iter_necklaces(n):
        if prev is not None:
            flips.append(bin(w.value ^ prev.value).count("1"))
            suffix.append(n - c)
        prev = w
    assert 1.9 <= sum(flips) / len(flips) <= 2.1
    # the rewritten suffix is longer than the flipped set but still O(1) on average
    assert sum(suffix) / len(suffix) < 3.5


def test_necklace_count_small():
    assert necklace_count(4) == 6
    assert necklace_count(1) == 2


def test_necklace_count_20_by_enumeration():
    brute = int(necklace_mask(20).sum())
    assert necklace_count(20) == brute == 52488  # OEIS A000031(20)


@pytest.mark.parametrize("n", range(1, 17))
def test_necklace_count_matches_mask(n):
    assert necklace_count(n) == int(necklace_mask(n).sum())


@pytest.mark.parametrize("m, phi", [(1, 1), (12, 4), (13, 12), (36, 12), (64, 32)])
def test_euler_phi(m, phi):
    assert euler_phi(m) == phi


def test_euler_phi_by_gcd_count():
    from math import gcd
    for m in range(1, 65):
        assert euler_phi(m) == sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def test_random_necklace_n2():
    rng = random.Random(1)
    assert {str(random_necklace(2, rng)) for _ in range(200)} == {"01"}


@pytest.mark.parametrize("n", [4, 6, 8])
def test_random_necklace_uniform(n):
    rng = random.Random(2024 + n)
    support = [w for w, _ in iter_necklaces(n)][1:-1]
    counts = Counter(random_necklace(n, rng) for _ in range(100_000))
    assert set(counts) == set(support)
    _, pvalue = chisquare([counts[w] for w in support])
    assert pvalue > 0.001


def test_rotation_sampling_would_be_biased():
    # rotating an arbitrary string to its least rotation does not sample uniformly
    rng = random.Random(5)
    c = Counter(min(Word(2, rng.getrandbits(2)).rotations()) for _ in range(40_000))
    assert abs(c[Word.from_str("01")] / 40_000 - 0.5) < 0.02


def test_codec_examples():
    assert word_to_decimal(Word.from_str("0010111")) == 23
    assert word_to_decimal(Word.from_str("---+-++")) == 11
    assert word_to_decimal(Word.zeros(9)) == 0
    with pytest.raises(ValueError):
        decimal_to_word(1 << 7, 7)


@pytest.mark.parametrize("n", range(1, 17))
def test_codec_round_trip(n):
    for v in range(0, 1 << n, max(1, (1 << n) // 512)):
        w = decimal_to_word(v, n)
        assert word_to_decimal(w) == v
        assert decimal_to_word(word_to_decimal(w), n) == w
        assert Word.from_bits(w.bits) == w


def test_word_order_is_lexicographic():
    words = [Word(5, v) for v in range(32)]
    assert sorted(words, key=lambda w: str(w)) == sorted(words)
