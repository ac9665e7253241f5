import random

import pytest
from hypothesis import given, settings, strategies as st

from circmax.bounds import u01_bound, upm1_bound
from circmax.modfield import (BoundViolation, FieldContext, circulant_det, det_residue,
                              eigen_init, eigen_update, find_root_of_unity, has_order,
                              is_probable_prime, lift_residue, prime_factors, select_prime)
from circmax.oracle import bareiss_det
from circmax.spectral import Alphabet, CirculantSpec
from circmax.words import Word, iter_necklaces


def trial_division_prime(m):
    return m >= 2 and all(m % q for q in range(2, int(m ** 0.5) + 1))


def test_miller_rabin_against_trial_division():
    for m in range(0, 20000):
        assert is_probable_prime(m) == trial_division_prime(m)


def test_miller_rabin_large():
    assert is_probable_prime(2 ** 127 - 1)
    assert not is_probable_prime((2 ** 61 - 1) * (2 ** 89 - 1))
    assert is_probable_prime(2 ** 61 - 1)


def test_select_prime_examples():
    assert select_prime(4, 16) == 37
    assert select_prime(1, 1) == 3
    assert select_prime(7, 32) == 71


@pytest.mark.parametrize("n, U", [(5, 100), (12, 10 ** 6), (30, 10 ** 14), (53, 10 ** 31)])
def test_select_prime_is_smallest(n, U):
    p = select_prime(n, U)
    assert p % n == 1 % n and p >= 2 * U + 1 and is_probable_prime(p)
    assert not any(is_probable_prime(c) for c in range(p - n, 2 * U, -n))


def test_find_root_examples():
    rng = random.Random(0)
    assert has_order(6, 4, 37)
    assert find_root_of_unity(37, 1, rng) == 1
    assert {find_root_of_unity(13, 3, random.Random(s)) for s in range(40)} == {3, 9}
    with pytest.raises(ValueError):
        find_root_of_unity(37, 5, rng)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 12, 30, 48, 52])
def test_root_has_exact_order(n):
    p = select_prime(n, 10 ** 12)
    w = find_root_of_unity(p, n, random.Random(n))
    assert pow(w, n, p) == 1
    assert all(pow(w, n // q, p) != 1 for q in prime_factors(n))
    assert len({pow(w, e, p) for e in range(n)}) == n


def ctx_for(n, U=None):
    return FieldContext.for_bound(n, U or max(upm1_bound(n), u01_bound(n)), random.Random(7))


def test_eigen_init_examples():
    ctx = ctx_for(3)
    p = ctx.p
    st_ = eigen_init(CirculantSpec(Alphabet.BINARY01, Word.from_str("011")), ctx)
    assert sorted(st_.lam) == sorted([2, p - 1, p - 1])
    assert st_.lam[0] == 2
    assert eigen_init(CirculantSpec(Alphabet.BINARY01, Word.zeros(5)), ctx_for(5)).lam == [0] * 5
    assert eigen_init(CirculantSpec(Alphabet.BINARY01, Word.ones(6)), ctx_for(6)).lam == [6] + [0] * 5


def test_det_residue_examples():
    ctx = FieldContext.build(4, 37, 6)
    st_ = eigen_init(CirculantSpec(Alphabet.PM1, Word.from_str("---+")), ctx)
    assert det_residue(st_) == 16
    assert lift_residue(16, 37, 16) == 16
    ctx3 = ctx_for(3)
    assert det_residue(eigen_init(CirculantSpec(Alphabet.BINARY01, Word.from_str("011")), ctx3)) == 2
    assert det_residue(eigen_init(CirculantSpec(Alphabet.BINARY01, Word.zeros(3)), ctx3)) == 0


def test_lift_residue():
    assert lift_residue(0, 37, 16) == 0
    assert lift_residue(36, 37, 16) == -1
    with pytest.raises(BoundViolation):
        lift_residue(17, 37, 16)


def test_eigen_update_empty_and_mismatch():
    ctx = ctx_for(6)
    s = eigen_init(CirculantSpec(Alphabet.PM1, Word.from_str("001011")), ctx)
    before = list(s.lam)
    assert eigen_update(s, []).lam == before
    with pytest.raises(ValueError):
        eigen_update(s, [(0, 1, 0)])


def test_pm1_flip_adds_twice_the_column():
    ctx = ctx_for(7)
    w = Word.from_str("0001011")
    s = eigen_init(CirculantSpec(Alphabet.PM1, w), ctx)
    before = list(s.lam)
    eigen_update(s, [(2, 0, 1)])
    assert s.lam == [(b + 2 * c) % ctx.p for b, c in zip(before, ctx.power_table[2])]


@pytest.mark.parametrize("alphabet", list(Alphabet))
def test_update_along_enumeration_matches_init(alphabet):
    n = 10
    ctx = ctx_for(n)
    state = None
    prev = None
    for w, changed in iter_necklaces(n):
        if state is None:
            state = eigen_init(CirculantSpec(alphabet, w), ctx)
        else:
            changes = [(k, prev[k], w[k]) for k in range(changed, n) if prev[k] != w[k]]
            eigen_update(state, changes)
        assert state.word == w
        assert state.lam == eigen_init(CirculantSpec(alphabet, w), ctx).lam
        prev = w


def test_random_flips_keep_invariant():
    n = 12
    rng = random.Random(12)
    ctx = ctx_for(n)
    for alphabet in Alphabet:
        s = eigen_init(CirculantSpec(alphabet, Word(n, rng.getrandbits(n))), ctx)
        for step in range(10_000):
            k = rng.randrange(n)
            b = s.word[k]
            eigen_update(s, [(k, b, 1 - b)])
            if step % 997 == 0:
                assert s.lam == eigen_init(CirculantSpec(alphabet, s.word), ctx).lam
        assert s.lam == eigen_init(CirculantSpec(alphabet, s.word), ctx).lam


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("alphabet", list(Alphabet))
def test_lifted_det_equals_bareiss(n, alphabet):
    U = u01_bound(n) if alphabet is Alphabet.BINARY01 else upm1_bound(n)
    ctx = FieldContext.for_bound(n, max(U, 1))
    for v in range(1 << n):
        spec = CirculantSpec(alphabet, Word(n, v))
        d = lift_residue(det_residue(eigen_init(spec, ctx)), ctx.p, U)
        assert d == bareiss_det(spec.matrix())


@pytest.mark.parametrize("n", range(1, 13))
def test_pm1_det_divisible(n):
    ctx = ctx_for(n, upm1_bound(n))
    step = max(1, (1 << n) // 1024)
    for v in range(0, 1 << n, step):
        d = lift_residue(det_residue(eigen_init(CirculantSpec(Alphabet.PM1, Word(n, v)), ctx)),
                         ctx.p, upm1_bound(n))
        assert d % (1 << (n - 1)) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 24).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))),
       st.sampled_from(list(Alphabet)))
def test_circulant_det_matches_bareiss(nv, alphabet):
    spec = CirculantSpec(alphabet, Word(*nv))
    assert circulant_det(spec) == bareiss_det(spec.matrix())
