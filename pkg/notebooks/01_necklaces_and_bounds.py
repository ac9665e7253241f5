# %% [markdown]
# # Necklaces and determinant bounds
#
# A circulant is fixed by its first row, and rotating that row only permutes
# rows of the matrix, so |det| depends on the rotation class alone.  The
# search therefore walks one representative per class: the necklace, the
# lexicographically least rotation.

# %%
from circmax.bounds import format_ratio, u01_bound, upm1_bound
from circmax.words import Word, is_necklace, iter_necklaces, necklace_count

print([str(w) for w, _ in iter_necklaces(4)])
print(is_necklace(Word.from_str("0010111")), is_necklace(Word.from_str("1010")))

# %% [markdown]
# The enumeration also reports the first index that changed, which is what
# lets the eigenvalues be updated in place.  On average only about two
# symbols flip per step.

# %%
n = 20
prev, flips = None, []
for w, changed in iter_necklaces(n):
    if prev is not None:
        flips.append(bin(w.value ^ prev.value).count("1"))
    prev = w
print(f"K({n}) = {necklace_count(n)}, 2^{n}/{n} = {2 ** n / n:.0f}")
print(f"mean symbols changed: {sum(flips) / len(flips):.4f}")

# %% [markdown]
# Upper bounds: the {0,1} bound at order n comes from the {+-1} bound at
# order n+1, floored in exact integer arithmetic.

# %%
for n in (7, 8, 11, 13, 16):
    print(n, u01_bound(n), upm1_bound(n), format_ratio(u01_bound(n) - 1, u01_bound(n)))
