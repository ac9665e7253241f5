# %% [markdown]
# # When is the {0,1} bound attained?
#
# Equality requires a Hadamard matrix of order n+1 with a circulant core.
# The known constructions cover primes 3 mod 4, twin-prime products and
# 2^t - 1; the remaining Hall family (4k^2 + 27 primes) already lies in the
# first family.

# %%
from circmax.bounds import u01_bound
from circmax.conjectures import circulant_core_classes, conjecture_a_status
from circmax.reference import table_lookup
from circmax.spectral import is_flat_correlation, signed_gram_first_row

for n in range(1, 54):
    s = conjecture_a_status(n, table_lookup(n, "01").abs_det)
    if s.attains_bound or s.classes:
        print(n, s.attains_bound, sorted(c.name for c in s.classes), s.consistent)

# %% [markdown]
# 39 is a product of two primes that are not twins, and misses the bound.
# 51 misses it by more than half.

# %%
print(circulant_core_classes(39), table_lookup(51, "01").abs_det * 2 < u01_bound(51))

# %% [markdown]
# Bound-attaining rows have a flat periodic autocorrelation in the +-1 image.

# %%
for n in (7, 11, 15, 9):
    w = table_lookup(n, "01").word
    print(n, w, signed_gram_first_row(w), is_flat_correlation(signed_gram_first_row(w)))
