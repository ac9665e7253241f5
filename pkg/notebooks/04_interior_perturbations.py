# %% [markdown]
# # Moving one entry off the corners
#
# Treat a_0 as a real variable x.  The determinant is a polynomial in x,
# recovered exactly by interpolation.  For a few orders, pushing a_0 into
# the interior beats the best corner.

# %%
from fractions import Fraction

from circmax.conjectures import (perturbation_scan, ura_chain, ura_det_closed,
                                 ura_local_max)
from circmax.engine import SearchConfig, search

for n, alphabet in [(9, "01"), (10, "01"), (9, "pm1")]:
    r = search(n, alphabet, config=SearchConfig(keep_all=True))
    for f in perturbation_scan(n, alphabet, r.achievers, r.max_abs_det):
        x, v = f.witness
        print(n, alphabet, f.base_word, "slope", f.derivative_inward, "x", x, float(v))

# %% [markdown]
# The quadratic-residue circulant with free corner entry has a closed-form
# determinant, maximised strictly inside (0, 1).

# %%
x3, gain = ura_local_max(3)
print(round(x3, 4), float(ura_det_closed(13, Fraction(x3))), float(ura_det_closed(13, Fraction(1, 2))))
print(ura_chain(13, search(13, "01").max_abs_det))
