# %% [markdown]
# # Chains, forms and the two routes to cyclic homology
#
# A small chain in two variables goes through b, B and e.  Then the cyclic
# table for one pair is computed twice: from H^q and the truncated forms, and
# from ranks of the total complex.

# %%
import numpy as np

from modhom import (CyclicVariant, ModulusPair, connes_B, de_rham_d, hkr_e, hkr_eps,
                    hochschild_b)
from modhom.forms import format_form, parse_form
from modhom.hochschild import format_chain, parse_chain
from modhom.homology import cyclic_dims_bicomplex, cyclic_dims_formula

p = ModulusPair.of(1, 1, [2])
c = parse_chain(p, "x1^-1*y1 (x) x1^2 + (3)*[1 (x) y1]")
print("b c  =", format_chain(hochschild_b(c)))
print("B c  =", format_chain(connes_B(c)))
print("e B c =", format_form(hkr_e(connes_B(c))))
print("d e c =", format_form(de_rham_d(hkr_e(c))))

# %%
w = parse_form(p, "x1^-1*y1*dlogx1*dy1")
z = hkr_eps(w)
print(format_chain(z))
print(hkr_e(z) == w, hochschild_b(z).is_zero())

# %%
degs = [(i, k) for i in range(-2, 3) for k in range(0, 2)]
for variant in CyclicVariant:
    a = np.array([[cyclic_dims_formula(p, d, variant, n) for n in range(6)] for d in degs])
    b = np.array([[cyclic_dims_bicomplex(p, d, variant, n) for n in range(6)] for d in degs])
    print(variant.value, "agree:", bool((a == b).all()), "total:", a.sum(axis=0))
