# %% [markdown]
# # Log poles on the affine line
#
# With one divisor variable and r = 1 the forms allowed near the divisor are
# the log forms, so the class of dlog x survives in cohomology.  Multidegree 0
# carries both the constant 1 and dlog x; every other multidegree is acyclic.

# %%
import numpy as np

from modhom import CyclicVariant, ModulusPair, build_forms_complex, cohomology_dims
from modhom.homology import cyclic_dims_formula

p = ModulusPair.of(1, 0, [1])
for deg in range(-1, 4):
    cx = build_forms_complex(p, (deg,))
    print(deg, [cx.dim(q) for q in range(2)], cohomology_dims(cx))

# %% [markdown]
# Raising the multiplicity lets x^-1 in.  Its differential is -x^-1 dlog x,
# an isomorphism, so the new multidegree adds nothing to cohomology.

# %%
q = ModulusPair.of(1, 0, [2])
print(build_forms_complex(q, (-1,)).diffs[0].to_dense())

# %% [markdown]
# Periodic cyclic homology then sees H^0 + H^1 in every degree.

# %%
table = np.array([[cyclic_dims_formula(p, (d,), CyclicVariant.HP, n) for n in range(7)]
                  for d in range(-1, 3)])
print(table)
