# %% [markdown]
# # Repletion of amalgamated sums
#
# Two copies of N glued over 0 form N^2, whose repletion along the sum map is
# {(g0, g1) in Z^2 : g0 + g1 >= 0}.  The iso sends it to N + Z.

# %%
from modhom import FgAbMonoid, MonoidMap, repletion_iso
from modhom.linalg import IntMatrix

n_mon = FgAbMonoid(1, 0)
rep = repletion_iso(n_mon, MonoidMap.zero(FgAbMonoid(0, 0), n_mon), 2)
for g in [((-1,), (3,)), ((2,), (-2,)), ((0,), (5,))]:
    image = rep.forward(g)
    print(g, "->", image, "->", rep.backward(image))

# %% [markdown]
# Gluing over a Z that lands on twice the group generator leaves Z/2 + Z.

# %%
m = FgAbMonoid(1, 1)
phi = MonoidMap(FgAbMonoid(0, 1), m, IntMatrix([[0], [2]], 1))
rep = repletion_iso(m, phi, 3)
print(rep.invariant_factors)
print(rep.forward([(1, 0), (0, 1), (0, 1)]))
