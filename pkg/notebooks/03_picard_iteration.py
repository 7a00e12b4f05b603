"""
Picard orbits, Cauchy windows and descent diagnostics
======================================================
"""

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from bvmetric import cauchy_check, orbit_diagnostics, picard_iterate
from bvmetric.gallery import halving_space, naturals_space

# %%
# The naturals orbit of 5 falls into the 2-cycle 10 <-> 30 and is not Cauchy.
nat = naturals_space(40)
tr = picard_iterate(nat.space, nat.map, nat.space.index("5"), 100)
print([nat.space.labels[p] for p in tr.points], "cycle", tr.cycle)
print(cauchy_check(nat.space, tr, Fraction(1), 0, 3))

# %%
# The halving orbit from 1 reaches the fixed point 0 after K + 1 steps. The
# step distances halve, except at the last pair of the truncation, which is
# mapped isometrically onto (2^-K, 0).
hal = halving_space(16)
tr = picard_iterate(hal.space, hal.map, hal.space.index("1"), 100)
diag = orbit_diagnostics(hal.space, tr)
print("gap1 tail:", [str(g) for g in diag.gap1[-4:]])
print("flags:", diag.gap1_decreasing, diag.gap1_vanishing, diag.gap2_vanishing,
      diag.s_n_strictly_decreasing_until_fixed)

# %%
fig, ax = plt.subplots()
ax.semilogy([float(g) for g in diag.gap1 if g], "o-", label="d(x_n, x_n+1)")
ax.semilogy([float(g) for g in diag.to_fixed if g], "s-", label="d(x_n, 0)")
ax.set_xlabel("n")
ax.legend()
fig.savefig("halving_orbit.png")
