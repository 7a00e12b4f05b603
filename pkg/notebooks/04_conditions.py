"""
The epsilon-delta conditions on finite spaces
==============================================

For each epsilon we report the largest delta such that
d(x, y) < eps + delta forces d(Tx, Ty) <= eps.
"""

from fractions import Fraction

from bvmetric import check_condition_A, check_condition_B
from bvmetric.gallery import halving_space, naturals_space

# %%
hal = halving_space(8)
rep = check_condition_A(hal.space, hal.map)
for eps, delta in list(zip(rep.epsilon_grid, rep.delta_at))[:8]:
    print(f"eps={str(eps):>8s}  delta={delta}")

# %%
# Off the default grid the truncation edge shows: just below 2^-K the largest
# delta drops under eps.
eps = Fraction(3, 4) / 2**8
print(eps, check_condition_A(hal.space, hal.map, [eps]).delta_at)

# %%
# The orbitwise condition fails on the naturals orbit of 5: d(25, 10) = 3/2
# but the next pair (10, 30) sits at distance 2.
nat = naturals_space(40)
rep = check_condition_B(nat.space, nat.map, nat.space.index("5"), [Fraction(3, 2)], horizon=6)
print(rep.holds, rep.witness)
