"""
Random finite spaces: fixed points and tight constants
=======================================================
"""

from collections import Counter
from fractions import Fraction

from bvmetric import find_fixed_points, min_s, picard_iterate, verify_polygon
from bvmetric.gallery import random_contractive_map, random_space

# %%
# Every contractive map on a finite space has exactly one fixed point and
# every orbit reaches it.
arrivals = Counter()
for seed in range(100):
    sp = random_space(4 + seed % 5, seed).space
    T = random_contractive_map(sp, seed + 10_000)
    (z,) = find_fixed_points(sp, T)
    for x0 in range(sp.n):
        arrivals[picard_iterate(sp, T, x0, sp.n + 1).points.index(z)] += 1
print(sorted(arrivals.items()))

# %%
# min_s is tight: certified at its value, refuted just below.
sp = random_space(6, 3).space
for v in (1, 2, 3):
    m = min_s(sp, v)
    below = verify_polygon(sp, v, m * (1 - Fraction(1, 1000))).verdict if m > 1 else "-"
    print(v, m, verify_polygon(sp, v, m).verdict, below)
