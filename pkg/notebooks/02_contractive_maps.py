"""
Contractivity and fixed points of the example maps
===================================================
"""

from bvmetric import check_contractive, find_fixed_points
from bvmetric.gallery import naturals_space, reciprocal_space, unit_sequence_space

# %%
# The constant map on the reciprocal space is contractive and fixes 1/4.
rec = reciprocal_space(10)
print(check_contractive(rec.space, rec.map).holds,
      [rec.space.labels[i] for i in find_fixed_points(rec.space, rec.map)])

# %%
# On the naturals space the published formulas do not give a contractive map:
# 10 and 11 are both >= 10, so they sit at distance 1/10, but their images
# 30 and 10 are at distance 2.
nat = naturals_space(40)
rep = check_contractive(nat.space, nat.map)
print(len(rep.violations), "violating pairs")
for x, y, before, after in rep.violations[:5]:
    print(f"  d({nat.space.labels[x]}, {nat.space.labels[y]}) = {before}  ->  {after}")
print("fixed points:", find_fixed_points(nat.space, nat.map))

# %%
# The index shift on unit sequences is contractive where it is defined on the
# truncation, and has no fixed point.
uns = unit_sequence_space(25)
print(check_contractive(uns.space, uns.map).holds, uns.map.partial,
      find_fixed_points(uns.space, uns.map))
