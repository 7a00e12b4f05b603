"""
Certifying the polygon inequality on the example spaces
========================================================

Each gallery family is a finite truncation of a countable example. We run
the exhaustive verifier against the class each example is claimed to be in,
and compute the least admissible s for the same v.
"""

from bvmetric import min_s, verify_polygon
from bvmetric.axioms import max_ratio
from bvmetric.gallery import naturals_space, reciprocal_space, union_space, unit_sequence_space

# %%
# One line per family: claimed (v, s), verdict, least s, tuples enumerated.
for inst in (union_space(12), naturals_space(40), reciprocal_space(10), unit_sequence_space(25)):
    v, s = inst.claim.v, inst.claim.s
    res = verify_polygon(inst.space, v, s)
    print(f"{inst.name:20s} N={inst.size:3d}  claim b_{v}({s})  {res.verdict:9s}"
          f"  min_s={min_s(inst.space, v)}  tuples={res.tuples_checked}")

# %%
# The union space fails. Index gaps of 1 and 3 both cost 1/2, so a chain of
# such steps stays cheap while the endpoint distance grows linearly.
inst = union_space(12)
best = max_ratio(inst.space, 3)
lab = inst.space.labels
x, y = best.endpoints
print("worst configuration:", lab[x], [lab[u] for u in best.chain], lab[y],
      "ratio", best.ratio)

# %%
# The least s keeps growing with the truncation size.
for N in range(5, 17):
    print(N, min_s(union_space(N).space, 3))
