"""
Routing a large ratio through intermediate scales
=================================================

Going from 4 to 1/4 in one hop costs J(16). Stopping at the geometric mean
costs two J(4) hops, and splitting the log ratio into k equal pieces keeps
shrinking the total like (log 16)**2 / (2k).
"""

import math
from fractions import Fraction as F

from ratioref import Finite, Interval, chain, mediate, mediation_gain

plan = mediate(4, F(1, 4), Interval(F(1, 2), 2))
print("direct", plan.direct_cost, "via", plan.chosen[0], "->", plan.total_cost,
      "gain", plan.gain)

# with only 2 and 8 on offer, the one closer to b_geo = 1 in log distance wins
plan = mediate(4, F(1, 4), Finite.from_scales([2, 8]))
print("mediators {2, 8}: chose", plan.chosen, "total", plan.total_cost)

print("gain formula at x = 16:", mediation_gain(16))

t = math.log(16)
for k in (1, 2, 4, 8, 16, 64, 385):
    c = chain(4, F(1, 4), k)
    print(f"k = {k:3d}  total {float(c.total_cost):.6f}  "
          f"t^2/(2k) = {t * t / (2 * k):.6f}")
