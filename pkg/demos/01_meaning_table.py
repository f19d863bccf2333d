"""
Meanings over a three-object dictionary
=======================================

Costs are ratios run through J(x) = (x + 1/x)/2 - 1, so every number below
is an exact fraction.
"""

from fractions import Fraction as F

from ratioref import Finite, mean, mean_total, is_symbol
from ratioref.oracle import scan_costs

# three objects at scales 1/4, 1 and 4
d = Finite.from_scales([F(1, 4), 1, 4])

print(f"{'x':>6} | {'o1':>10} {'o2':>10} {'o3':>10} | meaning  margin")
for x in (F(3, 10), F(3, 2), F(3)):
    costs = scan_costs(x, d)
    r = mean(x, d)
    cells = " ".join(f"{str(c):>10}" for c in costs)
    print(f"{str(x):>6} | {cells} | {','.join(r.minimizers):<8} {r.margin}")

# Sitting exactly between two scales (in the geometric sense) gives a tie.
r = mean(F(1, 2), d)
print("\nx = 1/2 ->", r.minimizers, "cost", r.optimal_cost)

# The total-cost variant charges for both ends as well as the mismatch.
r = mean_total(2, Finite.from_scales([1, 2]))
print("total-cost meaning of 2 over {1, 2}:", r.minimizers, r.optimal_cost)

# A configuration is a symbol when it means the object and is cheaper than it.
print("2 symbolises the object at 4:", is_symbol(2, "o1", Finite.from_scales([4])))
