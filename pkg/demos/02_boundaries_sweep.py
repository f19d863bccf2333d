"""
Decision boundaries as a scalar quantizer
=========================================

Adjacent scales tie at their geometric mean, so a sorted dictionary cuts the
positive axis into cells. Here we sweep x on a log grid and watch the cell
index and the margin.
"""

import numpy as np
from fractions import Fraction as F

from ratioref import Finite, boundaries, classify, stability_radius
from ratioref.meaning import margin_of
from ratioref.oracle import scan_costs

d = Finite.from_scales([F(1, 4), 1, 4])
b = boundaries(d)
print("boundaries:", [str(m) for m in b.interior])

xs = np.geomspace(1 / 16, 16, 17)
for x in xs:
    cell = classify(float(x), b)
    m = margin_of(scan_costs(float(x), d))
    print(f"x = {x:8.4f}  cell {cell!s:>6}  margin {float(m):.5f}")

# margins collapse to zero at the boundaries, which is where stability fails
for x in (F(3, 2), F(2), F(3)):
    cert = stability_radius(x, b)
    print(f"x = {x}: stable={cert.stable} radius={cert.radius} "
          f"perturbation budget={cert.max_perturbation}")
