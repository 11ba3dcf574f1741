"""
A shared chart for two mirrors
==============================

Mirrors of (W, G) and (W', G) with the same weights share the torus of the
lattice M and one Laurent polynomial on it.  We print that polynomial, the
monomial maps from each side's Cox coordinates, and test them at random
rational points.
"""

from bhkmirror import DiagonalGroup, common_chart, exponential_element, exponent_matrix, parse_polynomial
from bhkmirror import rational_point_probe, weight_system

fermat = exponent_matrix(parse_polynomial("x0^5+x1^5+x2^5+x3^5+x4^5"))
mixed = exponent_matrix(parse_polynomial("x0^4*x1+x1^5+x2^5+x3^5+x4^5"))
g = DiagonalGroup(5, [exponential_element(weight_system(fermat))])

atlas = common_chart(fermat, mixed, g)
print("chart:", atlas.chart_text())
for side, dehom in enumerate(atlas.dehom_maps):
    print(f"side {side}:")
    for line in dehom.describe():
        print("   ", line)

probe = rational_point_probe(atlas, 50, seed=11)
print(f"{probe['agreements']}/{probe['samples']} points agree (t = u^{probe['power']})")
