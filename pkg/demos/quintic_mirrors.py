"""
Three quintics with the same weights
====================================

The Fermat, chain and mixed quintics all have weights (1,1,1,1,1) and
degree 5.  With G = <j> each has a BHK mirror, and the three mirrors look
quite different.
"""

from bhkmirror import DiagonalGroup, dual_group, exponential_element, exponent_matrix, parse_polynomial
from bhkmirror import toric_data, transpose, weight_system

quintics = {
    "fermat": "x0^5+x1^5+x2^5+x3^5+x4^5",
    "chain": "x0^4*x1+x1^4*x2+x2^4*x3+x3^4*x4+x4^5",
    "mixed": "x0^4*x1+x1^5+x2^5+x3^5+x4^5",
}

for name, text in quintics.items():
    e = exponent_matrix(parse_polynomial(text))
    g = DiagonalGroup(e.size, [exponential_element(weight_system(e))])
    wt = weight_system(transpose(e))
    gt = dual_group(e, g)
    td = toric_data(e, g)
    print(f"{name}: {text}")
    print(f"  transpose weights {wt.c}, degree {wt.d}")
    print(f"  dual group order {gt.order}, invariants {gt.invariants}")
    # the mirror ambient is P(weights) / (M / <mu_i>)
    print(f"  mirror ambient P{td.ambient.relation_weights} / {td.ambient.quotient_invariants or 'trivial'}")
