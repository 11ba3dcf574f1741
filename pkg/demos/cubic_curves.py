"""
Every invertible cubic in three variables
=========================================

Enumerate the invertible polynomials with weights (1,1,1) and degree 3,
list the CY-type groups of each, and check the mirror ambient claims for
every pair.
"""

from bhkmirror import atom_decomposition, enumerate_invertible, verify_mirror_ambient
from bhkmirror.invertible_poly import WeightSystem
from bhkmirror.multimirror import cy_type_groups

for e in enumerate_invertible(WeightSystem((1, 1, 1), 3)):
    kinds = "+".join(a.kind for a in atom_decomposition(e).atoms)
    groups = cy_type_groups(e)
    ok = all(verify_mirror_ambient(e, g).verified for g in groups)
    print(f"{str(e.to_polynomial()):28s} {kinds:20s} {len(groups)} groups, ambient checks {'ok' if ok else 'FAILED'}")
