"""
Polynomial de Rham forms with local coefficients
================================================

For a few small simplicial sets and rank-one local systems we compute the
cohomology of the forms of weight at most W, raising W until integration
onto twisted cochains is an isomorphism on cohomology.
"""

from dgtann import LocalSystem, adr_cohomology, constant_system, sign_rep
from dgtann.groups import FiniteGroup
from dgtann.simpset import (boundary_simplex, edge_labeling_from_hom, fundamental_group_presentation, rp2_6,
                            torus_3x3, universal_labeling)

Z2 = FiniteGroup.cyclic(2)
sgn = sign_rep(Z2, [1, -1])


def sign_system(K, images):
    pres = fundamental_group_presentation(K)
    return LocalSystem(K, sgn, edge_labeling_from_hom(K, pres, Z2, images), name="sign")


# the circle with its nontrivial rank-one system
S = boundary_simplex(2)
cases = [("circle", constant_system(S)), ("circle", sign_system(S, [1]))]

# the six-vertex projective plane: pi_1 = Z/2 acts through the universal labeling
K = rp2_6()
lab = universal_labeling(K)
G = lab.group
cases.append(("RP2_6", constant_system(K)))
cases.append(("RP2_6", LocalSystem(K, sign_rep(G, [1 if g == G.identity else -1 for g in G]), lab, name="V-")))

# a torus with constant coefficients
T = torus_3x3()
cases.append(("torus", constant_system(T)))

for space, L in cases:
    rep = adr_cohomology(L.K, L, weight_cap=8)
    print("%-7s %-5s stabilized at weight %s: H = %s (cochain oracle %s)"
          % (space, L.name, rep.weight, rep.dims, rep.oracle))

# per-weight growth on the circle: the class in degree 1 needs weight 1
rep = adr_cohomology(S, cases[0][1], weight_cap=8)
for row in rep.rows:
    print("  weight %d: cochain dims %s, cohomology %s" % (row.weight, row.cochain_dims, row.cohomology))
