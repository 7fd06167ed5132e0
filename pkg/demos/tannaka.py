"""
Recovering a finite group from its representations
===================================================

The tensor automorphisms of the forgetful functor on rational
representations are computed on the regular representation; they form a
group isomorphic to the one we started with.
"""

from dgtann import tensor_automorphisms
from dgtann.groups import FiniteGroup, is_homomorphism

groups = {
    "Z/2": FiniteGroup.cyclic(2),
    "Z/3": FiniteGroup.cyclic(3),
    "Z/2 x Z/2": FiniteGroup.cyclic(2).direct_product(FiniteGroup.cyclic(2)),
    "S3": FiniteGroup.symmetric(3),
}

for name, G in groups.items():
    res = tensor_automorphisms(G)
    ok = is_homomorphism(G, res.group, list(res.iso)) and len(set(res.iso)) == len(G)
    print("%-10s |Aut| = %d, g -> phi(g) is %san isomorphism" % (name, res.order, "" if ok else "NOT "))

# the automorphism attached to a transposition of S3, as a matrix on Q[S3]
G = groups["S3"]
res = tensor_automorphisms(G)
g = G.index(G.names[1])
for row in res.automorphisms[res.iso[g]]:
    print(" ".join("%2s" % x for x in row))
