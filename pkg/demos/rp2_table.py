"""
The equivariant model of the real projective plane
==================================================

The cdga M over Z/2 has generators t (degree 2) and s (degree 3) with
d s = t^2; the generator of Z/2 flips t and fixes s.  We print its graded
basis and the Hom complexes of the equivariant category between the trivial
representation 1 and the sign representation V-.
"""

from dgtann import Representation, rp2_model, sign_rep, t_cohomology
from dgtann.eqcdga import basis_up_to_degree
from dgtann.groups import FiniteGroup

Z2 = FiniteGroup.cyclic(2)
M = rp2_model(Z2)
one, vm = Representation.trivial(Z2), sign_rep(Z2, [1, -1])
N = 7

# graded basis of M up to degree N
B = basis_up_to_degree(M, N)
print("degree   " + " ".join("%2d" % n for n in range(N + 1)))
print("M        " + " ".join("%2d" % B.dim(n) for n in range(N + 1)))

# Hom(1, 1) is the invariant part of M, Hom(1, V-) the anti-invariant part
for name, W in (("1", one), ("V-", vm)):
    res = t_cohomology(M, one, W, N)
    print("%-9s" % ("Hom(1,%s)" % name) + " ".join("%2d" % res.cochain_dims[n] for n in range(N + 1)))
    print("  H      " + " ".join("%2d" % res.cohomology[n] for n in range(N + 1)))

# The cohomology is Q in degree 0 for the trivial coefficients and Q in degree 2
# for the sign coefficients, matching H*(RP^2; Q) and H*(RP^2; Q_-).
