"""Shared small fixtures for the test suites."""

from functools import lru_cache

from dgtann.derham import LocalSystem, constant_system
from dgtann.groups import FiniteGroup
from dgtann.repcat import Representation, sign_rep
from dgtann.simpset import (FinSimplicialSet, edge_labeling_from_hom, fundamental_group_presentation, rp2_6,
                            universal_labeling)

Z2 = FiniteGroup.cyclic(2)

MOBIUS_FACETS = [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4), (0, 1, 4)]


def sign_labelings(K):
    """All Z/2 edge labelings coming from homomorphisms pi_1 -> Z/2 (brute force over generator images)."""
    pres = fundamental_group_presentation(K)
    out = []
    for mask in range(2 ** pres.ngens):
        images = [(mask >> k) & 1 for k in range(pres.ngens)]
        ok = all(sum(images[g] for g, _ in w) % 2 == 0 for w in pres.relations)
        if ok:
            out.append(edge_labeling_from_hom(K, pres, Z2, images))
    return out


@lru_cache(maxsize=None)
def mobius():
    """Five-vertex Mobius band with the rank-one systems 1 and sign (pi_1 = Z, generator -> g)."""
    K = FinSimplicialSet.from_facets(MOBIUS_FACETS)
    lab = sign_labelings(K)[1]
    one = LocalSystem(K, Representation.trivial(Z2), lab, name="1")
    sgn = LocalSystem(K, sign_rep(Z2, [1, -1]), lab, name="sign")
    return K, {"1": one, "sign": sgn}


@lru_cache(maxsize=None)
def rp2_systems():
    K = rp2_6()
    lab = universal_labeling(K)
    G = lab.group
    one = LocalSystem(K, Representation.trivial(G), lab, name="1")
    sgn = LocalSystem(K, sign_rep(G, [1 if g == G.identity else -1 for g in G]), lab, name="V-")
    return K, {"1": one, "V-": sgn}


def constant(K):
    return constant_system(K)
