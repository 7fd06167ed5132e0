import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dgtann.groups import FiniteGroup
from dgtann.repcat import (RepError, Representation, dual, equivariant_maps, hom, hom_dim, oplus, phi_embedding, qeye,
                           qequal, qrank, regular_representation, sign_rep, tensor, tensor_automorphisms)
from dgtann.simpset import BudgetExceeded

Z2, Z3, S3 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.symmetric(3)
K4 = Z2.direct_product(Z2)


def perm_of(G, a):
    n = 3
    return tuple(range(n)) if G.names[a] == "e" else tuple(int(c) for c in G.names[a])


def standard_rep(G=S3):
    """2-dim irreducible: the sum-zero part of the permutation rep, basis e0-e1, e1-e2."""
    mats = []
    for a in G:
        p = perm_of(G, a)
        cols = []
        for b in ([1, -1, 0], [0, 1, -1]):
            v = [0, 0, 0]
            for i in range(3):
                v[p[i]] += b[i]
            cols.append([v[0], -v[2]])      # coordinates x b1 + y b2 = (x, y - x, -y)
        mats.append(np.array(cols, dtype=object).T)
    return Representation(G, 2, mats, name="std")


def sign_of_perm(p):
    return (-1) ** sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def irreducibles(G):
    out = [Representation.trivial(G)]
    if G is Z2:
        out.append(sign_rep(Z2, [1, -1]))
    if G is Z3:
        # rotation by 120 degrees in the basis where it is integral
        r = np.array([[0, -1], [1, -1]], dtype=object)
        out.append(Representation.from_generators(Z3, {"g": r}, name="rot"))
    if G is S3:
        out.append(sign_rep(S3, [sign_of_perm(perm_of(S3, a)) for a in S3]))
        out.append(standard_rep())
    return out


def test_rep_axioms_checked():
    with pytest.raises(RepError):
        Representation(Z2, 1, [qeye(1), np.array([[2]], dtype=object)])
    for G in (Z2, Z3, S3):
        for V in irreducibles(G):
            assert V.check()


def test_tensor_hom_examples():
    Vm = sign_rep(Z2, [1, -1])
    one = Representation.trivial(Z2)
    assert all(qequal(a, b) for a, b in zip(tensor(one, Vm).mats, Vm.mats))
    assert all(qequal(m, qeye(1)) for m in tensor(Vm, Vm).mats)
    assert all(qequal(a, b) for a, b in zip(hom(Vm, one).mats, Vm.mats))
    assert oplus(Vm, one).dim == 2
    with pytest.raises(RepError):
        tensor(Vm, Representation.trivial(Z3))


def test_regular_representation():
    assert regular_representation(FiniteGroup.trivial()).rep.dim == 1
    R = regular_representation(Z2)
    assert qequal(R.rep.mats[1], np.array([[0, 1], [1, 0]], dtype=object))
    R = regular_representation(S3)
    assert R.rep.character() == (6, 0, 0, 0, 0, 0)
    for a in S3:
        for b in S3:
            assert qequal(R.rep.mats[a] @ R.right[b], R.right[b] @ R.rep.mats[a])


def test_regular_action_formula():
    # [rho(g) alpha](x) = alpha(x g)
    G = S3
    R = regular_representation(G).rep
    alpha = np.array([Fraction(k + 1) for k in range(6)], dtype=object)
    for g in G:
        moved = R.mats[g] @ alpha
        for x in G:
            assert moved[x] == alpha[G.mul(x, g)]


@pytest.mark.parametrize("G", [Z2, Z3, S3])
def test_phi_embedding(G):
    for V in irreducibles(G):
        ph = phi_embedding(V)
        m = ph.morphism.matrix
        assert qrank(m) == V.dim
        assert qequal(ph.retraction @ m, qeye(V.dim))
        for g in G:
            assert qequal(m @ V.mats[g], ph.morphism.target.mats[g] @ m)
    std = standard_rep()
    assert qrank(phi_embedding(std).morphism.matrix) == 2


def test_phi_embedding_of_trivial_is_constants():
    ph = phi_embedding(Representation.trivial(Z3))
    assert [ph.morphism.matrix[i, 0] for i in range(3)] == [1, 1, 1]


@pytest.mark.parametrize("G,order,abelian", [(FiniteGroup.trivial(), 1, True), (Z2, 2, True), (Z3, 3, True),
                                             (K4, 4, True), (S3, 6, False)])
def test_tannaka(G, order, abelian):
    res = tensor_automorphisms(G)
    assert res.order == order
    assert res.group.is_abelian() == abelian
    assert G.find_isomorphism(res.group) is not None
    # phi_G(g) phi_G(h) = phi_G(gh)
    for a in G:
        for b in G:
            assert res.iso[G.mul(a, b)] == res.group.mul(res.iso[a], res.iso[b])


def test_tannaka_against_brute_force():
    # an independent count: algebra automorphisms of Q^G permute the deltas;
    # those commuting with all right translations (which span End_G(V_r)) form a copy of G
    for G in (Z2, Z3, K4, S3):
        R = regular_representation(G)
        n = len(G)
        hits = []
        for p in itertools.permutations(range(n)):
            P = np.zeros((n, n), dtype=object)
            for i in range(n):
                P[p[i], i] = 1
            if all(qequal(P @ Rg, Rg @ P) for Rg in R.right):
                hits.append(P)
        assert len(hits) == n
        res = tensor_automorphisms(G)
        assert sorted(map(lambda m: m.tolist(), hits)) == sorted(map(lambda m: m.tolist(), res.automorphisms))


def test_tannaka_budget():
    with pytest.raises(BudgetExceeded):
        tensor_automorphisms(FiniteGroup.symmetric(4), budget=10)


def test_json_round_trip():
    V = standard_rep()
    W = Representation.from_json(V.to_json(), S3)
    assert all(qequal(a, b) for a, b in zip(V.mats, W.mats))
    # generators only
    W = Representation.from_json({"group": "Z3", "dim": 2, "matrices": {"g": [["0", "-1"], ["1", "-1"]]}}, Z3)
    assert W.check()


def all_irreps():
    return [(G, V) for G in (Z2, Z3, S3) for V in irreducibles(G)]


reps_by_group = {G: irreducibles(G) for G in (Z2, Z3, S3)}


@st.composite
def triples(draw):
    G = draw(st.sampled_from([Z2, Z3, S3]))
    pick = st.sampled_from(reps_by_group[G])
    U, V, W = draw(pick), draw(pick), draw(pick)
    if draw(st.booleans()):
        U = oplus(U, draw(pick))
    return U, V, W


@given(triples())
@settings(max_examples=60)
def test_tensor_hom_adjunction(uvw):
    U, V, W = uvw
    assert hom_dim(tensor(U, V), W) == hom_dim(U, hom(V, W))
    assert hom_dim(V, W) == hom_dim(Representation.trivial(V.group), hom(V, W))
    assert hom(V, W).dim == dual(V).dim * W.dim


def test_schur_orthogonality():
    for G in (Z2, Z3, S3):
        irr = irreducibles(G)
        for i, V in enumerate(irr):
            for j, W in enumerate(irr):
                # over Q the Z/3 rotation is irreducible with End = Q(omega) of dimension 2
                expected = (2 if V.name == "rot" else 1) if i == j else 0
                assert hom_dim(V, W) == expected
        # regular rep contains each irreducible dim(V) times
        Vr = regular_representation(G).rep
        for V in irr:
            assert hom_dim(V, Vr) == V.dim
        assert len(equivariant_maps(Vr, Vr)) == len(G)
