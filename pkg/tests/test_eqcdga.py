from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dgtann.eqcdga import (CdgaError, GradedBasis, HomotopyCandidate, PathAlgebra, PathTerm, PresentedGCdga,
                           basis_up_to_degree, constant_homotopy, free_invariant_algebra, path_compose,
                           path_evaluate, pushout_square_check, regular_iso_check, rp2_fixture, rp2_model,
                           t_cohomology, t_hom_complex, tc_hom, trivial_algebra, verify_right_homotopy)
from dgtann.groups import FiniteGroup
from dgtann.nabla import PolyForm
from dgtann.repcat import Representation, hom, oplus, regular_representation, sign_rep, tensor

Z2, S3 = FiniteGroup.cyclic(2), FiniteGroup.symmetric(3)
M = rp2_model(Z2)
ONE, VM = Representation.trivial(Z2), sign_rep(Z2, [1, -1])
VR = regular_representation(Z2).rep
t, dt = PolyForm.t, PolyForm.dt


def character_dims(A, V, W, N):
    """Independent count: dim (A^n (x) Hom(V, W))^G = (1/|G|) sum_g tr(P_g) tr(rho_Hom(g))."""
    G = A.group
    B = GradedBasis(A, N)
    H = hom(V, W)
    out = []
    for n in range(N + 1):
        total = Fraction(0)
        for g in G:
            P = B.action_matrix(g, n)
            trP = sum((P[i, i] for i in range(B.dim(n))), Fraction(0))
            trH = sum((H.mats[g][i, i] for i in range(H.dim)), Fraction(0))
            total += trP * trH
        out.append(total / len(G))
    assert all(x.denominator == 1 for x in out)
    return [int(x) for x in out]


def test_graded_basis_examples():
    assert basis_up_to_degree(trivial_algebra(Z2), 3).dims == {0: 1, 1: 0, 2: 0, 3: 0}
    B = basis_up_to_degree(M, 7)
    assert list(B.dims.values()) == [1, 0, 1, 1, 1, 1, 1, 1]
    names = [M.render({B.monomials[n][0]: 1}) for n in range(8) if B.dim(n)]
    assert names == ["1", "t", "s", "t^2", "t*s", "t^3", "t^2*s"]
    X = PresentedGCdga(Z2, [("x", 3)])
    assert basis_up_to_degree(X, 6).dim(6) == 0


def test_fixture_data():
    fx = rp2_fixture()
    A = fx.algebra
    assert A.degs == [2, 3]
    g = 1 - A.group.identity
    assert A.act(A.gen("t"), g) == {k: -v for k, v in A.gen("t").items()}
    assert A.act(A.gen("s"), g) == A.gen("s")
    assert A.d(A.gen("s")) == A.mul(A.gen("t"), A.gen("t"))
    assert fx.space.counts() == [6, 15, 10]


def test_table_rows():
    assert list(t_hom_complex(M, ONE, ONE, 7).dims.values()) == [1, 0, 0, 1, 1, 0, 0, 1]
    assert list(t_hom_complex(M, ONE, VM, 7).dims.values()) == [0, 0, 1, 0, 0, 1, 1, 0]
    assert character_dims(M, ONE, ONE, 7) == [1, 0, 0, 1, 1, 0, 0, 1]
    assert character_dims(M, ONE, VM, 7) == [0, 0, 1, 0, 0, 1, 1, 0]


def test_trivial_group_gives_plain_hom():
    E = FiniteGroup.trivial()
    A = trivial_algebra(E)
    V, W = Representation.trivial(E, 2), Representation.trivial(E, 3)
    assert t_hom_complex(A, V, W, 2).dims == {0: 6, 1: 0, 2: 0}
    assert t_cohomology(A, Representation.trivial(E), Representation.trivial(E), 3).cohomology == {0: 1, 1: 0, 2: 0, 3: 0}


def test_cohomology_examples():
    assert t_cohomology(M, ONE, ONE, 7).cohomology == {n: int(n == 0) for n in range(8)}
    assert t_cohomology(M, ONE, VM, 7).cohomology == {n: int(n == 2) for n in range(8)}
    res = t_cohomology(M, ONE, ONE, 3)
    assert res.bound == 3 and res.truncated_from == 4


@pytest.mark.parametrize("V,W", [(ONE, VM), (VM, VR), (VR, VR), (oplus(ONE, VM), VM)])
def test_hom_dims_against_character_count(V, W):
    assert list(t_hom_complex(M, V, W, 6).dims.values()) == character_dims(M, V, W, 6)


def test_additivity_and_hom_compatibility():
    for V in (ONE, VM, VR):
        for W in (ONE, VM):
            a = t_cohomology(M, V, W, 6).cohomology
            b = t_cohomology(M, ONE, hom(V, W), 6).cohomology
            assert a == b
    s = t_cohomology(M, ONE, oplus(ONE, VM), 6).cohomology
    x, y = t_cohomology(M, ONE, ONE, 6).cohomology, t_cohomology(M, ONE, VM, 6).cohomology
    assert s == {n: x[n] + y[n] for n in s}


def test_tc_hom_words():
    ctx = {"V-": VM}
    base = t_hom_complex(M, ONE, ONE, 6).dims
    assert tc_hom(M, "1", "1", 6, ctx).dims == base
    assert tc_hom(M, "tensor(V-,V-)", "1", 6, ctx).dims == base
    assert tc_hom(M, "hom(V-,1)", "V-", 6, ctx).dims == t_hom_complex(M, VM, VM, 6).dims == base


def test_regular_iso():
    assert regular_iso_check(trivial_algebra(Z2), 5).ok
    rep = regular_iso_check(M, 7)
    assert rep.ok and [r[1] for r in rep.rows] == [1, 0, 1, 1, 1, 1, 1, 1]
    assert all(r[1] == r[2] == r[3] and r[4] for r in rep.rows)
    assert regular_iso_check(free_invariant_algebra(S3, 2), 4).ok


def test_pushout():
    assert pushout_square_check(trivial_algebra(Z2), 3, {"1": ONE, "V-": VM}).ok
    assert pushout_square_check(M, 5, {"1": ONE, "V-": VM}).ok
    assert pushout_square_check(M, 4, {"Vr": VR, "1": ONE}).ok


def test_validation_errors():
    with pytest.raises(CdgaError):
        PresentedGCdga(Z2, [("x", 0)])
    with pytest.raises(CdgaError):
        # d x = x is not of degree + 1
        PresentedGCdga(Z2, [("x", 2)], {"x": {(1,): 1}})
    with pytest.raises(CdgaError):
        # H^1 != 0
        PresentedGCdga(Z2, [("u", 1)])
    with pytest.raises(CdgaError):
        # d s = t^2 but the action flips s while fixing t^2: not a dg-action
        A = PresentedGCdga(Z2, [("t", 2), ("s", 3)], validate=False)
        PresentedGCdga(Z2, [("t", 2), ("s", 3)], {"s": A.mul(A.gen("t"), A.gen("t"))},
                       {1: {"t": A.gen("t"), "s": {k: -v for k, v in A.gen("s").items()}}})
    with pytest.raises(CdgaError):
        t_hom_complex(M, Representation.trivial(S3), ONE, 2)


def test_json_round_trip():
    js = M.to_json("Z2")
    A = PresentedGCdga.from_json(js, Z2)
    assert A.degs == M.degs and A.dgen == M.dgen and A.act_gen == M.act_gen
    p = M.parse_poly([{"coeff": "3/2", "monomial": [["s", 1], ["t", 1]]}])
    # s t = t s since |t| is even
    assert p == {(1, 1): Fraction(3, 2)}


# ---------------------------------------------------------------------------
# homotopies


def homotopy_pair():
    A = PresentedGCdga(Z2, [("x", 2)], name="Qx")
    B = PresentedGCdga(Z2, [("u", 1), ("y", 2)], {"u": {(0, 1): 1}}, name="C")
    return A, B


def test_constant_homotopies():
    A, B = homotopy_pair()
    f = {"x": B.gen("y")}
    ok, problems = verify_right_homotopy(constant_homotopy(A, B, f))
    assert ok and problems == []
    Q = trivial_algebra(Z2)
    ok, _ = verify_right_homotopy(HomotopyCandidate(A, Q, {"x": {}}, {"x": {}}, {"x": {}}))
    assert ok


def test_nontrivial_homotopy_and_corruption():
    A, B = homotopy_pair()
    y, u = B.gen("y"), B.gen("u")
    P = PathAlgebra(B)
    H = {}
    for m, c in y.items():
        H[m, (1, 0)] = c
    for m, c in u.items():
        H[m, (0, 1)] = -c
    good = HomotopyCandidate(A, B, {"x": y}, {"x": {}}, {"x": H})
    assert verify_right_homotopy(good) == (True, [])
    bad = HomotopyCandidate(A, B, {"x": y}, {"x": y}, {"x": H})
    ok, problems = verify_right_homotopy(bad)
    assert not ok and problems == ["d_1 H(x) != f2(x)"]
    # dropping the dt term breaks the differential condition
    broken = {k: v for k, v in H.items() if k[1] == (1, 0)}
    ok, problems = verify_right_homotopy(HomotopyCandidate(A, B, {"x": y}, {"x": {}}, {"x": broken}))
    assert not ok and "d H(x) != H(d x)" in problems
    assert P.d(P.d(H)) == {}


def test_group_components_must_agree():
    A, B = homotopy_pair()
    with pytest.raises(CdgaError):
        verify_right_homotopy(HomotopyCandidate(A, B, {}, {}, {}, (0, 1), (0, 0)))


def test_path_compose_examples():
    I = np.eye(2, dtype=object)
    one = PolyForm.one(1)
    a = PathTerm.make(I, 0, one)
    assert path_compose(a, a) == PathTerm.make(I, 0, one)
    x = PathTerm.make(I, 1, t(1, 1))
    y = PathTerm.make(I, 0, dt(1, 1))
    # deg eta = 1, deg alpha = 1: sign -1
    assert path_compose(x, y) == PathTerm.make(-I, 1, dt(1, 1) * t(1, 1))
    first = PathTerm.make(I, 0, t(1, 1))
    second = PathTerm.make(I, 0, dt(1, 1))
    assert path_compose(first, second).omega == t(1, 1) * dt(1, 1)
    # endpoint evaluation is multiplicative
    f, g = PathTerm.make([[1, 2], [0, 1]], 0, t(1, 1) * 3), PathTerm.make([[0, 1], [1, 0]], 0, t(1, 0))
    for i in (0, 1):
        assert (path_evaluate(path_compose(f, g), i) == path_evaluate(g, i) @ path_evaluate(f, i)).all()


def test_graded_commutativity_in_M():
    B = GradedBasis(M, 7)
    for n1 in range(4):
        for n2 in range(4):
            for m1 in B.monomials[n1]:
                for m2 in B.monomials[n2]:
                    a, b = {m1: Fraction(1)}, {m2: Fraction(1)}
                    assert M.mul(a, b) == {k: (-1) ** (n1 * n2) * v for k, v in M.mul(b, a).items()}


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=60)
def test_leibniz_in_M(i, j, k):
    a = M.power(M.gen("t"), i)
    b = M.mul(M.power(M.gen("s"), min(k, 1)), M.power(M.gen("t"), j))
    lhs = M.d(M.mul(a, b))
    rhs = dict(M.mul(M.d(a), b))
    sign = (-1) ** (2 * i)
    for key, v in M.mul(a, M.d(b)).items():
        rhs[key] = rhs.get(key, 0) + sign * v
    assert lhs == {key: v for key, v in rhs.items() if v}


def test_tensor_words_collapse():
    assert list(t_hom_complex(M, tensor(VM, VM), ONE, 5).dims.values()) == list(t_hom_complex(M, ONE, ONE, 5).dims.values())
