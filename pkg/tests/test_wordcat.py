from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dgtann.groups import FiniteGroup
from dgtann.repcat import Representation, hom, qequal, qeye, sign_rep, tensor
from dgtann.simpset import BudgetExceeded
from dgtann.wordcat import (ONE, ZERO, DgGraph, EdgeComplex, Word, WordError, boxtimes_compose, count_words,
                            element_degree, evaluate_word, free_compose, free_dgcat_hom, free_differential,
                            identity_element, parse_word, word_depth, words_up_to_depth)

Z2 = FiniteGroup.cyclic(2)
Vm = sign_rep(Z2, [1, -1])
CTX = {"V-": Vm, "V": Vm}


def test_parse_and_print():
    w = parse_word("tensor(V-, hom(1, oplus(V-,0)))")
    assert str(w) == "tensor(V-,hom(1,oplus(V-,0)))"
    assert parse_word(str(w)) == w
    assert w.leaves() == ["V-", "1", "V-", "0"]
    for bad in ("tensor(V-)", "hom(1,1", "1 1", ")", "tensor(x,y)"):
        with pytest.raises(WordError):
            parse_word(bad, alphabet={"V-"})


def test_evaluate_examples():
    r = evaluate_word(CTX, ONE, Z2)
    assert r.dim == 1 and all(qequal(m, qeye(1)) for m in r.mats)
    r = evaluate_word(CTX, parse_word("tensor(V-,V-)"))
    assert r.dim == 1 and all(qequal(m, qeye(1)) for m in r.mats)
    assert evaluate_word(CTX, parse_word("hom(0,V)")).dim == 0
    with pytest.raises(WordError):
        evaluate_word(CTX, Word.atom("W"))


def test_depth_and_counts():
    assert word_depth(ONE) == 0
    assert word_depth(parse_word("hom(tensor(a,a),a)")) == 2
    assert count_words(1, 0) == 3
    assert count_words(1, 1) == 3 * 9 + 3 == 30
    assert len(words_up_to_depth(["a"], 1)) == 30
    assert len(words_up_to_depth(["a", "b"], 1)) == 3 * 16 + 4
    words = words_up_to_depth(["a"], 2)
    assert len(words) == count_words(1, 2) == 2703
    assert max(word_depth(w) for w in words) == 2
    with pytest.raises(BudgetExceeded):
        words_up_to_depth(["a", "b"], 3)


def test_filtration_inclusions_preserve_evaluation():
    # every word of depth <= 1 is also a word of depth <= 2, with the same value
    small = set(words_up_to_depth(["V"], 1))
    big = set(words_up_to_depth(["V"], 2))
    assert small <= big
    for w in sorted(small, key=str)[:40]:
        a = evaluate_word(CTX, w, Z2)
        assert a.dim == evaluate_word(CTX, parse_word(str(w)), Z2).dim


def test_free_hom_examples():
    g = DgGraph(["v"], {})
    assert free_dgcat_hom(g, "v", "v", 3).dims == {0: 1}
    g = DgGraph(["v"], {("v", "v"): EdgeComplex.simple({0: ["a"]})})
    assert free_dgcat_hom(g, "v", "v", 3).dims == {0: 4}
    g = DgGraph(["v", "w"], {("v", "w"): EdgeComplex.simple({1: ["e"]})})
    h = free_dgcat_hom(g, "v", "w", 2)
    assert h.dims == {0: 0, 1: 1}
    assert free_dgcat_hom(g, "w", "v", 2).dims == {0: 0}


def test_acyclic_edge_gives_acyclic_paths():
    # a single edge complex a -> da (degrees 0, 1) is acyclic; so is every path tensor
    g = DgGraph(["v", "w"], {("v", "w"): EdgeComplex.simple({0: ["a"], 1: ["b"]}, {"a": {"b": 1}}),
                             ("w", "v"): EdgeComplex.simple({0: ["c"]})})
    h = free_dgcat_hom(g, "v", "w", 3)
    assert set(h.cohomology().values()) == {0}


def adjacency_count(g, v, w, L, ranks):
    """Independent dimension count through matrix powers of the graded adjacency."""
    idx = {x: i for i, x in enumerate(g.vertices)}
    n = len(idx)
    # polynomial entries: coefficient list by degree
    top = 8
    A = np.zeros((n, n, top), dtype=int)
    for (a, b), ec in g.edges.items():
        for lab, d in ec.degrees.items():
            A[idx[b], idx[a], d] += 1
    P = np.zeros((n, n, top), dtype=int)
    for i in range(n):
        P[i, i, 0] = 1
    total = np.zeros(top, dtype=int)
    if v == w:
        total[0] += 1
    for _ in range(L):
        Q = np.zeros_like(P)
        for d1 in range(top):
            for d2 in range(top - d1):
                Q[:, :, d1 + d2] += A[:, :, d1] @ P[:, :, d2]
        P = Q
        total += P[idx[w], idx[v]]
    return {d: int(total[d]) for d in range(top) if total[d] or d <= max(ranks, default=0)}


def test_dims_match_adjacency_oracle():
    g = DgGraph(["u", "v", "w"], {
        ("u", "v"): EdgeComplex.simple({0: ["a"], 1: ["b"]}, {"a": {"b": 1}}),
        ("v", "u"): EdgeComplex.simple({1: ["c"]}),
        ("v", "w"): EdgeComplex.simple({0: ["x", "y"], 2: ["z"]}),
        ("u", "u"): EdgeComplex.simple({0: ["l"]}),
    })
    for v in g.vertices:
        for w in g.vertices:
            h = free_dgcat_hom(g, v, w, 3)
            oracle = adjacency_count(g, v, w, 3, h.dims)
            assert {d: n for d, n in h.dims.items() if n} == {d: n for d, n in oracle.items() if n}


def test_koszul_differential_sign():
    # d(b (x) a) with |b| = 1: d(b) (x) a + (-1)^1 b (x) d(a)
    g = DgGraph(["u", "v", "w"], {
        ("u", "v"): EdgeComplex.simple({0: ["a"], 1: ["da"]}, {"a": {"da": 1}}),
        ("v", "w"): EdgeComplex.simple({1: ["b"], 2: ["db"]}, {"b": {"db": 1}}),
    })
    path = ("u", "v", "w")
    out = free_differential(g, {(path, ("b", "a")): Fraction(1)})
    assert out == {(path, ("db", "a")): 1, (path, ("b", "da")): -1}
    assert free_differential(g, out) == {}


def test_composition_and_identity():
    g = DgGraph(["v"], {("v", "v"): EdgeComplex.simple({0: ["a"], 1: ["b"]})})
    x = {(("v", "v"), ("a",)): Fraction(1)}
    y = {(("v", "v"), ("b",)): Fraction(2)}
    assert free_compose(g, y, x) == {(("v", "v", "v"), ("b", "a")): 2}
    assert free_compose(g, identity_element("v"), x) == x == free_compose(g, x, identity_element("v"))
    assert free_compose(g, y, x, L=1) == {}


def test_boxtimes_sign():
    g = DgGraph(["v"], {("v", "v"): EdgeComplex.simple({0: ["a"], 1: ["b"]})})
    b = (("v", "v"), ("b",))
    a = (("v", "v"), ("a",))
    # (f' (x) g') o (f (x) g) with deg g' = 1, deg f = 1: sign -1
    out = boxtimes_compose(g, (a, b), (b, a))
    assert list(out.values()) == [-1]
    out = boxtimes_compose(g, (a, a), (b, b))
    assert list(out.values()) == [1]


def test_bad_graphs_rejected():
    with pytest.raises(ValueError):
        EdgeComplex.simple({-1: ["a"]})
    with pytest.raises(ValueError):
        DgGraph(["v"], {("v", "w"): EdgeComplex.simple({0: ["a"]})})
    with pytest.raises(ValueError):
        DgGraph(["v"], {("v", "v"): EdgeComplex.simple({0: ["a"], 2: ["b"]}, {"a": {"b": 1}})})


GRAPH = DgGraph(["u", "v"], {
    ("u", "v"): EdgeComplex.simple({0: ["a"], 1: ["b"]}, {"a": {"b": 1}}),
    ("v", "u"): EdgeComplex.simple({1: ["c"], 2: ["e"]}, {"c": {"e": 2}}),
    ("v", "v"): EdgeComplex.simple({0: ["l"], 1: ["m"]}),
})


@st.composite
def paths(draw, start=None, max_len=2):
    v = start or draw(st.sampled_from(GRAPH.vertices))
    p = [v]
    labels = []
    for _ in range(draw(st.integers(1, max_len))):
        outs = [(b, ec) for b, ec in GRAPH.out_edges(p[-1])]
        if not outs:
            break
        b, ec = draw(st.sampled_from(outs))
        labels.insert(0, draw(st.sampled_from(sorted(ec.degrees))))
        p.append(b)
    if len(p) == 1:
        return (tuple(p), ())
    return (tuple(p), tuple(labels))


@given(st.data())
@settings(max_examples=300)
def test_composition_associative_and_leibniz(data):
    f = data.draw(paths())
    g = data.draw(paths(start=f[0][-1]))
    h = data.draw(paths(start=g[0][-1]))
    F, Gx, H = ({f: Fraction(1)}, {g: Fraction(1)}, {h: Fraction(1)})
    assert free_compose(GRAPH, H, free_compose(GRAPH, Gx, F)) == free_compose(GRAPH, free_compose(GRAPH, H, Gx), F)
    # d(g o f) = d(g) o f + (-1)^{|g|} g o d(f)
    lhs = free_differential(GRAPH, free_compose(GRAPH, Gx, F))
    rhs = dict(free_compose(GRAPH, free_differential(GRAPH, Gx), F))
    sign = -1 if element_degree(GRAPH, *g) % 2 else 1
    for k, v in free_compose(GRAPH, Gx, free_differential(GRAPH, F)).items():
        rhs[k] = rhs.get(k, 0) + sign * v
    assert lhs == {k: v for k, v in rhs.items() if v}


def test_truncated_hom_complexes_are_complexes():
    for v in GRAPH.vertices:
        for w in GRAPH.vertices:
            for L in range(4):
                free_dgcat_hom(GRAPH, v, w, L)    # d o d = 0 asserted at construction


def test_words_evaluate_through_tensor_and_hom():
    r = evaluate_word(CTX, parse_word("hom(tensor(V,V),V)"))
    expected = hom(tensor(Vm, Vm), Vm)
    assert all(qequal(a, b) for a, b in zip(r.mats, expected.mats))
    assert evaluate_word(CTX, ZERO, Z2).dim == 0
    assert evaluate_word({"R": Representation.trivial(Z2, 2)}, parse_word("oplus(R,1)")).dim == 3
