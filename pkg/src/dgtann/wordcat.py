"""
Words in the closed tensor operations and free dg-categories on dg-graphs.

Words are trees with leaves from an alphabet plus the symbols 1 and 0 and
binary nodes tensor / hom / oplus.  Text syntax: `1`, `0`, leaf names,
`tensor(x,y)`, `hom(x,y)`, `oplus(x,y)`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactla import CochainComplex, SparseMatrix, cohomology_dims
from .repcat import Representation, hom, oplus, tensor
from .simpset import BudgetExceeded

OPS = ("tensor", "hom", "oplus")


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    op: str                 # "leaf" or one of OPS
    leaf: str | None = None
    left: "Word | None" = None
    right: "Word | None" = None

    @classmethod
    def atom(cls, name):
        return cls("leaf", str(name))

    @classmethod
    def node(cls, op, x, y):
        if op not in OPS:
            raise WordError("unknown operation %r" % op)
        return cls(op, None, x, y)

    def __str__(self):
        if self.op == "leaf":
            return self.leaf
        return "%s(%s,%s)" % (self.op, self.left, self.right)

    def leaves(self):
        if self.op == "leaf":
            return [self.leaf]
        return self.left.leaves() + self.right.leaves()


ONE = Word.atom("1")
ZERO = Word.atom("0")

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_\-]*|[01])|(.))")


def parse_word(text: str, alphabet=None) -> Word:
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append(m.group(1))
        elif m.group(2) is not None and not m.group(2).isspace():
            tokens.append(m.group(2))
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise WordError("unexpected end of word %r" % text)
        t = tokens[pos]
        pos += 1
        return t

    def expect(c):
        t = take()
        if t != c:
            raise WordError("expected %r, got %r in %r" % (c, t, text))

    def word():
        t = take()
        if t in "(),":
            raise WordError("unexpected %r in %r" % (t, text))
        if t in OPS and pos < len(tokens) and tokens[pos] == "(":
            expect("(")
            x = word()
            expect(",")
            y = word()
            expect(")")
            return Word.node(t, x, y)
        if alphabet is not None and t not in ("0", "1") and t not in alphabet:
            raise WordError("leaf %r is not in the alphabet" % t)
        return Word.atom(t)

    w = word()
    if pos != len(tokens):
        raise WordError("trailing input in %r" % text)
    return w


def word_depth(w: Word) -> int:
    if w.op == "leaf":
        return 0
    return 1 + max(word_depth(w.left), word_depth(w.right))


def count_words(n_alphabet: int, p: int) -> int:
    """|W^p| from |W^p| = 3 |W^{p-1}|^2 + |W^0|."""
    c0 = n_alphabet + 2
    c = c0
    for _ in range(p):
        c = 3 * c * c + c0
    return c


def words_up_to_depth(alphabet, p: int, budget: int = 100000) -> list:
    """All words of depth at most p (the p-th filtration step)."""
    expected = count_words(len(alphabet), p)
    if expected > budget:
        raise BudgetExceeded("%d words exceed the budget %d" % (expected, budget))
    base = [Word.atom(a) for a in alphabet] + [ONE, ZERO]
    level = list(base)
    for _ in range(p):
        nxt = list(base)
        for op in OPS:
            for x, y in itertools.product(level, repeat=2):
                nxt.append(Word.node(op, x, y))
        level = nxt
    if len(level) != expected or len(set(level)) != expected:
        raise ArithmeticError("word count %d disagrees with the recurrence %d" % (len(level), expected))
    return level


def evaluate_word(context: dict, w: Word, group=None) -> Representation:
    """R: leaves looked up in context, 1 -> trivial, 0 -> zero space."""
    if group is None:
        if not context:
            raise WordError("empty context: group unknown")
        group = next(iter(context.values())).group
    if w.op == "leaf":
        if w.leaf == "1":
            return Representation.trivial(group)
        if w.leaf == "0":
            return Representation.zero(group)
        if w.leaf not in context:
            raise WordError("unresolved leaf %r" % w.leaf)
        return context[w.leaf]
    x = evaluate_word(context, w.left, group)
    y = evaluate_word(context, w.right, group)
    return {"tensor": tensor, "hom": hom, "oplus": oplus}[w.op](x, y)


# ---------------------------------------------------------------------------
# free dg-category on a dg-graph


@dataclass
class EdgeComplex:
    """Finite complex spanned by labeled basis elements; d[label] = {label: coeff}."""

    degrees: dict
    d: dict

    @classmethod
    def simple(cls, labels_by_degree: dict, d=None):
        deg = {}
        for n, labels in labels_by_degree.items():
            if int(n) < 0:
                raise ValueError("edge complexes are nonnegatively graded")
            for lab in labels:
                deg[str(lab)] = int(n)
        return cls(deg, {k: {a: Fraction(c) for a, c in v.items()} for k, v in (d or {}).items()})

    def check(self):
        for x, img in self.d.items():
            for y in img:
                if self.degrees[y] != self.degrees[x] + 1:
                    raise ValueError("d(%s) has the wrong degree" % x)
        for x in self.degrees:
            sq = {}
            for y, c in self.d.get(x, {}).items():
                for z, e in self.d.get(y, {}).items():
                    sq[z] = sq.get(z, 0) + c * e
            if any(sq.values()):
                raise ValueError("d o d != 0 on %s" % x)
        return True


class DgGraph:
    def __init__(self, vertices, edges: dict):
        self.vertices = [str(v) for v in vertices]
        self.edges = {}
        for (a, b), ec in edges.items():
            if a not in self.vertices or b not in self.vertices:
                raise ValueError("edge between unknown vertices %r" % ((a, b),))
            ec.check()
            self.edges[str(a), str(b)] = ec

    def out_edges(self, v):
        return [(b, ec) for (a, b), ec in self.edges.items() if a == v]


@dataclass
class FreeHom:
    source: str
    target: str
    length_cap: int
    basis: dict             # degree -> list of (path, labels)
    complex: CochainComplex

    @property
    def dims(self):
        return {n: len(b) for n, b in sorted(self.basis.items())}

    def cohomology(self):
        return cohomology_dims(self.complex)


def _paths(g: DgGraph, v, w, L):
    """Vertex sequences v = v_0 -> ... -> v_l = w with 1 <= l <= L."""
    out = []
    stack = [(v,)]
    while stack:
        p = stack.pop()
        if len(p) - 1 >= 1 and p[-1] == w:
            out.append(p)
        if len(p) - 1 < L:
            for b, _ in g.out_edges(p[-1]):
                stack.append(p + (b,))
    return sorted(out)


def path_terms(g: DgGraph, path):
    """Basis tensors along a path, written last edge first."""
    factors = [g.edges[path[i], path[i + 1]] for i in range(len(path) - 1)]
    factors.reverse()
    for labels in itertools.product(*[sorted(f.degrees) for f in factors]):
        yield labels, sum(f.degrees[x] for f, x in zip(factors, labels))


def free_dgcat_hom(g: DgGraph, v, w, L: int) -> FreeHom:
    """k.id (v = w) plus all composable strings of at most L edges."""
    if L < 0:
        raise ValueError("length cap must be nonnegative")
    v, w = str(v), str(w)
    basis = {}
    if v == w:
        basis.setdefault(0, []).append(((v,), ()))
    for path in _paths(g, v, w, L):
        for labels, deg in path_terms(g, path):
            basis.setdefault(deg, []).append((path, labels))
    top = max(basis) if basis else 0
    for n in range(top + 1):
        basis.setdefault(n, [])
    index = {n: {b: i for i, b in enumerate(bs)} for n, bs in basis.items()}
    diffs = {}
    for n in range(top):
        entries = {}
        for j, (path, labels) in enumerate(basis[n]):
            for (p2, l2), c in free_differential(g, {(path, labels): Fraction(1)}).items():
                i = index[n + 1][p2, l2]
                entries[i, j] = entries.get((i, j), 0) + c
        diffs[n] = SparseMatrix(len(basis[n + 1]), len(basis[n]), entries)
    return FreeHom(v, w, L, dict(sorted(basis.items())), CochainComplex(0, top, {n: len(b) for n, b in basis.items()}, diffs))


def _factors(g, path):
    f = [g.edges[path[i], path[i + 1]] for i in range(len(path) - 1)]
    f.reverse()
    return f


def free_differential(g: DgGraph, elem: dict) -> dict:
    """Koszul differential on a linear combination {(path, labels): coeff}."""
    out = {}
    for (path, labels), c in elem.items():
        factors = _factors(g, path)
        sign = 1
        for i, (f, x) in enumerate(zip(factors, labels)):
            for y, e in f.d.get(x, {}).items():
                key = (path, labels[:i] + (y,) + labels[i + 1:])
                out[key] = out.get(key, 0) + sign * c * e
            if f.degrees[x] % 2:
                sign = -sign
    return {k: v for k, v in out.items() if v}


def element_degree(g, path, labels):
    return sum(f.degrees[x] for f, x in zip(_factors(g, path), labels))


def free_compose(g: DgGraph, second: dict, first: dict, L=None) -> dict:
    """second o first by concatenation; terms longer than L are dropped."""
    out = {}
    for (p1, l1), a in first.items():
        for (p2, l2), b in second.items():
            if p1[-1] != p2[0]:
                raise ValueError("paths are not composable")
            path = p1 + p2[1:]
            if L is not None and len(path) - 1 > L:
                continue
            key = (path, l2 + l1)
            out[key] = out.get(key, 0) + a * b
    return {k: v for k, v in out.items() if v}


def boxtimes_compose(g: DgGraph, second: tuple, first: tuple, L=None) -> dict:
    """Composition in F(g) (x) F(g): (f' (x) g') o (f (x) g) = (-1)^{deg g' deg f} (f' o f) (x) (g' o g).

    Arguments are pairs of single basis terms ((path, labels), coeff)."""
    (f2, g2), (f1, g1) = second, first
    sign = -1 if (element_degree(g, *g2) * element_degree(g, *f1)) % 2 else 1
    left = free_compose(g, {f2: Fraction(1)}, {f1: Fraction(1)}, L)
    right = free_compose(g, {g2: Fraction(1)}, {g1: Fraction(1)}, L)
    out = {}
    for a, x in left.items():
        for b, y in right.items():
            out[a, b] = sign * x * y
    return out


def identity_element(v):
    return {((str(v),), ()): Fraction(1)}
