"""
Presented equivariant commutative dg-algebras and the closed tensor
dg-categories T(G, A) built from them.

A presented algebra is free graded-commutative on named generators
(polynomial in even ones, exterior in odd ones) with a differential and a
right G-action given on generators.  Elements are dicts from exponent tuples
(one entry per generator, in declaration order) to Fractions; the monomial
x_1^{e_1} ... x_k^{e_k} is always written in that order.

Hom complexes of T(G, A) are A (x)^G Hom(V, W): the elements X of A (x) Hom(V, W)
with sum (a_j g) (x) v_j = sum a_j (x) g v_j.  In coordinates X is a matrix
with one row per monomial and one column per coordinate of Hom(V, W), and the
condition reads P_g X = X rho(g)^T, where P_g is the matrix of a -> a.g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .derham import (ADRComplex, LocalSystem, MatchingFamily, _expand, constant_system, ls_hom,
                     pullback_along, tdr_compose)
from .exactla import (CochainComplex, SparseMatrix, as_rational, cohomology_dims, format_rational,
                      parse_rational, row_space_rank, sparse_kernel)
from .groups import FiniteGroup
from .nabla import PolyForm, face_map, wedge
from .repcat import Representation, hom, regular_representation, sign_rep
from .simpset import EdgeLabeling, rp2_6, universal_cover, universal_labeling
from .wordcat import evaluate_word, parse_word


class CdgaError(ValueError):
    pass


class VerificationError(AssertionError):
    pass


# ---------------------------------------------------------------------------
# polynomial arithmetic


def _clean(p):
    return {k: v for k, v in p.items() if v}


def padd(a, b, c=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + c * v
    return _clean(out)


def pscale(a, c):
    return _clean({k: c * v for k, v in a.items()})


class PresentedGCdga:
    def __init__(self, group: FiniteGroup, generators, differential=None, action=None, name=None,
                 check_degree=None, validate=True):
        self.group = group
        self.name = name or "A"
        self.gens = [str(g) for g, _ in generators]
        self.degs = [int(d) for _, d in generators]
        if len(set(self.gens)) != len(self.gens):
            raise CdgaError("duplicate generator names")
        if any(d < 1 for d in self.degs):
            raise CdgaError("generators must have degree >= 1")
        self.odd = [d % 2 == 1 for d in self.degs]
        self.k = len(self.gens)
        self._idx = {g: i for i, g in enumerate(self.gens)}
        self._mcache = {}
        self._dcache = {}
        self._acache = {}
        diff = differential or {}
        unknown = set(diff) - set(self.gens)
        if unknown:
            raise CdgaError("differential given for unknown generators %s" % sorted(unknown))
        self.dgen = [self._coerce(diff.get(g, {})) for g in self.gens]
        self.act_gen = self._extend_action(action or {})
        if validate:
            self.check(check_degree)

    # elements ---------------------------------------------------------------

    def _coerce(self, p):
        if isinstance(p, dict):
            out = {}
            for k, v in p.items():
                k = tuple(int(x) for x in k)
                if len(k) != self.k:
                    raise CdgaError("monomial %r has the wrong length" % (k,))
                if any(e > 1 and o for e, o in zip(k, self.odd)):
                    continue
                out[k] = out.get(k, 0) + as_rational(v)
            return _clean(out)
        return self.parse_poly(p)

    def one(self):
        return {(0,) * self.k: Fraction(1)}

    def gen(self, name):
        e = [0] * self.k
        e[self._idx[name]] = 1
        return {tuple(e): Fraction(1)}

    def mdeg(self, m):
        return sum(e * d for e, d in zip(m, self.degs))

    def degree(self, p):
        degs = {self.mdeg(m) for m in p}
        if len(degs) > 1:
            raise CdgaError("inhomogeneous element")
        return degs.pop() if degs else None

    def mono_mul(self, m1, m2):
        """(sign, monomial) with sign 0 when an odd generator would square."""
        key = (m1, m2)
        hit = self._mcache.get(key)
        if hit is not None:
            return hit
        sign = 1
        for j in range(self.k):
            if self.odd[j] and m2[j]:
                if m1[j]:
                    self._mcache[key] = (0, None)
                    return 0, None
                for i in range(j + 1, self.k):
                    if self.odd[i] and m1[i]:
                        sign = -sign
        out = (sign, tuple(a + b for a, b in zip(m1, m2)))
        self._mcache[key] = out
        return out

    def mul(self, a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                s, m = self.mono_mul(m1, m2)
                if s:
                    out[m] = out.get(m, 0) + s * c1 * c2
        return _clean(out)

    def power(self, a, e):
        out = self.one()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def _mono_d(self, m):
        hit = self._dcache.get(m)
        if hit is not None:
            return hit
        out = {}
        pre_deg = 0
        for i, e in enumerate(m):
            if not e:
                continue
            prefix = tuple(m[j] if j < i else 0 for j in range(self.k))
            suffix = tuple(m[j] if j > i else 0 for j in range(self.k))
            part = self.mul(pscale(self.power(self.gen(self.gens[i]), e - 1), e), self.dgen[i])
            term = self.mul(self.mul({prefix: Fraction(1)}, part), {suffix: Fraction(1)})
            out = padd(out, term, -1 if pre_deg % 2 else 1)
            pre_deg += e * self.degs[i]
        self._dcache[m] = out
        return out

    def d(self, p):
        out = {}
        for m, c in p.items():
            out = padd(out, self._mono_d(m), c)
        return out

    def _extend_action(self, action):
        G = self.group
        given = {}
        for g, imgs in action.items():
            gi = G.index(g)
            row = []
            for name in self.gens:
                row.append(self._coerce(imgs[name]) if name in imgs else self.gen(name))
            given[gi] = row
        if not given:
            return {g: [self.gen(n) for n in self.gens] for g in G}
        table = {G.identity: [self.gen(n) for n in self.gens]}
        frontier = [G.identity]
        # a.(g h) = (a.g).h
        while frontier:
            nxt = []
            for x in frontier:
                for g, row in given.items():
                    y = G.mul(x, g)
                    img = [self._subst(p, row) for p in table[x]]
                    if y in table:
                        if table[y] != img:
                            raise CdgaError("action is not a right action (conflict at %s)" % G.names[y])
                    else:
                        table[y] = img
                        nxt.append(y)
            frontier = nxt
        if len(table) != len(G):
            raise CdgaError("action elements do not generate the group")
        for g, row in given.items():
            if table[g] != row:
                raise CdgaError("action of %s is inconsistent with the group law" % G.names[g])
        return table

    def _subst(self, p, images):
        """Substitute generator images (a list of elements) into p."""
        out = {}
        for m, c in p.items():
            term = self.one()
            for i, e in enumerate(m):
                if e:
                    term = self.mul(term, self.power(images[i], e))
            out = padd(out, term, c)
        return out

    def act(self, p, g):
        """Right action p.g."""
        g = self.group.index(g)
        out = {}
        for m, c in p.items():
            key = (m, g)
            img = self._acache.get(key)
            if img is None:
                img = self._subst({m: Fraction(1)}, self.act_gen[g])
                self._acache[key] = img
            out = padd(out, img, c)
        return out

    # validation -------------------------------------------------------------

    def check(self, degree=None):
        G = self.group
        for i, name in enumerate(self.gens):
            dx = self.dgen[i]
            if dx and self.degree(dx) != self.degs[i] + 1:
                raise CdgaError("d(%s) does not have degree %d" % (name, self.degs[i] + 1))
            if self.d(dx):
                raise CdgaError("d o d != 0 on %s" % name)
            if (0,) * self.k in dx:
                raise CdgaError("d(%s) has a constant term; augmentation is not a dg-map" % name)
            for g in G:
                img = self.act_gen[g][i]
                if img and self.degree(img) != self.degs[i]:
                    raise CdgaError("%s.%s has the wrong degree" % (name, G.names[g]))
                if self.d(img) != self.act(dx, g):
                    raise CdgaError("action of %s does not commute with d on %s" % (G.names[g], name))
        for a in G:
            for b in G:
                ab = G.mul(a, b)
                for i in range(self.k):
                    if self.act(self.act_gen[a][i], b) != self.act_gen[ab][i]:
                        raise CdgaError("(x.g).h != x.(gh)")
        bound = degree if degree is not None else 2
        B = basis_up_to_degree(self, max(bound, 2))
        cx = B.complex(trivial_rep(G), trivial_rep(G))
        H = cohomology_dims(cx)
        if H[0] != 1 or H.get(1, 0) != 0:
            raise CdgaError("not 1-connected: H^0 = %d, H^1 = %d" % (H[0], H.get(1, 0)))
        return True

    # serialization ----------------------------------------------------------

    def parse_poly(self, obj):
        out = {}
        for term in obj:
            e = [0] * self.k
            for name, ex in term["monomial"]:
                if name not in self._idx:
                    raise CdgaError("unknown generator %r" % name)
                e[self._idx[name]] += int(ex)
            c = parse_rational(term["coeff"]) if isinstance(term["coeff"], str) else as_rational(term["coeff"])
            # reorder into the canonical product with the right sign
            mono = self.one()
            for name, ex in term["monomial"]:
                mono = self.mul(mono, self.power(self.gen(name), int(ex)))
            out = padd(out, mono, c)
        return out

    def format_poly(self, p):
        terms = []
        for m in sorted(p, reverse=True):
            terms.append({"coeff": format_rational(p[m]),
                          "monomial": [[self.gens[i], e] for i, e in enumerate(m) if e]})
        return terms

    def render(self, p):
        if not p:
            return "0"
        parts = []
        for m in sorted(p, reverse=True):
            mono = "*".join(self.gens[i] + ("^%d" % e if e > 1 else "") for i, e in enumerate(m) if e) or "1"
            c = p[m]
            parts.append(mono if c == 1 else "%s*%s" % (format_rational(c), mono))
        return " + ".join(parts)

    def to_json(self, group_ref="G"):
        G = self.group
        return {
            "group": group_ref,
            "generators": [{"name": n, "degree": d} for n, d in zip(self.gens, self.degs)],
            "differential": {n: self.format_poly(self.dgen[i]) for i, n in enumerate(self.gens) if self.dgen[i]},
            "action": {G.names[g]: {n: self.format_poly(self.act_gen[g][i]) for i, n in enumerate(self.gens)}
                       for g in G if g != G.identity},
        }

    @classmethod
    def from_json(cls, obj, group: FiniteGroup, name=None, check_degree=None):
        gens = [(g["name"], g["degree"]) for g in obj.get("generators", [])]
        A = cls(group, gens, {}, {}, name=name, validate=False)
        diff = {n: A.parse_poly(p) for n, p in obj.get("differential", {}).items()}
        action = {g: {n: A.parse_poly(p) for n, p in imgs.items()} for g, imgs in obj.get("action", {}).items()}
        return cls(group, gens, diff, action, name=name, check_degree=check_degree)

    def __repr__(self):
        return "PresentedGCdga(%s; %s)" % (self.name, ", ".join("%s:%d" % x for x in zip(self.gens, self.degs)))


def trivial_rep(G):
    return Representation.trivial(G)


# ---------------------------------------------------------------------------
# bases and hom complexes


def _monomials(A, n):
    out = []

    def rec(i, left, acc):
        if i == A.k:
            if left == 0:
                out.append(tuple(acc))
            return
        d = A.degs[i]
        top = 1 if A.odd[i] else left // d
        for e in range(min(top, left // d), -1, -1):
            rec(i + 1, left - e * d, acc + [e])

    rec(0, n, [])
    return sorted(out, reverse=True)


class GradedBasis:
    """Monomial basis of A in degrees 0..N with differential and action matrices."""

    def __init__(self, A: PresentedGCdga, N: int):
        if N < 0:
            raise ValueError("degree bound must be nonnegative")
        self.A, self.N = A, N
        self.monomials = {n: _monomials(A, n) for n in range(N + 2)}
        self.index = {n: {m: i for i, m in enumerate(ms)} for n, ms in self.monomials.items()}
        self._d = {}
        self._act = {}

    def dim(self, n):
        return len(self.monomials.get(n, ()))

    @property
    def dims(self):
        return {n: self.dim(n) for n in range(self.N + 1)}

    def coords(self, p, n):
        v = {}
        for m, c in p.items():
            if self.A.mdeg(m) != n:
                raise CdgaError("element is not homogeneous of degree %d" % n)
            v[self.index[n][m]] = c
        return v

    def d_matrix(self, n) -> SparseMatrix:
        """d: A^n -> A^{n+1} (n <= N)."""
        if n not in self._d:
            entries = {}
            for j, m in enumerate(self.monomials[n]):
                for m2, c in self.A.d({m: Fraction(1)}).items():
                    entries[self.index[n + 1][m2], j] = c
            self._d[n] = SparseMatrix(self.dim(n + 1), self.dim(n), entries)
        return self._d[n]

    def action_matrix(self, g, n) -> SparseMatrix:
        key = (g, n)
        if key not in self._act:
            entries = {}
            for j, m in enumerate(self.monomials[n]):
                for m2, c in self.A.act({m: Fraction(1)}, g).items():
                    entries[self.index[n][m2], j] = c
            self._act[key] = SparseMatrix(self.dim(n), self.dim(n), entries)
        return self._act[key]

    def invariant_block(self, rep: Representation, n) -> "InvariantBlock":
        return invariant_block(self.dim(n), lambda g: self.action_matrix(g, n), rep, n)

    def complex(self, V, W, N=None) -> CochainComplex:
        return t_hom_data(self, V, W, self.N if N is None else N).complex


def basis_up_to_degree(A: PresentedGCdga, N: int) -> GradedBasis:
    return GradedBasis(A, N)


@dataclass
class InvariantBlock:
    degree: int
    rows: int               # dimension of the algebra side
    cols: int               # dimension of the Hom side
    basis: list             # sparse vectors, index i * cols + j
    free: list

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, vec):
        return [vec.get(f, Fraction(0)) for f in self.free]

    def expand(self, coords):
        out = {}
        for c, v in zip(coords, self.basis):
            if c:
                for k, x in v.items():
                    out[k] = out.get(k, 0) + c * x
        return _clean(out)

    def contains(self, vec):
        return self.expand(self.coordinates(vec)) == _clean(dict(vec))


def invariant_system(d, P, rep: Representation):
    """Rows of P_g X - X rho(g)^T = 0 over a generating set of the group."""
    h = rep.dim
    rows = []
    for g in rep.group._generators() or []:
        Pg = P(g).rows()
        R = rep.mats[g]
        for r in range(d):
            for j in range(h):
                row = {}
                for i, c in Pg[r].items():
                    row[i * h + j] = row.get(i * h + j, 0) + c
                for k in range(h):
                    if R[j, k]:
                        row[r * h + k] = row.get(r * h + k, 0) - R[j, k]
                row = _clean(row)
                if row:
                    rows.append(row)
    return SparseMatrix.from_rows(rows, d * h)


def invariant_block(d, P, rep, n=0) -> InvariantBlock:
    basis, free = sparse_kernel(invariant_system(d, P, rep))
    return InvariantBlock(n, d, rep.dim, basis, free)


def _apply_left(M: SparseMatrix, vec, h):
    """(M (x) id) on a vector indexed i * h + j."""
    cols = {}
    for key, c in vec.items():
        i, j = divmod(key, h)
        cols.setdefault(i, []).append((j, c))
    out = {}
    for (r, i), x in M.items():
        for j, c in cols.get(i, ()):
            k = r * h + j
            out[k] = out.get(k, 0) + x * c
    return _clean(out)


@dataclass
class THomData:
    basis: GradedBasis
    V: Representation
    W: Representation
    N: int
    blocks: dict
    complex: CochainComplex


def t_hom_data(B: GradedBasis, V, W, N) -> THomData:
    if V.group is not B.A.group and not V.group.same_as(B.A.group):
        raise CdgaError("representation group differs from the algebra group")
    if W.group is not B.A.group and not W.group.same_as(B.A.group):
        raise CdgaError("representation group differs from the algebra group")
    if N > B.N + 1:
        raise ValueError("basis only reaches degree %d" % B.N)
    H = hom(V, W)
    blocks = {n: B.invariant_block(H, n) for n in range(N + 1)}
    diffs = {}
    for n in range(N):
        src, dst = blocks[n], blocks[n + 1]
        D = B.d_matrix(n)
        entries = {}
        for j, v in enumerate(src.basis):
            img = _apply_left(D, v, H.dim)
            coords = dst.coordinates(img)
            if dst.expand(coords) != img:
                raise ArithmeticError("d left the invariant subspace")
            for i, c in enumerate(coords):
                if c:
                    entries[i, j] = c
        diffs[n] = SparseMatrix(dst.dim, src.dim, entries)
    cx = CochainComplex(0, N, {n: b.dim for n, b in blocks.items()}, diffs)
    return THomData(B, V, W, N, blocks, cx)


def t_hom_complex(A: PresentedGCdga, V, W, N: int) -> CochainComplex:
    """Hom_{T A}(V, W) in degrees 0..N.  The differential out of degree N is
    not part of the truncation; use t_cohomology for cohomology through N."""
    return t_hom_data(GradedBasis(A, N), V, W, N).complex


@dataclass
class TCohomology:
    bound: int
    cochain_dims: dict
    cohomology: dict
    truncated_from: int      # degrees >= this are not computed

    def to_json(self):
        return {"bound": self.bound,
                "cochain_dims": {str(k): v for k, v in self.cochain_dims.items()},
                "cohomology": {str(k): v for k, v in self.cohomology.items()},
                "truncated_from": self.truncated_from}


def t_cohomology(A, V, W, N: int) -> TCohomology:
    B = GradedBasis(A, N + 1)
    data = t_hom_data(B, V, W, N + 1)
    H = cohomology_dims(data.complex)
    return TCohomology(N, {n: data.complex.dims[n] for n in range(N + 1)},
                       {n: H[n] for n in range(N + 1)}, N + 1)


def t_compose(A, B: GradedBasis, X2, n2, Y2, X1, n1, Y1):
    """(a (x) F) o (b (x) G) = ab (x) FG for X2 in A^{n2} (x) Hom(V', V''),
    X1 in A^{n1} (x) Hom(V, V'); Y2, Y1 are the (source dim, target dim) pairs."""
    (s2, t2), (s1, t1) = Y2, Y1
    if s2 != t1:
        raise CdgaError("not composable")
    h2, h1, h = s2 * t2, s1 * t1, s1 * t2
    out = {}
    for k2, c2 in X2.items():
        i2, j2 = divmod(k2, h2)
        r2, q2 = divmod(j2, s2)          # F[r2, q2]
        for k1, c1 in X1.items():
            i1, j1 = divmod(k1, h1)
            r1, q1 = divmod(j1, s1)      # G[r1, q1]
            if q2 != r1:
                continue
            prod = A.mul({B.monomials[n2][i2]: Fraction(1)}, {B.monomials[n1][i1]: Fraction(1)})
            for m, c in prod.items():
                key = B.index[n1 + n2][m] * h + r2 * s1 + q1
                out[key] = out.get(key, 0) + c * c2 * c1
    return _clean(out)


# ---------------------------------------------------------------------------
# T^c via words


def tc_hom(A, X, Y, N: int, context: dict) -> CochainComplex:
    if isinstance(X, str):
        X = parse_word(X, set(context))
    if isinstance(Y, str):
        Y = parse_word(Y, set(context))
    RX = evaluate_word(context, X, A.group)
    RY = evaluate_word(context, Y, A.group)
    return t_hom_complex(A, RX, RY, N)


# ---------------------------------------------------------------------------
# the regular-representation isomorphism


@dataclass
class RegularIsoReport:
    ok: bool
    bound: int
    rows: list = field(default_factory=list)   # (degree, dim A^n, dim invariants, rank, chain ok)

    def to_json(self):
        return {"check": "regular-iso", "pass": self.ok, "bound": self.bound,
                "degrees": [{"degree": n, "dim_A": a, "dim_invariants": b, "rank": r, "chain_map": c}
                            for n, a, b, r, c in self.rows]}


def regular_iso_check(A: PresentedGCdga, N: int, strict=True) -> RegularIsoReport:
    """a -> sum_g a.g (x) delta_g, verified bijective and a chain map per degree."""
    G = A.group
    Vr = regular_representation(G).rep
    B = GradedBasis(A, N)
    n_g = len(G)
    rep = RegularIsoReport(True, N)
    maps = {}
    blocks = {}
    for n in range(N + 1):
        blk = B.invariant_block(Vr, n)
        blocks[n] = blk
        d = B.dim(n)
        cols = []
        for i in range(d):
            vec = {}
            for g in G:
                for r, c in B.action_matrix(g, n).columns()[i].items():
                    vec[r * n_g + g] = c
            if not blk.contains(vec):
                rep.ok = False
            cols.append(vec)
        maps[n] = cols
        r = row_space_rank(cols, d * n_g)
        rep.rows.append([n, d, blk.dim, r, True])
        if not (r == d == blk.dim):
            rep.ok = False
    for n in range(N):
        D = B.d_matrix(n)
        ok = True
        for i, vec in enumerate(maps[n]):
            lhs = _apply_left(D, vec, n_g)
            rhs = {}
            for r, c in D.columns()[i].items():
                for k, x in maps[n + 1][r].items():
                    rhs[k] = rhs.get(k, 0) + c * x
            if lhs != _clean(rhs):
                ok = False
        rep.rows[n][4] = ok
        rep.ok = rep.ok and ok
    rep.rows = [tuple(r) for r in rep.rows]
    if strict and not rep.ok:
        raise VerificationError("regular-representation map is not an isomorphism of complexes")
    return rep


# ---------------------------------------------------------------------------
# pushout square


@dataclass
class PushoutReport:
    ok: bool
    bound: int
    rows: list = field(default_factory=list)

    def to_json(self):
        return {"check": "pushout", "pass": self.ok, "bound": self.bound, "squares": self.rows}


def pushout_square_check(A: PresentedGCdga, N: int, objects: dict) -> PushoutReport:
    """Strict commutativity of
         T^c(G, k) -> Vect
            |          |
         T^c(G, A) -> A (x) Hom_Vect
    on hom complexes between the given test objects, degrees 0..N."""
    B = GradedBasis(A, N)
    rep = PushoutReport(True, N)
    names = list(objects)
    one_idx = B.index[0][(0,) * A.k]
    blocks = {}
    for x in names:
        for y in names:
            V, W = objects[x], objects[y]
            H = hom(V, W)
            h = H.dim
            # top-left: equivariant maps, as coordinates of Hom_Vect
            eq_vecs, _ = sparse_kernel(invariant_system(1, lambda g: SparseMatrix.identity(1), H))
            for n in range(N + 1):
                blk = B.invariant_block(H, n)
                blocks[x, y, n] = blk
                ok_square = True
                ok_left = True
                for f in eq_vecs:
                    via_top = {one_idx * h + j: c for j, c in f.items()} if n == 0 else {}
                    via_left = via_top        # 1 (x) f in A (x)^G Hom, then included
                    if n == 0 and not blk.contains(via_left):
                        ok_left = False
                    if via_top != via_left:
                        ok_square = False
                ok_chain = True
                if n < N:
                    nxt = B.invariant_block(H, n + 1)
                    for v in blk.basis:
                        if not nxt.contains(_apply_left(B.d_matrix(n), v, h)):
                            ok_chain = False
                row = {"source": x, "target": y, "degree": n, "dim_equivariant": len(eq_vecs),
                       "dim_invariant": blk.dim, "dim_total": B.dim(n) * h,
                       "unit_lands_in_invariants": ok_left, "square_commutes": ok_square,
                       "inclusion_is_chain_map": ok_chain}
                rep.rows.append(row)
                rep.ok = rep.ok and ok_square and ok_left and ok_chain
    # composition is respected by the inclusion: invariant o invariant is invariant
    for x in names:
        for y in names:
            for z in names:
                for n1 in range(N + 1):
                    for n2 in range(N + 1 - n1):
                        b1, b2 = blocks[x, y, n1], blocks[y, z, n2]
                        out = blocks[x, z, n1 + n2]
                        dims1 = (objects[x].dim, objects[y].dim)
                        dims2 = (objects[y].dim, objects[z].dim)
                        for v2 in b2.basis[:3]:
                            for v1 in b1.basis[:3]:
                                comp = t_compose(A, B, v2, n2, dims2, v1, n1, dims1)
                                if not out.contains(comp):
                                    rep.ok = False
                                    rep.rows.append({"source": x, "middle": y, "target": z,
                                                     "degrees": [n1, n2], "composition_closed": False})
    return rep


# ---------------------------------------------------------------------------
# right homotopies through B (x) nabla(1, *)


def _path_key_mul(k1, k2):
    (e1, d1), (e2, d2) = k1, k2
    if d1 and d2:
        return None
    return (e1 + e2, d1 + d2)


class PathAlgebra:
    """B (x) nabla(1, *): keys (B-monomial, (t-exponent, dt-exponent))."""

    def __init__(self, B: PresentedGCdga):
        self.B = B

    def from_b(self, p):
        return {(m, (0, 0)): c for m, c in p.items()}

    def mul(self, x, y):
        B = self.B
        out = {}
        for (b1, w1), c1 in x.items():
            for (b2, w2), c2 in y.items():
                w = _path_key_mul(w1, w2)
                if w is None:
                    continue
                s, m = B.mono_mul(b1, b2)
                if not s:
                    continue
                if w1[1] and B.mdeg(b2) % 2:
                    s = -s
                out[m, w] = out.get((m, w), 0) + s * c1 * c2
        return _clean(out)

    def d(self, x):
        B = self.B
        out = {}
        for (b, w), c in x.items():
            for m, e in B.d({b: Fraction(1)}).items():
                out[m, w] = out.get((m, w), 0) + c * e
            e, dt = w
            if e and not dt:
                sign = -1 if B.mdeg(b) % 2 else 1
                k = (b, (e - 1, 1))
                out[k] = out.get(k, 0) + sign * e * c
        return _clean(out)

    def act(self, x, g):
        out = {}
        for (b, w), c in x.items():
            for m, e in self.B.act({b: Fraction(1)}, g).items():
                out[m, w] = out.get((m, w), 0) + c * e
        return _clean(out)

    def evaluate(self, x, value):
        """Restrict along t_1 -> value (a vertex of the 1-simplex)."""
        out = {}
        for (b, (e, dt)), c in x.items():
            if dt:
                continue
            v = Fraction(value) ** e if e else Fraction(1)
            out[b] = out.get(b, 0) + c * v
        return _clean(out)

    def one(self):
        return self.from_b(self.B.one())


@dataclass
class HomotopyCandidate:
    source: PresentedGCdga
    target: PresentedGCdga
    f1: dict                 # generator -> element of target
    f2: dict
    H: dict                  # generator -> element of target (x) nabla(1,*)
    group_map1: tuple | None = None    # target group -> source group
    group_map2: tuple | None = None


def _extend(A, images, p, mul, one):
    out = {}
    for m, c in p.items():
        term = one
        for i, e in enumerate(m):
            for _ in range(e):
                term = mul(term, images[A.gens[i]])
        for k, v in term.items():
            out[k] = out.get(k, 0) + c * v
    return _clean(out)


def constant_homotopy(source, target, f):
    P = PathAlgebra(target)
    return HomotopyCandidate(source, target, dict(f), dict(f), {x: P.from_b(f.get(x, {})) for x in source.gens})


def verify_right_homotopy(h: HomotopyCandidate):
    """Check that H is an equivariant augmented dg-map A -> B (x) nabla(1,*) with
    d_0 H = f1 (restriction to t_1 = 1) and d_1 H = f2 (restriction to t_1 = 0).
    Returns (ok, diagnostics)."""
    A, B = h.source, h.target
    GA, GB = A.group, B.group
    g1 = tuple(h.group_map1) if h.group_map1 is not None else None
    g2 = tuple(h.group_map2) if h.group_map2 is not None else None
    if g1 != g2:
        raise CdgaError("the two morphisms have different group components")
    if g1 is None:
        if not GA.same_as(GB):
            raise CdgaError("a group homomorphism is needed between different groups")
        g1 = tuple(range(len(GA)))
    P = PathAlgebra(B)
    problems = []
    H = {x: dict(h.H.get(x, {})) for x in A.gens}
    for x in A.gens:
        deg = A.degs[A._idx[x]]
        for (b, w), _ in H[x].items():
            if B.mdeg(b) + w[1] != deg:
                problems.append("H(%s) is not homogeneous of degree %d" % (x, deg))
                break
    for i, x in enumerate(A.gens):
        lhs = P.d(H[x])
        rhs = _extend(A, H, A.dgen[i], P.mul, P.one())
        if lhs != rhs:
            problems.append("d H(%s) != H(d %s)" % (x, x))
    for hb in GB._generators():
        ga = g1[hb]
        for i, x in enumerate(A.gens):
            lhs = _extend(A, H, A.act_gen[ga][i], P.mul, P.one())
            rhs = P.act(H[x], hb)
            if lhs != rhs:
                problems.append("H is not equivariant on %s for %s" % (x, GB.names[hb]))
    zero = (0,) * B.k
    for x in A.gens:
        if any(b == zero for (b, _) in H[x]):
            problems.append("H(%s) does not vanish under the augmentation" % x)
    for x in A.gens:
        if P.evaluate(H[x], 1) != _clean(dict(h.f1.get(x, {}))):
            problems.append("d_0 H(%s) != f1(%s)" % (x, x))
        if P.evaluate(H[x], 0) != _clean(dict(h.f2.get(x, {}))):
            problems.append("d_1 H(%s) != f2(%s)" % (x, x))
    return not problems, problems


# ---------------------------------------------------------------------------
# composition in the path object


@dataclass(frozen=True)
class PathTerm:
    """alpha (x) omega with alpha a graded linear map (matrix and degree) and
    omega a form on the 1-simplex."""

    alpha: tuple            # matrix as a tuple of row tuples
    degree: int
    omega: PolyForm

    @classmethod
    def make(cls, matrix, degree, omega):
        m = tuple(tuple(Fraction(x) for x in row) for row in np.asarray(matrix, dtype=object))
        return cls(m, int(degree), omega)

    def matrix(self):
        return np.array(self.alpha, dtype=object).reshape(len(self.alpha), len(self.alpha[0]) if self.alpha else 0)

    @property
    def total_degree(self):
        return self.degree + self.omega.q


def path_compose(first: PathTerm, second: PathTerm) -> tuple:
    """second o first: (beta (x) eta) o (alpha (x) omega) = (-1)^{|eta||alpha|} (beta alpha) (x) (eta omega).
    The sign is folded into the matrix of the result."""
    sign = -1 if (second.omega.q * first.degree) % 2 else 1
    m = second.matrix() @ first.matrix()
    return PathTerm.make(m * sign, second.degree + first.degree, wedge(second.omega, first.omega))


def path_sum_compose(second: list, first: list) -> dict:
    """Bilinear extension on lists of terms, collected as {(matrix, degree, omega-key): coeff}."""
    out = {}
    for b in second:
        for a in first:
            t = path_compose(a, b)
            for key, c in t.omega.terms.items():
                k = (t.alpha, t.degree, key)
                out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v and any(any(x for x in r) for r in k[0])}


def path_evaluate(t: PathTerm, i: int):
    """Apply d_i to the form factor; the result is a plain matrix."""
    val = face_map(i, t.omega)
    c = val.terms.get(((), ()), Fraction(0)) if val.q == 0 else Fraction(0)
    return t.matrix() * c


# ---------------------------------------------------------------------------
# fixtures


def rp2_model(G: FiniteGroup | None = None) -> PresentedGCdga:
    """Z/2 acting on the free algebra on t (deg 2), s (deg 3) with d s = t^2,
    t -> -t, s -> s."""
    G = G or FiniteGroup.cyclic(2)
    if len(G) != 2:
        raise CdgaError("the model needs a group of order 2")
    g = 1 - G.identity
    A = PresentedGCdga(G, [("t", 2), ("s", 3)], validate=False)
    t = A.gen("t")
    return PresentedGCdga(G, [("t", 2), ("s", 3)], {"s": A.mul(t, t)},
                          {g: {"t": pscale(t, -1), "s": A.gen("s")}}, name="M")


@dataclass
class RP2Fixture:
    algebra: PresentedGCdga
    space: object
    labeling: EdgeLabeling
    reps: dict
    systems: dict


def rp2_fixture() -> RP2Fixture:
    K = rp2_6()
    lab = universal_labeling(K)
    G = lab.group
    A = rp2_model(G)
    sign = [1 if g == G.identity else -1 for g in G]
    reps = {"1": Representation.trivial(G), "V-": sign_rep(G, sign)}
    systems = {k: LocalSystem(K, v, lab, name=k) for k, v in reps.items()}
    return RP2Fixture(A, K, lab, reps, systems)


def trivial_algebra(G: FiniteGroup) -> PresentedGCdga:
    return PresentedGCdga(G, [], name="Q")


def free_invariant_algebra(G: FiniteGroup, degree=2, name="x") -> PresentedGCdga:
    return PresentedGCdga(G, [(name, degree)], name="Q[%s]" % name)


# ---------------------------------------------------------------------------
# the comparison map Phi


@dataclass
class PhiRow:
    degree: int
    weight: int
    dim_source: int
    rank_image: int
    dim_invariants: int
    image_in_invariants: bool
    d_compatible: bool

    @property
    def ok(self):
        return (self.rank_image == self.dim_source and self.dim_invariants == self.rank_image
                and self.image_in_invariants and self.d_compatible)


@dataclass
class PhiReport:
    source: str
    target: str
    rows: list = field(default_factory=list)
    composition_ok: bool = True

    @property
    def ok(self):
        return self.composition_ok and all(r.ok for r in self.rows)

    def to_json(self):
        return {"check": "phi", "pass": self.ok, "source": self.source, "target": self.target,
                "composition_compatible": self.composition_ok,
                "rows": [dict(r.__dict__, ok=r.ok) for r in self.rows]}


class _CoverSide:
    """Hom_Vect(V, W) (x) A_{<=W}(cover) with its deck action."""

    def __init__(self, cover, m, weight):
        self.cover = cover
        self.X = cover.space
        self.m = m
        self.scalar = constant_system(self.X)
        self.adr = ADRComplex(self.scalar, weight)

    def coords(self, q, forms):
        """Coordinates (index i * m + j) of a family given by m-tuples of forms."""
        comp = self.adr.components[q]
        lay = comp.layout
        out = {}
        for j in range(self.m):
            vec = {}
            for s, vals in forms.items():
                for key, c in vals[j].terms.items():
                    vec[lay.col(s, key, 0)] = c
            cs = comp.coordinates(vec)
            if _expand(comp, cs) != _clean(vec):
                raise VerificationError("pulled-back form is not a matching family on the cover")
            for i, c in enumerate(cs):
                if c:
                    out[i * self.m + j] = c
        return out

    def action(self, q, g):
        """Matrix of the right action a.g: (a.g)_{(s,h)} = a_{(s, h g^-1)}."""
        comp = self.adr.components[q]
        lay = comp.layout
        G = self.cover.group
        ginv = G.inv(g)
        perm = {}
        for x, (s, h) in self.cover.fiber_label.items():
            perm[x] = self.cover.lift[s, G.mul(h, ginv)]
        entries = {}
        for j, v in enumerate(comp.basis):
            moved = {}
            for x in lay.offset:
                src = perm[x]
                for key in lay.keys[x]:
                    c = v.get(lay.col(src, key, 0))
                    if c:
                        moved[lay.col(x, key, 0)] = c
            for i, c in enumerate(comp.coordinates(moved)):
                if c:
                    entries[i, j] = c
        return SparseMatrix(comp.dim, comp.dim, entries)


def _trivialized(fam: MatchingFamily, cover, rep: Representation):
    """Psi: pullback to the cover, then omega_(s,h) -> rho(h)^{-1} omega_s."""
    pb = pullback_along(cover.projection, fam)
    G = cover.group
    forms = {}
    for x, vals in pb.forms.items():
        _, h = cover.fiber_label[x]
        M = rep.mats[G.inv(h)]
        n = len(vals)
        out = []
        for a in range(n):
            acc = PolyForm.zero(vals[0].p, fam.q)
            for b in range(n):
                if M[a, b]:
                    acc = acc + vals[b].scale(M[a, b])
            out.append(acc)
        forms[x] = tuple(out)
    return forms


def phi_comparison(K, L: LocalSystem, Lp: LocalSystem, N: int, weight_cap: int, compose_samples=3) -> PhiReport:
    """Compare A_{<=W}(K, Hom(L, L')) with the pi_1-invariants of
    Hom_Vect(V, W) (x) A_{<=W}(cover) for all degrees <= N and weights <= weight_cap."""
    cover = universal_cover(K, L.labeling)
    Hsys = ls_hom(L, Lp)
    rep = Hsys.rep
    m = rep.dim
    report = PhiReport(L.name, Lp.name)
    top = min(N, K.dim)
    for W in range(weight_cap + 1):
        src = ADRComplex(Hsys, W)
        side = _CoverSide(cover, m, W)
        images = {}
        for q in range(top + 1):
            fams = src.basis_families(q)
            images[q] = [side.coords(q, _trivialized(f, cover, rep)) for f in fams]
        for q in range(top + 1):
            d = side.adr.components[q].dim
            blk = invariant_block(d, lambda g: side.action(q, g), rep, q)
            ims = images[q]
            r = row_space_rank(ims, d * m) if ims else 0
            inside = all(blk.contains(v) for v in ims)
            dok = True
            if q < K.dim:
                Dsrc = src.complex.diffs[q]
                Dcov = side.adr.complex.diffs[q]
                for j, v in enumerate(ims):
                    lhs = _apply_left(Dcov, v, m)
                    rhs = {}
                    for i, c in Dsrc.columns()[j].items():
                        for k, x in images[q + 1][i].items():
                            rhs[k] = rhs.get(k, 0) + c * x
                    if lhs != _clean(rhs):
                        dok = False
            report.rows.append(PhiRow(q, W, src.components[q].dim, r, blk.dim, inside, dok))
    report.composition_ok = _phi_composition(K, L, Lp, cover, min(weight_cap, 2), top, compose_samples)
    return report


def _phi_composition(K, L, Lp, cover, W, top, samples):
    """Phi(f o g) = Phi(f) o Phi(g) for f in Hom(L', L'), g in Hom(L, L')."""
    X = cover.space
    A1 = ADRComplex(ls_hom(Lp, Lp), W)
    A2 = ADRComplex(ls_hom(L, Lp), W)
    cL = constant_system(X, L.fiber_dim)
    cLp = constant_system(X, Lp.fiber_dim, labeling=cL.labeling)
    H1, H2 = ls_hom(cLp, cLp), ls_hom(cL, cLp)
    for q1 in range(top + 1):
        for q2 in range(top + 1 - q1):
            for f in A1.basis_families(q1)[:samples]:
                for g in A2.basis_families(q2)[:samples]:
                    fg = tdr_compose(K, f, g)
                    lhs = _trivialized(fg, cover, ls_hom(L, Lp).rep)
                    pf = MatchingFamily(H1, q1, _trivialized(f, cover, f.system.rep))
                    pg = MatchingFamily(H2, q2, _trivialized(g, cover, g.system.rep))
                    rhs = tdr_compose(X, pf, pg)
                    if MatchingFamily(rhs.system, rhs.q, lhs).forms != rhs.forms:
                        return False
    return True
