"""
Finite-dimensional rational representations of a finite group.

Matrices are numpy object arrays holding Fractions.  A map f: V -> W is a
dim W x dim V matrix; the internal hom is vectorized row-major, so the
entry f[i, j] sits at coordinate i * dim V + j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactla import SparseMatrix, format_rational, inverse, parse_rational, rank, solve, sparse_kernel
from .groups import FiniteGroup
from .simpset import BudgetExceeded


class RepError(ValueError):
    pass


def qmat(rows) -> np.ndarray:
    rows = [[Fraction(x) if not isinstance(x, str) else parse_rational(x) for x in r] for r in rows]
    if not rows:
        return np.empty((0, 0), dtype=object)
    return np.array(rows, dtype=object).reshape(len(rows), len(rows[0]))


def qeye(n) -> np.ndarray:
    m = np.empty((n, n), dtype=object)
    m[...] = Fraction(0)
    for i in range(n):
        m[i, i] = Fraction(1)
    return m


def qzeros(r, c) -> np.ndarray:
    m = np.empty((r, c), dtype=object)
    m[...] = Fraction(0)
    return m


def to_sparse(m: np.ndarray) -> SparseMatrix:
    r, c = m.shape
    return SparseMatrix(r, c, {(i, j): m[i, j] for i in range(r) for j in range(c) if m[i, j]})


def from_sparse(s: SparseMatrix) -> np.ndarray:
    m = qzeros(*s.shape)
    for (i, j), v in s.items():
        m[i, j] = v
    return m


def qinv(m: np.ndarray) -> np.ndarray:
    if m.shape == (0, 0):
        return m
    return from_sparse(inverse(to_sparse(m)))


def qequal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool((a == b).all())


def as_int_if_integral(m: np.ndarray) -> np.ndarray:
    """int64 copy of an integral Fraction matrix with small entries (fast products); else m."""
    if all(getattr(x, "denominator", 1) == 1 and abs(x) < 2 ** 20 for x in m.flat):
        return np.array([[int(x) for x in row] for row in m], dtype=np.int64).reshape(m.shape)
    return m


def qrank(m: np.ndarray) -> int:
    return rank(to_sparse(m))


class Representation:
    """rho: G -> GL_n(Q), stored as one matrix per group element."""

    def __init__(self, group: FiniteGroup, dim: int, mats, name=None, validate=True):
        self.group = group
        self.dim = int(dim)
        mats = [np.asarray(m, dtype=object).reshape(self.dim, self.dim) for m in mats]
        if len(mats) != len(group):
            raise RepError("need one matrix per group element")
        self.mats = tuple(mats)
        self.name = name
        if validate:
            self.check()

    def __call__(self, g):
        return self.mats[self.group.index(g)]

    def check(self):
        G = self.group
        if not qequal(self.mats[G.identity], qeye(self.dim)):
            raise RepError("rho(e) is not the identity")
        mats = [as_int_if_integral(m) for m in self.mats]
        for a in G:
            for b in G:
                if not (mats[G.mul(a, b)] == mats[a] @ mats[b]).all():
                    raise RepError("rho(%s%s) != rho(%s)rho(%s)" % (G.names[a], G.names[b], G.names[a], G.names[b]))
        return True

    def character(self):
        return tuple(sum((m[i, i] for i in range(self.dim)), Fraction(0)) for m in self.mats)

    def __repr__(self):
        return "Representation(%s, dim=%d, |G|=%d)" % (self.name or "?", self.dim, len(self.group))

    # constructors -----------------------------------------------------------

    @classmethod
    def trivial(cls, G, dim=1):
        return cls(G, dim, [qeye(dim) for _ in G], name="1" if dim == 1 else "trivial%d" % dim, validate=False)

    @classmethod
    def zero(cls, G):
        return cls(G, 0, [qeye(0) for _ in G], name="0", validate=False)

    @classmethod
    def from_generators(cls, G: FiniteGroup, images: dict, name=None):
        """Extend images of generating elements to all of G (checked)."""
        images = {G.index(g): qmat(m) if not isinstance(m, np.ndarray) else m for g, m in images.items()}
        dim = next(iter(images.values())).shape[0] if images else 0
        mats = {G.identity: qeye(dim)}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, m in images.items():
                    y = G.mul(x, g)
                    if y not in mats:
                        mats[y] = mats[x] @ m
                        nxt.append(y)
            frontier = nxt
        if len(mats) != len(G):
            raise RepError("images do not generate the group")
        return cls(G, dim, [mats[a] for a in G], name=name)

    @classmethod
    def from_character_sign(cls, G, signs, name=None):
        """1-dimensional rep from a list of +-1 (one per element)."""
        return cls(G, 1, [qmat([[s]]) for s in signs], name=name)

    # serialization ----------------------------------------------------------

    def to_json(self, group_ref="G"):
        return {
            "group": group_ref,
            "dim": self.dim,
            "matrices": {
                self.group.names[a]: [[format_rational(x) for x in row] for row in self.mats[a]]
                for a in self.group
            },
        }

    @classmethod
    def from_json(cls, obj, group: FiniteGroup, name=None):
        dim = int(obj["dim"])
        mats = obj["matrices"]
        if set(mats) == set(group.names):
            return cls(group, dim, [qmat(mats[n]) if dim else qeye(0) for n in group.names], name=name)
        # only some elements given: treat them as generators
        return cls.from_generators(group, {n: qmat(m) for n, m in mats.items()}, name=name)


@dataclass
class RepMorphism:
    source: Representation
    target: Representation
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=object).reshape(self.target.dim, self.source.dim)
        if not self.is_equivariant():
            raise RepError("matrix is not equivariant")

    def is_equivariant(self):
        for a in self.source.group:
            if not qequal(self.matrix @ self.source.mats[a], self.target.mats[a] @ self.matrix):
                return False
        return True

    def __matmul__(self, other: "RepMorphism"):
        return RepMorphism(other.source, self.target, self.matrix @ other.matrix)


def _same_group(V, W):
    if V.group is not W.group and not V.group.same_as(W.group):
        raise RepError("representations of different groups")


def tensor(V: Representation, W: Representation) -> Representation:
    _same_group(V, W)
    mats = [np.kron(V.mats[a], W.mats[a]) if V.dim and W.dim else qeye(V.dim * W.dim) for a in V.group]
    return Representation(V.group, V.dim * W.dim, mats, name="(%s*%s)" % (V.name, W.name), validate=False)


def hom(V: Representation, W: Representation) -> Representation:
    """Internal hom: g.f = rho_W(g) f rho_V(g)^-1."""
    _same_group(V, W)
    G = V.group
    n = V.dim * W.dim
    mats = []
    for a in G:
        if n:
            mats.append(np.kron(W.mats[a], V.mats[G.inv(a)].T))
        else:
            mats.append(qeye(0))
    return Representation(G, n, mats, name="Hom(%s,%s)" % (V.name, W.name), validate=False)


def oplus(V: Representation, W: Representation) -> Representation:
    _same_group(V, W)
    n = V.dim + W.dim
    mats = []
    for a in V.group:
        m = qzeros(n, n)
        m[: V.dim, : V.dim] = V.mats[a]
        m[V.dim:, V.dim:] = W.mats[a]
        mats.append(m)
    return Representation(V.group, n, mats, name="(%s+%s)" % (V.name, W.name), validate=False)


def dual(V: Representation) -> Representation:
    G = V.group
    return Representation(G, V.dim, [V.mats[G.inv(a)].T.copy() for a in G], name="%s^" % V.name, validate=False)


def underlying_trivial(V: Representation) -> Representation:
    return Representation.trivial(V.group, V.dim)


def sign_rep(G: FiniteGroup, signs) -> Representation:
    return Representation.from_character_sign(G, signs, name="V-")


# ---------------------------------------------------------------------------
# equivariant maps


def equivariance_system(V: Representation, W: Representation, elements=None) -> SparseMatrix:
    """Rows encode f rho_V(g) - rho_W(g) f = 0 in the row-major coordinates of f."""
    G = V.group
    n, m = V.dim, W.dim
    elements = list(G) if elements is None else elements
    entries = {}
    r = 0
    for a in elements:
        A, B = V.mats[a], W.mats[a]
        for i in range(m):
            for j in range(n):
                # (f A)[i,j] - (B f)[i,j]
                for k in range(n):
                    if A[k, j]:
                        key = (r, i * n + k)
                        entries[key] = entries.get(key, 0) + A[k, j]
                for k in range(m):
                    if B[i, k]:
                        key = (r, k * n + j)
                        entries[key] = entries.get(key, 0) - B[i, k]
                r += 1
    return SparseMatrix(r, n * m, entries)


def equivariant_maps(V: Representation, W: Representation) -> list[np.ndarray]:
    """Basis of Hom_G(V, W) as dim W x dim V matrices."""
    _same_group(V, W)
    if V.dim == 0 or W.dim == 0:
        return []
    gens = V.group._generators()
    vecs, _ = sparse_kernel(equivariance_system(V, W, gens))
    out = []
    for v in vecs:
        m = qzeros(W.dim, V.dim)
        for idx, x in v.items():
            m[idx // V.dim, idx % V.dim] = x
        out.append(m)
    return out


def hom_dim(V, W):
    return len(equivariant_maps(V, W))


# ---------------------------------------------------------------------------
# regular representation


@dataclass
class RegularRepresentation:
    rep: Representation            # left action [rho(g) a](x) = a(x g)
    right: tuple                   # right action [varrho(g) a](x) = a(g x)

    @property
    def group(self):
        return self.rep.group

    def multiplication(self) -> np.ndarray:
        """Pointwise product V_r (x) V_r -> V_r on the delta basis."""
        n = len(self.group)
        m = qzeros(n, n * n)
        for a in range(n):
            m[a, a * n + a] = Fraction(1)
        return m

    def unit(self) -> np.ndarray:
        n = len(self.group)
        m = qzeros(n, 1)
        m[:, 0] = Fraction(1)
        return m


def regular_representation(G: FiniteGroup) -> RegularRepresentation:
    n = len(G)
    left, right = [], []
    for g in G:
        L, R = qzeros(n, n), qzeros(n, n)
        ginv = G.inv(g)
        for x in G:
            L[G.mul(x, ginv), x] = Fraction(1)
            R[G.mul(ginv, x), x] = Fraction(1)
        left.append(L)
        right.append(R)
    return RegularRepresentation(Representation(G, n, left, name="V_r"), tuple(right))


@dataclass
class PhiEmbedding:
    morphism: RepMorphism          # V -> Hom(V_u^dual, V_r)
    retraction: np.ndarray         # evaluation at e; linear left inverse
    equivariant_retraction: np.ndarray


def phi_embedding(V: Representation) -> PhiEmbedding:
    """phi_V(v)(v')(g) = <v', g v>; coordinates of the target are (g, i)."""
    G = V.group
    n, N = V.dim, len(G)
    reg = regular_representation(G)
    target = hom(dual(underlying_trivial(V)), reg.rep)
    phi = qzeros(N * n, n)
    for g in G:
        phi[g * n: (g + 1) * n, :] = V.mats[g]
    r = qzeros(n, N * n)
    e = G.identity
    for i in range(n):
        r[i, e * n + i] = Fraction(1)
    avg = qzeros(n, N * n)
    for g in G:
        avg = avg + V.mats[g] @ r @ target.mats[G.inv(g)]
    avg = avg * Fraction(1, N)
    return PhiEmbedding(RepMorphism(V, target, phi), r, avg)


# ---------------------------------------------------------------------------
# Tannaka reconstruction


def _commutant(mats, n):
    rows = []
    basis = None
    k = 0
    batch = 1
    while k < len(mats):
        for E in mats[k:k + batch]:
            for i in range(n):
                for j in range(n):
                    row = {}
                    for m in range(n):
                        if E[m, j]:
                            row[i * n + m] = row.get(i * n + m, 0) + E[m, j]
                        if E[i, m]:
                            row[m * n + j] = row.get(m * n + j, 0) - E[i, m]
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        rows.append(row)
        k += batch
        batch *= 2
        vecs, _ = sparse_kernel(SparseMatrix.from_rows(rows, n * n))
        basis = vecs
        if len(vecs) <= n:
            break
    if basis is None:
        basis, _ = sparse_kernel(SparseMatrix(0, n * n))
    out = []
    for v in basis:
        m = qzeros(n, n)
        for idx, x in v.items():
            m[idx // n, idx % n] = x
        out.append(m)
    return out


def _respects_product(alpha, mult_terms, n):
    # alpha(m(u, v)) == m(alpha u, alpha v) on all basis pairs; m is sparse
    cols = [alpha[:, j] for j in range(n)]
    for x in range(n):
        for y in range(n):
            lhs = [Fraction(0)] * n
            for r, i, j, c in mult_terms:
                if i == x and j == y:
                    for s in range(n):
                        lhs[s] += alpha[s, r] * c
            rhs = [Fraction(0)] * n
            ax, ay = cols[x], cols[y]
            for r, i, j, c in mult_terms:
                if ax[i] and ay[j]:
                    rhs[r] += ax[i] * ay[j] * c
            if lhs != rhs:
                return False
    return True


@dataclass
class TannakaResult:
    group: FiniteGroup             # the reconstructed Aut(omega), elements listed by matrix
    automorphisms: list            # matrices on omega(V_r)
    iso: tuple                     # iso[g] = index of phi_G(g) in `automorphisms`

    @property
    def order(self):
        return len(self.group)


def tensor_automorphisms(G: FiniteGroup, budget: int = 24) -> TannakaResult:
    """Tensor automorphisms of the fiber functor, solved on the regular representation.

    Candidates are the invertible maps of omega(V_r) that commute with every
    equivariant endomorphism of V_r and respect the multiplication
    V_r (x) V_r -> V_r and the unit 1 -> V_r.
    """
    n = len(G)
    if n > budget:
        raise BudgetExceeded("group of order %d exceeds the Tannaka budget %d" % (n, budget))
    reg = regular_representation(G)
    Vr = reg.rep
    ends = equivariant_maps(Vr, Vr)
    fast_ends = [as_int_if_integral(E) for E in ends]
    # commutant of End_G(V_r): alpha E - E alpha = 0, alpha row-major.
    # It always contains the n independent maps rho(g), so constraints are
    # added in growing batches until the solution space is down to n.
    basis = _commutant(ends, n)
    mult = reg.multiplication()
    unit = reg.unit()
    mult_terms = [(r, c // n, c % n, mult[r, c]) for r in range(n) for c in range(n * n) if mult[r, c]]
    e = G.identity
    found = []
    # an algebra automorphism of Q^G permutes the minimal idempotents delta_x;
    # alpha(delta_e) = delta_k pins alpha down inside the commutant
    for k in range(n):
        cols = [{i: b[i, e] for i in range(n) if b[i, e]} for b in basis]
        A = SparseMatrix.from_columns(cols, n)
        sol = solve(A, {k: Fraction(1)})
        if sol is None:
            continue
        alpha = qzeros(n, n)
        for j, c in sol.items():
            alpha = alpha + basis[j] * c
        if qrank(alpha) != n:
            continue
        if not _respects_product(alpha, mult_terms, n):
            continue
        if not qequal(alpha @ unit, unit):
            continue
        fa = as_int_if_integral(alpha)
        if any(not (fa @ E == E @ fa).all() for E in fast_ends):
            continue
        found.append(alpha)
    images = []
    for g in G:
        hits = [i for i, a in enumerate(found) if qequal(a, Vr.mats[g])]
        if len(hits) != 1:
            raise RuntimeError("phi_G(%s) is not among the computed automorphisms" % G.names[g])
        images.append(hits[0])
    if len(found) != n or len(set(images)) != n:
        raise RuntimeError("Aut(omega) has %d elements, expected %d" % (len(found), n))
    m = len(found)
    fast = [as_int_if_integral(a) for a in found]
    table = []
    for a in range(m):
        row = []
        for b in range(m):
            prod = fast[a] @ fast[b]
            hit = [c for c in range(m) if (fast[c] == prod).all()]
            if len(hit) != 1:
                raise RuntimeError("automorphisms are not closed under composition")
            row.append(hit[0])
        table.append(tuple(row))
    names = tuple("phi(%s)" % G.names[images.index(a)] for a in range(m))
    aut = FiniteGroup(names, tuple(table))
    iso = tuple(images)
    for a in G:
        for b in G:
            if iso[G.mul(a, b)] != aut.mul(iso[a], iso[b]):
                raise RuntimeError("phi_G is not a homomorphism")
    return TannakaResult(aut, found, iso)
