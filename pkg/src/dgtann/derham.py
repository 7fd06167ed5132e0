"""
Local systems on finite simplicial sets and their polynomial de Rham complexes.

A local system is stored as a representation of a finite group together with
an edge labeling: every nondegenerate simplex carries the same space V, placed
at its vertex 0, and the transport to the face starting at vertex k is
rho(label of the edge 0 -> k).

Forms on a p-simplex live in reduced coordinates t_1..t_p (t_0 = 1 - sum).
Face maps can lower the polynomial weight (d_0 sends t_1 to 1), so the
complex is filtered, not graded, by weight: A_{<=W}(K, L) collects the
matching families all of whose forms have weight at most W.  Each piece is a
finite subcomplex and A_dR is their union.  Stabilization at W is certified
by integration: the map A_{<=W}(K, L) -> C(K; L) to twisted simplicial
cochains must induce an isomorphism on cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactla import (CochainComplex, SparseMatrix, cohomology_dims, format_rational,
                      row_space_rank, sparse_kernel)
from .nabla import PolyForm, differential, filtration_keys, integrate, pullback, wedge
from .repcat import Representation, hom, oplus, qequal, tensor
from .simpset import EdgeLabeling, FinSimplicialSet, SimplicialError, SimplicialMap, twisted_cochain_complex


class LocalSystemError(ValueError):
    pass


# ---------------------------------------------------------------------------
# local systems


class LocalSystem:
    def __init__(self, K: FinSimplicialSet, rep: Representation, labeling: EdgeLabeling, name=None):
        if labeling.K is not K:
            raise LocalSystemError("labeling lives on a different simplicial set")
        if rep.group is not labeling.group and not rep.group.same_as(labeling.group):
            raise LocalSystemError("labeling group and representation group differ")
        self.K = K
        self.rep = rep
        self.labeling = labeling
        self.name = name or rep.name
        self.fiber_dim = rep.dim
        self.hom_of = None      # (source, target) when this is an internal hom

    def __repr__(self):
        return "LocalSystem(%s, rank %d)" % (self.name, self.fiber_dim)

    def transport(self, s, k):
        """L(s) -> L(face of s starting at vertex k)."""
        return self.rep.mats[self.labeling.transport(s, k)]

    def inverse_transport(self, s, k):
        G = self.labeling.group
        return self.rep.mats[G.inv(self.labeling.transport(s, k))]

    def along(self, x, theta):
        """L(theta) for x = (s, eta) in normal form: L(x) -> L(theta^* x)."""
        s, eta = x
        return self.transport(s, eta[theta[0]])

    def same(self, other: "LocalSystem") -> bool:
        if self is other:
            return True
        if self.K is not other.K or self.fiber_dim != other.fiber_dim:
            return False
        return all(qequal(self.transport(s, k), other.transport(s, k))
                   for s in self.K.simplices(1) for k in (0, 1))

    def check(self):
        """Functoriality L(theta phi) = L(phi) L(theta) over all pairs of face
        operators on nondegenerate simplices; degeneracies are identities by
        construction since L(s_i x) is defined through the nondegenerate x."""
        K = self.K
        for n in range(2, K.dim + 1):
            for s in K.simplices(n):
                x = (s, tuple(range(n + 1)))
                for j in range(n + 1):
                    theta = tuple(k for k in range(n + 1) if k != j)
                    y = K.apply(s, theta)
                    for i in range(n):
                        phi = tuple(k for k in range(n) if k != i)
                        comp = tuple(theta[k] for k in phi)
                        lhs = self.along(x, comp)
                        rhs = self.along(y, phi) @ self.along(x, theta)
                        if not qequal(lhs, rhs):
                            raise LocalSystemError("transport is not functorial on %r" % K.names[s])
        return True


def local_system_from_rep(K, labeling: EdgeLabeling, rep: Representation, name=None) -> LocalSystem:
    labeling.check()
    L = LocalSystem(K, rep, labeling, name)
    L.check()
    return L


def constant_system(K, dim=1, labeling=None) -> LocalSystem:
    lab = labeling or EdgeLabeling.trivial(K)
    return LocalSystem(K, Representation.trivial(lab.group, dim), lab, name="Q" if dim == 1 else "Q^%d" % dim)


def _compatible(L1: LocalSystem, L2: LocalSystem):
    if L1.K is not L2.K:
        raise LocalSystemError("local systems over different simplicial sets")
    if L1.labeling is L2.labeling:
        return
    a, b = L1.labeling, L2.labeling
    if not a.group.same_as(b.group) or a.labels != b.labels:
        raise LocalSystemError("local systems use different edge labelings")


def ls_tensor(L1, L2) -> LocalSystem:
    _compatible(L1, L2)
    return LocalSystem(L1.K, tensor(L1.rep, L2.rep), L1.labeling, "(%s*%s)" % (L1.name, L2.name))


def ls_hom(L1, L2) -> LocalSystem:
    _compatible(L1, L2)
    out = LocalSystem(L1.K, hom(L1.rep, L2.rep), L1.labeling, "Hom(%s,%s)" % (L1.name, L2.name))
    out.hom_of = (L1, L2)
    return out


def ls_oplus(L1, L2) -> LocalSystem:
    _compatible(L1, L2)
    return LocalSystem(L1.K, oplus(L1.rep, L2.rep), L1.labeling, "(%s+%s)" % (L1.name, L2.name))


def pullback_local_system(fmap: SimplicialMap, L: LocalSystem) -> LocalSystem:
    if fmap.dst is not L.K:
        raise LocalSystemError("map does not land in the base of the local system")
    K = fmap.src
    lab = L.labeling
    labels = {e: lab.label(fmap.image((e, (0, 1)))) for e in K.simplices(1)}
    out = LocalSystem(K, L.rep, EdgeLabeling(K, lab.group, labels), L.name)
    if L.hom_of is not None:
        out.hom_of = tuple(pullback_local_system(fmap, x) for x in L.hom_of)
    return out


# ---------------------------------------------------------------------------
# matching families


class MatchingFamily:
    """forms[s] is a tuple of fiber_dim PolyForms on the nondegenerate simplex s
    (coordinates in the fiber basis of L(s)); simplices of dimension below q
    carry nothing."""

    def __init__(self, system: LocalSystem, q: int, forms=None):
        self.system = system
        self.K = system.K
        self.q = q
        m = system.fiber_dim
        out = {}
        for n in range(q, self.K.dim + 1):
            for s in self.K.simplices(n):
                vals = (forms or {}).get(s)
                if vals is None:
                    vals = [PolyForm.zero(n, q)] * m
                vals = tuple(vals)
                if len(vals) != m or any(v.p != n or (v.q != q and v.terms) for v in vals):
                    raise LocalSystemError("bad forms on %r" % self.K.names[s])
                out[s] = tuple(v if v.q == q else PolyForm.zero(n, q) for v in vals)
        self.forms = out

    @property
    def degree(self):
        return self.q

    @property
    def weight(self):
        w = 0
        for vals in self.forms.values():
            for v in vals:
                if v.terms:
                    w = max(w, v.weight)
        return w

    def is_zero(self):
        return all(not v.terms for vals in self.forms.values() for v in vals)

    def __eq__(self, other):
        return (isinstance(other, MatchingFamily) and self.q == other.q
                and self.system.same(other.system) and self.forms == other.forms)

    def __add__(self, other):
        if other.q != self.q or not self.system.same(other.system):
            raise LocalSystemError("families of different type")
        return MatchingFamily(self.system, self.q,
                              {s: tuple(a + b for a, b in zip(v, other.forms[s])) for s, v in self.forms.items()})

    def scale(self, c):
        return MatchingFamily(self.system, self.q, {s: tuple(a.scale(c) for a in v) for s, v in self.forms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def d(self):
        K = self.K
        forms = {}
        for s, vals in self.forms.items():
            if K.dim_of[s] >= self.q + 1:
                forms[s] = tuple(differential(v) for v in vals)
        return MatchingFamily(self.system, self.q + 1, forms)

    def check(self):
        """Face compatibility: L(d_i) d_i^*(w_s) = eta^*(w_t) where d_i s = (t, eta)."""
        K, L, m = self.K, self.system, self.system.fiber_dim
        for s, vals in self.forms.items():
            n = K.dim_of[s]
            if n == 0:
                continue
            for i in range(n + 1):
                t, eta = K.faces[s][i]
                T = L.transport(s, 1 if i == 0 else 0)
                restricted = [pullback(_coface(i, n), v) for v in vals]
                moved = [_combine(T[b], restricted, n - 1, self.q) for b in range(m)]
                if K.dim_of[t] >= self.q:
                    target = [pullback(eta, v) for v in self.forms[t]]
                else:
                    target = [PolyForm.zero(n - 1, self.q)] * m
                if moved != target:
                    raise LocalSystemError("face %d of %r does not match" % (i, K.names[s]))
        return True

    def value_at_base(self):
        """The fiber element at the base vertex (degree 0)."""
        if self.q != 0:
            return None
        vals = self.forms[self.K.base]
        return tuple(v.terms.get(((), ()), Fraction(0)) for v in vals)

    def to_json(self):
        K = self.K
        return {
            "degree": self.q,
            "weight": self.weight,
            "system": self.system.name,
            "forms": {K.names[s]: [v.to_json() for v in vals] for s, vals in self.forms.items()
                      if any(v.terms for v in vals)},
        }

    def __repr__(self):
        return "MatchingFamily(degree %d, weight %d, %s)" % (self.q, self.weight, self.system.name)


def _coface(i, n):
    return tuple(k if k < i else k + 1 for k in range(n))


def _combine(row, forms, p, q):
    acc = PolyForm.zero(p, q)
    for c, f in zip(row, forms):
        if c:
            acc = acc + f.scale(c)
    return acc


# ---------------------------------------------------------------------------
# the filtered complex


class _Layout:
    """Coordinates (s, monomial, fiber index) of the ambient product over
    nondegenerate simplices in one degree and weight cap."""

    def __init__(self, K, m, q, w):
        self.q, self.w, self.m = q, w, m
        self.offset = {}
        self.keys = {}
        self.keypos = {}
        n = 0
        for p in range(q, K.dim + 1):
            for s in K.simplices(p):
                keys = filtration_keys(p, q, w)
                self.offset[s] = n
                self.keys[s] = keys
                self.keypos[s] = {k: i for i, k in enumerate(keys)}
                n += len(keys) * m
        self.size = n

    def col(self, s, key, a):
        return self.offset[s] + self.keypos[s][key] * self.m + a

    def decode(self, c):
        # only used for small debugging output; linear scan is fine
        for s, off in self.offset.items():
            span = len(self.keys[s]) * self.m
            if off <= c < off + span:
                k, a = divmod(c - off, self.m)
                return s, self.keys[s][k], a
        raise IndexError(c)


@dataclass
class ADRComponent:
    """Degree-q piece of A_{<=w}(K, L): a basis of matching families (as
    sparse vectors in the ambient layout) and the free columns used to read
    off coordinates."""

    q: int
    w: int
    layout: _Layout
    basis: list
    free: list

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, vec):
        return [vec.get(f, Fraction(0)) for f in self.free]


class ADRComplex:
    """A_{<=W}(K, L) as a finite cochain complex in degrees 0..dim K."""

    def __init__(self, system: LocalSystem, weight: int):
        self.system = system
        self.K = system.K
        self.weight = weight
        self.components = {q: _solve_component(system, q, weight) for q in range(self.K.dim + 1)}
        diffs = {}
        for q in range(self.K.dim):
            diffs[q] = self._differential(q)
        dims = {q: c.dim for q, c in self.components.items()}
        self.complex = CochainComplex(0, self.K.dim, dims, diffs)

    def _differential(self, q):
        src, dst = self.components[q], self.components[q + 1]
        entries = {}
        for j, v in enumerate(src.basis):
            dv = ambient_d(self.K, src.layout, dst.layout, v)
            coords = dst.coordinates(dv)
            if _expand(dst, coords) != dv:
                raise ArithmeticError("d left the matching subspace in degree %d" % q)
            for i, c in enumerate(coords):
                if c:
                    entries[i, j] = c
        return SparseMatrix(dst.dim, src.dim, entries)

    def family(self, q, coords) -> MatchingFamily:
        comp = self.components[q]
        return vector_to_family(self.system, comp.layout, _expand(comp, coords))

    def basis_families(self, q):
        comp = self.components[q]
        return [vector_to_family(self.system, comp.layout, v) for v in comp.basis]

    def coordinates_of(self, fam: MatchingFamily):
        comp = self.components[fam.q]
        return comp.coordinates(family_to_vector(fam, comp.layout))

    def cohomology(self):
        return cohomology_dims(self.complex)

    def integration_matrix(self, q):
        """Matrix of the integration map in degree q into twisted cochains."""
        comp = self.components[q]
        m = self.system.fiber_dim
        K = self.K
        top = tuple(range(1, q + 1))
        entries = {}
        for j, v in enumerate(comp.basis):
            for col, c in v.items():
                s, key, a = _decode_fast(comp.layout, col)
                if K.dim_of[s] != q or key[1] != top:
                    continue
                val = c * integrate(PolyForm(q, q, {key: 1}))
                if val:
                    r = K.pos[s] * m + a
                    entries[r, j] = entries.get((r, j), 0) + val
        return SparseMatrix(K.count(q) * m, comp.dim, {k: x for k, x in entries.items() if x})


def _decode_fast(layout, c):
    cache = layout.__dict__.setdefault("_dec", None)
    if cache is None:
        cache = {}
        for s, off in layout.offset.items():
            for k, key in enumerate(layout.keys[s]):
                for a in range(layout.m):
                    cache[off + k * layout.m + a] = (s, key, a)
        layout._dec = cache
    return cache[c]


def _expand(comp: ADRComponent, coords):
    out = {}
    for c, v in zip(coords, comp.basis):
        if c:
            for k, x in v.items():
                nv = out.get(k, 0) + c * x
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
    return out


def _solve_component(system: LocalSystem, q: int, w: int) -> ADRComponent:
    K, m = system.K, system.fiber_dim
    lay = _Layout(K, m, q, w)
    rows = {}

    def add(rk, col, v):
        row = rows.setdefault(rk, {})
        nv = row.get(col, 0) + v
        if nv:
            row[col] = nv
        else:
            row.pop(col, None)

    for p in range(q + 1, K.dim + 1):
        for s in K.simplices(p):
            for i in range(p + 1):
                t, eta = K.faces[s][i]
                T = system.transport(s, 1 if i == 0 else 0)
                cof = _coface(i, p)
                for key in lay.keys[s]:
                    img = pullback(cof, PolyForm(p, q, {key: 1}))
                    for okey, c in img.terms.items():
                        for a in range(m):
                            col = lay.col(s, key, a)
                            for b in range(m):
                                if T[b, a]:
                                    add((s, i, okey, b), col, c * T[b, a])
                if K.dim_of[t] >= q:
                    pt = K.dim_of[t]
                    for key in lay.keys[t]:
                        img = pullback(eta, PolyForm(pt, q, {key: 1}))
                        for okey, c in img.terms.items():
                            for a in range(m):
                                add((s, i, okey, a), lay.col(t, key, a), -c)
    mat = SparseMatrix.from_rows([r for r in rows.values() if r], lay.size)
    basis, free = sparse_kernel(mat)
    return ADRComponent(q, w, lay, basis, free)


def adr_component(K, L: LocalSystem, q: int, w: int) -> ADRComponent:
    """Degree-q matching families of weight at most w."""
    if L.K is not K:
        raise LocalSystemError("local system lives on a different simplicial set")
    return _solve_component(L, q, w)


_D_CACHE: dict = {}


def _d_monomial(p, q, key):
    hit = _D_CACHE.get((p, q, key))
    if hit is None:
        hit = differential(PolyForm(p, q, {key: 1})).terms
        _D_CACHE[p, q, key] = hit
    return hit


def ambient_d(K, src: _Layout, dst: _Layout, vec):
    out = {}
    for col, c in vec.items():
        s, key, a = _decode_fast(src, col)
        p = K.dim_of[s]
        if p < src.q + 1:
            continue
        for okey, x in _d_monomial(p, src.q, key).items():
            k = dst.col(s, okey, a)
            nv = out.get(k, 0) + c * x
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def vector_to_family(system, layout: _Layout, vec) -> MatchingFamily:
    K, m, q = system.K, system.fiber_dim, layout.q
    acc = {}
    for col, c in vec.items():
        s, key, a = _decode_fast(layout, col)
        acc.setdefault(s, [dict() for _ in range(m)])[a][key] = c
    forms = {s: tuple(PolyForm(K.dim_of[s], q, t) for t in terms) for s, terms in acc.items()}
    return MatchingFamily(system, q, forms)


def family_to_vector(fam: MatchingFamily, layout: _Layout):
    out = {}
    for s, vals in fam.forms.items():
        for a, v in enumerate(vals):
            for key, c in v.terms.items():
                if key not in layout.keypos[s]:
                    raise LocalSystemError("family exceeds the weight cap %d" % layout.w)
                out[layout.col(s, key, a)] = c
    return out


# ---------------------------------------------------------------------------
# cohomology with stabilization


@dataclass
class WeightRow:
    weight: int
    cochain_dims: dict
    cohomology: dict
    image_ranks: dict


@dataclass
class StabilizationReport:
    system: str
    oracle: dict
    rows: list = field(default_factory=list)
    stabilized: bool = False
    weight: int | None = None

    @property
    def dims(self):
        if self.stabilized:
            return dict(self.rows[-1].cohomology)
        return None

    def to_json(self):
        return {
            "system": self.system,
            "oracle": {str(k): v for k, v in self.oracle.items()},
            "stabilized": self.stabilized,
            "weight": self.weight,
            "cohomology": None if self.dims is None else {str(k): v for k, v in self.dims.items()},
            "per_weight": [
                {"weight": r.weight,
                 "cochain_dims": {str(k): v for k, v in r.cochain_dims.items()},
                 "cohomology": {str(k): v for k, v in r.cohomology.items()},
                 "image_ranks": {str(k): v for k, v in r.image_ranks.items()}}
                for r in self.rows
            ],
        }

    def csv_rows(self):
        out = [("weight", "degree", "cochain_dim", "cohomology", "image_rank", "oracle")]
        for r in self.rows:
            for q in sorted(r.cochain_dims):
                out.append((r.weight, q, r.cochain_dims[q], r.cohomology[q], r.image_ranks[q], self.oracle.get(q, 0)))
        return out


def integration_on_cohomology(adr: ADRComplex, oracle_complex: CochainComplex):
    """Rank in each degree of the map induced on cohomology by integration.
    Also checks that integration is a chain map."""
    K = adr.K
    ranks = {}
    for q in range(K.dim + 1):
        I = adr.integration_matrix(q)
        if q < K.dim:
            lhs = oracle_complex.diffs[q] @ I
            rhs = adr.integration_matrix(q + 1) @ adr.complex.diffs[q]
            if lhs != rhs:
                raise ArithmeticError("integration is not a chain map in degree %d" % q)
        cycles, _ = sparse_kernel(adr.complex.diffs[q])
        images = [I.apply(z) for z in cycles]
        bounds = oracle_complex.diffs[q - 1].columns() if q > 0 else []
        ranks[q] = row_space_rank(images + bounds, I.nrows) - row_space_rank(bounds, I.nrows)
    return ranks


def adr_cohomology(K, L: LocalSystem, weight_cap: int = 8, start: int = 0) -> StabilizationReport:
    """Cohomology of A_{<=W}(K, L) for W = start, start+1, ... until the
    integration map to twisted cochains is an isomorphism on cohomology."""
    if weight_cap < 0:
        raise ValueError("weight_cap must be nonnegative")
    if L.K is not K:
        raise LocalSystemError("local system lives on a different simplicial set")
    oracle_cx = twisted_cochain_complex(K, L)
    oracle = cohomology_dims(oracle_cx)
    rep = StabilizationReport(L.name, oracle)
    for W in range(start, weight_cap + 1):
        adr = ADRComplex(L, W)
        H = adr.cohomology()
        ranks = integration_on_cohomology(adr, oracle_cx)
        for q, r in ranks.items():
            if r > oracle[q]:
                raise ArithmeticError("image rank exceeds the oracle in degree %d" % q)
        rep.rows.append(WeightRow(W, dict(adr.complex.dims), H, ranks))
        if all(H[q] == oracle[q] == ranks[q] for q in oracle):
            rep.stabilized = True
            rep.weight = W
            break
    return rep


# ---------------------------------------------------------------------------
# T_dR(K): hom complexes and composition


class TdrHomComplex:
    """Hom_{T_dR(K)}(L, L') = A_dR(K, Hom(L, L')), one finite complex per weight cap."""

    def __init__(self, source: LocalSystem, target: LocalSystem):
        self.source, self.target = source, target
        self.K = source.K
        self.system = ls_hom(source, target)
        self._pieces = {}

    def piece(self, w) -> ADRComplex:
        if w not in self._pieces:
            self._pieces[w] = ADRComplex(self.system, w)
        return self._pieces[w]

    def complex(self, w) -> CochainComplex:
        return self.piece(w).complex

    def identity(self) -> MatchingFamily:
        if not self.source.same(self.target):
            raise LocalSystemError("identity needs L = L'")
        return identity_family(self.source)

    def cohomology(self, weight_cap=8) -> StabilizationReport:
        return adr_cohomology(self.K, self.system, weight_cap)


def identity_family(L: LocalSystem) -> MatchingFamily:
    H = ls_hom(L, L)
    n = L.fiber_dim
    forms = {}
    for p in range(L.K.dim + 1):
        for s in L.K.simplices(p):
            forms[s] = tuple(PolyForm.one(p) if i == j else PolyForm.zero(p) for i in range(n) for j in range(n))
    return MatchingFamily(H, 0, forms)


def _hom_ends(fam: MatchingFamily):
    if fam.system.hom_of is None:
        raise LocalSystemError("not a family in an internal hom system")
    return fam.system.hom_of


def tdr_compose(K, f: MatchingFamily, g: MatchingFamily) -> MatchingFamily:
    """f in Hom(L', L''), g in Hom(L, L'): simplexwise wedge and compose."""
    if f.K is not K or g.K is not K:
        raise LocalSystemError("families over different simplicial sets")
    Lp, Lpp = _hom_ends(f)
    L, Lp2 = _hom_ends(g)
    if not Lp.same(Lp2):
        raise LocalSystemError("families are not composable")
    a, b, c = L.fiber_dim, Lp.fiber_dim, Lpp.fiber_dim
    q = f.q + g.q
    forms = {}
    for p in range(q, K.dim + 1):
        for s in K.simplices(p):
            F, G = f.forms[s], g.forms[s]
            vals = []
            for i in range(c):
                for k in range(a):
                    acc = PolyForm.zero(p, q)
                    for j in range(b):
                        x, y = F[i * b + j], G[j * a + k]
                        if x.terms and y.terms:
                            acc = acc + wedge(x, y)
                    vals.append(acc)
            forms[s] = tuple(vals)
    return MatchingFamily(ls_hom(L, Lpp), q, forms)


def internal_hom_action(f: MatchingFamily, g: MatchingFamily, alpha: MatchingFamily) -> MatchingFamily:
    """Hom(f, g)(alpha) = (-1)^{deg f (deg g + deg alpha)} g o alpha o f."""
    K = alpha.K
    out = tdr_compose(K, g, tdr_compose(K, alpha, f))
    if (f.q * (g.q + alpha.q)) % 2:
        out = -out
    return out


def pullback_along(fmap: SimplicialMap, fam: MatchingFamily) -> MatchingFamily:
    if fmap.dst is not fam.K:
        raise SimplicialError("map does not land in the base of the family")
    L = pullback_local_system(fmap, fam.system)
    K = fmap.src
    forms = {}
    for p in range(fam.q, K.dim + 1):
        for s in K.simplices(p):
            t, eta = fmap.images[s]
            if K.dim_of[s] >= 0 and fam.K.dim_of[t] >= fam.q:
                forms[s] = tuple(pullback(eta, v) for v in fam.forms[t])
    return MatchingFamily(L, fam.q, forms)


def flat_sections(L: LocalSystem) -> list:
    """Degree-0 cocycles of A_{<=0}(K, L), i.e. families of constant sections."""
    adr = ADRComplex(L, 0)
    cyc, _ = sparse_kernel(adr.complex.diffs[0]) if L.K.dim > 0 else ([{i: Fraction(1)} for i in range(adr.components[0].dim)], None)
    return [adr.family(0, [z.get(i, Fraction(0)) for i in range(adr.components[0].dim)]) for z in cyc]


def dims_table(report: StabilizationReport):
    """Rows of formatted strings for display."""
    return [[str(x) if not isinstance(x, Fraction) else format_rational(x) for x in r] for r in report.csv_rows()]
