"""
Finite simplicial sets stored by their nondegenerate simplices.

Every simplex is written in Eilenberg-Zilber normal form (tau, eta): a
nondegenerate simplex tau and a monotone surjection eta: [n] -> [dim tau].
A nondegenerate simplex has eta = identity.  Faces of nondegenerate
simplices are part of the data; everything else is derived through
`FinSimplicialSet.apply`.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .exactla import CochainComplex, SparseMatrix
from .groups import FiniteGroup


class SimplicialError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Coset enumeration (or another enumeration) ran past its budget."""


def _identity(n):
    return tuple(range(n + 1))


def degeneracy_word_to_surjection(word, m):
    """eta for s_{i1} s_{i2} ... s_{ik} applied to an m-simplex."""
    n = m + len(word)
    vals = list(range(n + 1))
    for i in word:
        vals = [v if v <= i else v - 1 for v in vals]
    if vals != sorted(vals) or set(vals) != set(range(m + 1)):
        raise SimplicialError("degeneracy word %r invalid on an %d-simplex" % (list(word), m))
    return tuple(vals)


def surjection_to_degeneracy_word(eta):
    """Canonical word s_{i1}...s_{ik} with i1 > ... > ik."""
    word = [j for j in range(len(eta) - 1) if eta[j] == eta[j + 1]]
    return sorted(word, reverse=True)


class FinSimplicialSet:
    def __init__(self, names_by_dim, faces, base=None, validate=True):
        """
        names_by_dim: list (per dimension) of simplex names.
        faces: {name: [(target_name, eta), ...]} for every simplex of dim >= 1,
               eta a surjection tuple onto [dim target].
        """
        if not names_by_dim or not names_by_dim[0]:
            raise SimplicialError("the empty simplicial set is not supported")
        self.names = []
        self.dim_of = []
        self.by_dim = []
        index = {}
        for d, names in enumerate(names_by_dim):
            ids = []
            for nm in names:
                nm = str(nm)
                if nm in index:
                    raise SimplicialError("duplicate simplex name %r" % nm)
                index[nm] = len(self.names)
                ids.append(len(self.names))
                self.names.append(nm)
                self.dim_of.append(d)
            self.by_dim.append(tuple(ids))
        self.index = index
        self.top = len(self.by_dim) - 1
        while self.top > 0 and not self.by_dim[self.top]:
            self.top -= 1
        self.by_dim = self.by_dim[: self.top + 1]
        self.pos = {}
        for ids in self.by_dim:
            for k, s in enumerate(ids):
                self.pos[s] = k
        self.faces = [()] * len(self.names)
        for nm, lst in faces.items():
            s = self.id(nm)
            n = self.dim_of[s]
            if len(lst) != n + 1:
                raise SimplicialError("%r needs %d faces, got %d" % (nm, n + 1, len(lst)))
            out = []
            for tgt, eta in lst:
                t = self.id(tgt)
                eta = tuple(eta)
                if len(eta) != n or sorted(set(eta)) != list(range(self.dim_of[t] + 1)) or list(eta) != sorted(eta):
                    raise SimplicialError("face of %r: bad surjection %r onto %r" % (nm, eta, tgt))
                out.append((t, eta))
            self.faces[s] = tuple(out)
        for s in range(len(self.names)):
            if self.dim_of[s] >= 1 and not self.faces[s]:
                raise SimplicialError("missing faces for %r" % self.names[s])
        if not self.by_dim or not self.by_dim[0]:
            raise SimplicialError("empty simplicial set")
        self.base = self.id(base) if base is not None else self.by_dim[0][0]
        if self.dim_of[self.base] != 0:
            raise SimplicialError("base point must be a vertex")
        self._cache = {}
        if validate:
            self.check_identities()

    # lookup -----------------------------------------------------------------

    def id(self, name):
        if isinstance(name, int) and not isinstance(name, bool):
            if not 0 <= name < len(self.names):
                raise SimplicialError("no simplex #%d" % name)
            return name
        try:
            return self.index[str(name)]
        except KeyError:
            raise SimplicialError("unknown simplex %r" % (name,)) from None

    def simplices(self, n):
        return self.by_dim[n] if 0 <= n <= self.top else ()

    def count(self, n):
        return len(self.simplices(n))

    def counts(self):
        return [len(ids) for ids in self.by_dim]

    @property
    def dim(self):
        return self.top

    def euler_characteristic(self):
        return sum((-1) ** n * c for n, c in enumerate(self.counts()))

    # simplicial operators -----------------------------------------------------

    def apply(self, s, theta):
        """Normal form of theta^*(s) for a nondegenerate s and monotone theta."""
        theta = tuple(theta)
        key = (s, theta)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        n = self.dim_of[s]
        if any(not 0 <= x <= n for x in theta) or list(theta) != sorted(theta):
            raise SimplicialError("operator %r invalid on a %d-simplex" % (theta, n))
        img = set(theta)
        if len(img) == n + 1:
            out = (s, theta)
        else:
            j = min(set(range(n + 1)) - img)
            reduced = tuple(x if x < j else x - 1 for x in theta)
            t, eta = self.faces[s][j]
            out = self.apply(t, tuple(eta[x] for x in reduced))
        self._cache[key] = out
        return out

    def face(self, s, i):
        n = self.dim_of[s]
        if not 0 <= i <= n or n == 0:
            raise SimplicialError("d_%d undefined on %r" % (i, self.names[s]))
        return self.faces[s][i]

    def face_of(self, x, i):
        """d_i of a simplex in normal form."""
        t, eta = x
        n = len(eta) - 1
        theta = tuple(eta[k] for k in range(n + 1) if k != i)
        return self.apply(t, theta)

    def vertices(self, s):
        return tuple(self.apply(s, (k,))[0] for k in range(self.dim_of[s] + 1))

    def edge(self, s, j, k):
        """Normal form of the edge from vertex j to vertex k of s."""
        return self.apply(s, (j, k))

    def check_identities(self):
        for s in range(len(self.names)):
            n = self.dim_of[s]
            if n < 2:
                continue
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    lhs = self.face_of(self.faces[s][j], i)
                    rhs = self.face_of(self.faces[s][i], j - 1)
                    if lhs != rhs:
                        raise SimplicialError(
                            "d_%d d_%d != d_%d d_%d on %r" % (i, j, j - 1, i, self.names[s]))
        return True

    # connectivity -------------------------------------------------------------

    def edge_endpoints(self, e):
        return self.apply(e, (0,))[0], self.apply(e, (1,))[0]

    def components(self):
        parent = {v: v for v in self.simplices(0)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.simplices(1):
            a, b = self.edge_endpoints(e)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for v in self.simplices(0):
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_connected(self):
        return len(self.components()) == 1

    # serialization ------------------------------------------------------------

    def to_json(self):
        faces = {}
        for s in range(len(self.names)):
            if self.dim_of[s] >= 1:
                faces[self.names[s]] = [
                    {"degeneracies": surjection_to_degeneracy_word(eta), "target": self.names[t]}
                    for t, eta in self.faces[s]
                ]
        return {
            "dim": self.top,
            "simplices": [[self.names[s] for s in ids] for ids in self.by_dim],
            "faces": faces,
            "base": self.names[self.base],
        }

    @classmethod
    def from_json(cls, obj):
        sims = obj["simplices"]
        dim_of = {}
        for d, names in enumerate(sims):
            for nm in names:
                dim_of[str(nm)] = d
        faces = {}
        for nm, lst in obj.get("faces", {}).items():
            out = []
            for f in lst:
                tgt = str(f["target"])
                if tgt not in dim_of:
                    raise SimplicialError("face target %r unknown" % tgt)
                out.append((tgt, degeneracy_word_to_surjection(f.get("degeneracies", []), dim_of[tgt])))
            faces[str(nm)] = out
        return cls(sims, faces, base=obj.get("base"))

    # constructors -------------------------------------------------------------

    @classmethod
    def from_facets(cls, facets, base=None):
        """Ordered simplicial complex generated by the given facets (vertex tuples)."""
        cells = set()
        for f in facets:
            f = tuple(sorted(f))
            if len(set(f)) != len(f):
                raise SimplicialError("repeated vertex in facet %r" % (f,))
            for k in range(1, len(f) + 1):
                cells.update(itertools.combinations(f, k))
        if not cells:
            raise SimplicialError("the empty simplicial set is not supported")
        top = max(len(c) for c in cells) - 1
        by_dim = [sorted(c for c in cells if len(c) == d + 1) for d in range(top + 1)]
        name = lambda c: "".join(str(v) for v in c) if all(len(str(v)) == 1 for v in c) else "-".join(map(str, c))
        names = [[name(c) for c in cs] for cs in by_dim]
        faces = {}
        for cs in by_dim[1:]:
            for c in cs:
                n = len(c) - 1
                faces[name(c)] = [(name(c[:i] + c[i + 1:]), _identity(n - 1)) for i in range(n + 1)]
        if base is not None:
            base = name((base,))
        return cls(names, faces, base=base)

    def __repr__(self):
        return "FinSimplicialSet(counts=%s)" % self.counts()


def standard_simplex(n):
    return FinSimplicialSet.from_facets([tuple(range(n + 1))])


def boundary_simplex(n):
    full = tuple(range(n + 1))
    return FinSimplicialSet.from_facets([full[:i] + full[i + 1:] for i in range(n + 1)])


RP2_6_FACETS = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
)


def rp2_6():
    """Six-vertex triangulation of the real projective plane."""
    return FinSimplicialSet.from_facets(RP2_6_FACETS)


def torus_3x3():
    """The 9-vertex, 18-triangle triangulation of the 2-torus on a 3x3 grid."""
    v = lambda i, j: 3 * (i % 3) + (j % 3)
    facets = []
    for i in range(3):
        for j in range(3):
            facets.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            facets.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return FinSimplicialSet.from_facets(facets)


# ---------------------------------------------------------------------------
# simplicial maps


class SimplicialMap:
    """images[s] = normal form (target simplex, eta) of the image of nondegenerate s."""

    def __init__(self, src: FinSimplicialSet, dst: FinSimplicialSet, images, validate=True):
        self.src, self.dst = src, dst
        imgs = {}
        for k, (t, eta) in images.items():
            imgs[src.id(k)] = (dst.id(t), tuple(eta))
        missing = [src.names[s] for s in range(len(src.names)) if s not in imgs]
        if missing:
            raise SimplicialError("map undefined on %r" % missing[:5])
        for s, (t, eta) in imgs.items():
            if len(eta) != src.dim_of[s] + 1:
                raise SimplicialError("image of %r has wrong dimension" % src.names[s])
        self.images = imgs
        if validate:
            self.check()

    def image(self, x):
        """Image of a simplex in normal form."""
        s, eta = x
        t, eta2 = self.images[s]
        return self.dst.apply(t, tuple(eta2[k] for k in eta))

    def check(self):
        for s, img in self.images.items():
            n = self.src.dim_of[s]
            for i in range(n + 1 if n else 0):
                lhs = self.image(self.src.faces[s][i])
                rhs = self.dst.face_of(img, i)
                if lhs != rhs:
                    raise SimplicialError("map does not commute with d_%d on %r" % (i, self.src.names[s]))
        return True

    @classmethod
    def identity(cls, K):
        return cls(K, K, {s: (s, _identity(K.dim_of[s])) for s in range(len(K.names))})

    @classmethod
    def vertex_inclusion(cls, K, v):
        """The map from the point picking out vertex v."""
        pt = standard_simplex(0)
        return cls(pt, K, {pt.by_dim[0][0]: (K.id(v), (0,))})


# ---------------------------------------------------------------------------
# fundamental group


@dataclass
class Presentation:
    generators: list          # nondegenerate edge ids
    relations: list           # words: lists of (generator position, +1 / -1)
    tree: list                # spanning-tree edge ids
    base: int

    @property
    def ngens(self):
        return len(self.generators)


def _free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out


def fundamental_group_presentation(K: FinSimplicialSet) -> Presentation:
    if not K.is_connected():
        raise SimplicialError("fundamental group needs a connected simplicial set")
    adj = {v: [] for v in K.simplices(0)}
    for e in K.simplices(1):
        a, b = K.edge_endpoints(e)
        adj[a].append((e, b))
        adj[b].append((e, a))
    seen = {K.base}
    tree = []
    queue = deque([K.base])
    while queue:
        v = queue.popleft()
        for e, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.append(e)
                queue.append(w)
    tree_set = set(tree)
    gens = [e for e in K.simplices(1) if e not in tree_set]
    gpos = {e: k for k, e in enumerate(gens)}

    def letter(x):
        t, eta = x
        if len(set(eta)) == 1 or t in tree_set:
            return []
        return [(gpos[t], 1)]

    rels = []
    for s in K.simplices(2):
        e01, e12, e02 = K.edge(s, 0, 1), K.edge(s, 1, 2), K.edge(s, 0, 2)
        inv02 = [(g, -e) for g, e in reversed(letter(e02))]
        w = _free_reduce(letter(e12) + letter(e01) + inv02)
        if w:
            rels.append(w)
    return Presentation(gens, rels, tree, K.base)


def coset_enumeration(ngens, relations, budget=10000):
    """Todd-Coxeter (HLT with coincidence handling) over the trivial subgroup.

    Returns the coset table as a list of rows; column 2i is generator i and
    2i+1 its inverse.  Raises BudgetExceeded once more than `budget` cosets
    have been defined.
    """
    ncols = 2 * ngens
    rels = [[2 * g + (0 if e > 0 else 1) for g, e in w] for w in relations]
    table = [[None] * ncols]
    parent = [0]
    defined = [1]

    def rep(k):
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def define(c, x):
        if defined[0] >= budget:
            raise BudgetExceeded("coset enumeration exceeded %d cosets" % budget)
        n = len(table)
        table.append([None] * ncols)
        parent.append(n)
        defined[0] += 1
        table[c][x] = n
        table[n][x ^ 1] = c

    def coincidence(a, b):
        queue = []

        def merge(k, l):
            k, l = rep(k), rep(l)
            if k == l:
                return
            lo, hi = min(k, l), max(k, l)
            parent[hi] = lo
            queue.append(hi)

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ncols):
                d = table[g][x]
                if d is None:
                    continue
                if table[d][x ^ 1] == g:
                    table[d][x ^ 1] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    a = 0
    while a < len(table):
        if parent[a] == a:
            for w in rels:
                if parent[a] != a:
                    break
                scan_and_fill(a, w)
            if parent[a] == a:
                for x in range(ncols):
                    if table[a][x] is None:
                        define(a, x)
        a += 1
    live = [c for c in range(len(table)) if parent[c] == c]
    renum = {c: k for k, c in enumerate(live)}
    return [[renum[rep(table[c][x])] for x in range(ncols)] for c in live]


def group_from_presentation(ngens, relations, budget=10000):
    """The finite group presented, plus the images of the generators."""
    ct = coset_enumeration(ngens, relations, budget)
    n = len(ct)
    words = {0: []}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(2 * ngens):
            d = ct[c][x]
            if d not in words:
                words[d] = words[c] + [x]
                queue.append(d)

    def act(c, word):
        for x in word:
            c = ct[c][x]
        return c

    table = [[act(a, words[b]) for b in range(n)] for a in range(n)]
    names = []
    for c in range(n):
        w = words[c]
        if not w:
            names.append("e")
        else:
            names.append("*".join("x%d%s" % (x // 2, "" if x % 2 == 0 else "^-1") for x in w))
    G = FiniteGroup(tuple(names), tuple(map(tuple, table)))
    images = [ct[0][2 * i] for i in range(ngens)]
    return G, images


def fundamental_group(K: FinSimplicialSet, budget=10000):
    pres = fundamental_group_presentation(K)
    G, images = group_from_presentation(pres.ngens, pres.relations, budget)
    return pres, G, images


# ---------------------------------------------------------------------------
# edge labelings


class EdgeLabeling:
    """Group-valued labels on nondegenerate edges satisfying the triangle cocycle
    condition label(d_1 s) = label(d_0 s) * label(d_2 s)."""

    def __init__(self, K: FinSimplicialSet, group: FiniteGroup, labels, validate=True):
        self.K, self.group = K, group
        lab = {}
        for e, g in labels.items():
            eid = K.id(e)
            if K.dim_of[eid] != 1:
                raise SimplicialError("%r is not an edge" % K.names[eid])
            lab[eid] = group.index(g)
        for e in K.simplices(1):
            lab.setdefault(e, group.identity)
        self.labels = lab
        if validate:
            self.check()

    def label(self, x):
        t, eta = x
        if len(set(eta)) == 1:
            return self.group.identity
        return self.labels[t]

    def transport(self, s, k):
        """Label of the edge from vertex 0 to vertex k of nondegenerate s."""
        if k == 0:
            return self.group.identity
        return self.label(self.K.edge(s, 0, k))

    def check(self):
        K, G = self.K, self.group
        for s in K.simplices(2):
            l01 = self.label(K.edge(s, 0, 1))
            l12 = self.label(K.edge(s, 1, 2))
            l02 = self.label(K.edge(s, 0, 2))
            if l02 != G.mul(l12, l01):
                raise SimplicialError("cocycle condition fails on %r" % K.names[s])
        return True

    def to_json(self):
        return {"group": self.group.to_json(),
                "labels": {self.K.names[e]: self.group.names[g] for e, g in sorted(self.labels.items())}}

    @classmethod
    def trivial(cls, K, group=None):
        return cls(K, group or FiniteGroup.trivial(), {})


def edge_labeling_from_hom(K, presentation: Presentation, group: FiniteGroup, hom) -> EdgeLabeling:
    """hom: list (or dict by generator position) of group elements."""
    if isinstance(hom, dict):
        hom = [hom.get(k, group.identity) for k in range(presentation.ngens)]
    hom = [group.index(h) for h in hom]
    if len(hom) != presentation.ngens:
        raise SimplicialError("hom needs %d images" % presentation.ngens)
    for w in presentation.relations:
        val = group.identity
        for g, e in w:
            x = hom[g] if e > 0 else group.inv(hom[g])
            val = group.mul(val, x)
        if val != group.identity:
            raise SimplicialError("relation %r is not respected" % (w,))
    labels = {e: hom[k] for k, e in enumerate(presentation.generators)}
    return EdgeLabeling(K, group, labels)


def universal_labeling(K, budget=10000):
    """Labeling by pi_1 itself (requires finite pi_1)."""
    pres, G, images = fundamental_group(K, budget)
    return edge_labeling_from_hom(K, pres, G, images)


# ---------------------------------------------------------------------------
# covers


@dataclass
class CoverData:
    space: FinSimplicialSet
    group: FiniteGroup
    base: FinSimplicialSet
    lift: dict                   # (simplex of base, group element) -> simplex of the cover
    projection: SimplicialMap
    fiber_label: dict = field(default_factory=dict)  # cover simplex -> (base simplex, element)

    def act(self, g, s):
        """Deck transformation: (sigma, h) -> (sigma, h*g)."""
        sig, h = self.fiber_label[s]
        return self.lift[sig, self.group.mul(h, g)]


def covering_space(K: FinSimplicialSet, labeling: EdgeLabeling) -> CoverData:
    """The principal G-cover determined by an edge labeling.  Simplex (s, h)
    puts vertex k over vertex k of s with fiber coordinate label(0->k)*h."""
    G = labeling.group
    names = []
    lift = {}
    for ids in K.by_dim:
        row = []
        for s in ids:
            for h in G:
                nm = "%s@%s" % (K.names[s], G.names[h])
                lift[s, h] = nm
                row.append(nm)
        names.append(row)
    faces = {}
    for ids in K.by_dim[1:]:
        for s in ids:
            n = K.dim_of[s]
            for h in G:
                lst = []
                for i in range(n + 1):
                    t, eta = K.faces[s][i]
                    v0 = 1 if i == 0 else 0
                    h2 = G.mul(labeling.transport(s, v0), h)
                    lst.append((lift[t, h2], eta))
                faces[lift[s, h]] = lst
    base_name = lift[K.base, G.identity]
    X = FinSimplicialSet(names, faces, base=base_name)
    lift_ids = {k: X.id(v) for k, v in lift.items()}
    fiber = {v: k for k, v in lift_ids.items()}
    proj = SimplicialMap(X, K, {X.id(v): (s, _identity(K.dim_of[s])) for (s, h), v in lift.items()})
    return CoverData(X, G, K, lift_ids, proj, fiber)


def universal_cover(K: FinSimplicialSet, labeling: EdgeLabeling | None = None, budget=10000) -> CoverData:
    """Universal cover for finite pi_1; invariants are verified before returning."""
    pres, G1, _ = fundamental_group(K, budget)
    if labeling is None:
        labeling = universal_labeling(K, budget)
    G = labeling.group
    if len(G) != len(G1):
        raise SimplicialError("labeling group has order %d but pi_1 has order %d" % (len(G), len(G1)))
    cover = covering_space(K, labeling)
    X = cover.space
    if not X.is_connected():
        raise SimplicialError("labeling is not surjective: cover is disconnected")
    _, Gx, _ = fundamental_group(X, budget)
    if len(Gx) != 1:
        raise SimplicialError("cover is not simply connected")
    for n, c in enumerate(K.counts()):
        if X.count(n) != len(G) * c:
            raise SimplicialError("sheet count mismatch in dimension %d" % n)
    for s in range(len(X.names)):
        for g in G:
            t = cover.act(g, s)
            if g != G.identity and t == s:
                raise SimplicialError("deck action is not free")
            if cover.projection.images[t][0] != cover.projection.images[s][0]:
                raise SimplicialError("projection is not invariant")
    if X.euler_characteristic() != len(G) * K.euler_characteristic():
        raise SimplicialError("Euler characteristic does not multiply")
    return cover


# ---------------------------------------------------------------------------
# twisted simplicial cochains


def twisted_cochain_complex(K: FinSimplicialSet, L) -> CochainComplex:
    """Normalized cochains with values in the local system L.

    L must provide `fiber_dim` and `transport(s, k)`: the matrix of the
    isomorphism L(s) -> L(face of s starting at vertex k).  The coboundary is
    (dc)(s) = sum_i (-1)^i L(d_i)^{-1} c(d_i s), degenerate faces dropped.
    """
    m = L.fiber_dim
    dims = {n: K.count(n) * m for n in range(K.dim + 1)}
    diffs = {}
    for n in range(K.dim):
        entries = {}
        for s in K.simplices(n + 1):
            row0 = K.pos[s] * m
            for i in range(n + 2):
                t, eta = K.faces[s][i]
                if len(set(eta)) != len(eta):
                    continue
                col0 = K.pos[t] * m
                sign = -1 if i % 2 else 1
                back = L.inverse_transport(s, 1 if i == 0 else 0)
                for a in range(m):
                    for b in range(m):
                        v = back[a][b]
                        if v:
                            key = (row0 + a, col0 + b)
                            entries[key] = entries.get(key, 0) + sign * v
        diffs[n] = SparseMatrix(dims[n + 1], dims[n], entries)
    return CochainComplex(0, K.dim, dims, diffs)
