"""Finite groups given by multiplication tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements are 0..n-1; table[a][b] is the index of a*b."""

    names: tuple
    table: tuple
    _inv: tuple = field(init=False, repr=False)
    _e: int = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.names)
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "names", tuple(str(x) for x in self.names))
        if len(table) != n or any(len(r) != n for r in table):
            raise GroupError("table is not %dx%d" % (n, n))
        if len(set(self.names)) != n:
            raise GroupError("duplicate element names")
        es = [a for a in range(n) if all(table[a][b] == b and table[b][a] == b for b in range(n))]
        if len(es) != 1:
            raise GroupError("no two-sided identity")
        e = es[0]
        inv = []
        for a in range(n):
            row = table[a]
            if sorted(row) != list(range(n)):
                raise GroupError("row %d is not a permutation" % a)
            b = row.index(e)
            if table[b][a] != e:
                raise GroupError("left/right inverse mismatch")
            inv.append(b)
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupError("not associative at %s" % ((a, b, c),))
        object.__setattr__(self, "_inv", tuple(inv))
        object.__setattr__(self, "_e", e)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    @property
    def order(self):
        return len(self.names)

    @property
    def identity(self):
        return self._e

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def prod(self, items):
        out = self._e
        for a in items:
            out = self.table[out][a]
        return out

    def index(self, name):
        if isinstance(name, int):
            return name
        try:
            return self.names.index(str(name))
        except ValueError:
            raise GroupError("unknown element %r" % (name,)) from None

    def is_abelian(self):
        n = len(self)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def element_order(self, a):
        k, x = 1, a
        while x != self._e:
            x = self.table[x][a]
            k += 1
        return k

    def same_as(self, other):
        return self.names == other.names and self.table == other.table

    # constructors -----------------------------------------------------------

    @classmethod
    def trivial(cls):
        return cls(("e",), ((0,),))

    @classmethod
    def cyclic(cls, n):
        names = ["e"] + ["g^%d" % k if k > 1 else "g" for k in range(1, n)]
        return cls(tuple(names), tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))

    @classmethod
    def from_permutations(cls, perms, names=None):
        """Group of the given permutations (tuples); closure is taken."""
        perms = [tuple(p) for p in perms]
        deg = len(perms[0]) if perms else 0
        ident = tuple(range(deg))
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in perms:
                    y = tuple(g[x[i]] for i in range(deg))  # g after x
                    if y not in seen:
                        seen.add(y)
                        elems.append(y)
                        nxt.append(y)
            frontier = nxt
        lookup = {p: i for i, p in enumerate(elems)}
        # a*b means "apply b, then a"
        table = [[lookup[tuple(a[b[i]] for i in range(deg))] for b in elems] for a in elems]
        if names is None:
            names = ["e"] + ["".join(str(i) for i in p) for p in elems[1:]]
        return cls(tuple(names), tuple(map(tuple, table)))

    @classmethod
    def symmetric(cls, n):
        if n <= 1:
            return cls.trivial()
        gens = [tuple([1, 0] + list(range(2, n)))]
        if n > 2:
            gens.append(tuple(list(range(1, n)) + [0]))
        return cls.from_permutations(gens)

    def direct_product(self, other):
        n, m = len(self), len(other)
        pairs = [(a, b) for a in range(n) for b in range(m)]
        names = ["(%s,%s)" % (self.names[a], other.names[b]) for a, b in pairs]
        idx = {p: i for i, p in enumerate(pairs)}
        table = [[idx[self.table[a][c], other.table[b][d]] for (c, d) in pairs] for (a, b) in pairs]
        return FiniteGroup(tuple(names), tuple(map(tuple, table)))

    # isomorphism ------------------------------------------------------------

    def find_isomorphism(self, other):
        """An isomorphism self -> other as a tuple, or None (backtracking on generators)."""
        if len(self) != len(other):
            return None
        gens = self._generators()
        orders = [self.element_order(g) for g in gens]
        cands = [[h for h in other if other.element_order(h) == o] for o in orders]
        for images in itertools.product(*cands):
            f = self._extend(gens, images, other)
            if f is not None:
                return f
        return None

    def _generators(self):
        gens = []
        span = {self._e}
        for a in sorted(self, key=lambda x: -self.element_order(x)):
            if a not in span:
                gens.append(a)
                span = self._closure(gens)
            if len(span) == len(self):
                break
        return gens

    def _closure(self, gens):
        span = {self._e}
        frontier = [self._e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        return span

    def _extend(self, gens, images, other):
        f = {self._e: other.identity}
        frontier = [self._e]
        while frontier:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, images):
                    y = self.table[x][g]
                    fy = other.table[f[x]][h]
                    if y in f:
                        if f[y] != fy:
                            return None
                    else:
                        f[y] = fy
                        nxt.append(y)
            frontier = nxt
        if len(f) != len(self) or len(set(f.values())) != len(self):
            return None
        f = tuple(f[a] for a in range(len(self)))
        if all(f[self.table[a][b]] == other.table[f[a]][f[b]] for a in self for b in self):
            return f
        return None

    # serialization ----------------------------------------------------------

    def to_json(self):
        return {"elements": list(self.names), "table": [list(r) for r in self.table]}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["elements"]), tuple(tuple(r) for r in obj["table"]))


def is_homomorphism(src: FiniteGroup, dst: FiniteGroup, f) -> bool:
    return all(f[src.mul(a, b)] == dst.mul(f[a], f[b]) for a in src for b in src)
