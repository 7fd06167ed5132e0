"""
Exact linear algebra over the rationals.

Sparse matrices are dictionaries {(row, col): Fraction}.  Elimination is
Gauss-Jordan with a sparsest-column-first pivot rule; blocks smaller than
64x64 go through a dense routine instead.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

DENSE_CUTOFF = 64

Row = dict  # col -> Fraction


class ComplexError(ValueError):
    """Raised when a cochain complex fails d o d = 0."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals: %r" % (x,))
    return Fraction(x)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


class SparseMatrix:
    """Immutable sparse matrix with exact entries."""

    __slots__ = ("nrows", "ncols", "_entries", "_hash")

    def __init__(self, nrows: int, ncols: int, entries: Mapping | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        self.nrows = nrows
        self.ncols = ncols
        data = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, nrows, ncols))
                v = as_rational(v)
                if v:
                    data[r, c] = v
        self._entries = data
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[i, j] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping], ncols: int):
        entries = {}
        for i, row in enumerate(rows):
            for j, v in row.items():
                entries[i, j] = v
        return cls(len(rows), ncols, entries)

    @classmethod
    def from_columns(cls, cols: Sequence[Mapping], nrows: int):
        entries = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                entries[i, j] = v
        return cls(nrows, len(cols), entries)

    # access ---------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self):
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, key):
        r, c = key
        return self._entries.get((r, c), Fraction(0))

    def rows(self) -> list[dict]:
        out = [dict() for _ in range(self.nrows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def columns(self) -> list[dict]:
        out = [dict() for _ in range(self.ncols)]
        for (r, c), v in self._entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def is_zero(self):
        return not self._entries

    # algebra --------------------------------------------------------------

    def transpose(self):
        return SparseMatrix(self.ncols, self.nrows, {(c, r): v for (r, c), v in self._entries.items()})

    def __matmul__(self, other: "SparseMatrix"):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        orows = other.rows()
        acc: dict = {}
        for (r, k), v in self._entries.items():
            for c, w in orows[k].items():
                key = (r, c)
                acc[key] = acc.get(key, 0) + v * w
        return SparseMatrix(self.nrows, other.ncols, acc)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        acc = dict(self._entries)
        for k, v in other._entries.items():
            acc[k] = acc.get(k, 0) + v
        return SparseMatrix(self.nrows, self.ncols, acc)

    def __neg__(self):
        return SparseMatrix(self.nrows, self.ncols, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rational(c)
        return SparseMatrix(self.nrows, self.ncols, {k: c * v for k, v in self._entries.items()})

    def apply(self, vec: Mapping) -> dict:
        """Multiply by a sparse column vector {index: value}."""
        out: dict = {}
        for (r, c), v in self._entries.items():
            x = vec.get(c)
            if x:
                out[r] = out.get(r, 0) + v * x
        return {k: v for k, v in out.items() if v}

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, frozenset(self._entries.items())))
        return self._hash

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (self.nrows, self.ncols, self.nnz)

    def to_json(self):
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[r, c, format_rational(v)] for (r, c), v in sorted(self._entries.items())],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj["rows"], obj["cols"], {(r, c): parse_rational(v) for r, c, v in obj["entries"]})


# ---------------------------------------------------------------------------
# elimination


def _dense_rref(rows: list[dict], ncols: int) -> dict[int, dict]:
    m = [[Fraction(0)] * ncols for _ in rows]
    for i, row in enumerate(rows):
        for c, v in row.items():
            m[i][c] = Fraction(v)
    pivots = []
    r = 0
    nr = len(m)
    for c in range(ncols):
        if r == nr:
            break
        p = None
        for i in range(r, nr):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        if inv != 1:
            m[r] = [x * inv for x in m[r]]
        prow = m[r]
        for i in range(nr):
            if i != r:
                f = m[i][c]
                if f:
                    mi = m[i]
                    m[i] = [a - f * b for a, b in zip(mi, prow)]
        pivots.append(c)
        r += 1
    out = {}
    for i, c in enumerate(pivots):
        out[c] = {j: v for j, v in enumerate(m[i]) if v}
    return out


def _sparse_rref(rows: list[dict], ncols: int) -> dict[int, dict]:
    colcount = [0] * ncols
    for row in rows:
        for c in row:
            colcount[c] += 1
    order = sorted(range(len(rows)), key=lambda i: len(rows[i]))
    pivot_row: dict[int, dict] = {}
    created: dict[int, int] = {}  # pivot col -> creation index
    seq: list[int] = []
    for i in order:
        row = {c: Fraction(v) for c, v in rows[i].items() if v}
        # reduce against earlier pivots in creation order
        heap = [created[c] for c in row if c in created]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            k = heapq.heappop(heap)
            c = seq[k]
            f = row.get(c)
            if not f:
                continue
            for cc, vv in pivot_row[c].items():
                nv = row.get(cc, 0) - f * vv
                if nv:
                    row[cc] = nv
                    if cc in created and created[cc] not in seen:
                        seen.add(created[cc])
                        heapq.heappush(heap, created[cc])
                else:
                    row.pop(cc, None)
        if not row:
            continue
        p = min(row, key=lambda c: (colcount[c], c))
        inv = 1 / row[p]
        if inv != 1:
            row = {c: v * inv for c, v in row.items()}
        created[p] = len(seq)
        seq.append(p)
        pivot_row[p] = row
    # back substitution, latest pivots first
    for k in range(len(seq) - 1, -1, -1):
        c = seq[k]
        row = pivot_row[c]
        later = [cc for cc in row if cc != c and cc in created and created[cc] > k]
        for cc in later:
            f = row.get(cc)
            if not f:
                continue
            for c2, v2 in pivot_row[cc].items():
                nv = row.get(c2, 0) - f * v2
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
    return pivot_row


def rref(rows: list[dict], ncols: int) -> dict[int, dict]:
    """Reduced row echelon form as {pivot column: normalized row}."""
    rows = [r for r in rows if r]
    if not rows:
        return {}
    if len(rows) < DENSE_CUTOFF and ncols < DENSE_CUTOFF:
        return _dense_rref(rows, ncols)
    return _sparse_rref(rows, ncols)


def rank(m: SparseMatrix) -> int:
    return len(rref(m.rows(), m.ncols))


def row_space_rank(vectors: Iterable[Mapping], n: int) -> int:
    return len(rref([dict(v) for v in vectors], n))


def sparse_kernel(m: SparseMatrix):
    """Null space as sparse vectors, plus the free columns.

    Basis vector k has a 1 at free_cols[k] and zero at every other free
    column, so coordinates of a kernel element are read off at the free
    columns.
    """
    piv = rref(m.rows(), m.ncols)
    pivset = set(piv)
    free = [c for c in range(m.ncols) if c not in pivset]
    by_free: dict[int, dict] = {f: {f: Fraction(1)} for f in free}
    for p, row in piv.items():
        for c, v in row.items():
            if c != p:
                by_free[c][p] = -v
    return [by_free[f] for f in free], free


def kernel_basis(m: SparseMatrix) -> list[list[Fraction]]:
    vecs, _ = sparse_kernel(m)
    out = []
    for v in vecs:
        dense = [Fraction(0)] * m.ncols
        for i, x in v.items():
            dense[i] = x
        out.append(dense)
    return out


def solve(m: SparseMatrix, b: Mapping):
    """One solution x of m x = b (sparse dict), or None when inconsistent."""
    rows = m.rows()
    aug = m.ncols
    for r, v in b.items():
        if v:
            rows[r][aug] = Fraction(v)
    piv = rref(rows, m.ncols + 1)
    if aug in piv:
        return None
    x = {}
    for p, row in piv.items():
        v = row.get(aug)
        if v:
            x[p] = v
    return x


class Subspace:
    """A subspace of Q^n held as an RREF basis, with coordinate extraction."""

    def __init__(self, vectors: Iterable[Mapping], n: int):
        self.n = n
        vectors = [dict(v) for v in vectors]
        self.basis = vectors
        self._piv = rref(vectors, n)

    @property
    def dim(self):
        return len(self._piv)

    def contains(self, v: Mapping) -> bool:
        return self._reduce(v) == {}

    def _reduce(self, v: Mapping) -> dict:
        row = {c: Fraction(x) for c, x in v.items() if x}
        for p in [c for c in row if c in self._piv]:
            f = row.get(p)
            if not f:
                continue
            for c, x in self._piv[p].items():
                nv = row.get(c, 0) - f * x
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row


# ---------------------------------------------------------------------------
# cochain complexes


class CochainComplex:
    """Finite cochain complex; diffs[n] is the matrix of d^n: C^n -> C^{n+1}."""

    def __init__(self, lo: int, hi: int, dims: Mapping[int, int], diffs: Mapping[int, SparseMatrix] | None = None):
        if hi < lo:
            raise ValueError("empty degree range")
        self.lo, self.hi = lo, hi
        self.dims = {n: int(dims.get(n, 0)) for n in range(lo, hi + 1)}
        self.diffs = {}
        diffs = diffs or {}
        for n in range(lo, hi + 1):
            tgt = self.dims.get(n + 1, 0)
            d = diffs.get(n)
            if d is None:
                d = SparseMatrix(tgt, self.dims[n])
            if d.shape != (tgt, self.dims[n]):
                raise ValueError("d^%d has shape %s, expected %s" % (n, d.shape, (tgt, self.dims[n])))
            self.diffs[n] = d
        for n in range(lo, hi):
            if not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                raise ComplexError("d^%d o d^%d != 0" % (n + 1, n))

    def dim(self, n):
        return self.dims.get(n, 0)

    def differential(self, n):
        if n in self.diffs:
            return self.diffs[n]
        return SparseMatrix(self.dim(n + 1), self.dim(n))

    def euler_characteristic(self):
        return sum((-1) ** n * d for n, d in self.dims.items())

    def __repr__(self):
        return "CochainComplex(%d..%d, dims=%s)" % (self.lo, self.hi, [self.dims[n] for n in range(self.lo, self.hi + 1)])


def cohomology_dims(c: CochainComplex) -> dict[int, int]:
    ranks = {n: rank(c.diffs[n]) for n in range(c.lo, c.hi + 1)}
    out = {}
    for n in range(c.lo, c.hi + 1):
        out[n] = c.dims[n] - ranks[n] - ranks.get(n - 1, 0)
    return out


def change_basis(c: CochainComplex, mats: Mapping[int, SparseMatrix]) -> CochainComplex:
    """Conjugate each differential by invertible P_n: d'^n = P_{n+1} d^n P_n^{-1}."""
    invs = {n: inverse(p) for n, p in mats.items()}
    diffs = {}
    for n in range(c.lo, c.hi + 1):
        d = c.diffs[n]
        if n + 1 in mats:
            d = mats[n + 1] @ d
        diffs[n] = d @ invs[n]
    return CochainComplex(c.lo, c.hi, c.dims, diffs)


def inverse(m: SparseMatrix) -> SparseMatrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("not square")
    rows = m.rows()
    for i in range(n):
        rows[i][n + i] = Fraction(1)
    piv = rref(rows, 2 * n)
    if any(p not in piv for p in range(n)):
        raise ZeroDivisionError("singular matrix")
    entries = {}
    for p in range(n):
        for c, v in piv[p].items():
            if c >= n:
                entries[p, c - n] = v
    return SparseMatrix(n, n, entries)
