"""
Polynomial differential forms on the standard simplices.

A form on the p-simplex is stored in reduced coordinates t_1..t_p: the
relations t_0 = 1 - (t_1 + ... + t_p) and dt_0 = -(dt_1 + ... + dt_p) are
used to eliminate t_0 and dt_0, so every form has a unique normal form
    sum  c * t_1^a_1 ... t_p^a_p dt_i1 ^ ... ^ dt_iq,   i1 < ... < iq.

The weight of a monomial is a_1 + ... + a_p + q.  The differential and
wedge product preserve exact weight; simplicial operators never raise it
(only the faces/degeneracies that touch vertex 0 can lower it), so
"weight <= w" is a filtration by finite-dimensional subcomplexes.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .exactla import as_rational, format_rational, parse_rational


class PolyForm:
    __slots__ = ("p", "q", "terms")

    def __init__(self, p: int, q: int, terms=None):
        self.p = p
        self.q = q
        clean = {}
        if terms:
            for (exps, dts), c in terms.items():
                c = as_rational(c)
                if not c:
                    continue
                exps, dts = tuple(exps), tuple(dts)
                if len(exps) != p or len(dts) != q:
                    raise ValueError("monomial %r does not fit (p=%d, q=%d)" % ((exps, dts), p, q))
                if any(not (1 <= i <= p) for i in dts) or any(a < 0 for a in exps):
                    raise ValueError("bad monomial %r" % ((exps, dts),))
                if list(dts) != sorted(set(dts)):
                    raise ValueError("dt indices must be strictly increasing: %r" % (dts,))
                clean[exps, dts] = clean.get((exps, dts), 0) + c
            clean = {k: v for k, v in clean.items() if v}
        if q > p and clean:
            raise ValueError("degree %d exceeds simplex dimension %d" % (q, p))
        self.terms = clean

    # construction -----------------------------------------------------------

    @classmethod
    def zero(cls, p, q=0):
        return cls(p, q)

    @classmethod
    def one(cls, p):
        return cls(p, 0, {((0,) * p, ()): 1})

    @classmethod
    def const(cls, p, c):
        return cls(p, 0, {((0,) * p, ()): c})

    @classmethod
    def t(cls, p, j):
        """Barycentric coordinate t_j (j = 0 expands to 1 - sum)."""
        if not 0 <= j <= p:
            raise IndexError("t_%d on the %d-simplex" % (j, p))
        if j == 0:
            terms = {((0,) * p, ()): 1}
            for k in range(1, p + 1):
                terms[_unit(p, k), ()] = -1
            return cls(p, 0, terms)
        return cls(p, 0, {(_unit(p, j), ()): 1})

    @classmethod
    def dt(cls, p, j):
        if not 0 <= j <= p:
            raise IndexError("dt_%d on the %d-simplex" % (j, p))
        if j == 0:
            return cls(p, 1, {((0,) * p, (k,)): -1 for k in range(1, p + 1)})
        return cls(p, 1, {((0,) * p, (j,)): 1})

    @classmethod
    def monomial(cls, exps, dts=(), coeff=1):
        return cls(len(exps), len(dts), {(tuple(exps), tuple(dts)): coeff})

    # basic protocol ---------------------------------------------------------

    @property
    def degree(self):
        return self.q

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def weights(self):
        return {sum(e) + len(d) for e, d in self.terms}

    @property
    def weight(self):
        """Largest monomial weight (0 for the zero form)."""
        return max(self.weights(), default=0)

    def is_homogeneous(self):
        return len(self.weights()) <= 1

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        if self.p != other.p:
            return False
        if not self.terms and not other.terms:
            return True
        return self.q == other.q and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.q, frozenset(self.terms.items())))

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("simplex dimension mismatch: %d vs %d" % (self.p, other.p))

    def __add__(self, other):
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.q != other.q:
            raise ValueError("cannot add forms of degrees %d and %d" % (self.q, other.q))
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return PolyForm(self.p, self.q, acc)

    def __neg__(self):
        return PolyForm(self.p, self.q, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_rational(c)
        return PolyForm(self.p, self.q, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyForm):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __repr__(self):
        return "PolyForm(p=%d, q=%d, %s)" % (self.p, self.q, render(self))

    def to_json(self):
        return {
            "p": self.p,
            "q": self.q,
            "monomials": [
                {"coeff": format_rational(c), "exps": list(e), "dts": list(d)}
                for (e, d), c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, obj):
        terms = {}
        for m in obj["monomials"]:
            terms[tuple(m["exps"]), tuple(m["dts"])] = parse_rational(m["coeff"])
        return cls(obj["p"], obj["q"], terms)


class WeightComponent(NamedTuple):
    weight: int
    form: PolyForm


def _unit(p, j):
    e = [0] * p
    e[j - 1] = 1
    return tuple(e)


def _merge_sign(a: tuple, b: tuple):
    """Sign of sorting the concatenation a + b, or 0 if they overlap."""
    if set(a) & set(b):
        return 0
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


def weight_components(a: PolyForm) -> list[WeightComponent]:
    by_w: dict = {}
    for (e, d), c in a.terms.items():
        by_w.setdefault(sum(e) + len(d), {})[e, d] = c
    return [WeightComponent(w, PolyForm(a.p, a.q, t)) for w, t in sorted(by_w.items())]


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    a._check(b)
    q = a.q + b.q
    if not a.terms or not b.terms or q > a.p:
        return PolyForm(a.p, q)
    acc: dict = {}
    for (ea, da), ca in a.terms.items():
        for (eb, db), cb in b.terms.items():
            s = _merge_sign(da, db)
            if not s:
                continue
            key = (tuple(x + y for x, y in zip(ea, eb)), tuple(sorted(da + db)))
            acc[key] = acc.get(key, 0) + s * ca * cb
    return PolyForm(a.p, q, acc)


def differential(a: PolyForm) -> PolyForm:
    acc: dict = {}
    for (e, d), c in a.terms.items():
        for j in range(1, a.p + 1):
            aj = e[j - 1]
            if not aj or j in d:
                continue
            sign = -1 if sum(1 for i in d if i < j) % 2 else 1
            ne = list(e)
            ne[j - 1] -= 1
            key = (tuple(ne), tuple(sorted(d + (j,))))
            acc[key] = acc.get(key, 0) + sign * aj * c
    return PolyForm(a.p, a.q + 1, acc)


# ---------------------------------------------------------------------------
# simplicial operators


def _check_monotone(theta, p):
    if any(not (0 <= x <= p) for x in theta):
        raise IndexError("operator %r does not land in [0, %d]" % (theta, p))
    if any(x > y for x, y in zip(theta, theta[1:])):
        raise ValueError("operator %r is not monotone" % (theta,))


@lru_cache(maxsize=None)
def _generator_images(theta: tuple, p: int):
    """Images of t_1..t_p (and dt_1..dt_p) under the pullback along theta."""
    m = len(theta) - 1
    ts, dts = [], []
    for j in range(1, p + 1):
        img = PolyForm.zero(m, 0)
        for k, tk in enumerate(theta):
            if tk == j:
                img = img + PolyForm.t(m, k)
        ts.append(img)
        dts.append(differential(img) if img.terms else PolyForm.zero(m, 1))
    return ts, dts


@lru_cache(maxsize=200000)
def _pullback_monomial(theta: tuple, p: int, e: tuple, d: tuple) -> PolyForm:
    ts, dts = _generator_images(theta, p)
    m = len(theta) - 1
    out = PolyForm.one(m)
    for j, a in enumerate(e):
        for _ in range(a):
            out = wedge(out, ts[j])
            if not out.terms:
                return PolyForm.zero(m, len(d))
    for i in d:
        out = wedge(out, dts[i - 1])
        if not out.terms:
            return PolyForm.zero(m, len(d))
    return out


def pullback(theta, a: PolyForm) -> PolyForm:
    """Pull back along the affine map sending vertex k of the source simplex
    to vertex theta[k] of the p-simplex (theta monotone)."""
    theta = tuple(theta)
    _check_monotone(theta, a.p)
    m = len(theta) - 1
    acc: dict = {}
    for (e, d), c in a.terms.items():
        img = _pullback_monomial(theta, a.p, e, d)
        for k, v in img.terms.items():
            acc[k] = acc.get(k, 0) + c * v
    return PolyForm(m, a.q, acc)


def coface(i, n):
    """The injection [n-1] -> [n] that skips i."""
    return tuple(k if k < i else k + 1 for k in range(n))


def codegeneracy(i, n):
    """The surjection [n+1] -> [n] hitting i twice."""
    return tuple(k if k <= i else k - 1 for k in range(n + 2))


def face_map(i: int, a: PolyForm) -> PolyForm:
    if a.p < 1 or not 0 <= i <= a.p:
        raise IndexError("face d_%d undefined on the %d-simplex" % (i, a.p))
    return pullback(coface(i, a.p), a)


def degeneracy_map(i: int, a: PolyForm) -> PolyForm:
    if not 0 <= i <= a.p:
        raise IndexError("degeneracy s_%d undefined on the %d-simplex" % (i, a.p))
    return pullback(codegeneracy(i, a.p), a)


# ---------------------------------------------------------------------------
# bases, integration, rendering


@lru_cache(maxsize=None)
def _exponents(p, total):
    if p == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in _exponents(p - 1, total - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def monomial_keys(p: int, q: int, w: int) -> tuple:
    """(exps, dts) keys spanning the exact-weight-w degree-q part of the p-simplex forms."""
    if q > p or w < q:
        return ()
    keys = []
    for e in _exponents(p, w - q):
        for d in itertools.combinations(range(1, p + 1), q):
            keys.append((e, d))
    return tuple(keys)


def monomial_basis(p: int, q: int, w: int) -> list[PolyForm]:
    return [PolyForm(p, q, {k: 1}) for k in monomial_keys(p, q, w)]


@lru_cache(maxsize=None)
def filtration_keys(p: int, q: int, w: int) -> tuple:
    """Keys of all degree-q monomials of weight at most w."""
    out = []
    for v in range(q, w + 1):
        out.extend(monomial_keys(p, q, v))
    return tuple(out)


def basis_size(p, q, w):
    if q > p or w < q:
        return 0
    if p == 0:
        return 1 if w == 0 else 0
    return math.comb(w - q + p - 1, p - 1) * math.comb(p, q)


def integrate(a: PolyForm) -> Fraction:
    """Integral over the standard p-simplex oriented by dt_1 ^ ... ^ dt_p."""
    if a.q != a.p:
        if a.terms:
            raise ValueError("only top-degree forms integrate to numbers")
        return Fraction(0)
    total = Fraction(0)
    for (e, d), c in a.terms.items():
        num = 1
        for x in e:
            num *= math.factorial(x)
        total += c * Fraction(num, math.factorial(sum(e) + a.p))
    return total


def render(a: PolyForm) -> str:
    if not a.terms:
        return "0"
    parts = []
    for (e, d), c in sorted(a.terms.items(), key=lambda kv: (sum(kv[0][0]) + len(kv[0][1]), kv[0])):
        fac = []
        for j, x in enumerate(e, start=1):
            if x == 1:
                fac.append("t%d" % j)
            elif x > 1:
                fac.append("t%d^%d" % (j, x))
        fac.extend("dt%d" % i for i in d)
        body = "*".join(fac)
        cs = format_rational(c)
        if not body:
            parts.append(cs)
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append("%s * %s" % (cs, body))
    return " + ".join(parts).replace("+ -", "- ")
