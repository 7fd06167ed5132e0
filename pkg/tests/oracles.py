"""Independent cohomology oracles built from vertex tuples and floating-point ranks.

They share no code with the package beyond reading the facet list and the
edge labels, and are only used on complexes small enough that floating point
ranks of +-1 matrices are exact."""

import itertools

import numpy as np


def faces_of(facets):
    cells = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            cells.update(itertools.combinations(f, k))
    top = max(len(c) for c in cells) - 1
    return [sorted(c for c in cells if len(c) == d + 1) for d in range(top + 1)]


def cohomology_from_facets(facets, sign=None):
    """Betti numbers of the ordered complex, optionally twisted by a rank-one
    local system with monodromy sign(a, b) in {+1, -1} along the edge a < b."""
    by_dim = faces_of(facets)
    index = [{c: i for i, c in enumerate(cs)} for cs in by_dim]
    ranks = []
    for n in range(len(by_dim) - 1):
        d = np.zeros((len(by_dim[n + 1]), len(by_dim[n])))
        for r, s in enumerate(by_dim[n + 1]):
            for i in range(n + 2):
                face = s[:i] + s[i + 1:]
                c = (-1) ** i
                if i == 0 and sign is not None:
                    # the value at face 0 is carried back from vertex s[1] to vertex s[0]
                    c *= sign(s[0], s[1])
                d[r, index[n][face]] += c
        ranks.append(np.linalg.matrix_rank(d) if d.size else 0)
    out = {}
    for n, cs in enumerate(by_dim):
        out[n] = len(cs) - (ranks[n] if n < len(ranks) else 0) - (ranks[n - 1] if n > 0 else 0)
    return out
