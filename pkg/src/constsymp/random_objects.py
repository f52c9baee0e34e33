"""Seeded random generators for complexes, forms, tuples and subcomplexes.

Every generator takes a ``random.Random`` so that runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .bridge import CsgTuple
from .doldkan import ChainComplex3
from .exactla import Bilin, Mat, Subspace, kernel, push_forward

__all__ = [
    "random_matrix",
    "random_invertible",
    "random_complex",
    "random_compatible_pair",
    "random_skew",
    "random_tuple",
    "random_subcomplex_spaces",
]

ENTRIES = (-2, -1, 0, 1, 2)


def random_matrix(rng: random.Random, rows: int, cols: int, entries=ENTRIES) -> Mat:
    return Mat([[rng.choice(entries) for _ in range(cols)] for _ in range(rows)], rows=rows, cols=cols)


def random_invertible(rng: random.Random, n: int, entries=ENTRIES) -> Mat:
    while True:
        m = random_matrix(rng, n, n, entries)
        if m.is_invertible():
            return m


def random_skew(rng: random.Random, n: int, entries=ENTRIES) -> Mat:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.choice(entries)
            m[i][j], m[j][i] = x, -x
    return Mat(m, rows=n, cols=n)


def random_complex(rng: random.Random, max_dims=(4, 4, 4), entries=ENTRIES) -> ChainComplex3:
    """``d1`` with random entries (some rows zeroed), ``d2`` with columns drawn from ``ker d1``.

    All entries stay inside ``entries``; kernel columns are sampled from the
    finite set of kernel vectors with coordinates in that range.
    """
    n2, n1, n0 = (rng.randint(0, m) for m in max_dims)
    rows = []
    for _ in range(n0):
        if rng.random() < 0.3:
            rows.append([0] * n1)
        else:
            rows.append([rng.choice(entries) for _ in range(n1)])
    d1 = Mat(rows, rows=n0, cols=n1)
    ker = [v for v in product(entries, repeat=n1)
           if not any(sum(a * b for a, b in zip(row, v)) for row in rows)]
    cols = []
    for _ in range(n2):
        cols.append(rng.choice(ker) if rng.random() < 0.8 else (0,) * n1)
    d2 = Mat.from_columns(cols, n1) if n2 else Mat.zeros(n1, 0)
    return ChainComplex3(d2, d1)


def _sym_basis(n: int) -> list[Mat]:
    out = []
    for i in range(n):
        for j in range(i, n):
            m = [[0] * n for _ in range(n)]
            m[i][j] = m[j][i] = 1
            out.append(Mat(m, rows=n, cols=n))
    return out


def random_compatible_pair(rng: random.Random, c: ChainComplex3, entries=ENTRIES) -> tuple[Mat, Mat]:
    """``(C41, C32)`` with ``d1^T C41 = (C32 + C32^T) d2``.

    The pair ``(C41, S = C32 + C32^T)`` is a random integer combination of a
    basis of solutions of that linear system; ``C32 = S/2 + skew``.
    """
    n2, n1, n0 = c.dims
    sym = _sym_basis(n1)
    unknowns = []
    for i in range(n0):
        for j in range(n2):
            e = Mat.zeros(n0, n2).with_block(i, j, Mat([[1]]))
            unknowns.append((e, Mat.zeros(n1, n1)))
    for s in sym:
        unknowns.append((Mat.zeros(n0, n2), s))
    eqs = [(c.d1.T @ a - s @ c.d2) for a, s in unknowns]
    n_eq = n1 * n2
    if not unknowns:
        return Mat.zeros(n0, n2), Mat.zeros(n1, n1)
    system = Mat([[eqs[k][i // max(n2, 1), i % max(n2, 1)] for k in range(len(unknowns))]
                  for i in range(n_eq)], rows=n_eq, cols=len(unknowns))
    sols = kernel(system).vectors()
    c41, s = Mat.zeros(n0, n2), Mat.zeros(n1, n1)
    for v in sols:
        k = rng.choice(entries)
        for coef, (a, b) in zip(v, unknowns):
            if coef:
                c41 = c41 + a * (k * coef)
                s = s + b * (k * coef)
    return c41, s * Fraction(1, 2) + random_skew(rng, n1, entries)


def _hyperbolic_plus_diag(rng: random.Random, n: int, k: int) -> Mat:
    m = [[0] * n for _ in range(n)]
    for i in range(k):
        m[2 * i][2 * i + 1] = m[2 * i + 1][2 * i] = 1
    for i in range(2 * k, n):
        m[i][i] = rng.choice((-2, -1, 1, 2))
    return Mat(m, rows=n, cols=n)


def random_tuple(rng: random.Random, max_w1: int = 4, max_w0: int = 3, with_r: bool = True,
                 dims: tuple[int, int] | None = None) -> CsgTuple:
    """``g = S^T H S`` with ``H`` hyperbolic-plus-diagonal, ``d = X^T g`` for isotropic ``X``."""
    if dims is None:
        n1, n0 = rng.randint(0, max_w1), rng.randint(0, max_w0)
    else:
        n1, n0 = dims
    k = rng.randint(0, n1 // 2)
    h = _hyperbolic_plus_diag(rng, n1, k)
    S = random_invertible(rng, n1, (-1, 0, 1))
    g = S.T @ h @ S
    sinv = S.inverse()
    iso = [sinv.column(2 * i) for i in range(k)]
    cols = []
    for _ in range(n0):
        v = [Fraction(0)] * n1
        for w in iso:
            a = rng.choice((-1, 0, 1, 2))
            v = [x + a * y for x, y in zip(v, w)]
        cols.append(v)
    X = Mat.from_columns(cols, n1) if n0 else Mat.zeros(n1, 0)
    boundary = X.T @ g
    r = random_skew(rng, n1) if with_r else Mat.zeros(n1, n1)
    return CsgTuple(Bilin(g), boundary, Bilin(r))


def _random_span(rng: random.Random, n: int, base: list, extra_max: int) -> Subspace:
    vecs = list(base)
    for _ in range(rng.randint(0, extra_max)):
        vecs.append([rng.choice((-1, 0, 1)) for _ in range(n)])
    return Subspace.span(n, vecs) if vecs else Subspace.zero(n)


def random_subcomplex_spaces(rng: random.Random, c: ChainComplex3) -> tuple[Subspace, Subspace, Subspace]:
    """Random ``(U2, U1, U0)`` closed under the differentials (pass to ``make_subcomplex``)."""
    n2, n1, n0 = c.dims
    u2 = _random_span(rng, n2, [], n2)
    u1 = _random_span(rng, n1, push_forward(c.d2, u2).vectors(), n1)
    u0 = _random_span(rng, n0, push_forward(c.d1, u1).vectors(), n0)
    return u2, u1, u0
