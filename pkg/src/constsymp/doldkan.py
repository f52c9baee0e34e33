"""Linear 2-groupoids and 3-term chain complexes.

A complex ``W2 --d2--> W1 --d1--> W0`` is realized as a simplicial vector
space truncated at level 3 with

    V0 = W0
    V1 = W1 + W0                 coordinates (w1, w0)
    V2 = W2 + W1 + W1 + W0       coordinates (w2, w1, w1', w0)
    V3 = W2^3 + W1^3 + W0        coordinates (w2, w2', w2'', w1, w1', w1'', w0)

Level 3 is identified with the (3,3)-horn space, so the face maps out of
V3 read coordinates off the three faces of the horn; the degeneracies
``V2 -> V3`` are forced by the simplicial identities through that same
identification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import DimensionError, PreconditionError
from .exactla import Mat, Subspace, image, kernel, vector
from .report import Report

__all__ = [
    "ChainComplex3",
    "LinearTwoGroupoid",
    "HornSpace",
    "realize",
    "extract",
    "splitting",
    "verify_simplicial",
    "kan_check",
    "horn_map",
    "fill_horn_2",
    "fill_horn_3",
    "level_blocks",
]


@dataclass(frozen=True)
class ChainComplex3:
    """``W2 --d2--> W1 --d1--> W0`` with ``d1 d2 = 0``."""

    d2: Mat
    d1: Mat

    def __post_init__(self):
        if self.d1.cols != self.d2.rows:
            raise DimensionError(f"d1 is {self.d1.shape} but d2 is {self.d2.shape}")
        if not (self.d1 @ self.d2).is_zero():
            raise PreconditionError("d1 d2 is not zero", witness=(self.d1 @ self.d2))

    @classmethod
    def zero(cls, dim_w2: int, dim_w1: int, dim_w0: int) -> "ChainComplex3":
        return cls(Mat.zeros(dim_w1, dim_w2), Mat.zeros(dim_w0, dim_w1))

    @property
    def dim_w2(self) -> int:
        return self.d2.cols

    @property
    def dim_w1(self) -> int:
        return self.d1.cols

    @property
    def dim_w0(self) -> int:
        return self.d1.rows

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.dim_w2, self.dim_w1, self.dim_w0)


def level_blocks(c: ChainComplex3, q: int) -> list[int]:
    """Block sizes of ``V_q`` in the realized coordinates."""
    n2, n1, n0 = c.dims
    return [[n0], [n1, n0], [n2, n1, n1, n0], [n2, n2, n2, n1, n1, n1, n0]][q]


@dataclass(frozen=True)
class LinearTwoGroupoid:
    """Simplicial vector space ``V0..V3`` with all faces and degeneracies.

    ``faces[q - 1][i]`` is ``f_i^q : V_q -> V_{q-1}`` for q = 1..3 and
    ``degeneracies[q][i]`` is ``sigma_i^q : V_q -> V_{q+1}`` for q = 0..2.
    """

    dims: tuple[int, int, int, int]
    faces: tuple[tuple[Mat, ...], ...]
    degeneracies: tuple[tuple[Mat, ...], ...]

    def __post_init__(self):
        if len(self.dims) != 4 or len(self.faces) != 3 or len(self.degeneracies) != 3:
            raise DimensionError("a truncated 2-groupoid has levels 0..3")
        for q in (1, 2, 3):
            if len(self.faces[q - 1]) != q + 1:
                raise DimensionError(f"level {q} needs {q + 1} face maps")
            for i, f in enumerate(self.faces[q - 1]):
                if f.shape != (self.dims[q - 1], self.dims[q]):
                    raise DimensionError(f"f_{i}^{q} has shape {f.shape}")
        for q in (0, 1, 2):
            if len(self.degeneracies[q]) != q + 1:
                raise DimensionError(f"level {q} needs {q + 1} degeneracy maps")
            for i, s in enumerate(self.degeneracies[q]):
                if s.shape != (self.dims[q + 1], self.dims[q]):
                    raise DimensionError(f"sigma_{i}^{q} has shape {s.shape}")

    def face(self, q: int, i: int) -> Mat:
        return self.faces[q - 1][i]

    def degeneracy(self, q: int, i: int) -> Mat:
        return self.degeneracies[q][i]


@dataclass(frozen=True)
class HornSpace:
    """The (q, k)-horns, as a subspace of ``V_{q-1}^q``.

    ``faces`` lists the face indices present, in the order the components
    are stacked.
    """

    q: int
    k: int
    faces: tuple[int, ...]
    space: Subspace


def _linmap(out_blocks, in_blocks, entries) -> Mat:
    rows = []
    for a, r in enumerate(out_blocks):
        rows.append([entries.get((a, b), Mat.zeros(r, c)) for b, c in enumerate(in_blocks)])
    if not out_blocks or not in_blocks:
        return Mat.zeros(sum(out_blocks), sum(in_blocks))
    return Mat.block(rows)


@lru_cache(maxsize=256)
def realize(c: ChainComplex3) -> LinearTwoGroupoid:
    """Build the linear 2-groupoid of a 3-term complex (levels 0..3)."""
    n2, n1, n0 = c.dims
    d1, d2 = c.d1, c.d2
    I0, I1, I2 = Mat.identity(n0), Mat.identity(n1), Mat.identity(n2)
    B0, B1, B2, B3 = (level_blocks(c, q) for q in range(4))

    f10 = _linmap(B0, B1, {(0, 1): I0})
    f11 = _linmap(B0, B1, {(0, 0): -d1, (0, 1): I0})
    s00 = _linmap(B1, B0, {(1, 0): I0})

    s10 = _linmap(B2, B1, {(1, 0): I1, (2, 0): I1, (3, 1): I0})
    s11 = _linmap(B2, B1, {(2, 0): I1, (3, 1): I0})
    f20 = _linmap(B1, B2, {(0, 1): I1, (1, 3): I0})
    f21 = _linmap(B1, B2, {(0, 2): I1, (1, 3): I0})
    f22 = _linmap(B1, B2, {(0, 0): d2, (0, 1): -I1, (0, 2): I1, (1, 1): -d1, (1, 3): I0})

    # V3 blocks: 0..2 = w2, w2', w2''; 3..5 = w1, w1', w1''; 6 = w0
    f30 = _linmap(B2, B3, {(0, 0): I2, (1, 3): I1, (2, 4): I1, (3, 6): I0})
    f31 = _linmap(B2, B3, {(0, 1): I2, (1, 3): I1, (2, 5): I1, (3, 6): I0})
    f32 = _linmap(B2, B3, {(0, 2): I2, (1, 4): I1, (2, 5): I1, (3, 6): I0})
    f33 = _linmap(B2, B3, {
        (0, 0): I2, (0, 1): -I2, (0, 2): I2,
        (1, 0): d2, (1, 3): -I1, (1, 4): I1,
        (2, 1): d2, (2, 3): -I1, (2, 5): I1,
        (3, 3): -d1, (3, 6): I0,
    })

    # reading V3 coordinates off a compatible triple (v2, v2', v2'')
    dv2 = sum(B2)
    read = _linmap(B3, [dv2, dv2, dv2], {
        (0, 0): _linmap([n2], B2, {(0, 0): I2}),
        (1, 1): _linmap([n2], B2, {(0, 0): I2}),
        (2, 2): _linmap([n2], B2, {(0, 0): I2}),
        (3, 0): _linmap([n1], B2, {(0, 1): I1}),
        (4, 0): _linmap([n1], B2, {(0, 2): I1}),
        (5, 1): _linmap([n1], B2, {(0, 2): I1}),
        (6, 0): _linmap([n0], B2, {(0, 3): I0}),
    })
    Iv2 = Mat.identity(dv2)
    s20 = read @ Mat.vstack(Iv2, Iv2, s10 @ f21)
    s21 = read @ Mat.vstack(s10 @ f20, Iv2, Iv2)
    s22 = read @ Mat.vstack(s11 @ f20, s11 @ f21, Iv2)

    return LinearTwoGroupoid(
        dims=(sum(B0), sum(B1), sum(B2), sum(B3)),
        faces=((f10, f11), (f20, f21, f22), (f30, f31, f32, f33)),
        degeneracies=((s00,), (s10, s11), (s20, s21, s22)),
    )


def _diff_witness(lhs: Mat, rhs: Mat):
    for j in range(lhs.cols):
        a, b = lhs.column(j), rhs.column(j)
        if a != b:
            return {"basis_vector": j, "lhs": a, "rhs": b}
    return None


def verify_simplicial(g: LinearTwoGroupoid) -> Report:
    """Check every simplicial identity available in levels 0..3.

    The degeneracy-degeneracy family is checked for ``i <= j``, which
    includes the ``i < j`` instances.
    """
    rep = Report()
    f, s = g.face, g.degeneracy
    for q in (2, 3):
        for j in range(q + 1):
            for i in range(j):
                lhs, rhs = f(q - 1, i) @ f(q, j), f(q - 1, j - 1) @ f(q, i)
                ok = lhs == rhs
                rep.add(f"face-face q={q} i={i} j={j}", ok, None if ok else _diff_witness(lhs, rhs))
    for q in (0, 1):
        for j in range(q + 1):
            for i in range(j + 1):
                lhs, rhs = s(q + 1, i) @ s(q, j), s(q + 1, j + 1) @ s(q, i)
                ok = lhs == rhs
                rep.add(f"degeneracy-degeneracy q={q} i={i} j={j}", ok,
                        None if ok else _diff_witness(lhs, rhs))
    for q in (0, 1, 2):
        for j in range(q + 1):
            for i in range(q + 2):
                lhs = f(q + 1, i) @ s(q, j)
                if i < j:
                    rhs = s(q - 1, j - 1) @ f(q, i)
                elif i in (j, j + 1):
                    rhs = Mat.identity(g.dims[q])
                else:
                    rhs = s(q - 1, j) @ f(q, i - 1)
                ok = lhs == rhs
                rep.add(f"face-degeneracy q={q} i={i} j={j}", ok, None if ok else _diff_witness(lhs, rhs))
    return rep


def horn_map(g: LinearTwoGroupoid, q: int, k: int) -> tuple[HornSpace, Mat]:
    """The (q, k)-horn space and the matrix of ``lambda_{q,k}`` into ``V_{q-1}^q``."""
    if not 1 <= q <= 3 or not 0 <= k <= q:
        raise PreconditionError(f"horn index (q={q}, k={k}) out of range")
    present = tuple(i for i in range(q + 1) if i != k)
    lam = Mat.vstack(*(g.face(q, i) for i in present))
    n = g.dims[q - 1]
    if q == 1:
        space = Subspace.full(n)
    else:
        m = g.dims[q - 2]
        rows = []
        for a, i in enumerate(present):
            for b, j in enumerate(present):
                if i < j:
                    blocks = [Mat.zeros(m, n) for _ in present]
                    blocks[b] = g.face(q - 1, i)
                    blocks[a] = -g.face(q - 1, j - 1)
                    rows.append(Mat.hstack(*blocks))
        space = kernel(Mat.vstack(*rows))
    return HornSpace(q, k, present, space), lam


def kan_check(g: LinearTwoGroupoid) -> Report:
    """Horn maps surjective at levels 1 and 2, bijective at level 3."""
    rep = Report()
    for q in (1, 2, 3):
        for k in range(q + 1):
            horn, lam = horn_map(g, q, k)
            img = image(lam)
            onto = img == horn.space
            rep.add(f"horn q={q} k={k} surjective", onto,
                    {"horn_dim": horn.space.dim, "image_dim": img.dim})
            if q == 3:
                ker = kernel(lam)
                rep.add(f"horn q={q} k={k} injective", ker.dim == 0,
                        {"kernel": ker.vectors()[:1]})
    return rep


def _is_valid(g: LinearTwoGroupoid) -> Report:
    rep = verify_simplicial(g)
    rep.extend(kan_check(g))
    return rep


def fill_horn_2(g: LinearTwoGroupoid, pair: Sequence) -> tuple:
    """Filler ``sigma_0 v1 + sigma_1 (v1' - v1)`` of a (2,2)-horn ``(v1, v1')``."""
    v1, v1p = (vector(v) for v in pair)
    f0 = g.face(1, 0)
    if f0.apply(v1) != f0.apply(v1p):
        raise PreconditionError("incompatible (2,2)-horn: f_0 v1 != f_0 v1'", witness=(v1, v1p))
    diff = tuple(a - b for a, b in zip(v1p, v1))
    return _add(g.degeneracy(1, 0).apply(v1), g.degeneracy(1, 1).apply(diff))


def fill_horn_3(g: LinearTwoGroupoid, triple: Sequence) -> tuple:
    """Filler of a (3,3)-horn ``(v2, v2', v2'')`` using the degeneracies into V3."""
    v2, v2p, v2pp = (vector(v) for v in triple)
    f0, f1 = g.face(2, 0), g.face(2, 1)
    if f0.apply(v2) != f0.apply(v2p):
        raise PreconditionError("incompatible (3,3)-horn: f_0 v2 != f_0 v2'", witness=triple)
    if f1.apply(v2) != f0.apply(v2pp):
        raise PreconditionError("incompatible (3,3)-horn: f_1 v2 != f_0 v2''", witness=triple)
    if f1.apply(v2p) != f1.apply(v2pp):
        raise PreconditionError("incompatible (3,3)-horn: f_1 v2' != f_1 v2''", witness=triple)
    s0, s1, s2 = g.degeneracies[2]
    back = g.degeneracy(1, 0).apply(f1.apply(v2))
    third = tuple(c - b + a - d for a, b, c, d in zip(v2, v2p, v2pp, back))
    return _add(s0.apply(v2), s1.apply(_sub(v2p, v2)), s2.apply(third))


def _add(*vs):
    return tuple(sum(xs) for xs in zip(*vs))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _pivot_readout(u: Subspace) -> Mat:
    # coordinates of a vector of U in its canonical basis are its pivot entries
    rows = [[int(j == p) for j in range(u.ambient_dim)] for p in u.pivots]
    return Mat(rows, rows=u.dim, cols=u.ambient_dim)


def _projections(g: LinearTwoGroupoid):
    f10, f20, f21 = g.face(1, 0), g.face(2, 0), g.face(2, 1)
    s00, s10, s11 = g.degeneracy(0, 0), g.degeneracy(1, 0), g.degeneracy(1, 1)
    k1 = kernel(f10)
    p1 = _pivot_readout(k1) @ (Mat.identity(g.dims[1]) - s00 @ f10)
    k2 = kernel(Mat.vstack(f20, f21))
    phi2_lambda = s10 @ f20 + s11 @ (f21 - f20)
    p2 = _pivot_readout(k2) @ (Mat.identity(g.dims[2]) - phi2_lambda)
    return k1, p1, k2, p2


def extract(g: LinearTwoGroupoid) -> ChainComplex3:
    """The 3-term complex of a linear 2-groupoid.

    ``W1 = ker f_0^1`` and ``W2 = ker lambda_{2,2}``, both in the canonical
    basis of the kernel; ``d1 = -f_1^1`` on W1 and ``d2 = f_2^2`` on W2,
    read in W1 coordinates through the splitting by ``sigma_0^0``.
    """
    rep = _is_valid(g)
    if not rep.passed:
        bad = rep.failures()[0]
        raise PreconditionError(f"not a linear 2-groupoid: {bad.name} fails", witness=bad.witness)
    k1, p1, k2, _ = _projections(g)
    d1 = -(g.face(1, 1) @ k1.basis)
    d2 = p1 @ g.face(2, 2) @ k2.basis
    return ChainComplex3(d2, d1)


def splitting(g: LinearTwoGroupoid) -> tuple[Mat, Mat, Mat, Mat]:
    """Isomorphisms ``V_q -> realize(extract(g))_q`` for q = 0..3.

    They intertwine every face and degeneracy map of ``g`` with those of
    the realized groupoid.
    """
    _, p1, _, p2 = _projections(g)
    f = g.face
    iso0 = Mat.identity(g.dims[0])
    iso1 = Mat.vstack(p1, f(1, 0))
    iso2 = Mat.vstack(p2, p1 @ f(2, 0), p1 @ f(2, 1), f(1, 0) @ f(2, 0))
    iso3 = Mat.vstack(
        p2 @ f(3, 0), p2 @ f(3, 1), p2 @ f(3, 2),
        p1 @ f(2, 0) @ f(3, 0), p1 @ f(2, 1) @ f(3, 0), p1 @ f(2, 1) @ f(3, 1),
        f(1, 0) @ f(2, 0) @ f(3, 0),
    )
    return iso0, iso1, iso2, iso3
