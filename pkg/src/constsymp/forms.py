"""Constant 2-forms on a linear 2-groupoid.

A form on ``V2 = W2 + W1 + W1 + W0`` is an antisymmetric matrix cut into
4 x 4 blocks ``C_ij`` (1 = W2, 2 = first W1, 3 = second W1, 4 = W0).
Normalized multiplicative forms are determined by the pairing ``C41``
of W0 with W2 and the bilinear form ``C32`` on W1; :func:`build_from_C`
fills in the rest and :func:`reduce_to_C` reads the pair back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .doldkan import ChainComplex3, LinearTwoGroupoid, realize
from .errors import DimensionError, PreconditionError, InvariantError
from .exactla import Bilin, Mat, kernel

__all__ = [
    "ConstantTwoForm",
    "AlphaForm",
    "PairingReport",
    "assemble",
    "disassemble",
    "pullback",
    "is_normalized",
    "is_normalized_pullback",
    "is_closed",
    "delta",
    "is_multiplicative",
    "pairings",
    "pairings_via_degeneracies",
    "is_simplicially_nondegenerate",
    "build_from_C",
    "reduce_to_C",
    "alpha_is_admissible",
    "symmetrize",
    "are_equivalent",
]

GroupoidLike = Union[LinearTwoGroupoid, ChainComplex3]


def _groupoid(g: GroupoidLike) -> LinearTwoGroupoid:
    return realize(g) if isinstance(g, ChainComplex3) else g


def _offsets(sizes):
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out


@dataclass(frozen=True)
class ConstantTwoForm:
    """Antisymmetric form on ``V2`` with block dimensions ``(dim W2, dim W1, dim W0)``."""

    dims: tuple[int, int, int]
    matrix: Mat

    def __post_init__(self):
        n = sum(self.sizes)
        if self.matrix.shape != (n, n):
            raise DimensionError(f"form on V2 of dimension {n} has matrix {self.matrix.shape}")
        if not self.matrix.is_skew():
            raise PreconditionError("a 2-form must be antisymmetric")

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        n2, n1, n0 = self.dims
        return (n2, n1, n1, n0)

    @classmethod
    def zero(cls, dims) -> "ConstantTwoForm":
        n = dims[0] + 2 * dims[1] + dims[2]
        return cls(tuple(dims), Mat.zeros(n, n))

    @classmethod
    def from_blocks(cls, dims, blocks: dict) -> "ConstantTwoForm":
        """Build from ``{(i, j): Mat}`` (1-based); missing mirror blocks are set by skewness."""
        sizes = (dims[0], dims[1], dims[1], dims[2])
        full = {}
        for (i, j), m in blocks.items():
            full[(i, j)] = m
            if (j, i) not in blocks:
                full[(j, i)] = -m.T
        rows = [[full.get((i, j), Mat.zeros(sizes[i - 1], sizes[j - 1])) for j in range(1, 5)]
                for i in range(1, 5)]
        return cls(tuple(dims), Mat.block(rows))

    def block(self, i: int, j: int) -> Mat:
        off = _offsets(self.sizes)
        s = self.sizes
        return self.matrix.submatrix(off[i - 1], off[i - 1] + s[i - 1], off[j - 1], off[j - 1] + s[j - 1])

    def C(self, i: int, j: int) -> Bilin:
        return Bilin(self.block(i, j))

    @property
    def c41(self) -> Bilin:
        return self.C(4, 1)

    @property
    def c32(self) -> Bilin:
        return self.C(3, 2)

    def __add__(self, other: "ConstantTwoForm") -> "ConstantTwoForm":
        return ConstantTwoForm(self.dims, self.matrix + other.matrix)

    def __sub__(self, other: "ConstantTwoForm") -> "ConstantTwoForm":
        return ConstantTwoForm(self.dims, self.matrix - other.matrix)

    def __call__(self, u, v):
        return Bilin(self.matrix)(u, v)


@dataclass(frozen=True)
class AlphaForm:
    """Constant normalized 2-form on ``V1 = W1 + W0``.

    Blocks are ``[[B11, B12], [B21, 0]]`` with ``B21 = -B12^T``; the zero
    W0 x W0 block is what normalization along ``sigma_0^0`` demands.
    """

    b11: Mat
    b12: Mat

    def __post_init__(self):
        if not self.b11.is_skew():
            raise PreconditionError("B11 must be antisymmetric")
        if self.b12.rows != self.b11.rows:
            raise DimensionError("B12 must have dim W1 rows")

    @classmethod
    def zero(cls, dim_w1: int, dim_w0: int) -> "AlphaForm":
        return cls(Mat.zeros(dim_w1, dim_w1), Mat.zeros(dim_w1, dim_w0))

    @property
    def dim_w1(self) -> int:
        return self.b11.rows

    @property
    def dim_w0(self) -> int:
        return self.b12.cols

    @property
    def b21(self) -> Mat:
        return -self.b12.T

    @property
    def matrix(self) -> Mat:
        return Mat.block([[self.b11, self.b12], [self.b21, Mat.zeros(self.dim_w0, self.dim_w0)]])


@dataclass(frozen=True)
class PairingReport:
    A: Bilin
    B: Bilin
    nondegenerate_A: bool
    nondegenerate_B: bool


def assemble(f: ConstantTwoForm) -> Bilin:
    return Bilin(f.matrix)


def disassemble(m, dims) -> ConstantTwoForm:
    """Cut an antisymmetric matrix on ``V2`` into blocks; raises on non-skew input."""
    m = m.gram if isinstance(m, Bilin) else m
    return ConstantTwoForm(tuple(dims), m)


def pullback(m: Mat, along: Mat) -> Mat:
    """Gram matrix of ``(u, v) -> m(A u, A v)``."""
    return along.T @ m @ along


def is_normalized(f: ConstantTwoForm) -> bool:
    """Block test: ``C24 = C33 = C34 = C44 = 0`` and ``C22 + C23 + C32 = 0``."""
    if not all(f.block(i, j).is_zero() for i, j in ((2, 4), (3, 3), (3, 4), (4, 4))):
        return False
    return (f.block(2, 2) + f.block(2, 3) + f.block(3, 2)).is_zero()


def is_normalized_pullback(f: ConstantTwoForm, g: GroupoidLike) -> bool:
    """Direct test: pullbacks along ``sigma_0^1`` and ``sigma_1^1`` vanish."""
    g = _groupoid(g)
    _check_level2(f, g)
    return all(pullback(f.matrix, s).is_zero() for s in g.degeneracies[1])


def is_closed(f: ConstantTwoForm) -> bool:
    """Always true: a constant form on a vector space has zero exterior derivative."""
    return True


def _check_level2(f: ConstantTwoForm, g: LinearTwoGroupoid):
    if f.matrix.rows != g.dims[2]:
        raise DimensionError(f"form lives on a {f.matrix.rows}-dim space but V2 has dim {g.dims[2]}")


def delta(form, g: GroupoidLike, level: int | None = None):
    """Simplicial coboundary: alternating sum of pullbacks along the faces out of level q+1.

    A :class:`ConstantTwoForm` (level 2) maps to a :class:`Bilin` on V3;
    an :class:`AlphaForm` (level 1) maps to a :class:`ConstantTwoForm`.
    Raw :class:`Bilin`/:class:`Mat` input needs ``level``.
    """
    g = _groupoid(g)
    if isinstance(form, ConstantTwoForm):
        level, m = 2, form.matrix
    elif isinstance(form, AlphaForm):
        level, m = 1, form.matrix
    else:
        m = form.gram if isinstance(form, Bilin) else form
    if level not in (1, 2):
        raise PreconditionError(f"delta is supported on levels 1 and 2, not {level!r}")
    if m.rows != g.dims[level]:
        raise DimensionError(f"form has dimension {m.rows}, V{level} has {g.dims[level]}")
    out = Mat.zeros(g.dims[level + 1], g.dims[level + 1])
    for i, f in enumerate(g.faces[level]):
        term = pullback(m, f)
        out = out + term if i % 2 == 0 else out - term
    if isinstance(form, AlphaForm):
        n1, n0 = form.dim_w1, form.dim_w0
        return ConstantTwoForm((g.dims[2] - 2 * n1 - n0, n1, n0), out)
    return Bilin(out)


def is_multiplicative(f: ConstantTwoForm, g: GroupoidLike) -> bool:
    return delta(f, g).gram.is_zero()


def _require_normalized(f: ConstantTwoForm):
    if not is_normalized(f):
        raise PreconditionError("form is not normalized")


def pairings(f: ConstantTwoForm, g: GroupoidLike | None = None) -> PairingReport:
    """``A = C41`` (W0 x W2) and ``B = C32 + C32^T`` with exact nondegeneracy flags.

    A pairing of W0 with W2 counts as nondegenerate only when the two
    dimensions agree and the Gram matrix is invertible.
    """
    if g is not None:
        _check_level2(f, _groupoid(g))
    _require_normalized(f)
    a = f.c41
    b = Bilin(f.block(3, 2) + f.block(3, 2).T)
    return PairingReport(a, b, a.gram.is_invertible(), b.gram.is_invertible())


def pairings_via_degeneracies(f: ConstantTwoForm, g: GroupoidLike) -> tuple[Bilin, Bilin]:
    """``A`` and ``B`` computed from the degeneracy maps instead of the blocks.

    ``A(v, w) = f(sigma^2 v, w)`` with ``sigma^2 = sigma_0^1 sigma_0^0`` and
    ``B(t, e) = f(sigma_1 t, sigma_0 e) + f(sigma_1 e, sigma_0 t)``, restricted
    to ``W2 = ker lambda_{2,2}`` and ``W1 = ker f_0^1``.
    """
    g = _groupoid(g)
    _check_level2(f, g)
    m = f.matrix
    w1 = kernel(g.face(1, 0)).basis
    w2 = kernel(Mat.vstack(g.face(2, 0), g.face(2, 1))).basis
    s2 = g.degeneracy(1, 0) @ g.degeneracy(0, 0)
    a = s2.T @ m @ w2
    half = (g.degeneracy(1, 1) @ w1).T @ m @ (g.degeneracy(1, 0) @ w1)
    return Bilin(a), Bilin(half + half.T)


def is_simplicially_nondegenerate(f: ConstantTwoForm, g: GroupoidLike | None = None) -> bool:
    p = pairings(f, g)
    return p.nondegenerate_A and p.nondegenerate_B


def _gram(x) -> Mat:
    return x.gram if isinstance(x, Bilin) else x


def compatibility_defect(c41, c32, c: ChainComplex3) -> Mat:
    """``d1^T C41 - (C32 + C32^T) d2``; rows index W1, columns W2."""
    c41, c32 = _gram(c41), _gram(c32)
    return c.d1.T @ c41 - (c32 + c32.T) @ c.d2


def build_from_C(c41, c32, c: ChainComplex3) -> ConstantTwoForm:
    """The normalized multiplicative form with prescribed ``C41`` and ``C32``.

    Requires ``C41(d w1, w2) = C32(d w2, w1) + C32(w1, d w2)`` on all basis
    vectors.
    """
    c41, c32 = _gram(c41), _gram(c32)
    n2, n1, n0 = c.dims
    if c41.shape != (n0, n2):
        raise DimensionError(f"C41 must be {n0}x{n2}, got {c41.shape}")
    if c32.shape != (n1, n1):
        raise DimensionError(f"C32 must be {n1}x{n1}, got {c32.shape}")
    defect = compatibility_defect(c41, c32, c)
    if not defect.is_zero():
        w1, w2 = next((i, j) for i in range(n1) for j in range(n2) if defect[i, j])
        raise PreconditionError("C41 and C32 violate the compatibility equation",
                                witness={"w1": w1, "w2": w2, "defect": defect[w1, w2]})
    d2 = c.d2
    blocks = {
        (1, 1): -(d2.T @ c32 @ d2),
        (1, 2): d2.T @ c32,
        (1, 3): d2.T @ c32.T,
        (1, 4): -c41.T,
        (2, 2): c32.T - c32,
        (2, 3): -c32.T,
        (3, 2): c32,
        (4, 1): c41,
    }
    return ConstantTwoForm.from_blocks(c.dims, blocks)


def _dims_match(f: ConstantTwoForm, c: ChainComplex3):
    if tuple(f.dims) != c.dims:
        raise DimensionError(f"form dims {f.dims} do not match complex dims {c.dims}")


def reduce_to_C(f: ConstantTwoForm, c: ChainComplex3) -> tuple[Bilin, Bilin]:
    """``(C41, C32)`` of a normalized multiplicative form."""
    _dims_match(f, c)
    _require_normalized(f)
    if not is_multiplicative(f, c):
        raise PreconditionError("form is not multiplicative")
    return f.c41, f.c32


def alpha_is_admissible(a: AlphaForm, c: ChainComplex3) -> bool:
    """``B21(w0, d w2) = 0`` and ``B21(d w1, w1') + B21(d w1', w1) = 0`` for all basis vectors.

    Equivalently the pairings ``A`` and ``B`` of ``delta(a)`` vanish.
    """
    if (a.dim_w1, a.dim_w0) != (c.dim_w1, c.dim_w0):
        raise DimensionError("alpha and complex dimensions differ")
    b21 = a.b21
    t = c.d1.T @ b21
    return (b21 @ c.d2).is_zero() and (t + t.T).is_zero()


def _split(c32: Bilin) -> tuple[Bilin, Bilin]:
    return c32.symmetric_part(), c32.skew_part()


def symmetrize(f: ConstantTwoForm, c: ChainComplex3) -> tuple[ConstantTwoForm, AlphaForm]:
    """The equivalent form with symmetric ``C32``, and the ``alpha`` with ``f' = f + delta(alpha)``."""
    c41, c32 = reduce_to_C(f, c)
    sym, r = _split(c32)
    out = build_from_C(c41, sym, c)
    alpha = AlphaForm(r.gram, Mat.zeros(c.dim_w1, c.dim_w0))
    if out != f + delta(alpha, c):
        raise InvariantError("symmetrize witness does not reproduce the symmetric form")
    return out, alpha


def are_equivalent(f1: ConstantTwoForm, f2: ConstantTwoForm, c: ChainComplex3) -> AlphaForm | None:
    """An admissible ``alpha`` with ``f2 - f1 = delta(alpha)``, or None when none exists.

    Two forms are equivalent exactly when their ``C41`` agree and the
    symmetric parts of their ``C32`` agree.
    """
    a1, c1 = reduce_to_C(f1, c)
    a2, c2 = reduce_to_C(f2, c)
    s1, r1 = _split(c1)
    s2, r2 = _split(c2)
    if a1 != a2 or s1 != s2:
        return None
    alpha = AlphaForm((r1 - r2).gram, Mat.zeros(c.dim_w1, c.dim_w0))
    if f2 - f1 != delta(alpha, c) or not alpha_is_admissible(alpha, c):
        raise InvariantError("equivalence witness failed verification")
    return alpha
