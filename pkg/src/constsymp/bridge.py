"""Tuples ``(W1, W0, g, d, r)``, constant symplectic 2-groupoids and Courant algebroids.

A tuple gives the complex ``W0* --g^{-1} d^T--> W1 --d--> W0`` and the form
with ``C41`` the canonical pairing and ``C32 = g/2 + r``.  Going back reads
``g = C32 + C32^T`` and ``r`` = skew part of ``C32`` after rescaling ``W2``
so that ``C41`` is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .courant import ConstantCourantAlgebroid
from .doldkan import ChainComplex3, LinearTwoGroupoid, realize
from .errors import DimensionError, InvariantError, PreconditionError
from .exactla import Bilin, Mat
from .forms import (ConstantTwoForm, build_from_C, compatibility_defect, is_multiplicative,
                    is_normalized, pairings)
from .report import Report

__all__ = [
    "CsgTuple",
    "ConstantSymplectic2Groupoid",
    "check_csg",
    "tuple_to_csg",
    "csg_to_tuple",
    "reduce_tuple",
    "tuple_to_courant",
    "courant_to_tuple",
    "standard_tuple",
    "standard_example",
]


def _bilin(x) -> Bilin:
    return x if isinstance(x, Bilin) else Bilin(x)


@dataclass(frozen=True)
class CsgTuple:
    g: Bilin
    boundary: Mat
    r: Bilin

    def __post_init__(self):
        g, r = _bilin(self.g), _bilin(self.r)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "r", r)
        n1 = g.left_dim
        if self.boundary.cols != n1 or r.gram.shape != (n1, n1):
            raise DimensionError("g, r and the boundary disagree on dim W1")
        if not g.is_symmetric():
            raise PreconditionError("g is not symmetric")
        if not g.is_nondegenerate():
            raise PreconditionError("g is degenerate")
        if not r.is_skew():
            raise PreconditionError("r is not skew")
        defect = self.boundary @ g.gram.inverse() @ self.boundary.T
        if not defect.is_zero():
            raise PreconditionError("d g^{-1} d^T is not zero", witness=defect)

    @property
    def dim_w1(self) -> int:
        return self.g.left_dim

    @property
    def dim_w0(self) -> int:
        return self.boundary.rows


@dataclass(frozen=True)
class ConstantSymplectic2Groupoid:
    groupoid: LinearTwoGroupoid
    complex: ChainComplex3
    form: ConstantTwoForm

    def __post_init__(self):
        rep = check_csg(self.complex, self.form)
        if not rep.passed:
            raise PreconditionError("not a constant symplectic 2-groupoid",
                                    witness=[c.name for c in rep.failures()])

    @classmethod
    def from_parts(cls, complex: ChainComplex3, form: ConstantTwoForm) -> "ConstantSymplectic2Groupoid":
        return cls(realize(complex), complex, form)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.complex.dims

    def is_symmetric(self) -> bool:
        return self.form.c32.is_symmetric()


def check_csg(c: ChainComplex3, f: ConstantTwoForm) -> Report:
    """Normalized, multiplicative and simplicially nondegenerate (closedness is automatic)."""
    rep = Report()
    if tuple(f.dims) != c.dims:
        rep.add("dimensions", False, {"form": tuple(f.dims), "complex": c.dims})
        return rep
    rep.add("closed", True)
    if not rep.add("normalized", is_normalized(f)):
        return rep
    rep.add("multiplicative", is_multiplicative(f, c))
    p = pairings(f)
    rep.add("A pairing nondegenerate", p.nondegenerate_A, p.A.gram)
    rep.add("B pairing nondegenerate", p.nondegenerate_B, p.B.gram)
    return rep


def tuple_to_csg(t: CsgTuple) -> ConstantSymplectic2Groupoid:
    n0 = t.dim_w0
    c = ChainComplex3(t.g.gram.inverse() @ t.boundary.T, t.boundary)
    c41 = Mat.identity(n0)
    c32 = t.g.gram * Fraction(1, 2) + t.r.gram
    if not compatibility_defect(c41, c32, c).is_zero():
        raise InvariantError("compatibility failed for a tuple")
    return ConstantSymplectic2Groupoid(realize(c), c, build_from_C(c41, c32, c))


def csg_to_tuple(s: ConstantSymplectic2Groupoid) -> CsgTuple:
    """Read ``(g, d, r)``; ``W2`` is rebased by ``C41^{-1}`` first, so ``d2`` becomes ``g^{-1} d^T``."""
    c41 = s.form.c41.gram
    c32 = s.form.c32
    g = c32.symmetric_part() * 2
    out = CsgTuple(g, s.complex.d1, c32.skew_part())
    d2 = s.complex.d2 @ c41.inverse()
    if d2 != g.gram.inverse() @ s.complex.d1.T:
        raise InvariantError("rebased d2 is not g^{-1} d^T")
    return out


def reduce_tuple(t: CsgTuple) -> CsgTuple:
    return CsgTuple(t.g, t.boundary, Bilin.zero(t.dim_w1))


def tuple_to_courant(t: CsgTuple) -> ConstantCourantAlgebroid:
    return ConstantCourantAlgebroid(t.g, t.boundary)


def courant_to_tuple(E: ConstantCourantAlgebroid) -> CsgTuple:
    return CsgTuple(E.g, E.boundary, Bilin.zero(E.dim_w1))


def standard_tuple(n: int) -> CsgTuple:
    """``W1 = Q^n + (Q^n)*`` with the hyperbolic pairing and ``d(v, xi) = v``."""
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    i, z = Mat.identity(n), Mat.zeros(n, n)
    g = Mat.block([[z, i], [i, z]])
    return CsgTuple(Bilin(g), Mat.hstack(i, z), Bilin.zero(2 * n))


def standard_example(n: int) -> ConstantSymplectic2Groupoid:
    return tuple_to_csg(standard_tuple(n))
