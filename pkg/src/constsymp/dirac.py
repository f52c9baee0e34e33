"""Sub-2-groupoids, symplectic orthogonals and constant Dirac structures.

A subcomplex ``U2 -> U1 -> U0`` spans the sub-2-groupoid with
``L0 = U0``, ``L1 = U1 + U0``, ``L2 = U2 + U1 + U1 + U0`` in block
coordinates.  For a symmetric form (``C32`` symmetric) the orthogonal of
``L2`` is again of that shape:

    L2^w = Ann(U0) + U1^perp + U1^perp + Ann(U2)

with annihilators taken through ``C41`` and ``perp`` through ``C32 + C32^T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import lcm

from .bridge import ConstantSymplectic2Groupoid, courant_to_tuple, tuple_to_csg
from .courant import ConstantCourantAlgebroid, bracket, describe_section
from .courant import _Sparse as _SparseOps
from .doldkan import ChainComplex3, LinearTwoGroupoid, level_blocks, realize
from .errors import DimensionError, InvariantError, PreconditionError
from .exactla import (Bilin, Mat, Subspace, direct_sum, inertia, kernel, left_orthogonal, perp,
                      push_forward, right_orthogonal)
from .forms import symmetrize
from .poly import Poly, PolySection, monomials
from .report import Report

__all__ = [
    "Subcomplex",
    "SubTwoGroupoid",
    "DiracClassification",
    "DiracGroupoid",
    "make_subcomplex",
    "sub2groupoid",
    "omega_orthogonal",
    "omega_orthogonal_formula",
    "omega_orthogonal_brute",
    "classify",
    "lagrangian_from_pair",
    "dirac_report",
    "is_constant_dirac",
    "dirac_to_lagrangian",
    "lagrangian_to_dirac",
    "dirac_groupoid",
    "coordinate_subspaces",
    "coordinate_subcomplexes",
    "skew_matrices",
    "skew_graph",
]


@dataclass(frozen=True)
class Subcomplex:
    u2: Subspace
    u1: Subspace
    u0: Subspace
    complex: ChainComplex3


def _first_escape(m: Mat, src: Subspace, dst: Subspace):
    for v in src.vectors():
        w = m.apply(v)
        if w not in dst:
            return {"vector": v, "image": w}
    return None


def make_subcomplex(u2: Subspace, u1: Subspace, u0: Subspace, c: ChainComplex3) -> Subcomplex:
    if (u2.ambient_dim, u1.ambient_dim, u0.ambient_dim) != c.dims:
        raise DimensionError(f"subspace ambients do not match complex dims {c.dims}")
    w = _first_escape(c.d2, u2, u1)
    if w is not None:
        raise PreconditionError("d2(U2) is not inside U1", witness=w)
    w = _first_escape(c.d1, u1, u0)
    if w is not None:
        raise PreconditionError("d1(U1) is not inside U0", witness=w)
    return Subcomplex(u2, u1, u0, c)


@dataclass(frozen=True)
class SubTwoGroupoid:
    L0: Subspace
    L1: Subspace
    L2: Subspace
    source: Subcomplex

    def is_wide(self) -> bool:
        return self.L0.dim == self.L0.ambient_dim


def _levels(u: Subcomplex) -> list[Subspace]:
    return [
        u.u0,
        direct_sum(u.u1, u.u0),
        direct_sum(u.u2, u.u1, u.u1, u.u0),
        direct_sum(u.u2, u.u2, u.u2, u.u1, u.u1, u.u1, u.u0),
    ]


def sub2groupoid(u: Subcomplex, g: LinearTwoGroupoid | None = None) -> SubTwoGroupoid:
    """Block direct sums, checked to be stable under every face and degeneracy."""
    g = g or realize(u.complex)
    L = _levels(u)
    for q in range(1, 4):
        for i in range(q + 1):
            w = _first_escape(g.face(q, i), L[q], L[q - 1])
            if w is not None:
                raise InvariantError(f"face ({q},{i}) leaves the sub-2-groupoid", witness=w)
    for q in range(0, 3):
        for i in range(q + 1):
            w = _first_escape(g.degeneracy(q, i), L[q], L[q + 1])
            if w is not None:
                raise InvariantError(f"degeneracy ({q},{i}) leaves the sub-2-groupoid", witness=w)
    return SubTwoGroupoid(L[0], L[1], L[2], u)


def _require_symmetric(s: ConstantSymplectic2Groupoid):
    if not s.is_symmetric():
        raise PreconditionError("the csg is not symmetric (C32 has a skew part); symmetrize it first")


def _pairing_g(s: ConstantSymplectic2Groupoid) -> Bilin:
    c32 = s.form.c32
    return c32 + c32.T


def _blocks_of(L2: Subspace, c: ChainComplex3) -> tuple[Subspace, Subspace, Subspace]:
    """Recover ``(U2, U1, U0)`` from a block direct sum ``L2``; raises if ``L2`` is not of that shape."""
    sizes = level_blocks(c, 2)
    if L2.ambient_dim != sum(sizes):
        raise DimensionError("L2 does not live in V2")
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    proj = [push_forward(Mat.identity(offs[-1]).submatrix(offs[k], offs[k + 1], 0, offs[-1]), L2)
            for k in range(4)]
    u2, u1, u1b, u0 = proj
    if u1 != u1b or direct_sum(u2, u1, u1, u0) != L2:
        raise PreconditionError("L2 is not of the form U2 + U1 + U1 + U0")
    return u2, u1, u0


def _as_subcomplex(L, s: ConstantSymplectic2Groupoid) -> Subcomplex:
    if isinstance(L, SubTwoGroupoid):
        return L.source
    if isinstance(L, Subcomplex):
        return L
    u2, u1, u0 = _blocks_of(L, s.complex)
    return make_subcomplex(u2, u1, u0, s.complex)


def omega_orthogonal_formula(u: Subcomplex, s: ConstantSymplectic2Groupoid) -> Subspace:
    c41 = s.form.c41
    g = _pairing_g(s)
    ann_u0 = right_orthogonal(u.u0, c41)
    ann_u2 = left_orthogonal(u.u2, c41)
    u1p = perp(u.u1, g)
    return direct_sum(ann_u0, u1p, u1p, ann_u2)


def omega_orthogonal_brute(L2: Subspace, s: ConstantSymplectic2Groupoid) -> Subspace:
    """``{v : w(v, l) = 0 for all l in L2}`` from the assembled matrix."""
    return left_orthogonal(L2, Bilin(s.form.matrix))


def omega_orthogonal(L, s: ConstantSymplectic2Groupoid) -> Subspace:
    """Orthogonal of ``L2`` computed by the block formula and by brute force; both must agree.

    ``L`` may be a :class:`SubTwoGroupoid`, a :class:`Subcomplex` or the
    subspace ``L2`` itself.
    """
    _require_symmetric(s)
    u = _as_subcomplex(L, s)
    L2 = _levels(u)[2]
    a = omega_orthogonal_formula(u, s)
    b = omega_orthogonal_brute(L2, s)
    if a != b:
        raise InvariantError("block formula and brute-force orthogonal differ",
                             witness={"formula": a, "brute": b})
    return a


@dataclass(frozen=True)
class DiracClassification:
    kind: str  # isotropic, coisotropic, lagrangian or none
    isotropic: bool
    coisotropic: bool
    witness: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def lagrangian(self) -> bool:
        return self.isotropic and self.coisotropic


def _pair_witness(b: Bilin, left: Subspace, right: Subspace):
    for x in left.vectors():
        for y in right.vectors():
            if b(x, y):
                return {"left": x, "right": y, "value": b(x, y)}
    return None


def _not_inside(small: Subspace, big: Subspace):
    return next((v for v in small.vectors() if v not in big), None)


def classify(L, s: ConstantSymplectic2Groupoid, auto_symmetrize: bool = True) -> DiracClassification:
    """Isotropic / coisotropic / Lagrangian from the U-level conditions.

    The answer is cross-checked against the subspace comparison of ``L2``
    with its orthogonal.  A non-symmetric ``s`` is replaced by its symmetric
    representative (recorded in ``notes``) unless ``auto_symmetrize`` is off.
    """
    notes = []
    if not s.is_symmetric():
        if not auto_symmetrize:
            _require_symmetric(s)
        f, _ = symmetrize(s.form, s.complex)
        s = ConstantSymplectic2Groupoid(s.groupoid, s.complex, f)
        notes.append("classified on the symmetric representative of the equivalence class")
    u = _as_subcomplex(L, s)
    if u.complex != s.complex:
        raise PreconditionError("subcomplex and csg have different complexes")
    c41, g = s.form.c41, _pairing_g(s)
    u1p = perp(u.u1, g)
    witness = {}
    w_pair = _pair_witness(c41, u.u0, u.u2)
    if w_pair:
        witness["U0, U2 pair nontrivially"] = w_pair
    w_iso = _pair_witness(g, u.u1, u.u1)
    if w_iso:
        witness["U1 not isotropic"] = w_iso
    iso = not w_pair and not w_iso
    checks = [
        ("Ann(U2) not inside U0", _not_inside(left_orthogonal(u.u2, c41), u.u0)),
        ("Ann(U0) not inside U2", _not_inside(right_orthogonal(u.u0, c41), u.u2)),
        ("U1 perp not inside U1", _not_inside(u1p, u.u1)),
    ]
    co = True
    for name, v in checks:
        if v is not None:
            witness[name] = v
            co = False
    L2 = _levels(u)[2]
    orth = omega_orthogonal(u, s)
    if iso != (L2 <= orth) or co != (orth <= L2):
        raise InvariantError("U-level classification disagrees with subspace comparison")
    kind = "lagrangian" if iso and co else "isotropic" if iso else "coisotropic" if co else "none"
    return DiracClassification(kind, iso, co, witness, tuple(notes))


def lagrangian_from_pair(u1: Subspace, u0: Subspace, s: ConstantSymplectic2Groupoid) -> SubTwoGroupoid:
    """The Lagrangian sub-2-groupoid with ``U2 = Ann(U0)``."""
    _require_symmetric(s)
    c = s.complex
    g = _pairing_g(s)
    if perp(u1, g) != u1:
        v = _not_inside(perp(u1, g), u1) or _not_inside(u1, perp(u1, g))
        raise PreconditionError("U1 is not equal to its orthogonal", witness=v)
    w = _first_escape(c.d1, u1, u0)
    if w is not None:
        raise PreconditionError("d1(U1) is not inside U0", witness=w)
    u2 = right_orthogonal(u0, s.form.c41)
    w = _first_escape(c.d2, u2, u1)
    if w is not None:
        raise InvariantError("d2(Ann(U0)) is not inside U1", witness=w)
    L = sub2groupoid(make_subcomplex(u2, u1, u0, c), s.groupoid)
    if classify(L, s).kind != "lagrangian":
        raise InvariantError("pair did not produce a Lagrangian sub-2-groupoid")
    return L


def _signature_note(E: ConstantCourantAlgebroid) -> str | None:
    n = E.dim_w1
    pos, neg, _ = inertia(E.g.gram)
    if n % 2 or pos != neg:
        return (f"pairing has signature ({pos}, {neg}); without signature (n, n) "
                "no constant Dirac structure exists")
    return None


def dirac_report(u1: Subspace, E: ConstantCourantAlgebroid, degree: int = 2) -> Report:
    """Lagrangian test for ``U1`` plus bracket closure on sections ``x^a u`` with ``|a| <= degree``."""
    rep = Report()
    if u1.ambient_dim != E.dim_w1:
        raise DimensionError("U1 does not live in W1")
    up = perp(u1, E.g)
    ok = rep.add("U1 equals its orthogonal", up == u1,
                 {"outside U1": _not_inside(up, u1), "outside perp": _not_inside(u1, up)})
    note = _signature_note(E)
    if not ok:
        if note:
            rep.notes.append(note)
        return rep
    bad = _closure_failure(E, u1, degree)
    rep.add(f"bracket closed on U1-valued sections (degree <= {degree})", bad is None, bad)
    return rep


def _integral(v) -> list[int]:
    m = lcm(*(x.denominator for x in v)) if v else 1
    return [int(x * m) for x in v]


def _closure_failure(E: ConstantCourantAlgebroid, u1: Subspace, degree: int):
    """First pair of generators ``x^a u`` whose bracket leaves ``U1``, or None.

    Runs on the integer-rescaled bracket, which is a nonzero multiple of the
    original one, and tests membership against a basis of ``Ann(U1)``.
    Generators are scaled to integer vectors, which does not change the span.
    """
    sp = _SparseOps(E, None)
    vecs = [_integral(v) for v in u1.vectors()]
    ann = [_integral(y) for y in kernel(u1.basis.T).vectors()]
    gens = [{(i, a): c for i, c in enumerate(v) if c}
            for a in monomials(E.dim_w0, degree) for v in vecs]
    for x in gens:
        for y in gens:
            out = sp.bracket(x, y)
            if not out or not ann:
                continue
            by_exp: dict = {}
            for (i, e), c in out.items():
                by_exp.setdefault(e, {})[i] = c
            for e, comp in by_exp.items():
                if any(sum(z[i] * c for i, c in comp.items()) for z in ann):
                    s1, s2 = (_from_terms(E, t) for t in (x, y))
                    vec = tuple(bracket(E, s1, s2)[i].coefficient(e) for i in range(E.dim_w1))
                    return {"s1": describe_section(s1), "s2": describe_section(s2),
                            "value": {"exponent": e, "vector": vec}}
    return None


def _from_terms(E: ConstantCourantAlgebroid, t: dict) -> PolySection:
    comps = [Poly.zero(E.dim_w0) for _ in range(E.dim_w1)]
    for (i, a), c in t.items():
        comps[i] = comps[i] + Poly.monomial(a, c)
    return PolySection(comps)


def is_constant_dirac(u1: Subspace, E: ConstantCourantAlgebroid, degree: int = 2) -> bool:
    rep = dirac_report(u1, E, degree)
    if rep.checks[0].passed and not rep.passed:
        raise InvariantError("a Lagrangian U1 failed bracket closure", witness=rep.failures())
    return rep.passed


def _csg_of(x) -> ConstantSymplectic2Groupoid:
    if isinstance(x, ConstantCourantAlgebroid):
        return tuple_to_csg(courant_to_tuple(x))
    return x


def _courant_of(s: ConstantSymplectic2Groupoid) -> ConstantCourantAlgebroid:
    return ConstantCourantAlgebroid(_pairing_g(s), s.complex.d1)


def dirac_to_lagrangian(u1: Subspace, s) -> SubTwoGroupoid:
    s = _csg_of(s)
    _require_symmetric(s)
    if not is_constant_dirac(u1, _courant_of(s)):
        raise PreconditionError("U1 is not a constant Dirac structure")
    return lagrangian_from_pair(u1, Subspace.full(s.complex.dim_w0), s)


def lagrangian_to_dirac(L: SubTwoGroupoid, E) -> Subspace:
    """``U1`` of a wide Lagrangian sub-2-groupoid (whose ``U2`` is then zero)."""
    s = _csg_of(E)
    if not L.is_wide():
        raise PreconditionError("sub-2-groupoid is not wide (L0 is not all of V0)")
    if classify(L, s).kind != "lagrangian":
        raise PreconditionError("sub-2-groupoid is not Lagrangian")
    if L.source.u2.dim:
        raise InvariantError("wide Lagrangian has nonzero U2")
    return L.source.u1


@dataclass(frozen=True)
class DiracGroupoid:
    """``U1 + W0 => W0`` in the coordinates of ``L1``'s canonical basis."""

    arrows: Subspace
    source: Mat
    target: Mat
    unit: Mat


def dirac_groupoid(u1: Subspace, E) -> DiracGroupoid:
    s = _csg_of(E)
    L = dirac_to_lagrangian(u1, s)
    g = s.groupoid
    B = L.L1.basis
    unit = g.degeneracy(0, 0)
    coords = Mat.from_columns([L.L1.coordinates(v) for v in unit.columns()], B.cols)
    return DiracGroupoid(L.L1, g.face(1, 0) @ B, g.face(1, 1) @ B, coords)


# enumeration helpers ---------------------------------------------------------

def coordinate_subspaces(n: int):
    for mask in product((0, 1), repeat=n):
        yield Subspace.span(n, [[int(i == j) for i in range(n)] for j in range(n) if mask[j]])


def coordinate_subcomplexes(c: ChainComplex3):
    """Every subcomplex whose three subspaces are spanned by standard basis vectors."""
    n2, n1, n0 = c.dims
    for u2 in coordinate_subspaces(n2):
        for u1 in coordinate_subspaces(n1):
            if _first_escape(c.d2, u2, u1) is not None:
                continue
            for u0 in coordinate_subspaces(n0):
                if _first_escape(c.d1, u1, u0) is None:
                    yield Subcomplex(u2, u1, u0, c)


def skew_matrices(n: int, entries=(-1, 0, 1)):
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for vals in product(entries, repeat=len(idx)):
        m = [[0] * n for _ in range(n)]
        for (i, j), x in zip(idx, vals):
            m[i][j], m[j][i] = x, -x
        yield Mat(m, rows=n, cols=n)


def skew_graph(b: Mat) -> Subspace:
    """``{(v, b v)}`` inside ``Q^n + (Q^n)*``."""
    return Subspace(Mat.vstack(Mat.identity(b.rows), b))
