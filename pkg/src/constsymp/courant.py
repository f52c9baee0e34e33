"""Constant Courant algebroids ``W1 x W0 -> W0``.

Functions on the base are polynomials in the coordinates ``x0..x_{n-1}``
of W0, and a section is a :class:`PolySection` (one polynomial per basis
vector of W1).  The pairing is the constant form ``g``, the anchor sends
``w1`` to the constant vector field ``d w1``, and the bracket extends

    [f w, h w'] = f rho(w)(h) w' - h rho(w')(f) w + h <w, w'> D f

over monomial terms.  ``D f = g^{-1} d^T grad f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

from .errors import DimensionError, PreconditionError
from .exactla import Bilin, Mat, vector
from .poly import Poly, PolySection, monomials
from .report import Report

__all__ = [
    "ConstantCourantAlgebroid",
    "new_algebroid",
    "anchor_apply",
    "dee",
    "bracket",
    "bracket_terms",
    "pairing_sections",
    "verify_axioms",
    "describe_section",
]


@dataclass(frozen=True)
class ConstantCourantAlgebroid:
    """Symmetric nondegenerate ``g`` on W1 and ``d: W1 -> W0`` with ``d g^{-1} d^T = 0``."""

    g: Bilin
    boundary: Mat
    _ginv: Mat = field(init=False, repr=False, compare=False)
    _dee: Mat = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g = self.g if isinstance(self.g, Bilin) else Bilin(self.g)
        object.__setattr__(self, "g", g)
        if not g.is_symmetric():
            raise PreconditionError("pairing is not symmetric")
        if not g.is_nondegenerate():
            raise PreconditionError("pairing is degenerate")
        if self.boundary.cols != g.left_dim:
            raise DimensionError(f"boundary has {self.boundary.cols} columns, W1 has dim {g.left_dim}")
        ginv = g.gram.inverse()
        defect = self.boundary @ ginv @ self.boundary.T
        if not defect.is_zero():
            raise PreconditionError("image of the dual of the boundary is not isotropic",
                                    witness=defect)
        object.__setattr__(self, "_ginv", ginv)
        object.__setattr__(self, "_dee", ginv @ self.boundary.T)
        object.__setattr__(self, "_cache", {})

    @property
    def dim_w1(self) -> int:
        return self.g.left_dim

    @property
    def dim_w0(self) -> int:
        return self.boundary.rows

    @property
    def dee_matrix(self) -> Mat:
        """``g^{-1} d^T``, the coordinate form of D on gradients."""
        return self._dee

    def section(self, components: Sequence) -> PolySection:
        return PolySection([c if isinstance(c, Poly) else Poly.constant(self.dim_w0, c)
                            for c in components])

    def constant_section(self, vec: Sequence) -> PolySection:
        return PolySection.constant(vector(vec), self.dim_w0)

    def generator(self, i: int, exponent=None) -> PolySection:
        return PolySection.basis(self.dim_w1, i, self.dim_w0, exponent)


def new_algebroid(g, boundary: Mat) -> ConstantCourantAlgebroid:
    return ConstantCourantAlgebroid(g if isinstance(g, Bilin) else Bilin(g), boundary)


def _check_section(E: ConstantCourantAlgebroid, s: PolySection):
    if len(s) != E.dim_w1:
        raise DimensionError(f"section has {len(s)} components, W1 has dim {E.dim_w1}")


def anchor_apply(E: ConstantCourantAlgebroid, s: PolySection, f: Poly) -> Poly:
    """``rho(s)(f) = sum_j (d s)_j * df/dx_j``."""
    _check_section(E, s)
    n = E.dim_w0
    out = Poly.zero(n)
    for j in range(n):
        fj = f.diff(j)
        if fj.is_zero():
            continue
        comp = Poly.zero(n)
        for i in range(E.dim_w1):
            c = E.boundary[j, i]
            if c and not s[i].is_zero():
                comp = comp + s[i] * c
        out = out + comp * fj
    return out


def dee(E: ConstantCourantAlgebroid, f: Poly) -> PolySection:
    """``D f = g^{-1} d^T grad f``."""
    grad = f.gradient()
    D = E.dee_matrix
    comps = []
    for i in range(E.dim_w1):
        p = Poly.zero(E.dim_w0)
        for j, gj in enumerate(grad):
            if D[i, j] and not gj.is_zero():
                p = p + gj * D[i, j]
        comps.append(p)
    return PolySection(comps)


def pairing_sections(E: ConstantCourantAlgebroid, s1: PolySection, s2: PolySection) -> Poly:
    _check_section(E, s1)
    _check_section(E, s2)
    G = E.g.gram
    out = Poly.zero(E.dim_w0)
    for i in range(E.dim_w1):
        if s1[i].is_zero():
            continue
        for k in range(E.dim_w1):
            if G[i, k] and not s2[k].is_zero():
                out = out + s1[i] * s2[k] * G[i, k]
    return out


def _basic_terms(a: tuple, i: int, b: tuple, k: int, d, D, G) -> dict:
    """``[x^a e_i, x^b e_k]`` from row-list constants ``d``, ``D = g^{-1} d^T`` and ``G``."""
    n, n1 = len(a), len(G)
    out: dict = {}
    ab = tuple(x + y for x, y in zip(a, b))
    for j in range(n):
        if not (a[j] or b[j]):
            continue
        e = ab[:j] + (ab[j] - 1,) + ab[j + 1:]
        # f rho(e_i)(h) e_k with f = x^a, h = x^b
        if b[j] and d[j][i]:
            _acc(out, (k, e), d[j][i] * b[j])
        # - h rho(e_k)(f) e_i
        if a[j] and d[j][k]:
            _acc(out, (i, e), -d[j][k] * a[j])
        # h <e_i, e_k> D f
        if a[j] and G[i][k]:
            for m in range(n1):
                if D[m][j]:
                    _acc(out, (m, e), G[i][k] * a[j] * D[m][j])
    return out


def _basic(E: ConstantCourantAlgebroid, a: tuple, i: int, b: tuple, k: int) -> dict:
    """``[x^a e_i, x^b e_k]`` as ``{(component, exponent): coefficient}``, memoized per algebroid."""
    key = (a, i, b, k)
    hit = E._cache.get(key)
    if hit is None:
        consts = E._cache.get("consts")
        if consts is None:
            consts = E._cache["consts"] = (E.boundary.tolist(), E.dee_matrix.tolist(), E.g.gram.tolist())
        hit = E._cache[key] = _basic_terms(a, i, b, k, *consts)
    return hit


def _acc(out: dict, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _from_dict(E: ConstantCourantAlgebroid, acc: dict) -> PolySection:
    comps = [dict() for _ in range(E.dim_w1)]
    for (m, e), c in acc.items():
        comps[m][e] = c
    return PolySection([Poly._wrap(E.dim_w0, t) for t in comps])


def bracket(E: ConstantCourantAlgebroid, s1: PolySection, s2: PolySection) -> PolySection:
    """Courant bracket, by bilinear extension over the monomial terms ``x^a e_i``."""
    _check_section(E, s1)
    _check_section(E, s2)
    acc: dict = {}
    t2 = list(s2.items())
    for i, a, c1 in s1.items():
        for k, b, c2 in t2:
            c = c1 * c2
            for key, v in _basic(E, a, i, b, k).items():
                w = acc.get(key, 0) + c * v
                if w:
                    acc[key] = w
                else:
                    acc.pop(key, None)
    return _from_dict(E, acc)


def bracket_terms(E: ConstantCourantAlgebroid, terms1: Iterable, terms2: Iterable) -> PolySection:
    """Bracket of ``sum f w`` and ``sum h w'`` given as lists of ``(Poly, vector)`` pairs.

    Evaluates the defining formula on each pair of terms with arbitrary
    constant vectors ``w``, ``w'`` (not only basis vectors).
    """
    n1, n = E.dim_w1, E.dim_w0
    terms2 = list(terms2)
    out = PolySection.zero(n1, n)
    for f, w in terms1:
        w = vector(w)
        cw = E.constant_section(w)
        for h, wp in terms2:
            wp = vector(wp)
            cwp = E.constant_section(wp)
            out = out + E.constant_section(wp).scale(f * anchor_apply(E, cw, h))
            out = out - E.constant_section(w).scale(h * anchor_apply(E, cwp, f))
            out = out + dee(E, f).scale(h * E.g(w, wp))
    return out


def describe_section(s: PolySection) -> str:
    parts = [f"({p})*e{i}" for i, p in enumerate(s) if not p.is_zero()]
    return " + ".join(parts) or "0"


# sparse term dicts ------------------------------------------------------------
# A section is {(component, exponent): coefficient}; a function is {exponent: coefficient}.

def _common_den(m: Mat) -> int:
    out = 1
    for row in m.tolist():
        for x in row:
            out = lcm(out, x.denominator)
    return out


def _ints(rows):
    return [[x.numerator if x.denominator == 1 else x for x in r] for r in rows]


def _to_terms(s: PolySection) -> dict:
    return {(i, e): c for i, e, c in s.items()}


def _sub_exp(e: tuple, j: int) -> tuple:
    return e[:j] + (e[j] - 1,) + e[j + 1:]


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class _Sparse:
    """Term-dict versions of bracket, pairing, anchor and D.

    With the built-in bracket the constants are rescaled to integers:
    ``g -> mu g`` and ``d -> L d`` (so ``D -> (L/mu) D``).  Each axiom is
    homogeneous in ``d`` and invariant under that change of ``g``, so the
    verdict on the rescaled algebroid equals the verdict on ``E``, while
    the arithmetic stays in Python ints.
    """

    def __init__(self, E: ConstantCourantAlgebroid, br: Callable | None):
        self.E = E
        self.n0, self.n1 = E.dim_w0, E.dim_w1
        self.custom = br
        g, d, D = E.g.gram, E.boundary, E.dee_matrix
        if br is None:
            mu = _common_den(g)
            L = mu * lcm(_common_den(d), _common_den(D))
            g, d, D = g * mu, d * L, D * Fraction(L, mu)
        self.G, self.d, self.D = (_ints(m.tolist()) for m in (g, d, D))
        self.memo: dict = {}

    def basic(self, a, i, b, k) -> dict:
        key = (a, i, b, k)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = _basic_terms(a, i, b, k, self.d, self.D, self.G)
        return hit

    def bracket(self, x: dict, y: dict) -> dict:
        if self.custom is not None:
            return _to_terms(self.custom(self.E, _from_dict(self.E, x), _from_dict(self.E, y)))
        out: dict = {}
        for (i, a), c1 in x.items():
            for (k, b), c2 in y.items():
                c = c1 * c2
                for key, v in self.basic(a, i, b, k).items():
                    _acc(out, key, c * v)
        return out

    def pairing(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (i, a), c1 in x.items():
            row = self.G[i]
            for (k, b), c2 in y.items():
                if row[k]:
                    _acc(out, _add_exp(a, b), c1 * c2 * row[k])
        return out

    def anchor(self, x: dict, f: dict) -> dict:
        out: dict = {}
        for (i, a), c1 in x.items():
            for j in range(self.n0):
                dji = self.d[j][i]
                if not dji:
                    continue
                for b, c2 in f.items():
                    if b[j]:
                        _acc(out, _sub_exp(_add_exp(a, b), j), c1 * c2 * dji * b[j])
        return out

    def dee(self, f: dict) -> dict:
        out: dict = {}
        for b, c in f.items():
            for j in range(self.n0):
                if b[j]:
                    e = _sub_exp(b, j)
                    for m in range(self.n1):
                        if self.D[m][j]:
                            _acc(out, (m, e), c * b[j] * self.D[m][j])
        return out


def _times(f: dict, x: dict) -> dict:
    out: dict = {}
    for e, c1 in f.items():
        for (m, a), c2 in x.items():
            _acc(out, (m, _add_exp(e, a)), c1 * c2)
    return out


def _plus(x: dict, y: dict, sign=1) -> dict:
    out = dict(x)
    for k, c in y.items():
        _acc(out, k, sign * c)
    return out


def verify_axioms(E: ConstantCourantAlgebroid, degree_bound: int,
                  bracket: Callable | None = None, max_witnesses: int = 10) -> Report:
    """Check the four Courant axioms as exact polynomial identities.

    Sections range over ``x^a e_i`` with ``|a| <= degree_bound`` and the
    function in the Leibniz rule over monomials of the same degree bound.
    ``bracket`` replaces the built-in bracket (used to exercise the checker).
    """
    if degree_bound < 1:
        raise PreconditionError("degree bound must be at least 1")
    sp = _Sparse(E, bracket)
    monos = monomials(E.dim_w0, degree_bound)
    one = 1 if bracket is None else Fraction(1)
    gens = [{(i, a): one} for a in monos for i in range(E.dim_w1)]
    funcs = [{a: one} for a in monos]
    N = len(gens)
    B = [[sp.bracket(gens[p], gens[q]) for q in range(N)] for p in range(N)]
    rep = Report()

    def show(x: dict) -> str:
        return describe_section(_from_dict(E, x))

    def show_f(f: dict) -> str:
        return repr(Poly._wrap(E.dim_w0, dict(f)))

    def record(name, failures, total):
        if not failures:
            rep.add(f"{name} ({total} instances)", True)
            return
        for w in failures[:max_witnesses]:
            rep.add(name, False, w)
        if len(failures) > max_witnesses:
            rep.notes.append(f"{name}: {len(failures) - max_witnesses} further failures not listed")

    fails = []
    for p in range(N):
        for q in range(N):
            for f in funcs:
                lhs = sp.bracket(gens[p], _times(f, gens[q]))
                rhs = _plus(_times(sp.anchor(gens[p], f), gens[q]), _times(f, B[p][q]))
                if lhs != rhs:
                    fails.append({"e1": show(gens[p]), "f": show_f(f), "e2": show(gens[q])})
    record("axiom 1 (Leibniz)", fails, N * N * len(funcs))

    fails = []
    for p in range(N):
        for q in range(N):
            for r in range(N):
                lhs = sp.anchor(gens[p], sp.pairing(gens[q], gens[r]))
                rhs = _plus(sp.pairing(B[p][q], gens[r]), sp.pairing(gens[q], B[p][r]))
                if lhs != rhs:
                    fails.append({"e1": show(gens[p]), "e2": show(gens[q]), "e3": show(gens[r])})
    record("axiom 2 (invariance of the pairing)", fails, N ** 3)

    fails = []
    for p in range(N):
        for q in range(N):
            for r in range(N):
                lhs = sp.bracket(B[p][q], gens[r])
                rhs = _plus(sp.bracket(gens[p], B[q][r]), sp.bracket(gens[q], B[p][r]), -1)
                if lhs != rhs:
                    fails.append({"e1": show(gens[p]), "e2": show(gens[q]), "e3": show(gens[r])})
    record("axiom 3 (Jacobi)", fails, N ** 3)

    fails = []
    for p in range(N):
        for q in range(N):
            lhs = _plus(B[p][q], B[q][p])
            rhs = sp.dee(sp.pairing(gens[p], gens[q]))
            if lhs != rhs:
                s1, s2 = (_from_dict(E, gens[t]) for t in (p, q))
                br = bracket or globals()["bracket"]
                fails.append({"e1": show(gens[p]), "e2": show(gens[q]),
                              "lhs": describe_section(br(E, s1, s2) + br(E, s2, s1)),
                              "rhs": describe_section(dee(E, pairing_sections(E, s1, s2)))})
    record("axiom 4 (symmetric part)", fails, N * N)
    return rep
