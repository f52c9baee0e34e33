"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import DimensionError
from .exactla import rat

__all__ = ["Poly", "PolySection", "monomials"]


def monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= max_degree, by degree then lexicographically."""
    out = []
    for d in range(max_degree + 1):
        degree_d = set()
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for j in combo:
                e[j] += 1
            degree_d.add(tuple(e))
        out.extend(sorted(degree_d, reverse=True))
    return out


class Poly:
    """Polynomial in ``nvars`` variables ``x0, x1, ...``.

    Terms map exponent tuples to nonzero Fractions.  Instances are treated
    as immutable.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: dict | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, dict) else terms
        clean = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} in a {nvars}-variable ring")
            c = rat(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean

    @classmethod
    def _wrap(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> "Poly":
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def var(cls, nvars: int, j: int) -> "Poly":
        e = [0] * nvars
        e[j] = 1
        return cls.monomial(e)

    @property
    def terms(self) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
        return tuple(sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))))

    def coefficient(self, exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError("polynomials in different rings")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._wrap(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._wrap(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                c = rat(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly.zero(self.nvars)
            return Poly._wrap(self.nvars, {e: c * v for e, v in self._terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._wrap(self.nvars, out)

    __rmul__ = __mul__

    def diff(self, j: int) -> "Poly":
        """Partial derivative in ``x_j``."""
        out = {}
        for e, c in self._terms.items():
            if e[j]:
                ne = e[:j] + (e[j] - 1,) + e[j + 1:]
                out[ne] = c * e[j]
        return Poly._wrap(self.nvars, out)

    def gradient(self) -> list["Poly"]:
        return [self.diff(j) for j in range(self.nvars)]

    def __call__(self, *point) -> Fraction:
        point = [rat(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                t *= x ** k
            total += t
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == Poly.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{j}" + (f"^{k}" if k > 1 else "") for j, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class PolySection:
    """A section of ``W1 x W0 -> W0``: one polynomial per basis vector of W1."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Poly]):
        self.components = tuple(components)
        if len({p.nvars for p in self.components}) > 1:
            raise DimensionError("components live in different polynomial rings")

    @classmethod
    def zero(cls, dim_w1: int, nvars: int) -> "PolySection":
        return cls([Poly.zero(nvars)] * dim_w1)

    @classmethod
    def constant(cls, vec: Sequence, nvars: int) -> "PolySection":
        return cls([Poly.constant(nvars, x) for x in vec])

    @classmethod
    def basis(cls, dim_w1: int, i: int, nvars: int, exponent=None) -> "PolySection":
        """``x^exponent * e_i``."""
        exponent = (0,) * nvars if exponent is None else tuple(exponent)
        return cls([Poly.monomial(exponent) if k == i else Poly.zero(nvars) for k in range(dim_w1)])

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i) -> Poly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def items(self):
        """Yield ``(i, exponent, coefficient)`` for every monomial term."""
        for i, p in enumerate(self.components):
            for e, c in p._terms.items():
                yield i, e, c

    def _check(self, other):
        if len(other) != len(self):
            raise DimensionError("sections of different bundles")

    def __add__(self, other: "PolySection") -> "PolySection":
        self._check(other)
        return PolySection([a + b for a, b in zip(self, other)])

    def __sub__(self, other: "PolySection") -> "PolySection":
        self._check(other)
        return PolySection([a - b for a, b in zip(self, other)])

    def __neg__(self) -> "PolySection":
        return PolySection([-a for a in self])

    def scale(self, f) -> "PolySection":
        """Multiply every component by a polynomial or scalar."""
        return PolySection([f * a if isinstance(f, Poly) else a * f for a in self])

    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySection):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"PolySection({list(self.components)!r})"
