"""Exact linear algebra over Q.

A :class:`Mat` stores an integer numerator grid together with a single
positive common denominator, kept in lowest terms.  Products and sums are
then plain integer arithmetic, and two equal matrices always have equal
internal representations.

Subspaces are stored through a basis in reduced column-echelon form, so
``U == V`` compares subspaces, not bases.  Dual spaces are identified
with Q^n through the standard basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DimensionError, PreconditionError

__all__ = [
    "Mat",
    "Subspace",
    "Bilin",
    "rat",
    "vector",
    "kernel",
    "image",
    "annihilator",
    "perp",
    "left_orthogonal",
    "right_orthogonal",
    "contains",
    "equal",
    "sum_spaces",
    "intersect",
    "direct_sum",
    "preimage",
    "push_forward",
    "inertia",
]


def rat(x) -> Fraction:
    """Coerce ``x`` to a Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def vector(*xs) -> tuple:
    if len(xs) == 1 and not isinstance(xs[0], (int, Fraction, str)):
        xs = tuple(xs[0])
    return tuple(rat(x) for x in xs)


def _content(num, den):
    g = den
    for row in num:
        for x in row:
            if x:
                g = gcd(g, x)
                if g == 1:
                    return 1
    return g


class Mat:
    """Immutable rational matrix.

    ``Mat([[1, 2], [3, 4]])`` builds from rows; ``rows``/``cols`` must be
    given explicitly when a dimension is zero.
    """

    __slots__ = ("rows", "cols", "_num", "_den", "_sparse")

    def __init__(self, entries: Iterable[Iterable] = (), rows: int | None = None,
                 cols: int | None = None):
        data = [[x if type(x) is int else rat(x) for x in row] for row in entries]
        nrows = len(data) if rows is None else rows
        if cols is None:
            if not data:
                raise DimensionError("column count needed for a matrix without rows")
            cols = len(data[0])
        if len(data) != nrows:
            if data or nrows and cols:
                raise DimensionError(f"expected {nrows} rows, got {len(data)}")
            data = [[] for _ in range(nrows)]
        for row in data:
            if len(row) != cols:
                raise DimensionError(f"ragged row: expected {cols} entries, got {len(row)}")
        den = 1
        for row in data:
            for x in row:
                if type(x) is not int and x.denominator != 1:
                    den = lcm(den, x.denominator)
        num = tuple(tuple(x * den if type(x) is int else x.numerator * (den // x.denominator)
                          for x in row) for row in data)
        self._set(num, den, nrows, cols)

    def _set(self, num, den, rows, cols):
        g = _content(num, den)
        if g != 1:
            num = tuple(tuple(x // g for x in row) for row in num)
            den //= g
        self.rows = rows
        self.cols = cols
        self._num = num
        self._den = den
        self._sparse = None

    @classmethod
    def _from_int(cls, num, den, rows, cols) -> "Mat":
        m = cls.__new__(cls)
        m._set(tuple(tuple(r) for r in num), den, rows, cols)
        return m

    # construction helpers --------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls._from_int([[0] * cols for _ in range(rows)], 1, rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._from_int([[int(i == j) for j in range(n)] for i in range(n)], 1, n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Mat":
        cols = [vector(c) for c in columns]
        for c in cols:
            if len(c) != rows:
                raise DimensionError(f"column of length {len(c)} in a {rows}-row matrix")
        return cls([[c[i] for c in cols] for i in range(rows)], rows=rows, cols=len(cols))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Mat"]]) -> "Mat":
        """Assemble a block matrix; every block row and column must agree in size."""
        return cls.vstack(*(cls.hstack(*row) for row in blocks))

    @classmethod
    def hstack(cls, *mats: "Mat") -> "Mat":
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise DimensionError("hstack: row counts differ")
        den = 1
        for m in mats:
            den = lcm(den, m._den)
        num = [[] for _ in range(rows)]
        for m in mats:
            f = den // m._den
            for i, r in enumerate(m._num):
                num[i].extend(x * f for x in r)
        return cls._from_int(num, den, rows, sum(m.cols for m in mats))

    @classmethod
    def vstack(cls, *mats: "Mat") -> "Mat":
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise DimensionError("vstack: column counts differ")
        den = 1
        for m in mats:
            den = lcm(den, m._den)
        num = []
        for m in mats:
            f = den // m._den
            num.extend([x * f for x in r] for r in m._num)
        return cls._from_int(num, den, sum(m.rows for m in mats), cols)

    @classmethod
    def block_diag(cls, *mats: "Mat") -> "Mat":
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = cls.zeros(rows, cols)
        r = c = 0
        for m in mats:
            out = out.with_block(r, c, m)
            r += m.rows
            c += m.cols
        return out

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self._num[i][j], self._den)

    def row(self, i: int) -> tuple:
        return tuple(Fraction(x, self._den) for x in self._num[i])

    def column(self, j: int) -> tuple:
        return tuple(Fraction(r[j], self._den) for r in self._num)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Mat":
        return Mat._from_int([r[c0:c1] for r in self._num[r0:r1]], self._den, r1 - r0, c1 - c0)

    def with_block(self, r0: int, c0: int, m: "Mat") -> "Mat":
        """Copy of ``self`` with ``m`` written at offset (r0, c0)."""
        if r0 + m.rows > self.rows or c0 + m.cols > self.cols:
            raise DimensionError("block does not fit")
        den = lcm(self._den, m._den)
        f, g = den // self._den, den // m._den
        num = [[x * f for x in r] for r in self._num]
        for i, r in enumerate(m._num):
            num[r0 + i][c0:c0 + m.cols] = [x * g for x in r]
        return Mat._from_int(num, den, self.rows, self.cols)

    # arithmetic -------------------------------------------------------------

    @property
    def T(self) -> "Mat":
        num = [[self._num[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Mat._from_int(num, self._den, self.cols, self.rows)

    def _check_same(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        den = lcm(self._den, other._den)
        f, g = den // self._den, den // other._den
        num = [[a * f + b * g for a, b in zip(ra, rb)] for ra, rb in zip(self._num, other._num)]
        return Mat._from_int(num, den, self.rows, self.cols)

    def __neg__(self) -> "Mat":
        return Mat._from_int([[-x for x in r] for r in self._num], self._den, self.rows, self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> "Mat":
        if isinstance(c, Mat):
            return NotImplemented
        c = rat(c)
        num = [[x * c.numerator for x in r] for r in self._num]
        return Mat._from_int(num, self._den * c.denominator, self.rows, self.cols)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Mat":
        return self * (1 / rat(c))

    def _nonzeros(self):
        if self._sparse is None:
            self._sparse = tuple(tuple((j, x) for j, x in enumerate(r) if x) for r in self._num)
        return self._sparse

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            n = other.cols
            bnum = other._num
            num = []
            for row in self._nonzeros():
                acc = [0] * n
                for k, a in row:
                    for j, b in enumerate(bnum[k]):
                        if b:
                            acc[j] += a * b
                num.append(acc)
            return Mat._from_int(num, self._den * other._den, self.rows, n)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        v = vector(v)
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for a matrix with {self.cols} columns")
        out = []
        for row in self._nonzeros():
            s = Fraction(0)
            for k, a in row:
                if v[k]:
                    s += a * v[k]
            out.append(s / self._den)
        return tuple(out)

    # structure --------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not x for r in self._num for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def is_skew(self) -> bool:
        return self.is_square() and self == -self.T

    def rank(self) -> int:
        return len(_rref(self._int_rows())[0])

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise DimensionError("only square matrices have inverses")
        n = self.rows
        aug = Mat.hstack(self, Mat.identity(n))
        rows, pivots = _rref(aug._int_rows())
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise PreconditionError("matrix is singular")
        return Mat([[r.get(n + j, 0) for j in range(n)] for r in rows[:n]], rows=n, cols=n)

    def _int_rows(self) -> list[dict]:
        return [{j: x for j, x in enumerate(r) if x} for r in self._num]

    # protocol -----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._den == other._den and self._num == other._num

    def __hash__(self):
        return hash((self.rows, self.cols, self._den, self._num))

    def __repr__(self):
        if self.rows == 0 or self.cols == 0:
            return f"Mat.zeros({self.rows}, {self.cols})"
        body = ", ".join("[" + ", ".join(_fmt(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"Mat([{body}])"

    def __reduce__(self):
        return (Mat, (self.tolist(), self.rows, self.cols))


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _primitive(row: dict) -> dict:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    return {k: x // g for k, x in row.items()}


def _rref(rows: list[dict]) -> tuple[list[dict], list[int]]:
    """Gauss-Jordan on sparse integer rows.

    Returns the nonzero rows of the reduced row-echelon form (pivot entries
    equal to 1, stored as Fractions) sorted by pivot column, and the pivot
    columns.
    """
    reduced: list[tuple[int, dict]] = []
    for r in rows:
        r = dict(r)
        for pc, pr in reduced:
            c = r.get(pc)
            if c:
                p = pr[pc]
                new = {k: p * x for k, x in r.items()}
                for k, x in pr.items():
                    v = new.get(k, 0) - c * x
                    if v:
                        new[k] = v
                    else:
                        new.pop(k, None)
                r = _primitive(new)
        if not r:
            continue
        pc = min(r)
        p = r[pc]
        for idx, (qc, qr) in enumerate(reduced):
            c = qr.get(pc)
            if c:
                new = {k: p * x for k, x in qr.items()}
                for k, x in r.items():
                    v = new.get(k, 0) - c * x
                    if v:
                        new[k] = v
                    else:
                        new.pop(k, None)
                reduced[idx] = (qc, _primitive(new))
        reduced.append((pc, r))
    reduced.sort(key=lambda t: t[0])
    out = []
    for pc, r in reduced:
        p = r[pc]
        out.append({k: Fraction(x, p) for k, x in r.items()})
    return out, [pc for pc, _ in reduced]


class Subspace:
    """A linear subspace of Q^n.

    ``basis`` is an ``n x k`` matrix in reduced column-echelon form: its
    transpose is the reduced row-echelon form of any spanning set.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, spanning: Mat):
        rows, pivots = _rref(spanning.T._int_rows())
        n = spanning.rows
        self.ambient_dim = n
        self.pivots = tuple(pivots)
        self.basis = Mat([[r.get(i, 0) for r in rows] for i in range(n)], rows=n, cols=len(rows))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(Mat.from_columns(list(vectors), ambient_dim))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(Mat.zeros(n, 0))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(Mat.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[tuple]:
        return self.basis.columns()

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the canonical basis; raises if ``v`` is outside."""
        v = vector(v)
        coords = tuple(v[p] for p in self.pivots)
        if self.basis.apply(coords) != v:
            raise PreconditionError("vector is not in the subspace", witness=v)
        return coords

    def __contains__(self, v) -> bool:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length differs from ambient dimension")
        return self.basis.apply(tuple(v[p] for p in self.pivots)) == v

    def contains(self, other: "Subspace") -> bool:
        return contains(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_spaces(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def __ge__(self, other: "Subspace") -> bool:
        return contains(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis!r})"


def kernel(m: Mat) -> Subspace:
    """``{v : m v = 0}``."""
    rows, pivots = _rref(m._int_rows())
    n = m.cols
    free = [j for j in range(n) if j not in set(pivots)]
    cols = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in zip(rows, pivots):
            v[pc] = -r.get(f, 0)
        cols.append(v)
    return Subspace(Mat.from_columns(cols, n))


def image(m: Mat) -> Subspace:
    """Column span of ``m``."""
    return Subspace(m)


def annihilator(u: Subspace) -> Subspace:
    """``{xi : xi(u) = 0 for all u in U}`` in standard dual coordinates."""
    return kernel(u.basis.T)


def left_orthogonal(u: Subspace, g: "Bilin") -> Subspace:
    """``{w : g(w, u) = 0 for all u in U}``; ``U`` lives in the right factor."""
    if g.right_dim != u.ambient_dim:
        raise DimensionError("pairing and subspace dimensions differ")
    return kernel((g.gram @ u.basis).T)


def right_orthogonal(u: Subspace, g: "Bilin") -> Subspace:
    """``{w : g(u, w) = 0 for all u in U}``; ``U`` lives in the left factor."""
    if g.left_dim != u.ambient_dim:
        raise DimensionError("pairing and subspace dimensions differ")
    return kernel(u.basis.T @ g.gram)


def perp(u: Subspace, g: "Bilin") -> Subspace:
    """Orthogonal of ``U`` for a square pairing ``g``."""
    if g.left_dim != g.right_dim:
        raise DimensionError("perp needs a pairing of a space with itself")
    return left_orthogonal(u, g)


def _same_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def contains(a: Subspace, b: Subspace) -> bool:
    """True when ``b`` is a subspace of ``a``."""
    _same_ambient(a, b)
    return all(v in a for v in b.vectors())


def equal(a: Subspace, b: Subspace) -> bool:
    _same_ambient(a, b)
    return a == b


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return Subspace(Mat.hstack(a.basis, b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return annihilator(sum_spaces(annihilator(a), annihilator(b)))


def direct_sum(*parts: Subspace) -> Subspace:
    """Block direct sum of subspaces of consecutive coordinate blocks."""
    return Subspace(Mat.block_diag(*(p.basis for p in parts)))


def push_forward(m: Mat, u: Subspace) -> Subspace:
    """``m(U)``."""
    if m.cols != u.ambient_dim:
        raise DimensionError("map and subspace dimensions differ")
    return Subspace(m @ u.basis)


def preimage(m: Mat, u: Subspace) -> Subspace:
    """``{v : m v in U}``."""
    if m.rows != u.ambient_dim:
        raise DimensionError("map and subspace dimensions differ")
    return kernel(annihilator(u).basis.T @ m)


def inertia(m: Mat) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix, by congruence."""
    if not m.is_symmetric():
        raise PreconditionError("inertia needs a symmetric matrix")
    a = m.tolist()
    pos = neg = 0
    n = len(a)
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # congruence: row/col i += row/col j makes a[i][i] = 2 a[i][j]
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [i for i in active if i != piv]
        for i in rest:
            c = a[i][piv] / p
            if c:
                for k in rest:
                    a[i][k] -= c * a[piv][k]
        for i in rest:
            a[i][piv] = a[piv][i] = Fraction(0)
        active = rest
    return pos, neg, n - pos - neg


class Bilin:
    """A bilinear pairing ``Q^l x Q^r -> Q`` given by its Gram matrix.

    ``g(u, v) = u^T G v``; the left argument indexes rows.
    """

    __slots__ = ("gram",)

    def __init__(self, gram):
        self.gram = gram if isinstance(gram, Mat) else Mat(gram)

    @classmethod
    def zero(cls, left_dim: int, right_dim: int | None = None) -> "Bilin":
        return cls(Mat.zeros(left_dim, left_dim if right_dim is None else right_dim))

    @classmethod
    def identity(cls, n: int) -> "Bilin":
        return cls(Mat.identity(n))

    @property
    def left_dim(self) -> int:
        return self.gram.rows

    @property
    def right_dim(self) -> int:
        return self.gram.cols

    def __call__(self, u, v) -> Fraction:
        u = vector(u)
        gv = self.gram.apply(v)
        if len(u) != len(gv):
            raise DimensionError("left argument has the wrong length")
        return sum((a * b for a, b in zip(u, gv)), Fraction(0))

    @property
    def T(self) -> "Bilin":
        return Bilin(self.gram.T)

    def symmetric_part(self) -> "Bilin":
        return Bilin((self.gram + self.gram.T) / 2)

    def skew_part(self) -> "Bilin":
        return Bilin((self.gram - self.gram.T) / 2)

    def is_symmetric(self) -> bool:
        return self.gram.is_symmetric()

    def is_skew(self) -> bool:
        return self.gram.is_skew()

    def is_nondegenerate(self) -> bool:
        return self.gram.is_invertible()

    def __add__(self, other: "Bilin") -> "Bilin":
        return Bilin(self.gram + other.gram)

    def __sub__(self, other: "Bilin") -> "Bilin":
        return Bilin(self.gram - other.gram)

    def __neg__(self) -> "Bilin":
        return Bilin(-self.gram)

    def __mul__(self, c) -> "Bilin":
        return Bilin(self.gram * c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bilin):
            return NotImplemented
        return self.gram == other.gram

    def __hash__(self):
        return hash(("Bilin", self.gram))

    def __repr__(self):
        return f"Bilin({self.gram!r})"
