"""JSON documents for every domain object.

A document is ``{"format_version": "1", "kind": ..., "payload": {...}}``.
Rationals are bare integers or reduced ``"p/q"`` strings, matrices are
row-major arrays of arrays and subspaces are basis-column matrices.
Serialization is canonical: sorted keys, two-space indent, rows of
scalars on one line, reduced rationals, trailing newline.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .bridge import ConstantSymplectic2Groupoid, CsgTuple
from .courant import ConstantCourantAlgebroid
from .dirac import DiracClassification, Subcomplex, make_subcomplex
from .doldkan import ChainComplex3, LinearTwoGroupoid, realize
from .errors import ConstSympError, DimensionError, PreconditionError
from .exactla import Bilin, Mat, Subspace
from .forms import AlphaForm, ConstantTwoForm
from .poly import Poly, PolySection
from .report import Check, Report

__all__ = [
    "FORMAT_VERSION",
    "KINDS",
    "Document",
    "DocumentError",
    "parse",
    "serialize",
    "encode",
    "decode",
    "jsonable",
    "rat_to_json",
]

FORMAT_VERSION = "1"


class DocumentError(ConstSympError, ValueError):
    """Malformed document: JSON syntax (with line/column) or schema (with field path)."""

    def __init__(self, message, path: str = "", line: int | None = None,
                 column: int | None = None, hint: str | None = None):
        super().__init__(message)
        self.path = path
        self.line = line
        self.column = column
        self.hint = hint

    def as_dict(self) -> dict:
        out = {"type": "document", "message": str(self)}
        if self.path:
            out["path"] = self.path
        if self.line is not None:
            out["line"] = self.line
            out["column"] = self.column
        if self.hint:
            out["hint"] = self.hint
        return out


@dataclass(frozen=True)
class Document:
    kind: str
    payload: dict
    format_version: str = FORMAT_VERSION


# rationals and matrices ------------------------------------------------------

_RAT = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def rat_to_json(x) -> int | str:
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def _rat(x, path: str) -> Fraction:
    if isinstance(x, bool):
        raise DocumentError("expected a rational, got a boolean", path)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise DocumentError("binary floats are not allowed", path,
                            hint="write rationals as integers or \"p/q\" strings")
    if not isinstance(x, str):
        raise DocumentError(f"expected a rational, got {type(x).__name__}", path)
    m = _RAT.match(x.strip())
    if not m or x != x.strip():
        raise DocumentError(f"cannot read {x!r} as a rational", path, hint="use \"p/q\" or an integer")
    p, q = int(m.group(1)), m.group(2)
    if q is None:
        return Fraction(p)
    q = int(q)
    if q == 0:
        raise DocumentError(f"zero denominator in {x!r}", path)
    v = Fraction(p, q)
    if v.numerator != p or v.denominator != q:
        raise DocumentError(f"rational {x!r} is not in lowest terms", path,
                            hint=f"write it as {json.dumps(rat_to_json(v))}")
    return v


def _count(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise DocumentError("expected a nonnegative integer", path)
    return x


def _list(x, path: str, length: int | None = None) -> list:
    if not isinstance(x, list):
        raise DocumentError(f"expected an array, got {type(x).__name__}", path)
    if length is not None and len(x) != length:
        raise DocumentError(f"expected {length} entries, got {len(x)}", path)
    return x


def _obj(x, path: str, required: tuple, optional: tuple = ()) -> dict:
    if not isinstance(x, dict):
        raise DocumentError(f"expected an object, got {type(x).__name__}", path)
    for k in x:
        if k not in required and k not in optional:
            raise DocumentError(f"unknown field {k!r}", _join(path, k))
    for k in required:
        if k not in x:
            raise DocumentError(f"missing field {k!r}", _join(path, k))
    return x


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _matrix(x, path: str, rows: int, cols: int | None = None) -> Mat:
    """Row-major matrix with ``rows`` rows; ``cols`` inferred from the rows when not given."""
    x = _list(x, path, rows)
    if cols is None:
        cols = len(x[0]) if rows and isinstance(x[0], list) else 0
    out = []
    for i, r in enumerate(x):
        rp = _join(path, i)
        r = _list(r, rp, cols)
        out.append([_rat(v, _join(rp, j)) for j, v in enumerate(r)])
    return Mat(out, rows=rows, cols=cols)


def _mat_json(m: Mat) -> list:
    return [[rat_to_json(v) for v in row] for row in m.tolist()]


def _subspace(x, path: str, n: int) -> Subspace:
    m = _matrix(x, path, n)
    s = Subspace(m)
    if s.dim != m.cols:
        raise DocumentError("basis columns are linearly dependent", path)
    return s


def _dims(x, path: str, k: int) -> tuple:
    return tuple(_count(v, _join(path, i)) for i, v in enumerate(_list(x, path, k)))


# per-kind payloads -------------------------------------------------------------

def _dec_complex(p, path):
    p = _obj(p, path, ("dims", "d2", "d1"))
    n2, n1, n0 = _dims(p["dims"], _join(path, "dims"), 3)
    return ChainComplex3(_matrix(p["d2"], _join(path, "d2"), n1, n2),
                         _matrix(p["d1"], _join(path, "d1"), n0, n1))


def _enc_complex(c: ChainComplex3):
    return {"dims": list(c.dims), "d2": _mat_json(c.d2), "d1": _mat_json(c.d1)}


def _dec_matrix(p, path):
    p = _obj(p, path, ("rows", "cols", "entries"))
    r, c = _count(p["rows"], _join(path, "rows")), _count(p["cols"], _join(path, "cols"))
    return _matrix(p["entries"], _join(path, "entries"), r, c)


def _enc_matrix(m: Mat):
    return {"rows": m.rows, "cols": m.cols, "entries": _mat_json(m)}


def _dec_groupoid(p, path):
    p = _obj(p, path, ("level_dims", "faces", "degeneracies"))
    d = _dims(p["level_dims"], _join(path, "level_dims"), 4)
    fp, dp = _join(path, "faces"), _join(path, "degeneracies")
    faces = _list(p["faces"], fp, 3)
    degs = _list(p["degeneracies"], dp, 3)
    fs = tuple(tuple(_matrix(m, _join(_join(fp, q - 1), i), d[q - 1], d[q])
                     for i, m in enumerate(_list(faces[q - 1], _join(fp, q - 1), q + 1)))
               for q in (1, 2, 3))
    ds = tuple(tuple(_matrix(m, _join(_join(dp, q), i), d[q + 1], d[q])
                     for i, m in enumerate(_list(degs[q], _join(dp, q), q + 1)))
               for q in (0, 1, 2))
    return LinearTwoGroupoid(d, fs, ds)


def _enc_groupoid(g: LinearTwoGroupoid):
    return {"level_dims": list(g.dims),
            "faces": [[_mat_json(m) for m in level] for level in g.faces],
            "degeneracies": [[_mat_json(m) for m in level] for level in g.degeneracies]}


def _dec_form(p, path):
    p = _obj(p, path, ("dims", "matrix"))
    dims = _dims(p["dims"], _join(path, "dims"), 3)
    n = dims[0] + 2 * dims[1] + dims[2]
    return ConstantTwoForm(dims, _matrix(p["matrix"], _join(path, "matrix"), n, n))


def _enc_form(f: ConstantTwoForm):
    return {"dims": list(f.dims), "matrix": _mat_json(f.matrix)}


def _dec_alpha(p, path):
    p = _obj(p, path, ("dim_w1", "dim_w0", "b11", "b12"))
    n1, n0 = _count(p["dim_w1"], _join(path, "dim_w1")), _count(p["dim_w0"], _join(path, "dim_w0"))
    return AlphaForm(_matrix(p["b11"], _join(path, "b11"), n1, n1),
                     _matrix(p["b12"], _join(path, "b12"), n1, n0))


def _enc_alpha(a: AlphaForm):
    return {"dim_w1": a.dim_w1, "dim_w0": a.dim_w0, "b11": _mat_json(a.b11), "b12": _mat_json(a.b12)}


def _dec_tuple(p, path):
    p = _obj(p, path, ("dim_w1", "dim_w0", "g", "boundary", "r"))
    n1, n0 = _count(p["dim_w1"], _join(path, "dim_w1")), _count(p["dim_w0"], _join(path, "dim_w0"))
    return CsgTuple(Bilin(_matrix(p["g"], _join(path, "g"), n1, n1)),
                    _matrix(p["boundary"], _join(path, "boundary"), n0, n1),
                    Bilin(_matrix(p["r"], _join(path, "r"), n1, n1)))


def _enc_tuple(t: CsgTuple):
    return {"dim_w1": t.dim_w1, "dim_w0": t.dim_w0, "g": _mat_json(t.g.gram),
            "boundary": _mat_json(t.boundary), "r": _mat_json(t.r.gram)}


def _dec_courant(p, path):
    p = _obj(p, path, ("dim_w1", "dim_w0", "g", "boundary"))
    n1, n0 = _count(p["dim_w1"], _join(path, "dim_w1")), _count(p["dim_w0"], _join(path, "dim_w0"))
    return ConstantCourantAlgebroid(Bilin(_matrix(p["g"], _join(path, "g"), n1, n1)),
                                    _matrix(p["boundary"], _join(path, "boundary"), n0, n1))


def _enc_courant(E: ConstantCourantAlgebroid):
    return {"dim_w1": E.dim_w1, "dim_w0": E.dim_w0, "g": _mat_json(E.g.gram),
            "boundary": _mat_json(E.boundary)}


def _dec_subspace(p, path):
    p = _obj(p, path, ("ambient_dim", "basis"))
    n = _count(p["ambient_dim"], _join(path, "ambient_dim"))
    return _subspace(p["basis"], _join(path, "basis"), n)


def _enc_subspace(u: Subspace):
    return {"ambient_dim": u.ambient_dim, "basis": _mat_json(u.basis)}


def _dec_subcomplex(p, path):
    p = _obj(p, path, ("complex", "u2", "u1", "u0"))
    c = _dec_complex(p["complex"], _join(path, "complex"))
    n2, n1, n0 = c.dims
    return make_subcomplex(_subspace(p["u2"], _join(path, "u2"), n2),
                           _subspace(p["u1"], _join(path, "u1"), n1),
                           _subspace(p["u0"], _join(path, "u0"), n0), c)


def _enc_subcomplex(u: Subcomplex):
    return {"complex": _enc_complex(u.complex), "u2": _mat_json(u.u2.basis),
            "u1": _mat_json(u.u1.basis), "u0": _mat_json(u.u0.basis)}


def _dec_csg(p, path):
    p = _obj(p, path, ("complex", "form"))
    c = _dec_complex(p["complex"], _join(path, "complex"))
    f = _dec_form(p["form"], _join(path, "form"))
    if tuple(f.dims) != c.dims:
        raise DocumentError(f"form dims {list(f.dims)} differ from complex dims {list(c.dims)}",
                            _join(path, "form.dims"))
    return ConstantSymplectic2Groupoid(realize(c), c, f)


def _enc_csg(s: ConstantSymplectic2Groupoid):
    return {"complex": _enc_complex(s.complex), "form": _enc_form(s.form)}


def _dec_report(p, path):
    p = _obj(p, path, ("passed", "checks", "notes"))
    checks = []
    for i, c in enumerate(_list(p["checks"], _join(path, "checks"))):
        cp = _join(_join(path, "checks"), i)
        c = _obj(c, cp, ("name", "status"), ("witness",))
        if c["status"] not in ("pass", "fail"):
            raise DocumentError("status must be \"pass\" or \"fail\"", _join(cp, "status"))
        checks.append(Check(c["name"], c["status"] == "pass", c.get("witness")))
    notes = _list(p["notes"], _join(path, "notes"))
    rep = Report(checks, list(notes))
    if p["passed"] is not rep.passed:
        raise DocumentError("passed flag disagrees with the checks", _join(path, "passed"))
    return rep


def _enc_report(r: Report):
    checks = []
    for c in r.checks:
        item = {"name": c.name, "status": "pass" if c.passed else "fail"}
        if not c.passed:
            item["witness"] = jsonable(c.witness)
        checks.append(item)
    return {"passed": r.passed, "checks": checks, "notes": list(r.notes)}


def _dec_classification(p, path):
    p = _obj(p, path, ("kind", "isotropic", "coisotropic", "witness", "notes"))
    if p["kind"] not in ("isotropic", "coisotropic", "lagrangian", "none"):
        raise DocumentError("unknown classification", _join(path, "kind"))
    return DiracClassification(p["kind"], bool(p["isotropic"]), bool(p["coisotropic"]),
                               p["witness"], tuple(p["notes"]))


def _enc_classification(d: DiracClassification):
    return {"kind": d.kind, "isotropic": d.isotropic, "coisotropic": d.coisotropic,
            "witness": jsonable(d.witness), "notes": list(d.notes)}


_CODECS = {
    "complex": (_dec_complex, _enc_complex, ChainComplex3),
    "matrix": (_dec_matrix, _enc_matrix, Mat),
    "groupoid": (_dec_groupoid, _enc_groupoid, LinearTwoGroupoid),
    "form": (_dec_form, _enc_form, ConstantTwoForm),
    "alpha": (_dec_alpha, _enc_alpha, AlphaForm),
    "tuple": (_dec_tuple, _enc_tuple, CsgTuple),
    "courant": (_dec_courant, _enc_courant, ConstantCourantAlgebroid),
    "subspace": (_dec_subspace, _enc_subspace, Subspace),
    "subcomplex": (_dec_subcomplex, _enc_subcomplex, Subcomplex),
    "csg": (_dec_csg, _enc_csg, ConstantSymplectic2Groupoid),
    "report": (_dec_report, _enc_report, Report),
    "classification": (_dec_classification, _enc_classification, DiracClassification),
}

# documents whose payload is a plain record of other documents' payloads
_RECORDS = {
    "symmetrized": {"csg": "csg", "alpha": "alpha"},
    "equivalence": {"equivalent": None, "alpha": "alpha", "violated": None},
    "dirac": {"is_dirac": None, "report": "report"},
}

KINDS = tuple(_CODECS) + tuple(_RECORDS)


def _dec_record(kind, p, path):
    fields = _RECORDS[kind]
    p = _obj(p, path, tuple(fields))
    out = {}
    for k, sub in fields.items():
        v = p[k]
        out[k] = v if sub is None or v is None else _CODECS[sub][0](v, _join(path, k))
    return out


def _enc_record(kind, obj: dict):
    fields = _RECORDS[kind]
    out = {}
    for k, sub in fields.items():
        v = obj[k]
        out[k] = v if sub is None or v is None else _CODECS[sub][1](v)
    return out


def encode(kind: str, obj) -> Document:
    if kind in _CODECS:
        return Document(kind, _CODECS[kind][1](obj))
    if kind in _RECORDS:
        return Document(kind, _enc_record(kind, obj))
    raise DocumentError(f"unknown kind {kind!r}", "kind")


def decode(doc: Document):
    """The domain object of a document; invariant failures raise the library's errors."""
    if doc.kind in _CODECS:
        return _CODECS[doc.kind][0](doc.payload, "payload")
    return _dec_record(doc.kind, doc.payload, "payload")


def kind_of(obj) -> str:
    for kind, (_, _, cls) in _CODECS.items():
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"no document kind for {type(obj).__name__}")


# text ------------------------------------------------------------------------------

def parse(text: str) -> Document:
    """Read and schema-check a document (the payload is decoded once to validate it)."""
    try:
        raw = json.loads(text, parse_float=_no_float, parse_constant=_no_float)
    except json.JSONDecodeError as e:
        raise DocumentError(f"JSON syntax error: {e.msg}", line=e.lineno, column=e.colno) from None
    except _FloatSeen as e:
        raise DocumentError(f"binary float {e.args[0]} is not allowed",
                            hint="write rationals as integers or \"p/q\" strings") from None
    raw = _obj(raw, "", ("format_version", "kind", "payload"))
    if raw["format_version"] != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {raw['format_version']!r}", "format_version",
                            hint=f"this reader understands version {FORMAT_VERSION!r}")
    if raw["kind"] not in KINDS:
        raise DocumentError(f"unknown kind {raw['kind']!r}", "kind", hint="one of " + ", ".join(KINDS))
    doc = Document(raw["kind"], raw["payload"], raw["format_version"])
    _shape_check(doc)
    return doc


def _shape_check(doc: Document):
    """Decode, keeping schema errors but letting invariant errors through to the caller."""
    try:
        decode(doc)
    except DocumentError:
        raise
    except DimensionError as e:
        raise DocumentError(str(e), "payload") from None
    except PreconditionError:
        pass


class _FloatSeen(Exception):
    pass


def _no_float(s):
    raise _FloatSeen(s)


def _dump(v, indent: int) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v[k], indent + 1)}" for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(v, list):
        if not v:
            return "[]"
        if all(not isinstance(x, (dict, list)) for x in v):
            return "[" + ", ".join(json.dumps(x) for x in v) + "]"
        return "[\n" + ",\n".join(pad + _dump(x, indent + 1) for x in v) + "\n" + end + "]"
    return json.dumps(v)


def serialize(doc: Document) -> str:
    body = {"format_version": doc.format_version, "kind": doc.kind, "payload": jsonable(doc.payload)}
    return _dump(body, 0) + "\n"


def jsonable(x) -> Any:
    """JSON-ready copy of a witness or payload: rationals become ints or "p/q" strings."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return rat_to_json(x)
    if isinstance(x, Mat):
        return _mat_json(x)
    if isinstance(x, Bilin):
        return _mat_json(x.gram)
    if isinstance(x, Subspace):
        return _enc_subspace(x)
    if isinstance(x, (Poly, PolySection)):
        return repr(x)
    if isinstance(x, Check):
        return {"name": x.name, "passed": x.passed, "witness": jsonable(x.witness)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return repr(x)
