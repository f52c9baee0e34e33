"""Command-line front end.

Every command reads documents (``-`` for stdin), writes one document to
stdout and exits with 0 (pass), 1 (verification failure) or 2 (input
error, described as JSON on stderr).  ``--pretty`` renders the output as
text instead.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bridge, courant, dirac, doldkan, forms
from .documents import Document, DocumentError, decode, encode, jsonable, parse, serialize
from .errors import DimensionError, InvariantError, PreconditionError
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, info: dict):
        super().__init__(info.get("message", ""))
        self.info = info


def _read(name: str, stdin_used: list) -> str:
    if name == "-":
        if stdin_used:
            raise InputError({"type": "usage", "message": "stdin ('-') can be read only once"})
        stdin_used.append(True)
        return sys.stdin.read()
    try:
        with open(name, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError({"type": "io", "message": str(e), "file": name}) from None


def _load(name: str, kinds: tuple, stdin_used: list):
    """Parse and decode a document of one of ``kinds``."""
    try:
        doc = parse(_read(name, stdin_used))
    except DocumentError as e:
        raise InputError({**e.as_dict(), "file": name}) from None
    if doc.kind not in kinds:
        raise InputError({"type": "document", "file": name, "path": "kind",
                          "message": f"expected kind {' or '.join(kinds)}, got {doc.kind!r}"})
    try:
        return doc, decode(doc)
    except PreconditionError as e:
        raise InputError({"type": "precondition", "file": name, "message": str(e),
                          "witness": jsonable(e.witness)}) from None


# verify ----------------------------------------------------------------------

def _verify_complex(c) -> Report:
    rep = Report()
    g = doldkan.realize(c)
    rep.extend(doldkan.verify_simplicial(g), "realize: ")
    rep.extend(doldkan.kan_check(g), "realize: ")
    rep.add("extract after realize is the identity", doldkan.extract(g) == c)
    return rep


def _verify_groupoid(g) -> Report:
    rep = Report()
    rep.extend(doldkan.verify_simplicial(g))
    if rep.passed:
        rep.extend(doldkan.kan_check(g))
    return rep


def _verify_form(f) -> Report:
    rep = Report()
    rep.add("antisymmetric", True)
    rep.add("normalized", forms.is_normalized(f))
    rep.notes.append("multiplicativity needs a complex; verify a csg document to check it")
    return rep


def _verify_alpha(a) -> Report:
    rep = Report()
    rep.add("B11 antisymmetric", True)
    rep.notes.append("admissibility needs a complex")
    return rep


def _verify_tuple(t) -> Report:
    rep = Report()
    rep.add("tuple invariants", True)
    s = bridge.tuple_to_csg(t)
    rep.extend(bridge.check_csg(s.complex, s.form), "csg: ")
    rep.add("csg_to_tuple after tuple_to_csg is the identity", bridge.csg_to_tuple(s) == t)
    return rep


def _verify_courant(E) -> Report:
    rep = Report()
    rep.add("g symmetric nondegenerate and image of the dual of d isotropic", True)
    rep.extend(courant.verify_axioms(E, 1), "degree 1: ")
    return rep


def _verify_subcomplex(u) -> Report:
    rep = Report()
    rep.add("closed under the differentials", True)
    dirac.sub2groupoid(u)
    rep.add("sub-2-groupoid stable under faces and degeneracies", True)
    return rep


def _verify_csg(s) -> Report:
    rep = bridge.check_csg(s.complex, s.form)
    rep.extend(doldkan.verify_simplicial(s.groupoid), "groupoid: ")
    return rep


def _verify_report(r) -> Report:
    return r


def _verify_trivial(_) -> Report:
    rep = Report()
    rep.add("document decodes", True)
    return rep


_VERIFIERS = {
    "complex": _verify_complex,
    "groupoid": _verify_groupoid,
    "form": _verify_form,
    "alpha": _verify_alpha,
    "tuple": _verify_tuple,
    "courant": _verify_courant,
    "subcomplex": _verify_subcomplex,
    "csg": _verify_csg,
    "report": _verify_report,
}


def cmd_verify(args, stdin_used):
    try:
        doc = parse(_read(args.file, stdin_used))
    except DocumentError as e:
        raise InputError({**e.as_dict(), "file": args.file}) from None
    rep = Report()
    try:
        obj = decode(doc)
    except PreconditionError as e:
        rep.add(f"{doc.kind} invariants", False, {"message": str(e), "witness": e.witness})
        return encode("report", rep), EXIT_FAIL
    rep = _VERIFIERS.get(doc.kind, _verify_trivial)(obj)
    return encode("report", rep), EXIT_OK if rep.passed else EXIT_FAIL


# constructions -----------------------------------------------------------------------

def cmd_realize(args, stdin_used):
    _, c = _load(args.complex, ("complex",), stdin_used)
    return encode("groupoid", doldkan.realize(c)), EXIT_OK


def cmd_build_form(args, stdin_used):
    _, c41 = _load(args.c41, ("matrix",), stdin_used)
    _, c32 = _load(args.c32, ("matrix",), stdin_used)
    _, c = _load(args.complex, ("complex",), stdin_used)
    return encode("form", forms.build_from_C(c41, c32, c)), EXIT_OK


def cmd_from_tuple(args, stdin_used):
    _, t = _load(args.tuple, ("tuple",), stdin_used)
    return encode("csg", bridge.tuple_to_csg(t)), EXIT_OK


def cmd_to_courant(args, stdin_used):
    _, t = _load(args.tuple, ("tuple",), stdin_used)
    return encode("courant", bridge.tuple_to_courant(t)), EXIT_OK


def cmd_from_courant(args, stdin_used):
    _, E = _load(args.courant, ("courant",), stdin_used)
    return encode("tuple", bridge.courant_to_tuple(E)), EXIT_OK


def cmd_symmetrize(args, stdin_used):
    _, s = _load(args.csg, ("csg",), stdin_used)
    f, alpha = forms.symmetrize(s.form, s.complex)
    out = bridge.ConstantSymplectic2Groupoid(s.groupoid, s.complex, f)
    return encode("symmetrized", {"csg": out, "alpha": alpha}), EXIT_OK


def cmd_equivalent(args, stdin_used):
    _, s1 = _load(args.csg1, ("csg",), stdin_used)
    _, s2 = _load(args.csg2, ("csg",), stdin_used)
    if s1.complex != s2.complex:
        rec = {"equivalent": False, "alpha": None, "violated": "complex"}
        return encode("equivalence", rec), EXIT_FAIL
    alpha = forms.are_equivalent(s1.form, s2.form, s1.complex)
    if alpha is not None:
        return encode("equivalence", {"equivalent": True, "alpha": alpha, "violated": None}), EXIT_OK
    violated = "A_omega" if s1.form.c41 != s2.form.c41 else "B_omega"
    return encode("equivalence", {"equivalent": False, "alpha": None, "violated": violated}), EXIT_FAIL


def cmd_classify(args, stdin_used):
    _, u = _load(args.subcomplex, ("subcomplex",), stdin_used)
    _, s = _load(args.csg, ("csg",), stdin_used)
    if u.complex != s.complex:
        raise InputError({"type": "precondition", "message": "subcomplex and csg have different complexes"})
    return encode("classification", dirac.classify(u, s)), EXIT_OK


def cmd_dirac(args, stdin_used):
    _, u1 = _load(args.subspace, ("subspace",), stdin_used)
    _, E = _load(args.courant, ("courant",), stdin_used)
    rep = dirac.dirac_report(u1, E, args.degree)
    return encode("dirac", {"is_dirac": rep.passed, "report": rep}), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_example(args, stdin_used):
    if args.dim < 0:
        raise InputError({"type": "usage", "message": "--dim must be nonnegative"})
    return encode("csg", bridge.standard_example(args.dim)), EXIT_OK


def cmd_axioms(args, stdin_used):
    _, E = _load(args.courant, ("courant",), stdin_used)
    if args.degree < 1:
        raise InputError({"type": "usage", "message": "--degree must be at least 1"})
    rep = courant.verify_axioms(E, args.degree)
    return encode("report", rep), EXIT_OK if rep.passed else EXIT_FAIL


# output ---------------------------------------------------------------------------

def _fmt_matrix(rows: list, indent: str) -> list[str]:
    if not rows or not rows[0]:
        return [indent + f"({len(rows)} x 0 matrix)"]
    cells = [[str(x) for x in r] for r in rows]
    w = max(len(c) for r in cells for c in r)
    return [indent + "[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells]


def _is_matrix(v) -> bool:
    return isinstance(v, list) and bool(v) and all(
        isinstance(r, list) and all(not isinstance(x, (list, dict)) for x in r) for r in v)


def _render(v, indent: str, out: list):
    for k in sorted(v):
        x = v[k]
        if isinstance(x, dict):
            out.append(f"{indent}{k}:")
            _render(x, indent + "  ", out)
        elif _is_matrix(x):
            out.append(f"{indent}{k}:")
            out.extend(_fmt_matrix(x, indent + "  "))
        else:
            out.append(f"{indent}{k}: {json.dumps(x)}")


def render_pretty(doc: Document) -> str:
    p = jsonable(doc.payload)
    lines = []
    if doc.kind == "report":
        lines.append("PASS" if p["passed"] else "FAIL")
        for c in p["checks"]:
            tag = "ok  " if c["status"] == "pass" else "FAIL"
            line = f"  {tag} {c['name']}"
            if "witness" in c:
                line += "  witness: " + json.dumps(c["witness"], sort_keys=True)
            lines.append(line)
        lines.extend(f"  note: {n}" for n in p["notes"])
    elif doc.kind == "classification":
        lines.append(p["kind"])
        for k, w in p["witness"].items():
            lines.append(f"  {k}: {json.dumps(w, sort_keys=True)}")
        lines.extend(f"  note: {n}" for n in p["notes"])
    else:
        lines.append(f"{doc.kind}:")
        _render(p, "  ", lines)
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output instead of a JSON document")
    p = argparse.ArgumentParser(prog="constsymp", parents=[common],
                                description="Constant symplectic 2-groupoids, Courant algebroids "
                                            "and Dirac structures over Q.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help, *positionals):
        sp = sub.add_parser(name, parents=[common], help=help)
        for pos in positionals:
            sp.add_argument(pos)
        sp.set_defaults(func=fn)
        return sp

    add("verify", cmd_verify, "run every invariant check on a document", "file")
    add("realize", cmd_realize, "complex -> linear 2-groupoid", "complex")
    add("build-form", cmd_build_form, "(C41, C32, complex) -> normalized multiplicative form",
        "c41", "c32", "complex")
    add("from-tuple", cmd_from_tuple, "tuple -> constant symplectic 2-groupoid", "tuple")
    add("to-courant", cmd_to_courant, "tuple -> constant Courant algebroid", "tuple")
    add("from-courant", cmd_from_courant, "Courant algebroid -> reduced tuple", "courant")
    add("symmetrize", cmd_symmetrize, "symmetric representative and its alpha", "csg")
    add("equivalent", cmd_equivalent, "equivalence witness for two csg documents", "csg1", "csg2")
    add("classify", cmd_classify, "isotropic / coisotropic / lagrangian", "subcomplex", "csg")
    sp = add("dirac", cmd_dirac, "is a subspace of W1 a constant Dirac structure", "subspace", "courant")
    sp.add_argument("--degree", type=int, default=2, help="degree bound of the closure check")
    sp = add("example", cmd_example, "built-in examples", "name")
    sp.add_argument("--dim", type=int, required=True)
    sp = add("axioms", cmd_axioms, "check the Courant axioms up to a degree", "courant")
    sp.add_argument("--degree", type=int, default=2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    pretty = getattr(args, "pretty", False)
    if args.command == "example" and args.name != "standard":
        return _fail({"type": "usage", "message": f"unknown example {args.name!r}; known: standard"})
    try:
        doc, code = args.func(args, [])
    except InputError as e:
        return _fail(e.info)
    except DocumentError as e:
        return _fail(e.as_dict())
    except (PreconditionError, DimensionError) as e:
        return _fail({"type": "precondition", "message": str(e),
                      "witness": jsonable(getattr(e, "witness", None))})
    except InvariantError as e:
        return _fail({"type": "invariant", "message": str(e)}, EXIT_FAIL)
    text = render_pretty(doc) if pretty else serialize(doc)
    sys.stdout.write(text)
    sys.stdout.flush()
    return code


def _fail(info: dict, code: int = EXIT_INPUT) -> int:
    sys.stderr.write(json.dumps({"error": info}, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
