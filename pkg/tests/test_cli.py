import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from constsymp.cli import main
from constsymp.documents import decode, encode, parse, serialize
from constsymp.bridge import CsgTuple, tuple_to_csg
from constsymp.exactla import Bilin, Mat

FIX = Path(__file__).parent / "fixtures"


def fx(name):
    return str(FIX / name)


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_example_then_verify_pipeline():
    exe = [sys.executable, "-m", "constsymp"]
    ex = subprocess.run(exe + ["example", "standard", "--dim", "1"], capture_output=True, text=True, check=True)
    v = subprocess.run(exe + ["verify", "-"], input=ex.stdout, capture_output=True, text=True)
    assert v.returncode == 0, v.stderr
    rep = parse(v.stdout)
    assert rep.kind == "report" and rep.payload["passed"] is True


def test_example_matches_fixture(capsys):
    code, out, _ = run(capsys, "example", "standard", "--dim", "1")
    assert code == 0 and out == (FIX / "standard1.csg").read_text()


def test_example_errors(capsys):
    code, _, err = run(capsys, "example", "other", "--dim", "1")
    assert code == 2 and json.loads(err)["error"]["type"] == "usage"
    code, _, _ = run(capsys, "example", "standard", "--dim", "-1")
    assert code == 2


def test_axioms_standard(capsys):
    code, out, _ = run(capsys, "axioms", fx("standard1.courant"), "--degree", "2")
    assert code == 0
    rep = parse(out).payload
    assert rep["passed"] and len(rep["checks"]) == 4
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_classify_dirac_fixture(capsys):
    code, out, _ = run(capsys, "classify", fx("dirac1.sub"), fx("standard1.csg"))
    assert code == 0
    assert parse(out).payload["kind"] == "lagrangian"


def test_classify_mismatched_complex(capsys):
    code, _, err = run(capsys, "classify", fx("dirac1.sub"), fx("standard2.csg"))
    assert code == 2 and "different complexes" in err


@pytest.mark.parametrize("name", sorted(p.name for p in FIX.iterdir() if p.is_file() and p.suffix != ".py"))
def test_verify_every_fixture(capsys, name):
    code, out, _ = run(capsys, "verify", fx(name))
    assert code == 0, out
    assert parse(out).payload["passed"]


def test_constructions_match_library(capsys):
    code, out, _ = run(capsys, "realize", fx("standard1.complex"))
    assert code == 0 and out == (FIX / "standard1.groupoid").read_text()
    code, out, _ = run(capsys, "build-form", fx("c41.matrix"), fx("c32.matrix"), fx("standard1.complex"))
    assert code == 0 and out == (FIX / "standard1.form").read_text()
    code, out, _ = run(capsys, "from-tuple", fx("standard1.tuple"))
    assert code == 0 and out == (FIX / "standard1.csg").read_text()
    code, out, _ = run(capsys, "to-courant", fx("twisted1.tuple"))
    assert code == 0 and out == (FIX / "standard1.courant").read_text()
    code, out, _ = run(capsys, "from-courant", fx("standard1.courant"))
    assert code == 0 and out == (FIX / "standard1.tuple").read_text()


def test_symmetrize_and_equivalent(capsys, tmp_path):
    code, out, _ = run(capsys, "symmetrize", fx("twisted1.csg"))
    assert code == 0
    rec = parse(out).payload
    sym = tmp_path / "sym.csg"
    sym.write_text(serialize(encode("csg", decode(parse(out))["csg"])))
    assert sym.read_text() == (FIX / "standard1.csg").read_text()
    assert rec["alpha"]["b11"] == [[0, 1], [-1, 0]]
    code, out, _ = run(capsys, "equivalent", fx("twisted1.csg"), fx("standard1.csg"))
    assert code == 0 and parse(out).payload["equivalent"] is True
    code, out, _ = run(capsys, "equivalent", fx("standard1.csg"), fx("standard2.csg"))
    assert code == 1 and parse(out).payload["violated"] == "complex"


def test_inequivalent_reports_b(capsys, tmp_path):
    # zero boundary keeps the complex fixed while the symmetric pairing changes
    paths = []
    for k in (1, 2):
        t = CsgTuple(Bilin(Mat([[0, k], [k, 0]])), Mat.zeros(0, 2), Bilin.zero(2))
        p = tmp_path / f"g{k}.csg"
        p.write_text(serialize(encode("csg", tuple_to_csg(t))))
        paths.append(str(p))
    code, out, _ = run(capsys, "equivalent", *paths)
    assert code == 1
    rec = parse(out).payload
    assert rec["equivalent"] is False and rec["violated"] == "B_omega"


def test_dirac_command(capsys):
    code, out, _ = run(capsys, "dirac", fx("dirac1.subspace"), fx("standard1.courant"))
    assert code == 0 and parse(out).payload["is_dirac"] is True
    code, out, _ = run(capsys, "dirac", fx("diagonal1.subspace"), fx("standard1.courant"))
    assert code == 1 and parse(out).payload["is_dirac"] is False


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "--pretty", "axioms", fx("standard1.courant"), "--degree", "1")
    assert code == 0 and "axiom 1" in out and not out.lstrip().startswith("{")
    code, out2, _ = run(capsys, "axioms", fx("standard1.courant"), "--degree", "1", "--pretty")
    assert out2 == out
    code, out, _ = run(capsys, "classify", fx("dirac1.sub"), fx("standard1.csg"), "--pretty")
    assert "lagrangian" in out


def test_determinism(capsys):
    outs = {run(capsys, "from-tuple", fx("standard1.tuple"))[1] for _ in range(3)}
    assert len(outs) == 1


def corrupt(tmp_path, name, mutate):
    data = json.loads((FIX / name).read_text())
    mutate(data)
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


@pytest.mark.parametrize("name,mutate,path", [
    ("standard1.tuple", lambda d: d["payload"]["g"][0].__setitem__(0, "2/4"), "payload.g[0][0]"),
    ("standard1.tuple", lambda d: d["payload"].__setitem__("extra", 1), "payload.extra"),
    ("standard1.courant", lambda d: d["payload"].pop("boundary"), "payload.boundary"),
    ("standard1.complex", lambda d: d["payload"]["d1"].append([1, 1]), "payload.d1"),
    ("dirac1.sub", lambda d: d.__setitem__("kind", "banana"), "kind"),
])
def test_corrupted_fixtures_exit_2_with_path(capsys, tmp_path, name, mutate, path):
    f = corrupt(tmp_path, name, mutate)
    code, out, err = run(capsys, "verify", f)
    assert code == 2 and out == ""
    info = json.loads(err)["error"]
    assert info["path"] == path, info


def test_invariant_violation_in_verify_exits_1(capsys, tmp_path):
    f = corrupt(tmp_path, "standard1.tuple", lambda d: d["payload"].__setitem__("g", [[1, 0], [0, 1]]))
    code, out, _ = run(capsys, "verify", f)
    assert code == 1 and parse(out).payload["passed"] is False


def test_invariant_violation_as_input_exits_2(capsys, tmp_path):
    f = corrupt(tmp_path, "standard1.tuple", lambda d: d["payload"].__setitem__("g", [[1, 0], [0, 1]]))
    code, out, err = run(capsys, "from-tuple", f)
    assert code == 2 and out == "" and json.loads(err)["error"]["type"] == "precondition"


def test_wrong_kind_and_missing_file(capsys):
    code, _, err = run(capsys, "from-tuple", fx("standard1.csg"))
    assert code == 2 and json.loads(err)["error"]["path"] == "kind"
    code, _, err = run(capsys, "from-tuple", fx("nope.tuple"))
    assert code == 2 and json.loads(err)["error"]["type"] == "io"


def test_syntax_error_has_position(capsys, tmp_path):
    p = tmp_path / "broken.tuple"
    p.write_text('{\n "kind": "tuple",\n ]')
    code, _, err = run(capsys, "verify", str(p))
    info = json.loads(err)["error"]
    assert code == 2 and info["line"] == 3


def test_stdin_read_once(capsys, monkeypatch):
    text = (FIX / "standard1.csg").read_text()
    code, _, err = run(capsys, "equivalent", "-", "-", stdin=text, monkeypatch=monkeypatch)
    assert code == 2 and "only once" in err
