"""Acceptance criteria 1-9: exact equality plus wall-clock budgets.

Each test prints one ``PASS``/``FAIL`` line (with elapsed time) to the
terminal, even under captured output.
"""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from constsymp.bridge import (CsgTuple, check_csg, courant_to_tuple, csg_to_tuple, reduce_tuple,
                              standard_example, standard_tuple, tuple_to_courant, tuple_to_csg)
from constsymp.cli import main
from constsymp.courant import ConstantCourantAlgebroid, anchor_apply, verify_axioms
from constsymp.poly import PolySection
from constsymp.dirac import (classify, dirac_report, dirac_to_lagrangian, lagrangian_to_dirac,
                             make_subcomplex, omega_orthogonal_brute, omega_orthogonal_formula,
                             skew_graph, skew_matrices, sub2groupoid)
from constsymp.doldkan import ChainComplex3, extract, kan_check, realize, verify_simplicial
from constsymp.documents import decode, encode, parse, serialize
from constsymp.errors import PreconditionError
from constsymp.exactla import Bilin, Mat
from constsymp.forms import (ConstantTwoForm, alpha_is_admissible, are_equivalent, build_from_C,
                             delta, is_multiplicative, is_normalized, is_simplicially_nondegenerate,
                             pairings, reduce_to_C)
from constsymp.random_objects import (random_compatible_pair, random_complex, random_skew,
                                      random_subcomplex_spaces, random_tuple)

FIX = Path(__file__).parent / "fixtures"


@contextmanager
def criterion(capsys, number, title, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < budget
        status = "PASS" if ok and within else "FAIL"
        note = "" if within else f" (over the {budget:g} s budget)"
        with capsys.disabled():
            print(f"\n[acceptance {number}] {status} {title}: {dt:.2f} s{note}")
    assert dt < budget, f"criterion {number} took {dt:.2f} s, budget {budget} s"


def test_1_dold_kan(capsys):
    with criterion(capsys, 1, "Dold-Kan soundness, 100 complexes", 5):
        rng = random.Random(1001)
        for _ in range(100):
            c = random_complex(rng, (4, 4, 4))
            g = realize(c)
            rep = verify_simplicial(g)
            assert rep.passed, rep.summary()
            kan = kan_check(g)
            assert kan.passed, kan.summary()
            assert extract(g) == c


def mutate(f, blk, i, j):
    blocks = {(a, b): f.block(a, b) for a in range(1, 5) for b in range(1, 5) if a <= b}
    bump = Mat.zeros(*blocks[blk].shape).with_block(i, j, Mat([[1]]))
    if blk[0] == blk[1]:
        bump = bump - bump.T
    blocks[blk] = blocks[blk] + bump
    return ConstantTwoForm.from_blocks(f.dims, blocks)


def test_2_form_bijection(capsys):
    with criterion(capsys, 2, "C41/C32 bijection, 100 pairs, mutation test", 5):
        rng = random.Random(2002)
        mutations = {}
        built = 0
        while built < 100:
            c = random_complex(rng, (4, 4, 4))
            c41, c32 = random_compatible_pair(rng, c)
            f = build_from_C(c41, c32, c)
            built += 1
            assert is_multiplicative(f, c) and is_normalized(f)
            a, b = reduce_to_C(f, c)
            assert a.gram == c41 and b.gram == c32
            n2, n1, _ = c.dims
            # C23 is tied to C32 by skewness; an off-diagonal entry cannot be absorbed into C32
            for blk, shape, off_diag in (((1, 1), (n2, n2), True), ((1, 2), (n2, n1), False),
                                         ((1, 3), (n2, n1), False), ((2, 2), (n1, n1), True),
                                         ((2, 3), (n1, n1), True)):
                if mutations.get(blk, 0) >= 4 or 0 in shape or (off_diag and shape[0] < 2):
                    continue
                i, j = rng.randrange(shape[0]), rng.randrange(shape[1])
                if off_diag and i == j:
                    j = (i + 1) % shape[1]
                g = mutate(f, blk, i, j)
                assert not delta(g, c).gram.is_zero(), (blk, i, j)
                mutations[blk] = mutations.get(blk, 0) + 1
        assert sum(mutations.values()) >= 10 and len(mutations) == 5, mutations


def test_3_nondegeneracy(capsys):
    with criterion(capsys, 3, "simplicial nondegeneracy", 1):
        rng = random.Random(3003)
        for _ in range(30):
            s = tuple_to_csg(random_tuple(rng))
            assert is_simplicially_nondegenerate(s.form)
            assert check_csg(s.complex, s.form).passed
        with pytest.raises(PreconditionError):
            CsgTuple(Bilin(Mat([[1, 1], [1, 1]])), Mat.zeros(0, 2), Bilin.zero(2))
        with pytest.raises(PreconditionError):
            CsgTuple(Bilin(Mat([[0, 0], [0, 1]])), Mat.zeros(1, 2), Bilin.zero(2))
        c = ChainComplex3.zero(1, 2, 1)
        f = build_from_C(Mat([[1]]), Mat([[0, 1], [-1, 0]]), c)
        assert is_normalized(f) and is_multiplicative(f, c)
        assert not is_simplicially_nondegenerate(f)
        assert f.matrix.is_invertible()


def test_4_standard_example(capsys):
    with criterion(capsys, 4, "standard example n = 1, 2, 3", 1):
        for n in (1, 2, 3):
            s = standard_example(n)
            assert check_csg(s.complex, s.form).passed
            assert verify_simplicial(s.groupoid).passed
            p = pairings(s.form)
            i, z = Mat.identity(n), Mat.zeros(n, n)
            assert p.B.gram == Mat.block([[z, i], [i, z]])
            assert p.A.gram == i


def test_5_roundtrips(capsys):
    with criterion(capsys, 5, "tuple / csg / Courant roundtrips and equivalence", 5):
        rng = random.Random(5005)
        for _ in range(50):
            t = random_tuple(rng, max_w1=4, max_w0=3)
            s = tuple_to_csg(t)
            assert csg_to_tuple(s) == t
            red = reduce_tuple(t)
            assert reduce_tuple(red) == red
            E = tuple_to_courant(red)
            assert courant_to_tuple(E) == red and tuple_to_courant(courant_to_tuple(E)) == E
            # same (g, d), different r: equivalent with a verified alpha
            t2 = CsgTuple(t.g, t.boundary, Bilin(random_skew(rng, t.dim_w1)))
            s2 = tuple_to_csg(t2)
            alpha = are_equivalent(s.form, s2.form, s.complex)
            assert alpha is not None
            assert s2.form - s.form == delta(alpha, s.complex)
            assert alpha_is_admissible(alpha, s.complex)
        # different g on a fixed complex: never equivalent
        for _ in range(20):
            t = random_tuple(rng, dims=(rng.randint(1, 4), 0))
            k = rng.choice((2, 3, -1))
            s1 = tuple_to_csg(t)
            s3 = tuple_to_csg(CsgTuple(Bilin(t.g.gram * k), t.boundary, t.r))
            assert s1.complex == s3.complex
            assert are_equivalent(s1.form, s3.form, s1.complex) is None


def test_6_courant_axioms(capsys):
    with criterion(capsys, 6, "Courant axioms, 20 algebroids, degree 2", 30):
        rng = random.Random(6006)
        dims = [(4, 2)] * 8 + [(rng.randint(1, 4), rng.randint(1, 2)) for _ in range(12)]
        for d in dims:
            t = random_tuple(rng, dims=d, with_r=False)
            E = ConstantCourantAlgebroid(t.g, t.boundary)
            rep = verify_axioms(E, 2)
            assert rep.passed, rep.summary()
        E = tuple_to_courant(standard_tuple(1))

        def no_d_term(E, s1, s2):
            n1, n = E.dim_w1, E.dim_w0
            out = PolySection.zero(n1, n)
            for i, f in enumerate(s1):
                w = E.generator(i)
                for k, h in enumerate(s2):
                    wp = E.generator(k)
                    out = out + wp.scale(f * anchor_apply(E, w, h)) - w.scale(h * anchor_apply(E, wp, f))
            return out

        bad = verify_axioms(E, 2, bracket=no_d_term)
        fails = [c for c in bad.failures() if c.name.startswith("axiom 4")]
        assert fails and fails[0].witness["lhs"] != fails[0].witness["rhs"]


def test_7_orthogonal_oracle(capsys):
    with criterion(capsys, 7, "orthogonal formula vs brute force, 100 subcomplexes", 10):
        rng = random.Random(7007)
        seen = set()
        for _ in range(10):
            n1 = rng.randint(2, 6)
            n0 = rng.randint(1, min(4, (20 - 2 * n1) // 2))
            s = tuple_to_csg(random_tuple(rng, dims=(n1, n0), with_r=False))
            seen.add(s.groupoid.dims[2])
            for _ in range(10):
                u = make_subcomplex(*random_subcomplex_spaces(rng, s.complex), s.complex)
                L = sub2groupoid(u, s.groupoid)
                a = omega_orthogonal_formula(u, s)
                b = omega_orthogonal_brute(L.L2, s)
                assert a == b
        assert min(seen) >= 6 and max(seen) <= 20


def test_8_skew_graph_dirac(capsys):
    with criterion(capsys, 8, "skew-graph Dirac structures (3 for n = 2, 27 for n = 3)", 10):
        counts = {}
        for n in (2, 3):
            s = standard_example(n)
            E = tuple_to_courant(csg_to_tuple(s))
            for b in skew_matrices(n):
                u1 = skew_graph(b)
                rep = dirac_report(u1, E, 2)
                assert rep.passed, rep.summary()
                L = dirac_to_lagrangian(u1, s)
                assert classify(L, s).kind == "lagrangian"
                assert lagrangian_to_dirac(L, s) == u1
                counts[n] = counts.get(n, 0) + 1
        assert counts == {2: 3, 3: 27}


def test_9_cli_golden(capsys, tmp_path):
    with criterion(capsys, 9, "CLI golden fixtures", 2):
        kinds = set()
        for p in sorted(FIX.iterdir()):
            if not p.is_file() or p.suffix == ".py":
                continue
            text = p.read_text()
            doc = parse(text)
            kinds.add(doc.kind)
            assert serialize(doc) == text
            assert serialize(encode(doc.kind, decode(doc))) == text
        assert {"tuple", "complex", "groupoid", "form", "courant", "subcomplex", "alpha"} <= kinds
        exe = [sys.executable, "-m", "constsymp"]
        ex = subprocess.run(exe + ["example", "standard", "--dim", "1"], capture_output=True,
                            text=True, check=True)
        v = subprocess.run(exe + ["verify", "-"], input=ex.stdout, capture_output=True, text=True)
        assert v.returncode == 0, v.stderr
        data = json.loads((FIX / "standard1.tuple").read_text())
        data["payload"]["g"][1][0] = "2/4"
        bad = tmp_path / "bad.tuple"
        bad.write_text(json.dumps(data))
        code = main(["verify", str(bad)])
        err = capsys.readouterr().err
        assert code == 2
        assert json.loads(err)["error"]["path"] == "payload.g[1][0]"
