"""Rewrite the golden documents in this directory.

Run with ``python3 tests/fixtures/regenerate.py``; the tests compare against
the committed files byte for byte, so only rerun after a deliberate format change.
"""

from fractions import Fraction
from pathlib import Path

from constsymp.bridge import CsgTuple, standard_tuple, tuple_to_courant, tuple_to_csg
from constsymp.dirac import make_subcomplex
from constsymp.doldkan import realize
from constsymp.documents import encode, serialize
from constsymp.exactla import Bilin, Mat, Subspace
from constsymp.forms import AlphaForm

HERE = Path(__file__).parent


def fixtures() -> dict:
    t = standard_tuple(1)
    s = tuple_to_csg(t)
    twisted = CsgTuple(t.g, t.boundary, Bilin(Mat([[0, 1], [-1, 0]])))
    u1 = Subspace.span(2, [[1, 0]])
    sub = make_subcomplex(Subspace.zero(1), u1, Subspace.full(1), s.complex)
    return {
        "standard1.tuple": encode("tuple", t),
        "twisted1.tuple": encode("tuple", twisted),
        "standard1.csg": encode("csg", s),
        "twisted1.csg": encode("csg", tuple_to_csg(twisted)),
        "standard1.complex": encode("complex", s.complex),
        "standard1.groupoid": encode("groupoid", realize(s.complex)),
        "standard1.form": encode("form", s.form),
        "standard1.courant": encode("courant", tuple_to_courant(t)),
        "standard2.csg": encode("csg", tuple_to_csg(standard_tuple(2))),
        "c41.matrix": encode("matrix", Mat([[1]])),
        "c32.matrix": encode("matrix", Mat([[0, Fraction(1, 2)], [Fraction(1, 2), 0]])),
        "dirac1.sub": encode("subcomplex", sub),
        "dirac1.subspace": encode("subspace", u1),
        "diagonal1.subspace": encode("subspace", Subspace.span(2, [[1, 1]])),
        "rotation1.alpha": encode("alpha", AlphaForm(Mat([[0, 1], [-1, 0]]), Mat([[0], [0]]))),
    }


if __name__ == "__main__":
    for name, doc in fixtures().items():
        (HERE / name).write_text(serialize(doc))
