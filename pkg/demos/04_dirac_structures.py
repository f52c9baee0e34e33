"""Lagrangian sub-2-groupoids and the Dirac structures they come from.

    python3 demos/04_dirac_structures.py
"""

from constsymp.bridge import standard_example, standard_tuple, tuple_to_courant
from constsymp.dirac import (classify, coordinate_subcomplexes, dirac_groupoid, dirac_to_lagrangian,
                             is_constant_dirac, lagrangian_to_dirac, omega_orthogonal, skew_graph,
                             skew_matrices, sub2groupoid)
from constsymp.exactla import Subspace


def show(vs):
    return "[" + ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in vs) + "]"


s = standard_example(1)
print("coordinate subcomplexes of the one-dimensional model:")
for u in coordinate_subcomplexes(s.complex):
    kind = classify(u, s).kind
    print(f"  dim U2={u.u2.dim}  U1={show(u.u1.vectors()):<16}  dim U0={u.u0.dim}  -> {kind}")

u1 = Subspace.span(2, [[1, 0]])
L = sub2groupoid(next(u for u in coordinate_subcomplexes(s.complex)
                      if u.u1 == u1 and u.u0.dim == 1 and u.u2.dim == 0))
print("\nL2 for U1 = span(e) has dimension", L.L2.dim, "of", L.L2.ambient_dim)
print("and equals its own orthogonal:", omega_orthogonal(L, s) == L.L2)

d = dirac_groupoid(u1, s)
print("its 1-groupoid: source", d.source, "target", d.target)

E2 = tuple_to_courant(standard_tuple(2))
s2 = standard_example(2)
print("\ngraphs of skew maps in dimension 2:")
for b in skew_matrices(2):
    g = skew_graph(b)
    L = dirac_to_lagrangian(g, s2)
    print(f"  b12={str(b[0, 1]):>2}: Dirac={is_constant_dirac(g, E2)}  wide={L.is_wide()}"
          f"  roundtrip={lagrangian_to_dirac(L, s2) == g}")
