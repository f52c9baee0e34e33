"""The Courant bracket on polynomial sections, and an exact check of the axioms.

    python3 demos/03_courant_bracket.py
"""

from constsymp.bridge import standard_tuple, tuple_to_courant
from constsymp.courant import anchor_apply, bracket, dee, describe_section, pairing_sections, verify_axioms
from constsymp.poly import Poly, PolySection

E = tuple_to_courant(standard_tuple(1))
x = Poly.var(1, 0)
e, eps = E.generator(0), E.generator(1)   # e = tangent direction, eps = cotangent

print("rho(e)(x^2) =", anchor_apply(E, e, x * x))
print("D(x^2)      =", describe_section(dee(E, x * x)))
print("<x e, x eps> =", pairing_sections(E, e.scale(x), eps.scale(x)))
print("[x e, e]    =", describe_section(bracket(E, e.scale(x), e)))
f, h = x * x, x + 1
print("[x^2 e, (x+1) eps] =", describe_section(bracket(E, e.scale(f), eps.scale(h))))

rep = verify_axioms(E, 2)
print()
for c in rep.checks:
    print(f"  {c.name}: {'pass' if c.passed else 'FAIL'}")


def without_d_term(E, s1, s2):
    out = PolySection.zero(E.dim_w1, E.dim_w0)
    for i, f in enumerate(s1):
        for k, h in enumerate(s2):
            w, wp = E.generator(i), E.generator(k)
            out = out + wp.scale(f * anchor_apply(E, w, h)) - w.scale(h * anchor_apply(E, wp, f))
    return out


print("\nthe same check with the D-term removed from the bracket:")
bad = verify_axioms(E, 1, bracket=without_d_term)
for c in bad.failures():
    if c.name.startswith("axiom 4"):
        print(f"  {c.name}: {c.witness}")
        break
print(f"  {len(bad.failures())} failing instances in total")
