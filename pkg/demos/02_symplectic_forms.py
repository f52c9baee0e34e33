"""Multiplicative 2-forms, their pairings and the tuple picture.

    python3 demos/02_symplectic_forms.py
"""

from fractions import Fraction

from constsymp.bridge import CsgTuple, csg_to_tuple, standard_example, standard_tuple, tuple_to_csg
from constsymp.exactla import Bilin, Mat
from constsymp.forms import are_equivalent, delta, is_normalized, pairings, symmetrize

# the model of TM + T*M at a point, in dimension 2
s = standard_example(2)
print("V2 has dimension", s.groupoid.dims[2])
print("the form is normalized:", is_normalized(s.form))
print("and multiplicative:     ", delta(s.form, s.complex).gram.is_zero())
p = pairings(s.form)
print("A pairing (W0 x W2):", p.A.gram)
print("B pairing on W1:    ", p.B.gram)

# the only free data are C41 and C32; everything else is forced
print("C32 =", s.form.c32.gram)
print("C11 =", s.form.block(1, 1), "C12 =", s.form.block(1, 2))

# a skew r changes the form but not its class
r = Bilin(Mat([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, Fraction(1, 2)], [0, 0, Fraction(-1, 2), 0]]))
t = standard_tuple(2)
twisted = tuple_to_csg(CsgTuple(t.g, t.boundary, r))
print("twisted form has symmetric C32:", twisted.is_symmetric())
alpha = are_equivalent(twisted.form, s.form, s.complex)
print("equivalence witness alpha, B11 part:", alpha.b11)
sym, _ = symmetrize(twisted.form, twisted.complex)
print("symmetrizing the twisted form recovers the standard one:", sym == s.form)
print("reading the tuple back gives r again:", csg_to_tuple(twisted).r == r)
