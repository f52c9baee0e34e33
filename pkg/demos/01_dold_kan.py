"""From a three-term chain complex to a linear 2-groupoid and back.

    python3 demos/01_dold_kan.py
"""

from constsymp.doldkan import (ChainComplex3, extract, fill_horn_2, kan_check, realize,
                               verify_simplicial)
from constsymp.exactla import Mat


def show(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


# W2 = Q, W1 = Q^2, W0 = Q with d2 = (0, 1)^T and d1 = (1, 0); d1 d2 = 0
c = ChainComplex3(Mat([[0], [1]]), Mat([[1, 0]]))
print("complex dims (W2, W1, W0):", c.dims)

g = realize(c)
print("level dims V0..V3:", g.dims)
print("f_0^1 =", g.face(1, 0))
print("f_1^1 =", g.face(1, 1), " (the second coordinate is w0 - d1 w1)")

print("simplicial identities:", verify_simplicial(g).summary())
print("horn conditions:      ", kan_check(g).summary())

# two arrows with the same source compose through a 2-simplex
a, b = (1, 0, 5), (0, 1, 5)
filler = fill_horn_2(g, (a, b))
print("a 2-simplex with faces", a, "and", b, "->", show(filler))
print("its remaining face f_2:", show(g.face(2, 2).apply(filler)))

back = extract(g)
print("extract(realize(c)) == c:", back == c)
