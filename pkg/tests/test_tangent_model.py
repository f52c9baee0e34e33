"""Independent check of the standard example against its tangent-space model.

The model lives on T_x M (+) T_x M (+) T*_x M at level 1 and on six copies
(v1, v2, xi1, v3, xi2, xi3) at level 2.  Its degeneracies and 2-form are
written out here from scratch; the induced pairings must agree with what
the library computes for ``standard_example(n)``.
"""

import pytest

from constsymp.bridge import standard_example
from constsymp.exactla import Mat
from constsymp.forms import pairings


def blocks(n, layout):
    """Matrix with n x n identity blocks at the listed (row block, col block) positions."""
    rows, cols, entries = layout
    m = [[0] * (cols * n) for _ in range(rows * n)]
    for r, c in entries:
        for k in range(n):
            m[r * n + k][c * n + k] = 1
    return Mat(m, rows=rows * n, cols=cols * n)


def model(n):
    # sigma^0_0 v = (v, v, 0)
    s00 = blocks(n, (3, 1, [(0, 0), (1, 0)]))
    # sigma^1_0 (v1, v2, xi) = (v1, v2, xi, v2, xi, 0)
    s10 = blocks(n, (6, 3, [(0, 0), (1, 1), (2, 2), (3, 1), (4, 2)]))
    # sigma^1_1 (v1, v2, xi) = (v1, v1, 0, v2, 0, xi)
    s11 = blocks(n, (6, 3, [(0, 0), (1, 0), (3, 1), (5, 2)]))
    # omega = xi1'(v2) - xi1(v2') - xi2'(v3) + xi2(v3'); slots v1 v2 xi1 v3 xi2 xi3
    w = [[0] * (6 * n) for _ in range(6 * n)]
    for k in range(n):
        v2, xi1, v3, xi2 = n + k, 2 * n + k, 3 * n + k, 4 * n + k
        w[v2][xi1], w[xi1][v2] = 1, -1
        w[v3][xi2], w[xi2][v3] = -1, 1
    return s00, s10, s11, Mat(w, rows=6 * n, cols=6 * n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_model_form_is_normalized(n):
    _, s10, s11, w = model(n)
    assert (s10.T @ w @ s10).is_zero()
    assert (s11.T @ w @ s11).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_model_pairings_match_displayed_formulas(n):
    s00, s10, s11, w = model(n)
    sigma2 = s10 @ s00
    a_tilde = sigma2.T @ w                       # rows: v, cols: level-2 slots
    want_a = blocks(n, (1, 6, [(0, 2)])) - blocks(n, (1, 6, [(0, 4)]))   # xi1(v) - xi2(v)
    assert a_tilde == want_a
    b_tilde = s11.T @ w @ s10
    b_tilde = b_tilde + b_tilde.T
    # xi'(v1 - v2) + xi(v1' - v2')
    want_b = blocks(n, (3, 3, [(0, 2), (2, 0)])) - blocks(n, (3, 3, [(1, 2), (2, 1)]))
    assert b_tilde == want_b


@pytest.mark.parametrize("n", [1, 2, 3])
def test_library_pairings_match_model(n):
    s00, s10, s11, w = model(n)
    a_tilde = (s10 @ s00).T @ w
    b_tilde = s11.T @ w @ s10
    b_tilde = b_tilde + b_tilde.T
    into2 = blocks(n, (6, 1, [(2, 0)]))          # xi -> (0, 0, xi, 0, 0, 0)
    into1 = blocks(n, (3, 2, [(0, 0), (2, 1)]))  # (v, xi) -> (v, 0, xi)
    A = a_tilde @ into2
    B = into1.T @ b_tilde @ into1
    p = pairings(standard_example(n).form)
    assert p.A.gram == A
    assert p.B.gram == B
    assert A.is_invertible() and B.is_invertible()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_model_kernels_are_degenerate_directions(n):
    # the kernels of the tilde pairings are spanned by images of the degeneracies
    s00, s10, s11, w = model(n)
    a_tilde = (s10 @ s00).T @ w
    b_tilde = s11.T @ w @ s10
    b_tilde = b_tilde + b_tilde.T
    assert a_tilde.rank() == n
    assert b_tilde.rank() == 2 * n
    assert (b_tilde @ s00).is_zero()
    assert (a_tilde @ s10).is_zero() and (a_tilde @ s11).is_zero()
