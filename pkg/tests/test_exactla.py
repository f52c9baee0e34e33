from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from constsymp.errors import DimensionError, PreconditionError
from constsymp.exactla import (Bilin, Mat, Subspace, annihilator, contains, direct_sum, image,
                               inertia, intersect, kernel, left_orthogonal, perp, preimage,
                               push_forward, rat, right_orthogonal, sum_spaces, vector)

from conftest import matrices, small_ints


def test_rat_refuses_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(TypeError):
        rat(True)
    assert rat("3/6") == Fraction(1, 2)


def test_matrix_basics():
    m = Mat([[1, 2], [3, 4]])
    assert m[1, 0] == 3
    assert m.T == Mat([[1, 3], [2, 4]])
    assert m @ Mat.identity(2) == m
    assert (m - m).is_zero()
    assert m.rank() == 2
    assert m.inverse() == Mat([[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]])
    assert m.apply((1, 1)) == (3, 7)


def test_empty_shapes():
    z = Mat.zeros(3, 0)
    assert z.shape == (3, 0)
    assert (z @ Mat.zeros(0, 2)).shape == (3, 2)
    assert (z @ Mat.zeros(0, 2)).is_zero()
    assert Mat.identity(0).inverse() == Mat.identity(0)
    with pytest.raises(DimensionError):
        Mat([])


def test_singular_inverse():
    with pytest.raises(PreconditionError):
        Mat([[1, 2], [2, 4]]).inverse()


def test_ragged_rows():
    with pytest.raises(DimensionError):
        Mat([[1, 2], [3]])


def test_kernel_example():
    k = kernel(Mat([[1, 2]]))
    assert k.dim == 1
    assert (2, -1) in k
    assert k.vectors() == [(Fraction(1), Fraction(-1, 2))]


def test_annihilator_and_orthogonals():
    u = Subspace.span(3, [(1, 0, 0), (0, 1, 1)])
    ann = annihilator(u)
    assert ann.dim == 1 and (0, 1, -1) in ann
    g = Bilin(Mat([[0, 1], [1, 0]]))
    line = Subspace.span(2, [(1, 0)])
    assert perp(line, g) == line
    assert perp(Subspace.span(2, [(1, 1)]), g) == Subspace.span(2, [(1, -1)])
    c = Bilin(Mat([[1, 2, 0]]))  # pairing Q^1 x Q^3
    assert right_orthogonal(Subspace.full(1), c) == kernel(Mat([[1, 2, 0]]))
    assert left_orthogonal(Subspace.span(3, [(2, -1, 0)]), c) == Subspace.full(1)


def test_inertia():
    assert inertia(Mat([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia(Mat([[2, 0, 0], [0, 0, 0], [0, 0, -5]])) == (1, 1, 1)
    assert inertia(Mat([[1, 1], [1, 1]])) == (1, 0, 1)
    assert inertia(Mat.identity(0)) == (0, 0, 0)


def test_direct_sum_blocks():
    a = Subspace.span(2, [(1, 1)])
    b = Subspace.full(1)
    s = direct_sum(a, b)
    assert s.ambient_dim == 3 and s.dim == 2
    assert (1, 1, 0) in s and (0, 0, 1) in s and (1, 0, 0) not in s


def test_bilin_parts():
    b = Bilin(Mat([[1, 2], [0, 3]]))
    assert b.symmetric_part() + b.skew_part() == b
    assert b.symmetric_part().is_symmetric() and b.skew_part().is_skew()
    assert b((1, 0), (0, 1)) == 2
    assert not Bilin(Mat([[1, 1], [1, 1]])).is_nondegenerate()
    assert Bilin.zero(0).is_nondegenerate()


@given(matrices())
def test_rank_nullity(m):
    assert kernel(m).dim + image(m).dim == m.cols
    assert m.rank() == image(m).dim


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel(m).vectors():
        assert not any(m.apply(v))


@given(matrices(rows=3, cols=3))
def test_inverse_roundtrip(m):
    if m.is_invertible():
        assert m @ m.inverse() == Mat.identity(3)
        assert m.inverse() @ m == Mat.identity(3)
    else:
        assert m.rank() < 3


@given(matrices(rows=4), matrices(rows=4))
def test_subspace_lattice(a, b):
    A, B = image(a), image(b)
    s, i = sum_spaces(A, B), intersect(A, B)
    assert s.dim + i.dim == A.dim + B.dim
    assert contains(s, A) and contains(s, B)
    assert contains(A, i) and contains(B, i)
    assert annihilator(annihilator(A)) == A


@given(matrices(rows=3), matrices(rows=3, cols=3))
def test_push_forward_and_preimage(u, m):
    U = image(u)
    assert contains(preimage(m, push_forward(m, U)), U)
    assert push_forward(m, U).dim <= U.dim


@given(st.lists(st.tuples(small_ints, small_ints, small_ints), max_size=4))
def test_canonical_basis_is_order_independent(vs):
    a = Subspace.span(3, vs)
    b = Subspace.span(3, list(reversed(vs)))
    assert a == b and hash(a) == hash(b)


@given(matrices(rows=3, cols=3))
def test_perp_dimension(m):
    g = Bilin(m.T + m + Mat.identity(3) * 7)
    if not g.is_nondegenerate():
        return
    for vs in ([], [(1, 0, 0)], [(1, 2, 3), (0, 1, 1)]):
        u = Subspace.span(3, vs)
        assert perp(u, g).dim == 3 - u.dim


def test_vector_helper():
    assert vector(1, 2) == (Fraction(1), Fraction(2))
    assert vector([1, "1/2"]) == (Fraction(1), Fraction(1, 2))
