from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nonassoc.kernel import (
    BilinearForm,
    Echelon,
    StructureError,
    as_array,
    basis_vector,
    det,
    format_scalar,
    identity,
    integerize,
    inverse,
    kernel_basis,
    matrix,
    primitive,
    rank,
    scalar,
    solve,
    span_closure,
    vector,
)

small = st.integers(-4, 4)


def int_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_solve_identity():
    x = solve(identity(2), vector([3, "1/2"]))
    assert list(x) == [3, Fraction(1, 2)]


def test_solve_inconsistent():
    assert solve(matrix([[1, 1], [1, 1]]), vector([1, 0])) is None


def test_solve_by_hand():
    # 2x + y = 5, x + 3y = 10  ->  y = 3, x = 1
    assert list(solve(matrix([[2, 1], [1, 3]]), vector([5, 10]))) == [1, 3]


def test_solve_shape_mismatch():
    with pytest.raises(StructureError):
        solve(identity(2), vector([1, 2, 3]))


def test_kernel_examples():
    assert kernel_basis(identity(3)) == []
    (k,) = kernel_basis(matrix([[1, 1]]))
    assert k[0] == -k[1] != 0
    assert len(kernel_basis(matrix([[1, 2, 3], [2, 4, 6]]))) == 2


def test_span_closure_examples():
    e1 = basis_vector(3, 0)
    assert len(span_closure([e1], [identity(3)])) == 1
    shift = matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert len(span_closure([e1], [shift])) == 3
    swap = matrix([[0, 1], [1, 0]])
    assert len(span_closure([vector([1, 1])], [identity(2), swap])) == 1


def test_floats_rejected():
    with pytest.raises(TypeError):
        scalar(0.5)


def test_scalars_lowest_terms():
    x = as_array(["6/4"])[0]
    assert (x.numerator, x.denominator) == (3, 2)
    assert format_scalar(Fraction(-4, 2)) == "-2"
    assert format_scalar(Fraction(3, 9)) == "1/3"


def test_inverse_singular():
    with pytest.raises(StructureError):
        inverse(matrix([[1, 2], [2, 4]]))


def test_integerize_exact():
    a = as_array([["1/2", "2/3"], [5, "-7/6"]])
    m, d = integerize(a)
    assert d == 6
    assert np.all(as_array(m) / d == a)


def test_primitive_keeps_direction():
    assert list(primitive(vector(["2/3", "-4/3"]))) == [1, -2]


def test_bilinear_form():
    B = BilinearForm([[1, 2], [2, 3]])
    assert B.is_symmetric()
    assert B(vector([1, 1]), vector([1, 0])) == 3


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rank_nullity_against_sympy(rows):
    a = matrix(rows)
    k = kernel_basis(a)
    assert rank(a) + len(k) == a.shape[1]
    assert rank(a) == sympy.Matrix(rows).rank()
    for v in k:
        assert not np.any(a.dot(v) != 0)


@settings(max_examples=60, deadline=None)
@given(int_matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_satisfies_system(rows, xs):
    a = matrix(rows)
    x0 = vector(xs[: a.shape[1]])
    b = a.dot(x0)
    x = solve(a, b)
    assert x is not None
    assert not np.any(a.dot(x) != b)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.lists(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n), min_size=1, max_size=3)))
def test_det_and_inverse_against_sympy(mats):
    for rows in mats:
        a = matrix(rows)
        d = det(a)
        assert d == sympy.Matrix(rows).det()
        if d != 0:
            assert not np.any(inverse(a).dot(a) != identity(len(rows)))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(small, min_size=n, max_size=n),
    st.lists(st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n), min_size=1, max_size=3))))
def test_span_closure_is_stable(data):
    v, ops = data
    if not any(v):
        return
    ops = [matrix(o) for o in ops]
    basis = span_closure([vector(v)], ops)
    ech = Echelon(len(v))
    for b in basis:
        ech.add(b)
    assert ech.contains(vector(v))
    for op in ops:
        for b in basis:
            assert ech.contains(op.dot(b))
